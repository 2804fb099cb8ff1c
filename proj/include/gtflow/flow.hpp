#pragma once

// Flow networks, integer flows, Kostant partition functions and the
// Baldoni-Vergne-Lidskii volume and lattice-point formulas.

#include "gtflow/arith.hpp"
#include "gtflow/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gtflow {

using NetflowVector = std::vector<std::int64_t>;

struct Edge {
  int tail = 0;
  int head = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Acyclic multigraph on ordered vertices 0..V-1 (every edge goes from a
/// lower to a higher index) with an integer netflow vector summing to zero.
/// The vertex order is part of the network's identity.
class FlowNetwork {
public:
  FlowNetwork() = default;
  FlowNetwork(int vertex_count, std::vector<Edge> edges, NetflowVector netflow,
              std::vector<std::string> labels = {})
      : vertex_count_(vertex_count), edges_(std::move(edges)), netflow_(std::move(netflow)), labels_(std::move(labels)) {
    if (vertex_count_ < 1) throw ValidationError("flow network needs at least one vertex");
    if (static_cast<int>(netflow_.size()) != vertex_count_)
      throw ValidationError("netflow vector length must equal the vertex count");
    if (!labels_.empty() && static_cast<int>(labels_.size()) != vertex_count_)
      throw ValidationError("label list length must equal the vertex count");
    for (const auto& e : edges_) {
      if (e.tail < 0 || e.head >= vertex_count_ || e.tail >= e.head)
        throw ValidationError("edge (" + std::to_string(e.tail) + "," + std::to_string(e.head) +
                              ") must go from a lower to a higher vertex");
    }
    std::int64_t total = std::accumulate(netflow_.begin(), netflow_.end(), std::int64_t{0});
    if (total != 0) throw ValidationError("netflow vector must sum to zero");
    out_.assign(vertex_count_, {});
    in_.assign(vertex_count_, {});
    for (int k = 0; k < static_cast<int>(edges_.size()); ++k) {
      out_[edges_[k].tail].push_back(k);
      in_[edges_[k].head].push_back(k);
    }
  }

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int k) const { return edges_[k]; }
  const NetflowVector& netflow() const { return netflow_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int v) const { return labels_.empty() ? std::to_string(v) : labels_[v]; }

  /// Edge indices leaving / entering v, in edge order.
  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_[v]; }
  int outdegree(int v) const { return static_cast<int>(out_[v].size()); }
  int indegree(int v) const { return static_cast<int>(in_[v].size()); }

  FlowNetwork with_netflow(NetflowVector a) const { return FlowNetwork(vertex_count_, edges_, std::move(a), labels_); }

  bool is_connected() const {
    std::vector<int> parent(vertex_count_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& e : edges_) parent[find(e.tail)] = find(e.head);
    for (int v = 1; v < vertex_count_; ++v)
      if (find(v) != find(0)) return false;
    return true;
  }

  /// Reorders vertices: `order[k]` is the old index of the new vertex k.
  /// Every edge must still go forward in the new order.
  FlowNetwork reordered(const std::vector<int>& order) const {
    if (static_cast<int>(order.size()) != vertex_count_) throw PreconditionError("reorder: wrong permutation length");
    std::vector<int> pos(vertex_count_, -1);
    for (int k = 0; k < vertex_count_; ++k) {
      if (order[k] < 0 || order[k] >= vertex_count_ || pos[order[k]] != -1)
        throw PreconditionError("reorder: not a permutation");
      pos[order[k]] = k;
    }
    std::vector<Edge> edges;
    for (const auto& e : edges_) edges.push_back({pos[e.tail], pos[e.head]});
    NetflowVector a(vertex_count_);
    std::vector<std::string> labels;
    for (int k = 0; k < vertex_count_; ++k) {
      a[k] = netflow_[order[k]];
      if (!labels_.empty()) labels.push_back(labels_[order[k]]);
    }
    return FlowNetwork(vertex_count_, std::move(edges), std::move(a), std::move(labels));
  }

  /// Same graph with its edge list permuted.
  FlowNetwork with_edge_order(const std::vector<int>& order) const {
    std::vector<Edge> edges;
    for (int k : order) edges.push_back(edges_.at(k));
    if (edges.size() != edges_.size()) throw PreconditionError("edge order must be a permutation");
    return FlowNetwork(vertex_count_, std::move(edges), netflow_, labels_);
  }

  friend bool operator==(const FlowNetwork& a, const FlowNetwork& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_ && a.netflow_ == b.netflow_ &&
           a.labels_ == b.labels_;
  }

private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  NetflowVector netflow_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> out_, in_;
};

/// Flow values indexed by edge.
using IntegerFlow = std::vector<std::int64_t>;

/// out_i = outdegree - 1 and in_i = indegree - 1 for every vertex.
struct DegreeProfile {
  std::vector<std::int64_t> out;
  std::vector<std::int64_t> in;
};

inline DegreeProfile degree_profile(const FlowNetwork& g) {
  DegreeProfile d;
  for (int v = 0; v < g.vertex_count(); ++v) {
    d.out.push_back(g.outdegree(v) - 1);
    d.in.push_back(g.indegree(v) - 1);
  }
  return d;
}

/// True iff f is nonnegative and conserves flow with netflow b at every vertex:
/// inflow + b_v = outflow.
inline bool is_flow(const FlowNetwork& g, const IntegerFlow& f, const NetflowVector& b) {
  if (static_cast<int>(f.size()) != g.edge_count() || static_cast<int>(b.size()) != g.vertex_count()) return false;
  std::vector<std::int64_t> balance(g.vertex_count(), 0);
  for (int k = 0; k < g.edge_count(); ++k) {
    if (f[k] < 0) return false;
    balance[g.edge(k).tail] += f[k];
    balance[g.edge(k).head] -= f[k];
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (balance[v] != b[v]) return false;
  return true;
}

namespace detail {

inline void check_netflow_arg(const FlowNetwork& g, const NetflowVector& b) {
  if (static_cast<int>(b.size()) != g.vertex_count())
    throw PreconditionError("netflow argument has length " + std::to_string(b.size()) + ", expected " +
                            std::to_string(g.vertex_count()));
}

/// Distributes `amount` over the out-edges of a vertex, calling back for each split.
inline void for_each_split(const std::vector<int>& out_edges, std::int64_t amount,
                           const std::function<void(const std::vector<std::int64_t>&)>& visit) {
  std::vector<std::int64_t> split(out_edges.size(), 0);
  if (out_edges.empty()) {
    if (amount == 0) visit(split);
    return;
  }
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i + 1 == split.size()) {
      split[i] = left;
      visit(split);
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      split[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, amount);
}

}  // namespace detail

/// Every integer flow with netflow b, by depth-first assignment vertex by
/// vertex (forced outflow totals prune the search).
inline std::vector<IntegerFlow> enumerate_integer_flows(const FlowNetwork& g, const NetflowVector& b) {
  detail::check_netflow_arg(g, b);
  std::vector<IntegerFlow> out;
  if (std::accumulate(b.begin(), b.end(), std::int64_t{0}) != 0) return out;
  IntegerFlow f(g.edge_count(), 0);
  std::vector<std::int64_t> inflow(g.vertex_count(), 0);
  std::function<void(int)> rec = [&](int v) {
    if (v == g.vertex_count()) {
      out.push_back(f);
      return;
    }
    std::int64_t total = inflow[v] + b[v];
    if (total < 0) return;
    const auto& oe = g.out_edges(v);
    if (oe.empty()) {
      if (total == 0) rec(v + 1);
      return;
    }
    detail::for_each_split(oe, total, [&](const std::vector<std::int64_t>& split) {
      for (std::size_t k = 0; k < oe.size(); ++k) {
        f[oe[k]] = split[k];
        inflow[g.edge(oe[k]).head] += split[k];
      }
      rec(v + 1);
      for (std::size_t k = 0; k < oe.size(); ++k) {
        inflow[g.edge(oe[k]).head] -= split[k];
        f[oe[k]] = 0;
      }
    });
  };
  rec(0);
  return out;
}

/// Kostant partition function K_G(b): the number of integer flows with
/// netflow b. Dynamic program over vertices; the state is the vector of
/// inflow already routed into the unprocessed vertices. The memo lives only
/// for one call.
inline Integer kostant(const FlowNetwork& g, const NetflowVector& b) {
  detail::check_netflow_arg(g, b);
  const int V = g.vertex_count();
  if (std::accumulate(b.begin(), b.end(), std::int64_t{0}) != 0) return 0;
  std::vector<std::map<std::vector<std::int64_t>, Integer>> memo(V + 1);
  std::function<Integer(int, std::vector<std::int64_t>&)> rec = [&](int v,
                                                                   std::vector<std::int64_t>& inflow) -> Integer {
    if (v == V) return 1;
    std::vector<std::int64_t> key(inflow.begin() + v, inflow.end());
    auto it = memo[v].find(key);
    if (it != memo[v].end()) return it->second;
    Integer result = 0;
    std::int64_t total = inflow[v] + b[v];
    const auto& oe = g.out_edges(v);
    if (total >= 0) {
      if (oe.empty()) {
        if (total == 0) result = rec(v + 1, inflow);
      } else {
        detail::for_each_split(oe, total, [&](const std::vector<std::int64_t>& split) {
          for (std::size_t k = 0; k < oe.size(); ++k) inflow[g.edge(oe[k]).head] += split[k];
          std::int64_t saved = inflow[v];
          inflow[v] = 0;
          result += rec(v + 1, inflow);
          inflow[v] = saved;
          for (std::size_t k = 0; k < oe.size(); ++k) inflow[g.edge(oe[k]).head] -= split[k];
        });
      }
    }
    memo[v].emplace(std::move(key), result);
    return result;
  };
  std::vector<std::int64_t> inflow(V, 0);
  return rec(0, inflow);
}

namespace detail {

/// Checks the hypotheses of the Lidskii formulas and returns the nonsink count n.
inline int check_lidskii_hypotheses(const FlowNetwork& g) {
  const int V = g.vertex_count();
  if (V < 2) throw PreconditionError("Lidskii formulas need at least two vertices");
  if (!g.is_connected()) throw PreconditionError("Lidskii formulas need a connected network");
  for (int i = 0; i + 1 < V; ++i) {
    if (g.netflow()[i] < 0)
      throw PreconditionError("Lidskii formulas need nonnegative netflow at vertex " + g.label(i));
    if (g.outdegree(i) == 0)
      throw PreconditionError("Lidskii formulas need an outgoing edge at vertex " + g.label(i));
  }
  return V - 1;
}

/// Sums weight(j) * K_G(j - out, 0) over weak compositions j of m - n that
/// dominate out, skipping entries the caller proves to vanish via `cap`.
template <class Weight, class Acc>
Acc lidskii_sum(const FlowNetwork& g, const std::vector<std::int64_t>& cap, Weight weight) {
  const int n = check_lidskii_hypotheses(g);
  auto prof = degree_profile(g);
  WeakComposition out(prof.out.begin(), prof.out.begin() + n);
  const std::int64_t total = g.edge_count() - n;
  Acc sum = 0;
  for_each_composition(
      total, static_cast<std::size_t>(n), out,
      [&](const WeakComposition& j) {
        auto w = weight(j);
        if (w == 0) return;
        NetflowVector arg(n + 1, 0);
        for (int i = 0; i < n; ++i) arg[i] = j[i] - out[i];
        sum += w * Acc(kostant(g, arg));
      },
      cap);
  return sum;
}

}  // namespace detail

/// Volume of F_G(a) (unimodular simplex = 1/d!) by the Lidskii volume formula.
inline Rational lidskii_volume(const FlowNetwork& g) {
  const int n = detail::check_lidskii_hypotheses(g);
  const auto& a = g.netflow();
  std::vector<std::int64_t> cap(n);
  for (int i = 0; i < n; ++i) cap[i] = a[i] == 0 ? 0 : g.edge_count();
  return detail::lidskii_sum<std::function<Rational(const WeakComposition&)>, Rational>(
      g, cap, [&](const WeakComposition& j) {
        Rational w = 1;
        for (int i = 0; i < n; ++i) w *= power_over_factorial(Rational(a[i]), j[i]);
        return w;
      });
}

/// Lattice points of F_G(a) via the binomial form of the Lidskii formula.
inline Integer lidskii_points_binomial(const FlowNetwork& g) {
  const int n = detail::check_lidskii_hypotheses(g);
  const auto& a = g.netflow();
  auto prof = degree_profile(g);
  std::vector<std::int64_t> cap(n);
  for (int i = 0; i < n; ++i) cap[i] = a[i] + prof.out[i];
  return detail::lidskii_sum<std::function<Integer(const WeakComposition&)>, Integer>(
      g, cap, [&](const WeakComposition& j) {
        Integer w = 1;
        for (int i = 0; i < n; ++i) w *= binomial(Integer(a[i] + prof.out[i]), j[i]);
        return w;
      });
}

/// Lattice points of F_G(a) via the multiset-coefficient form of the Lidskii
/// formula; individual terms may be negative.
inline Integer lidskii_points_multiset(const FlowNetwork& g) {
  const int n = detail::check_lidskii_hypotheses(g);
  const auto& a = g.netflow();
  auto prof = degree_profile(g);
  std::vector<std::int64_t> cap(n);
  for (int i = 0; i < n; ++i) {
    std::int64_t x = a[i] - prof.in[i];
    cap[i] = x <= 0 ? -x : g.edge_count();
  }
  return detail::lidskii_sum<std::function<Integer(const WeakComposition&)>, Integer>(
      g, cap, [&](const WeakComposition& j) {
        Integer w = 1;
        for (int i = 0; i < n; ++i) w *= multiset_binomial(Integer(a[i] - prof.in[i]), j[i]);
        return w;
      });
}

/// Volume of a fully reduced network. Every edge must join a source (no
/// incoming edges) to a sink (no outgoing edges), and each connected component
/// must have a single sink or a single source, so the flow polytope is a
/// product of dilated simplices.
inline Rational leaf_volume(const FlowNetwork& g) {
  const int V = g.vertex_count();
  const auto& a = g.netflow();
  for (int v = 0; v < V; ++v) {
    if (g.indegree(v) > 0 && g.outdegree(v) > 0)
      throw PreconditionError("leaf_volume: vertex " + g.label(v) + " still has incoming and outgoing edges");
  }
  std::vector<int> parent(V);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : g.edges()) parent[find(e.tail)] = find(e.head);
  std::map<int, std::pair<int, int>> comp;  // root -> (#sources, #sinks)
  for (int v = 0; v < V; ++v) {
    if (g.outdegree(v) > 0) ++comp[find(v)].first;
    if (g.indegree(v) > 0) ++comp[find(v)].second;
  }
  Rational vol = 1;
  for (int v = 0; v < V; ++v) {
    auto [sources, sinks] = comp[find(v)];
    if (sources > 1 && sinks > 1)
      throw PreconditionError("leaf_volume: component with several sources and several sinks");
    if (sinks == 1 && g.outdegree(v) > 0) vol *= power_over_factorial(Rational(a[v]), g.outdegree(v) - 1);
    else if (sinks > 1 && g.indegree(v) > 0) vol *= power_over_factorial(Rational(-a[v]), g.indegree(v) - 1);
  }
  return vol;
}

/// Dimension of F_G(b) when it is nonempty and has a strictly positive point:
/// edges minus vertices plus connected components.
inline int flow_polytope_dimension(const FlowNetwork& g) {
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int comps = g.vertex_count();
  for (const auto& e : g.edges()) {
    int x = find(e.tail), y = find(e.head);
    if (x != y) {
      parent[x] = y;
      --comps;
    }
  }
  return g.edge_count() - g.vertex_count() + comps;
}

}  // namespace gtflow
