#pragma once

// Dual flow networks of bounded strongly planar embeddings and the integral
// equivalence between marked order polytopes and flow polytopes.

#include "gtflow/embedding.hpp"
#include "gtflow/flow.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gtflow {

/// How a face hands its marked boundary over to new sources or sinks.
/// Auto splits on the left exactly when the left boundary meets A.
enum class SplitSide { Auto, Left, Right, None };

struct DualVertex {
  enum class Kind { Face, Source, Sink };
  Kind kind = Kind::Face;
  int face = -1;
  int segment = -1;  // for sources and sinks: index of the marked segment
  std::string label;
};

/// A flow network built from an embedding, with the Hasse edge each network
/// edge crosses and the label set it carries.
struct DualNetwork {
  FlowNetwork network;
  std::vector<DualVertex> vertices;
  std::vector<HasseEdge> crossing;
  std::vector<std::vector<int>> edge_labels;
  std::vector<int> face_vertex;  // -1 when the face has no vertex
  int marked_source_count = 0;   // leading sources of segments between two elements of A

  int sink_count() const {
    int s = 0;
    for (int v = 0; v < network.vertex_count(); ++v)
      if (network.netflow()[v] < 0 || (network.outdegree(v) == 0 && network.indegree(v) > 0)) ++s;
    return s;
  }
  int edge_crossing(const HasseEdge& e) const {
    for (int k = 0; k < static_cast<int>(crossing.size()); ++k)
      if (crossing[k] == e) return k;
    throw PreconditionError("no network edge crosses the given Hasse edge");
  }
};

namespace detail {

inline std::vector<SplitSide> resolve_sides(const BoundedEmbedding& emb, std::vector<SplitSide> sides) {
  if (sides.empty()) sides.assign(emb.face_count(), SplitSide::Auto);
  if (static_cast<int>(sides.size()) != emb.face_count()) throw PreconditionError("one split side per face");
  for (int fi = 0; fi < emb.face_count(); ++fi) {
    const Face& f = emb.face(fi);
    if (sides[fi] == SplitSide::Auto) {
      bool touches = !f.left_outer && std::any_of(f.left.begin(), f.left.end(), [&](int v) { return emb.in_A(v); });
      sides[fi] = touches ? SplitSide::Left : SplitSide::None;
    }
    if (sides[fi] == SplitSide::Left && f.left_outer) sides[fi] = SplitSide::None;
    if (sides[fi] == SplitSide::Right && f.right_outer) sides[fi] = SplitSide::None;
    if (sides[fi] != SplitSide::None && (!emb.is_marked(f.top()) || !emb.is_marked(f.bottom())))
      throw ValidationError("face '" + f.id + "' is split but its min or max is unmarked");
  }
  return sides;
}

/// Marked positions along a chain, always including both ends.
inline std::vector<int> marked_positions(const BoundedEmbedding& emb, const std::vector<int>& chain) {
  std::vector<int> pos;
  for (int i = 0; i < static_cast<int>(chain.size()); ++i)
    if (emb.is_marked(chain[i])) pos.push_back(i);
  return pos;
}

/// Segment index containing chain edge (chain[i], chain[i+1]).
inline int segment_of(const std::vector<int>& marked_pos, int i) {
  int m = 0;
  while (m + 1 < static_cast<int>(marked_pos.size()) && marked_pos[m + 1] <= i) ++m;
  return m;
}

}  // namespace detail

/// G_(P,A,lambda) for the embedding, with optional per-face split sides
/// (default: split on the left wherever the left boundary meets A). With A
/// empty this is G_P with netflow value(top) - value(bottom) at s.
inline DualNetwork build_dual_network(const BoundedEmbedding& emb, std::vector<SplitSide> sides = {}) {
  if (sides.empty()) {
    if (auto v = validate_embedding(emb); !v) throw ValidationError(v.message);
  } else if (!emb.base().marked_elements().empty()) {
    // explicit sides relax the left-boundary rule; callers gate the result
    if (auto v = validate_marked_poset(emb.base()); !v) throw ValidationError(v.message);
  }
  sides = detail::resolve_sides(emb, std::move(sides));
  const int F = emb.face_count();
  struct Slot {
    DualVertex info;
    Rational netflow;
    int category = 2;
    std::vector<Rational> sort_key;
  };
  std::vector<Slot> slots;
  std::vector<int> face_slot(F, -1);
  std::vector<std::vector<int>> seg_slot(F);
  std::vector<std::vector<int>> left_marks(F), right_marks(F);
  auto span = [&](const std::vector<int>& chain) { return emb.value(chain.front()) - emb.value(chain.back()); };
  for (int fi = 0; fi < F; ++fi) {
    const Face& f = emb.face(fi);
    bool has_vertex = !((sides[fi] == SplitSide::Left && f.right_outer) || (sides[fi] == SplitSide::Right && f.left_outer));
    if (has_vertex) {
      Rational a = 0;
      if (sides[fi] == SplitSide::Left) a = -span(f.right);
      else if (sides[fi] == SplitSide::Right) a = span(f.left);
      else if (f.right_outer) a = emb.value(emb.top()) - emb.value(emb.bottom());
      else if (f.left_outer) a = emb.value(emb.bottom()) - emb.value(emb.top());
      face_slot[fi] = static_cast<int>(slots.size());
      slots.push_back({{DualVertex::Kind::Face, fi, -1, f.id}, a, 2, {}});
    }
    if (sides[fi] == SplitSide::None) continue;
    const bool left = sides[fi] == SplitSide::Left;
    const auto& chain = left ? f.left : f.right;
    auto marks = detail::marked_positions(emb, chain);
    (left ? left_marks : right_marks)[fi] = marks;
    for (int m = 0; m + 1 < static_cast<int>(marks.size()); ++m) {
      int hi = chain[marks[m]], lo = chain[marks[m + 1]];
      Rational a = emb.value(hi) - emb.value(lo);
      Slot s;
      s.info = {left ? DualVertex::Kind::Source : DualVertex::Kind::Sink, fi, m,
                (left ? "s:" : "t:") + f.id + ":" + std::to_string(m + 1)};
      s.netflow = left ? a : Rational(-a);
      if (left && emb.in_A(hi) && emb.in_A(lo)) {
        s.category = 0;
        s.sort_key = {-emb.value(hi), -emb.value(lo), Rational(fi), Rational(m)};
      } else {
        s.category = left ? 1 : 3;
      }
      seg_slot[fi].push_back(static_cast<int>(slots.size()));
      slots.push_back(std::move(s));
    }
  }
  // One network edge per Hasse edge of P-hat: from the face east of it to the face west of it.
  std::map<HasseEdge, std::pair<int, int>> east, west;  // edge -> (face, chain position)
  for (int fi = 0; fi < F; ++fi) {
    const Face& f = emb.face(fi);
    if (!f.left_outer)
      for (int i = 0; i + 1 < static_cast<int>(f.left.size()); ++i) east[{f.left[i + 1], f.left[i]}] = {fi, i};
    if (!f.right_outer)
      for (int i = 0; i + 1 < static_cast<int>(f.right.size()); ++i) west[{f.right[i + 1], f.right[i]}] = {fi, i};
  }
  std::vector<HasseEdge> hasse = emb.hat().cover_list();
  const auto& hat = emb.hat();
  std::sort(hasse.begin(), hasse.end(), [&](const HasseEdge& a, const HasseEdge& b) {
    if (a.second != b.second) return hat.topological_rank(a.second) > hat.topological_rank(b.second);
    return hat.topological_rank(a.first) > hat.topological_rank(b.first);
  });
  std::vector<std::pair<int, int>> slot_edges;
  for (const auto& e : hasse) {
    auto [ef, ei] = east.at(e);
    auto [wf, wi] = west.at(e);
    int tail = sides[ef] == SplitSide::Left ? seg_slot[ef][detail::segment_of(left_marks[ef], ei)] : face_slot[ef];
    int head = sides[wf] == SplitSide::Right ? seg_slot[wf][detail::segment_of(right_marks[wf], wi)] : face_slot[wf];
    if (tail < 0 || head < 0) throw ValidationError("dual edge lost its endpoint; split sides are inconsistent");
    slot_edges.emplace_back(tail, head);
  }
  // Vertex order: sources of A-segments, other sources, the rest topologically, sinks last.
  const int S = static_cast<int>(slots.size());
  std::vector<int> indeg(S, 0), outdeg(S, 0);
  std::vector<std::vector<int>> succ(S);
  for (auto [t, h] : slot_edges) {
    ++outdeg[t];
    ++indeg[h];
    succ[t].push_back(h);
  }
  for (int s = 0; s < S; ++s) {
    if (slots[s].category == 2 && indeg[s] == 0) slots[s].category = 1;
    if (slots[s].category == 2 && outdeg[s] == 0) slots[s].category = 3;
  }
  auto before = [&](int a, int b) {
    if (slots[a].category != slots[b].category) return slots[a].category < slots[b].category;
    if (slots[a].sort_key != slots[b].sort_key) return slots[a].sort_key < slots[b].sort_key;
    return a < b;
  };
  std::vector<int> order, pending = indeg;
  std::vector<bool> placed(S, false);
  for (int step = 0; step < S; ++step) {
    int pick = -1;
    for (int s = 0; s < S; ++s)
      if (!placed[s] && pending[s] == 0 && (pick == -1 || before(s, pick))) pick = s;
    if (pick == -1) throw ValidationError("dual network contains a directed cycle");
    placed[pick] = true;
    order.push_back(pick);
    for (int h : succ[pick]) --pending[h];
  }
  std::vector<int> pos(S);
  for (int k = 0; k < S; ++k) pos[order[k]] = k;
  DualNetwork out;
  NetflowVector a(S);
  std::vector<std::string> labels(S);
  for (int k = 0; k < S; ++k) {
    const Slot& s = slots[order[k]];
    a[k] = to_i64(to_integer(s.netflow));
    labels[k] = s.info.label;
    out.vertices.push_back(s.info);
    if (s.category == 0) ++out.marked_source_count;
  }
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < slot_edges.size(); ++k) {
    edges.push_back({pos[slot_edges[k].first], pos[slot_edges[k].second]});
    out.crossing.push_back(hasse[k]);
    out.edge_labels.push_back(emb.edge_label(hasse[k]));
  }
  out.network = FlowNetwork(S, std::move(edges), std::move(a), std::move(labels));
  out.face_vertex.assign(F, -1);
  for (int fi = 0; fi < F; ++fi)
    if (face_slot[fi] >= 0) out.face_vertex[fi] = pos[face_slot[fi]];
  return out;
}

/// G_P of an unmarked poset at dilation m: netflow m at s, -m at t.
inline DualNetwork build_G_P(const BoundedEmbedding& emb, std::int64_t m = 1) {
  if (!emb.base().marked_elements().empty()) throw PreconditionError("build_G_P expects an unmarked poset");
  return build_dual_network(emb.dilated(Rational(m) / (emb.value(emb.top()) - emb.value(emb.bottom()))));
}

inline DualNetwork build_G_PAlambda(const BoundedEmbedding& emb) { return build_dual_network(emb); }

namespace detail {

inline std::vector<std::int64_t> extend_point(const BoundedEmbedding& emb, const LatticePoint& x) {
  const int n = emb.element_count();
  if (static_cast<int>(x.size()) != n) throw PreconditionError("point has the wrong number of coordinates");
  std::vector<std::int64_t> xh(x.begin(), x.end());
  xh.push_back(to_i64(to_integer(emb.value(emb.bottom()))));
  xh.push_back(to_i64(to_integer(emb.value(emb.top()))));
  for (int v = 0; v < n; ++v)
    if (emb.in_A(v) && Rational(x[v]) != emb.value(v))
      throw PreconditionError("point disagrees with the marking at '" + emb.element_id(v) + "'");
  for (auto [p, q] : emb.hat().cover_list())
    if (xh[p] > xh[q]) throw PreconditionError("point is not order-preserving at '" + emb.element_id(p) + "'");
  return xh;
}

}  // namespace detail

/// f(e) = x_q - x_p for the Hasse edge p < q that e crosses.
inline IntegerFlow gamma(const BoundedEmbedding& emb, const DualNetwork& g, const LatticePoint& x) {
  auto xh = detail::extend_point(emb, x);
  IntegerFlow f;
  for (const auto& [p, q] : g.crossing) f.push_back(xh[q] - xh[p]);
  return f;
}

/// Which lower cover to follow when walking from an element down to the bottom.
enum class DescentPath { FirstCover, LastCover };

/// x_p = value(bottom) plus the flow crossing a fixed path from the bottom up to p.
inline LatticePoint gamma_inverse(const BoundedEmbedding& emb, const DualNetwork& g, const IntegerFlow& f,
                                  DescentPath path = DescentPath::FirstCover) {
  if (static_cast<int>(f.size()) != g.network.edge_count()) throw PreconditionError("flow has the wrong length");
  std::map<HasseEdge, std::int64_t> value;
  for (std::size_t k = 0; k < f.size(); ++k) value[g.crossing[k]] = f[k];
  const auto& hat = emb.hat();
  const std::int64_t base = to_i64(to_integer(emb.value(emb.bottom())));
  LatticePoint x(emb.element_count());
  for (int p = 0; p < emb.element_count(); ++p) {
    std::int64_t sum = base;
    int cur = p;
    while (cur != emb.bottom()) {
      const auto& lower = hat.lower_covers(cur);
      int next = path == DescentPath::FirstCover ? lower.front() : lower.back();
      sum += value.at({next, cur});
      cur = next;
    }
    x[p] = sum;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Comparing networks up to the trivial operations that preserve the flow
// polytope: dropping forced-zero edges and contracting forced edges.

struct SimplifiedNetwork {
  FlowNetwork network;
  std::vector<int> kept_edges;   // original edge index of each surviving edge
  std::vector<int> kept_vertices;
};

inline SimplifiedNetwork simplify_network(const FlowNetwork& g) {
  const int V = g.vertex_count();
  std::vector<Edge> edges = g.edges();
  std::vector<bool> edge_alive(edges.size(), true), vertex_alive(V, true);
  NetflowVector a = g.netflow();
  auto degrees = [&](int v, std::vector<int>& in, std::vector<int>& out) {
    in.clear();
    out.clear();
    for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
      if (!edge_alive[k]) continue;
      if (edges[k].head == v) in.push_back(k);
      if (edges[k].tail == v) out.push_back(k);
    }
  };
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> in, out;
    for (int v = 0; v < V && !changed; ++v) {
      if (!vertex_alive[v] || a[v] != 0) continue;
      degrees(v, in, out);
      if (in.empty() || out.empty()) {
        for (int k : in) edge_alive[k] = false;
        for (int k : out) edge_alive[k] = false;
        vertex_alive[v] = false;
        changed = true;
      } else if (in.size() == 1) {
        int u = edges[in[0]].tail;
        edge_alive[in[0]] = false;
        for (int k : out) edges[k].tail = u;
        vertex_alive[v] = false;
        changed = true;
      } else if (out.size() == 1) {
        int w = edges[out[0]].head;
        edge_alive[out[0]] = false;
        for (int k : in) edges[k].head = w;
        vertex_alive[v] = false;
        changed = true;
      }
    }
  }
  SimplifiedNetwork s;
  std::vector<int> pos(V, -1);
  for (int v = 0; v < V; ++v)
    if (vertex_alive[v]) {
      pos[v] = static_cast<int>(s.kept_vertices.size());
      s.kept_vertices.push_back(v);
    }
  std::vector<Edge> ne;
  NetflowVector na;
  std::vector<std::string> labels;
  for (int v : s.kept_vertices) {
    na.push_back(a[v]);
    labels.push_back(g.label(v));
  }
  for (int k = 0; k < static_cast<int>(edges.size()); ++k)
    if (edge_alive[k]) {
      ne.push_back({pos[edges[k].tail], pos[edges[k].head]});
      s.kept_edges.push_back(k);
    }
  const int kept = static_cast<int>(na.size());
  s.network = FlowNetwork(kept, std::move(ne), std::move(na), std::move(labels));
  return s;
}

/// Recovers a flow on `g` from a flow on its simplification: surviving edges
/// keep their values and the rest follow from conservation.
inline IntegerFlow lift_flow(const FlowNetwork& g, const SimplifiedNetwork& s, const IntegerFlow& fs) {
  if (fs.size() != s.kept_edges.size()) throw PreconditionError("flow has the wrong length");
  const int E = g.edge_count();
  IntegerFlow f(E, 0);
  std::vector<bool> known(E, false);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    f[s.kept_edges[k]] = fs[k];
    known[s.kept_edges[k]] = true;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int v = 0; v < g.vertex_count(); ++v) {
      int unknown = -1, count = 0, out_unknown = 0;
      std::int64_t balance = g.netflow()[v];  // out - in must equal netflow
      for (int k : g.out_edges(v)) {
        if (known[k]) balance -= f[k];
        else unknown = k, ++count, ++out_unknown;
      }
      for (int k : g.in_edges(v)) {
        if (known[k]) balance += f[k];
        else unknown = k, ++count;
      }
      if (count > 1 && balance == 0 && (out_unknown == 0 || out_unknown == count)) {
        // nonnegative values summing to zero
        for (int k : g.out_edges(v)) known[k] = true;
        for (int k : g.in_edges(v)) known[k] = true;
        changed = true;
        continue;
      }
      if (count != 1) continue;
      bool out = g.edges()[unknown].tail == v;
      f[unknown] = out ? balance : -balance;
      known[unknown] = true;
      changed = true;
    }
  }
  for (int k = 0; k < E; ++k)
    if (!known[k]) throw Error("flow is not determined by the simplified network");
  return f;
}

/// Vertex and edge correspondence between two isomorphic networks.
struct NetworkIsomorphism {
  std::vector<int> vertex_map;  // vertex of the first -> vertex of the second
  std::vector<int> edge_map;    // edge of the first -> edge of the second
};

/// Directed multigraph isomorphism preserving netflow, by backtracking.
inline std::optional<NetworkIsomorphism> find_isomorphism(const FlowNetwork& g, const FlowNetwork& h) {
  const int V = g.vertex_count();
  if (V != h.vertex_count() || g.edge_count() != h.edge_count()) return std::nullopt;
  auto mult = [](const FlowNetwork& n) {
    std::map<std::pair<int, int>, int> m;
    for (const auto& e : n.edges()) ++m[{e.tail, e.head}];
    return m;
  };
  auto mg = mult(g), mh = mult(h);
  auto count = [](const std::map<std::pair<int, int>, int>& m, int a, int b) {
    auto it = m.find({a, b});
    return it == m.end() ? 0 : it->second;
  };
  std::vector<int> map(V, -1);
  std::vector<bool> used(V, false);
  std::function<bool(int)> rec = [&](int v) -> bool {
    if (v == V) return true;
    for (int w = 0; w < V; ++w) {
      if (used[w] || g.netflow()[v] != h.netflow()[w] || g.indegree(v) != h.indegree(w) ||
          g.outdegree(v) != h.outdegree(w))
        continue;
      bool ok = count(mg, v, v) == count(mh, w, w);
      for (int u = 0; u < v && ok; ++u)
        ok = count(mg, u, v) == count(mh, map[u], w) && count(mg, v, u) == count(mh, w, map[u]);
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (rec(v + 1)) return true;
      used[w] = false;
      map[v] = -1;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  NetworkIsomorphism iso{map, std::vector<int>(g.edge_count(), -1)};
  std::vector<bool> taken(h.edge_count(), false);
  for (int k = 0; k < g.edge_count(); ++k) {
    const auto& e = g.edge(k);
    for (int j = 0; j < h.edge_count(); ++j)
      if (!taken[j] && h.edge(j).tail == map[e.tail] && h.edge(j).head == map[e.head]) {
        taken[j] = true;
        iso.edge_map[k] = j;
        break;
      }
  }
  return iso;
}

}  // namespace gtflow
