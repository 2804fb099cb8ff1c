#pragma once

// Gelfand-Tsetlin patterns and polytopes, the network G_lambda, the volume and
// point-count formulas, and the bijection between shifted tableaux and flows.

#include "gtflow/combinatorics.hpp"
#include "gtflow/flow.hpp"
#include "gtflow/transform.hpp"

#include <map>
#include <string>
#include <vector>

namespace gtflow {

/// Triangular array with rows 1..n; row 1 is lambda and row r has n-r+1
/// entries. Interlacing: y(r,k) >= y(r+1,k) >= y(r,k+1). `rows[r-1][k-1]`
/// holds y(r,k).
class GTPattern {
public:
  GTPattern() = default;
  explicit GTPattern(std::vector<std::vector<std::int64_t>> rows) : rows_(std::move(rows)) {
    const int n = side();
    for (int r = 0; r < n; ++r) {
      if (static_cast<int>(rows_[r].size()) != n - r) throw ValidationError("GT pattern rows have the wrong lengths");
      for (auto v : rows_[r])
        if (v < 0) throw ValidationError("GT pattern entries must be nonnegative");
    }
    for (int r = 0; r + 1 < n; ++r)
      for (int k = 0; k + 1 < n - r; ++k)
        if (!(rows_[r][k] >= rows_[r + 1][k] && rows_[r + 1][k] >= rows_[r][k + 1]))
          throw ValidationError("GT pattern fails interlacing at row " + std::to_string(r + 2));
  }

  int side() const { return static_cast<int>(rows_.size()); }
  std::int64_t at(int r, int k) const { return rows_[r - 1][k - 1]; }
  const std::vector<std::vector<std::int64_t>>& rows() const { return rows_; }

  /// Entries in row-major order, matching the element order of gt_marked_poset.
  LatticePoint flatten() const {
    LatticePoint x;
    for (const auto& row : rows_) x.insert(x.end(), row.begin(), row.end());
    return x;
  }
  static GTPattern unflatten(int n, const LatticePoint& x) {
    std::vector<std::vector<std::int64_t>> rows(n);
    std::size_t p = 0;
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n - r; ++k) rows[r].push_back(x.at(p++));
    return GTPattern(std::move(rows));
  }

  friend bool operator==(const GTPattern&, const GTPattern&) = default;
  friend auto operator<=>(const GTPattern& a, const GTPattern& b) { return a.rows_ <=> b.rows_; }

private:
  std::vector<std::vector<std::int64_t>> rows_;
};

inline std::vector<GTPattern> enumerate_gt_points(const Partition& lambda) {
  const int n = static_cast<int>(lambda.size());
  if (n == 0) throw PreconditionError("enumerate_gt_points needs a nonempty partition");
  std::vector<std::vector<std::int64_t>> rows(n);
  rows[0] = lambda.parts();
  for (int r = 1; r < n; ++r) rows[r].assign(n - r, 0);
  std::vector<GTPattern> out;
  std::function<void(int, int)> rec = [&](int r, int k) {
    if (r == n) {
      out.emplace_back(rows);
      return;
    }
    if (k == n - r) {
      rec(r + 1, 0);
      return;
    }
    for (std::int64_t v = rows[r - 1][k + 1]; v <= rows[r - 1][k]; ++v) {
      rows[r][k] = v;
      rec(r, k + 1);
    }
  };
  rec(1, 0);
  return out;
}

inline Integer weyl_dimension(const Partition& lambda) {
  const int n = static_cast<int>(lambda.size());
  Rational r = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) r *= Rational(lambda[i] - lambda[j] + j - i, j - i);
  return to_integer(r);
}

inline Rational gt_volume_product(const Partition& lambda) {
  const int n = static_cast<int>(lambda.size());
  Rational r = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) r *= Rational(lambda[i] - lambda[j], j - i);
  return r;
}

inline Rational gt_volume_shsyt(const Partition& lambda) {
  const int n = static_cast<int>(lambda.size());
  if (n <= 1) return 1;
  Rational vol = 0;
  for_each_composition(n * (n - 1) / 2, n - 1, WeakComposition(n - 1, 0), [&](const WeakComposition& b) {
    Integer N = count_N(n, b);
    if (N == 0) return;
    Rational term(N);
    for (int i = 0; i + 1 < n; ++i) term *= power_over_factorial(Rational(lambda[i] - lambda[i + 1]), b[i]);
    vol += term;
  });
  return vol;
}

// ---------------------------------------------------------------------------
// The network G_lambda.

/// G_lambda with vertex names (i,j) for v_ij and the a/b edge indices.
struct GTNetwork {
  int n = 0;
  FlowNetwork network;
  std::vector<std::pair<int, int>> names;  // per vertex: (i, j)
  std::map<std::pair<int, int>, int> vertex_of;
  std::map<std::pair<int, int>, int> a_edge, b_edge;  // (i,j) -> edge index
  int outdegree_two_count() const { return n * (n - 1) / 2; }
};

/// Vertices in the canonical order: v_ij (2 <= i <= j <= n) lexicographically,
/// then v_{i,i-1} (3 <= i <= n+1), then v_{i,n+1} (3 <= i <= n+1), then the
/// sink v_{n+2,n+1}.
inline GTNetwork build_G_lambda(const Partition& lambda) {
  const int n = static_cast<int>(lambda.size());
  if (n == 0) throw PreconditionError("build_G_lambda needs n >= 1");
  GTNetwork g;
  g.n = n;
  if (n == 1) {
    g.names = {{2, 2}};
    g.vertex_of[{2, 2}] = 0;
    g.network = FlowNetwork(1, {}, {0}, {"v2,2"});
    return g;
  }
  auto add = [&](int i, int j) {
    g.vertex_of[{i, j}] = static_cast<int>(g.names.size());
    g.names.emplace_back(i, j);
  };
  for (int i = 2; i <= n; ++i)
    for (int j = i; j <= n; ++j) add(i, j);
  for (int i = 3; i <= n + 1; ++i) add(i, i - 1);
  for (int i = 3; i <= n + 1; ++i) add(i, n + 1);
  add(n + 2, n + 1);
  std::vector<Edge> edges;
  auto v = [&](int i, int j) { return g.vertex_of.at({i, j}); };
  for (int i = 2; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      g.a_edge[{i, j}] = static_cast<int>(edges.size());
      edges.push_back({v(i, j), v(i + 1, j)});
      g.b_edge[{i, j}] = static_cast<int>(edges.size());
      edges.push_back({v(i, j), v(i + 1, j + 1)});
    }
  for (int i = 3; i <= n + 1; ++i) edges.push_back({v(i, i - 1), v(i + 1, i)});
  for (int i = 3; i <= n + 1; ++i) edges.push_back({v(i, n + 1), v(i + 1, n + 1)});
  NetflowVector a(g.names.size(), 0);
  for (int j = 2; j <= n; ++j) a[v(2, j)] = lambda[j - 2] - lambda[j - 1];
  a[v(n + 2, n + 1)] = lambda[n - 1] - lambda[0];
  std::vector<std::string> labels;
  for (auto [i, j] : g.names) labels.push_back("v" + std::to_string(i) + "," + std::to_string(j));
  g.network = FlowNetwork(static_cast<int>(g.names.size()), std::move(edges), std::move(a), std::move(labels));
  return g;
}

/// The volume sum with K_{G_lambda}(j_1-1, ..., j_{n-1}-1, -1, ..., -1, 0, ..., 0).
inline Rational gt_volume_lidskii(const Partition& lambda) {
  const int n = static_cast<int>(lambda.size());
  if (n <= 1) return 1;
  auto g = build_G_lambda(lambda);
  const int V = g.network.vertex_count(), two = g.outdegree_two_count();
  Rational vol = 0;
  for_each_composition(two, n - 1, WeakComposition(n - 1, 0), [&](const WeakComposition& j) {
    Rational w = 1;
    for (int i = 0; i + 1 < n; ++i) w *= power_over_factorial(Rational(lambda[i] - lambda[i + 1]), j[i]);
    if (w == 0) return;
    NetflowVector arg(V, 0);
    for (int i = 0; i < two; ++i) arg[i] = (i < n - 1 ? j[i] : 0) - 1;
    vol += w * Rational(kostant(g.network, arg));
  });
  return vol;
}

/// The point count with binomials binom(lambda_i - lambda_{i+1} + 1, j_i),
/// binom(1, j) and binom(0, j) and the shifted Kostant arguments.
inline Integer gt_points_lidskii(const Partition& lambda) {
  const int n = static_cast<int>(lambda.size());
  if (n <= 1) return 1;
  auto g = build_G_lambda(lambda);
  const int V = g.network.vertex_count(), r = V - 1, two = g.outdegree_two_count();
  const std::int64_t total = g.network.edge_count() - r;
  std::vector<std::int64_t> top(r);
  for (int i = 0; i < r; ++i) top[i] = i < n - 1 ? lambda[i] - lambda[i + 1] + 1 : (i < two ? 1 : 0);
  Integer count = 0;
  for_each_composition(
      total, r, WeakComposition(r, 0),
      [&](const WeakComposition& j) {
        Integer w = 1;
        for (int i = 0; i < r; ++i) w *= binomial(Integer(top[i]), j[i]);
        if (w == 0) return;
        NetflowVector arg(V, 0);
        for (int i = 0; i < r; ++i) arg[i] = j[i] - (i < two ? 1 : 0);
        count += w * kostant(g.network, arg);
      },
      top);
  return count;
}

/// (b_1-1, ..., b_{n-1}-1, -1, ..., -1, 0, ..., 0) on G_lambda's canonical order.
inline NetflowVector gt_shifted_netflow(int n, const WeakComposition& b) {
  if (static_cast<int>(b.size()) != n - 1) throw PreconditionError("b must have n-1 entries");
  const int V = (n + 2) * (n + 1) / 2 - 2;
  NetflowVector a(V, 0);
  for (int i = 0; i < n * (n - 1) / 2; ++i) a[i] = (i < n - 1 ? b[i] : 0) - 1;
  return a;
}

// ---------------------------------------------------------------------------
// GT(lambda) as a marked order polytope.

inline std::string gt_element_id(int r, int k) { return "y" + std::to_string(r) + "_" + std::to_string(k); }

/// Elements y(r,k) in row-major order; row 1 is marked by lambda.
inline MarkedPoset gt_marked_poset(const Partition& lambda) {
  const int n = static_cast<int>(lambda.size());
  if (n == 0) throw PreconditionError("gt_marked_poset needs n >= 1");
  std::vector<std::string> ids;
  Marking marking;
  std::map<std::pair<int, int>, int> idx;
  for (int r = 1; r <= n; ++r)
    for (int k = 1; k <= n - r + 1; ++k) {
      idx[{r, k}] = static_cast<int>(ids.size());
      ids.push_back(gt_element_id(r, k));
      marking.push_back(r == 1 ? std::optional<Rational>(Rational(lambda[k - 1])) : std::nullopt);
    }
  std::vector<std::pair<int, int>> covers;
  for (int r = 1; r < n; ++r)
    for (int k = 1; k <= n - r; ++k) {
      covers.emplace_back(idx[{r + 1, k}], idx[{r, k}]);
      covers.emplace_back(idx[{r, k + 1}], idx[{r + 1, k}]);
    }
  return MarkedPoset(Poset::from_covers(std::move(ids), covers), std::move(marking));
}

/// Grid drawing with lambda in the rightmost column.
inline BoundedEmbedding gt_embedding(const Partition& lambda) {
  const int n = static_cast<int>(lambda.size());
  auto mp = gt_marked_poset(lambda);
  std::vector<Point2> pts;
  for (int r = 1; r <= n; ++r)
    for (int k = 1; k <= n - r + 1; ++k) pts.push_back({Rational(-r), Rational(-(r + 2 * k))});
  return embedding_from_coordinates(mp, pts);
}

/// Everything needed to move GT patterns onto G_lambda: the dual network of
/// the GT embedding, its simplification and an isomorphism onto G_lambda.
struct GTTransform {
  Partition lambda;
  BoundedEmbedding embedding;
  DualNetwork dual;
  SimplifiedNetwork simplified;
  GTNetwork target;
  SimplifiedNetwork target_simplified;
  NetworkIsomorphism iso;  // simplified dual -> simplified G_lambda
};

inline GTTransform gt_transform(const Partition& lambda) {
  const int n = static_cast<int>(lambda.size());
  GTTransform t{lambda, gt_embedding(lambda), {}, {}, build_G_lambda(lambda), {}, {}};
  t.dual = build_G_PAlambda(t.embedding);
  if (n == 1) return t;
  // Structure does not depend on lambda; a lambda with distinct gaps pins the
  // sources, and its simplification is reused for every lambda.
  std::vector<std::int64_t> generic(n);
  for (int i = n - 1, acc = 0; i >= 0; --i) generic[i] = acc += (n - i);
  Partition g(generic);
  auto generic_dual = build_G_PAlambda(gt_embedding(g));
  if (generic_dual.crossing != t.dual.crossing) throw Error("GT dual network edge order depends on lambda");
  t.simplified = simplify_network(generic_dual.network);
  t.target_simplified = simplify_network(build_G_lambda(g).network);
  auto iso = find_isomorphism(t.simplified.network, t.target_simplified.network);
  if (!iso) throw Error("GT dual network is not isomorphic to G_lambda");
  t.iso = *iso;
  return t;
}

/// Image of a pattern on G_lambda under the integral equivalence.
inline IntegerFlow gt_to_flow(const GTTransform& t, const GTPattern& x) {
  if (x.side() != static_cast<int>(t.lambda.size()) || x.rows()[0] != t.lambda.parts())
    throw PreconditionError("pattern does not have top row lambda");
  if (x.side() == 1) return {};
  IntegerFlow f = gamma(t.embedding, t.dual, x.flatten());
  IntegerFlow mid(t.target_simplified.network.edge_count(), 0);
  for (std::size_t k = 0; k < t.simplified.kept_edges.size(); ++k) mid[t.iso.edge_map[k]] = f[t.simplified.kept_edges[k]];
  return lift_flow(t.target.network, t.target_simplified, mid);
}

inline IntegerFlow gt_to_flow(const Partition& lambda, const GTPattern& x) { return gt_to_flow(gt_transform(lambda), x); }

// ---------------------------------------------------------------------------
// Shifted tableaux and flows on G_lambda with the shifted netflow.

namespace detail {

/// Fills in chain-edge flows of G_lambda from its a/b values by conservation.
inline IntegerFlow gt_complete_flow(const GTNetwork& g, const NetflowVector& netflow,
                                    const std::map<std::pair<int, int>, std::int64_t>& a,
                                    const std::map<std::pair<int, int>, std::int64_t>& b) {
  IntegerFlow f(g.network.edge_count(), -1);
  for (auto [key, k] : g.a_edge) f[k] = a.count(key) ? a.at(key) : 0;
  for (auto [key, k] : g.b_edge) f[k] = b.count(key) ? b.at(key) : 0;
  for (int v = 0; v < g.network.vertex_count(); ++v) {
    const auto& oe = g.network.out_edges(v);
    if (oe.size() != 1 || f[oe[0]] != -1) continue;
    std::int64_t in = netflow[v];
    for (int k : g.network.in_edges(v)) in += f[k];
    f[oe[0]] = in;
  }
  return f;
}

}  // namespace detail

/// The flow on G_lambda given by the a/b counting formulas.
inline IntegerFlow shsyt_to_flow(const ShiftedTableau& T) {
  const int n = T.side();
  auto g = build_G_lambda(Partition(std::vector<std::int64_t>(n, 0)));
  if (n == 1) return {};
  std::map<std::pair<int, int>, std::int64_t> a, b;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      std::int64_t ca = 0, cb = 0;
      for (int i2 = 1; i2 <= n; ++i2)
        for (int j2 = i2; j2 <= n; ++j2) {
          int v = T.at(i2, j2);
          if (T.at(i, j - 1) < v && v < T.at(i, j) && i2 < i && j2 >= j) ++ca;
          if (i + 1 <= j && T.at(i, j) < v && v < T.at(i + 1, j) && i2 <= i && j2 > j) ++cb;
        }
      a[{j - i + 1, j}] = ca;
      b[{j - i + 1, j}] = cb;
    }
  auto netflow = gt_shifted_netflow(n, T.diagonal_gaps());
  return detail::gt_complete_flow(g, netflow, a, b);
}

/// Inverse of shsyt_to_flow, by peeling off the vertices v_2j.
inline ShiftedTableau flow_to_shsyt(int n, const IntegerFlow& f) {
  if (n < 1) throw PreconditionError("flow_to_shsyt needs n >= 1");
  if (n == 1) return ShiftedTableau(1, {{1}});
  auto g = build_G_lambda(Partition(std::vector<std::int64_t>(n, 0)));
  if (static_cast<int>(f.size()) != g.network.edge_count()) throw PreconditionError("flow has the wrong length");
  std::map<std::pair<int, int>, std::int64_t> a, b;
  for (auto [key, k] : g.a_edge) a[key] = f[k];
  for (auto [key, k] : g.b_edge) b[key] = f[k];
  WeakComposition bv(n - 1);
  for (int j = 2; j <= n; ++j) bv[j - 2] = a[{2, j}] + b[{2, j}] + 1;
  if (!is_flow(g.network, f, gt_shifted_netflow(n, bv)))
    throw PreconditionError("flow does not have the shifted netflow of any diagonal vector");
  std::function<ShiftedTableau(int, const std::map<std::pair<int, int>, std::int64_t>&,
                               const std::map<std::pair<int, int>, std::int64_t>&)>
      build = [&](int m, const auto& A, const auto& B) -> ShiftedTableau {
    if (m == 1) return ShiftedTableau(1, {{1}});
    WeakComposition bb(m - 1);
    for (int j = 2; j <= m; ++j) bb[j - 2] = A.at({2, j}) + B.at({2, j}) + 1;
    std::map<std::pair<int, int>, std::int64_t> A2, B2;
    for (int i = 2; i <= m - 1; ++i)
      for (int j = i; j <= m - 1; ++j) {
        A2[{i, j}] = A.at({i + 1, j + 1});
        B2[{i, j}] = B.at({i + 1, j + 1});
      }
    ShiftedTableau sub = build(m - 1, A2, B2);
    std::vector<std::int64_t> prefix(m, 0);
    for (int i = 1; i < m; ++i) prefix[i] = prefix[i - 1] + bb[i - 1];
    std::vector<std::vector<int>> rows(m);
    std::int64_t acc = 0;
    for (int i = 1; i <= m; ++i) {
      rows[i - 1].push_back(static_cast<int>(i + acc));
      if (i < m) acc += bb[i - 1];
    }
    for (int i = 1; i <= m - 1; ++i)
      for (int j = i; j <= m - 1; ++j) {
        int v = sub.at(i, j);
        int shift = 1;
        while (shift < m && v > prefix[shift]) ++shift;
        rows[i - 1].push_back(v + shift);
      }
    return ShiftedTableau(m, std::move(rows));
  };
  try {
    return build(n, a, b);
  } catch (const ValidationError& e) {
    throw PreconditionError(std::string("flow does not correspond to a shifted tableau: ") + e.what());
  }
}

}  // namespace gtflow
