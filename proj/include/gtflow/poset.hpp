#pragma once

// Finite posets, marked posets and marked order polytopes: lattice points,
// linear extensions, the linear-extension volume formula, vertices,
// Minkowski additivity and log-concavity of the extension counts.

#include "gtflow/arith.hpp"
#include "gtflow/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace gtflow {

/// A finite poset on elements 0..n-1 carrying string ids. Stores the cover
/// relation and its transitive closure.
class Poset {
public:
  Poset() = default;

  /// Builds from a cover list; rejects cycles and redundant covers.
  static Poset from_covers(std::vector<std::string> ids, const std::vector<std::pair<int, int>>& covers) {
    Poset p = from_relations(std::move(ids), covers);
    if (p.covers_.size() != dedup(covers).size())
      throw ValidationError("cover list contains a relation implied by transitivity");
    return p;
  }

  /// Builds from arbitrary relations p < q, keeping only the covers.
  static Poset from_relations(std::vector<std::string> ids, const std::vector<std::pair<int, int>>& relations) {
    Poset p;
    p.ids_ = std::move(ids);
    const int n = p.size();
    for (int i = 0; i < n; ++i) {
      if (p.index_.count(p.ids_[i])) throw ValidationError("duplicate element id '" + p.ids_[i] + "'");
      p.index_[p.ids_[i]] = i;
    }
    p.less_.assign(n, std::vector<bool>(n, false));
    for (auto [a, b] : relations) {
      if (a < 0 || b < 0 || a >= n || b >= n) throw ValidationError("relation refers to an unknown element");
      if (a == b) throw ValidationError("relation " + p.ids_[a] + " < " + p.ids_[a] + " is reflexive");
      p.less_[a][b] = true;
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (p.less_[i][k])
          for (int j = 0; j < n; ++j)
            if (p.less_[k][j]) p.less_[i][j] = true;
    for (int i = 0; i < n; ++i)
      if (p.less_[i][i]) throw ValidationError("relations contain a cycle through '" + p.ids_[i] + "'");
    p.upper_.assign(n, {});
    p.lower_.assign(n, {});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!p.less_[i][j]) continue;
        bool cover = true;
        for (int k = 0; k < n && cover; ++k)
          if (p.less_[i][k] && p.less_[k][j]) cover = false;
        if (cover) {
          p.covers_.emplace_back(i, j);
          p.upper_[i].push_back(j);
          p.lower_[j].push_back(i);
        }
      }
    p.compute_topological_order();
    return p;
  }

  int size() const { return static_cast<int>(ids_.size()); }
  const std::string& id(int i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const { return ids_; }
  int index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw ValidationError("unknown element id '" + id + "'");
    return it->second;
  }
  bool has_id(const std::string& id) const { return index_.count(id) > 0; }

  bool less(int a, int b) const { return less_[a][b]; }
  bool leq(int a, int b) const { return a == b || less_[a][b]; }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }
  bool covers(int lower, int upper) const {
    return std::find(upper_[lower].begin(), upper_[lower].end(), upper) != upper_[lower].end();
  }
  const std::vector<std::pair<int, int>>& cover_list() const { return covers_; }
  const std::vector<int>& upper_covers(int i) const { return upper_[i]; }
  const std::vector<int>& lower_covers(int i) const { return lower_[i]; }
  bool is_minimal(int i) const { return lower_[i].empty(); }
  bool is_maximal(int i) const { return upper_[i].empty(); }

  /// A fixed linear order of the elements compatible with the poset (smaller first).
  const std::vector<int>& topological_order() const { return topo_; }
  int topological_rank(int i) const { return topo_rank_[i]; }

private:
  static std::vector<std::pair<int, int>> dedup(std::vector<std::pair<int, int>> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  void compute_topological_order() {
    const int n = size();
    std::vector<int> indeg(n, 0);
    for (auto [a, b] : covers_) ++indeg[b];
    topo_.clear();
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
      for (int i = 0; i < n; ++i)
        if (!done[i] && indeg[i] == 0) {
          done[i] = true;
          topo_.push_back(i);
          for (int u : upper_[i]) --indeg[u];
          break;
        }
    }
    topo_rank_.assign(n, 0);
    for (int k = 0; k < n; ++k) topo_rank_[topo_[k]] = k;
  }

  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<bool>> less_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> upper_, lower_;
  std::vector<int> topo_, topo_rank_;
};

/// Partial map from elements to marking values.
using Marking = std::vector<std::optional<Rational>>;

/// A poset with a marked subset A and values on it. Construction does not
/// validate; call validate_marked_poset.
class MarkedPoset {
public:
  MarkedPoset() = default;
  MarkedPoset(Poset poset, Marking marking) : poset_(std::move(poset)), marking_(std::move(marking)) {
    if (static_cast<int>(marking_.size()) != poset_.size())
      throw ValidationError("marking must have one slot per poset element");
  }

  const Poset& poset() const { return poset_; }
  const Marking& marking() const { return marking_; }
  int size() const { return poset_.size(); }
  bool is_marked(int i) const { return marking_[i].has_value(); }
  const Rational& value(int i) const { return *marking_[i]; }

  std::vector<int> marked_elements() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (is_marked(i)) out.push_back(i);
    return out;
  }
  std::vector<int> unmarked_elements() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (!is_marked(i)) out.push_back(i);
    return out;
  }

  /// Marked elements as p_1, ..., p_k: values descending, ties broken so that
  /// larger elements come first.
  std::vector<int> sorted_marked() const {
    auto m = marked_elements();
    std::sort(m.begin(), m.end(), [&](int a, int b) {
      if (value(a) != value(b)) return value(a) > value(b);
      return poset_.topological_rank(a) > poset_.topological_rank(b);
    });
    return m;
  }

  MarkedPoset with_marking(Marking m) const { return MarkedPoset(poset_, std::move(m)); }

  /// Same poset with every marking multiplied by t.
  MarkedPoset dilated(const Rational& t) const {
    Marking m = marking_;
    for (auto& v : m)
      if (v) *v *= t;
    return MarkedPoset(poset_, std::move(m));
  }

  bool integral_marking() const {
    for (const auto& v : marking_)
      if (v && !is_integral(*v)) return false;
    return true;
  }

private:
  Poset poset_;
  Marking marking_;
};

struct ValidationResult {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

inline ValidationResult validate_marked_poset(const MarkedPoset& mp) {
  const auto& p = mp.poset();
  for (int i = 0; i < p.size(); ++i)
    if ((p.is_minimal(i) || p.is_maximal(i)) && !mp.is_marked(i))
      return {false, "extremal element '" + p.id(i) + "' is not marked"};
  for (int a : mp.marked_elements())
    for (int b : mp.marked_elements())
      if (p.less(a, b) && mp.value(a) > mp.value(b))
        return {false, "marking is not order-preserving on '" + p.id(a) + "' < '" + p.id(b) + "'"};
  return {};
}

/// Integer point of a marked order polytope, indexed by element.
using LatticePoint = std::vector<std::int64_t>;

namespace detail {

/// Bounds from the marked elements above and below every element.
struct MarkBounds {
  std::vector<std::int64_t> lo, hi;
};

inline MarkBounds integer_mark_bounds(const MarkedPoset& mp) {
  const auto& p = mp.poset();
  MarkBounds b;
  b.lo.assign(p.size(), std::numeric_limits<std::int64_t>::min());
  b.hi.assign(p.size(), std::numeric_limits<std::int64_t>::max());
  for (int a : mp.marked_elements()) {
    std::int64_t v = to_i64(to_integer(mp.value(a)));
    for (int i = 0; i < p.size(); ++i) {
      if (p.leq(a, i)) b.lo[i] = std::max(b.lo[i], v);
      if (p.leq(i, a)) b.hi[i] = std::min(b.hi[i], v);
    }
  }
  return b;
}

/// Interval-propagation search over the unmarked elements in topological
/// order. `visit` is called on complete points; `memoize` enables the
/// frontier-keyed counting DP instead.
class LatticeSearch {
public:
  explicit LatticeSearch(const MarkedPoset& mp) : mp_(mp), p_(mp.poset()), bounds_(integer_mark_bounds(mp)) {
    if (validate_marked_poset(mp).ok == false) throw PreconditionError(validate_marked_poset(mp).message);
    x_.assign(p_.size(), 0);
    for (int a : mp.marked_elements()) x_[a] = to_i64(to_integer(mp.value(a)));
    for (int e : p_.topological_order())
      if (!mp.is_marked(e)) order_.push_back(e);
    std::vector<int> pos(p_.size(), -1);
    for (int k = 0; k < static_cast<int>(order_.size()); ++k) pos[order_[k]] = k;
    // frontier_[k]: elements assigned before step k that still constrain a later one
    frontier_.assign(order_.size() + 1, {});
    for (int k = 0; k <= static_cast<int>(order_.size()); ++k)
      for (int j = 0; j < k; ++j) {
        int e = order_[j];
        bool live = false;
        for (int u : p_.upper_covers(e))
          if (pos[u] >= k) live = true;
        for (int l : p_.lower_covers(e))
          if (pos[l] >= k) live = true;
        if (live) frontier_[k].push_back(e);
      }
  }

  void enumerate(const std::function<void(const LatticePoint&)>& visit) {
    visit_ = &visit;
    run(0);
  }

  Integer count() {
    memo_.assign(order_.size() + 1, {});
    return count_from(0);
  }

private:
  bool feasible_for(int e, std::int64_t& lo, std::int64_t& hi) const {
    lo = bounds_.lo[e];
    hi = bounds_.hi[e];
    for (int l : p_.lower_covers(e)) lo = std::max(lo, x_[l]);
    return lo <= hi;
  }

  void run(std::size_t k) {
    if (k == order_.size()) {
      (*visit_)(x_);
      return;
    }
    int e = order_[k];
    std::int64_t lo, hi;
    if (!feasible_for(e, lo, hi)) return;
    for (std::int64_t v = lo; v <= hi; ++v) {
      x_[e] = v;
      run(k + 1);
    }
  }

  Integer count_from(std::size_t k) {
    if (k == order_.size()) return 1;
    std::vector<std::int64_t> key;
    for (int f : frontier_[k]) key.push_back(x_[f]);
    auto it = memo_[k].find(key);
    if (it != memo_[k].end()) return it->second;
    int e = order_[k];
    std::int64_t lo, hi;
    Integer total = 0;
    if (feasible_for(e, lo, hi))
      for (std::int64_t v = lo; v <= hi; ++v) {
        x_[e] = v;
        total += count_from(k + 1);
      }
    memo_[k].emplace(std::move(key), total);
    return total;
  }

  const MarkedPoset& mp_;
  const Poset& p_;
  MarkBounds bounds_;
  LatticePoint x_;
  std::vector<int> order_;
  std::vector<std::vector<int>> frontier_;
  const std::function<void(const LatticePoint&)>* visit_ = nullptr;
  std::vector<std::map<std::vector<std::int64_t>, Integer>> memo_;
};

}  // namespace detail

/// Every integer point of O(P,A)_lambda. Markings must be integers.
inline std::vector<LatticePoint> lattice_points(const MarkedPoset& mp) {
  std::vector<LatticePoint> out;
  detail::LatticeSearch search(mp);
  search.enumerate([&](const LatticePoint& x) { out.push_back(x); });
  return out;
}

/// |O(P,A)_lambda cap Z^P| without listing the points.
inline Integer count_lattice_points(const MarkedPoset& mp) {
  detail::LatticeSearch search(mp);
  return search.count();
}

inline bool is_in_polytope(const MarkedPoset& mp, const std::vector<Rational>& x) {
  const auto& p = mp.poset();
  if (static_cast<int>(x.size()) != p.size()) return false;
  for (auto [a, b] : p.cover_list())
    if (x[a] > x[b]) return false;
  for (int a : mp.marked_elements())
    if (x[a] != mp.value(a)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Linear extensions, as order-reversing bijections: ext[0] is maximal.

inline void for_each_linear_extension(const Poset& p, const std::function<void(const std::vector<int>&)>& visit) {
  const int n = p.size();
  std::vector<int> remaining_upper(n);
  for (int i = 0; i < n; ++i) remaining_upper[i] = static_cast<int>(p.upper_covers(i).size());
  std::vector<bool> used(n, false);
  std::vector<int> ext;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(ext.size()) == n) {
      visit(ext);
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used[i] || remaining_upper[i] != 0) continue;
      used[i] = true;
      ext.push_back(i);
      for (int l : p.lower_covers(i)) --remaining_upper[l];
      rec();
      for (int l : p.lower_covers(i)) ++remaining_upper[l];
      ext.pop_back();
      used[i] = false;
    }
  };
  rec();
}

inline Integer count_linear_extensions(const Poset& p) {
  // DP over order ideals (downsets of removed maximal elements), keyed by bitmask.
  const int n = p.size();
  if (n > 62) throw PreconditionError("count_linear_extensions supports at most 62 elements");
  std::map<std::uint64_t, Integer> memo;
  std::function<Integer(std::uint64_t)> rec = [&](std::uint64_t removed) -> Integer {
    if (removed == (n == 64 ? ~0ULL : ((1ULL << n) - 1))) return 1;
    auto it = memo.find(removed);
    if (it != memo.end()) return it->second;
    Integer total = 0;
    for (int i = 0; i < n; ++i) {
      if (removed >> i & 1) continue;
      bool maximal = true;
      for (int u : p.upper_covers(i))
        if (!(removed >> u & 1)) maximal = false;
      if (maximal) total += rec(removed | (1ULL << i));
    }
    memo[removed] = total;
    return total;
  };
  return rec(0);
}

/// N_{P,A,lambda}(a) for every a, keyed by a. Built from one pass over all
/// linear extensions in which the sorted marked elements appear in order.
inline std::map<WeakComposition, Integer> marked_extension_table(const MarkedPoset& mp) {
  auto sorted = mp.sorted_marked();
  const int k = static_cast<int>(sorted.size());
  std::vector<int> rank(mp.size(), -1);
  for (int j = 0; j < k; ++j) rank[sorted[j]] = j;
  std::map<WeakComposition, Integer> table;
  for_each_linear_extension(mp.poset(), [&](const std::vector<int>& ext) {
    std::vector<int> pos;
    for (int i = 0; i < static_cast<int>(ext.size()); ++i)
      if (rank[ext[i]] >= 0) {
        if (rank[ext[i]] != static_cast<int>(pos.size())) return;
        pos.push_back(i);
      }
    WeakComposition a;
    for (int j = 0; j + 1 < k; ++j) a.push_back(pos[j + 1] - pos[j] - 1);
    ++table[a];
  });
  return table;
}

/// Number of linear extensions with p_1, ..., p_k at positions
/// 1, 2 + a_1, ..., k + a_1 + ... + a_{k-1}.
inline Integer count_marked_extensions(const MarkedPoset& mp, const WeakComposition& a) {
  auto sorted = mp.sorted_marked();
  if (a.size() + 1 != sorted.size())
    throw PreconditionError("count_marked_extensions: a must have one entry fewer than the marked set");
  std::int64_t total = 0;
  for (auto x : a) {
    if (x < 0) return 0;
    total += x;
  }
  if (total + static_cast<std::int64_t>(sorted.size()) != mp.size()) return 0;
  auto table = marked_extension_table(mp);
  auto it = table.find(a);
  return it == table.end() ? Integer(0) : it->second;
}

/// Volume of the projection of O(P,A)_lambda to the unmarked coordinates,
/// via the linear-extension formula.
inline Rational marked_volume(const MarkedPoset& mp) {
  if (auto v = validate_marked_poset(mp); !v) throw PreconditionError(v.message);
  auto sorted = mp.sorted_marked();
  std::vector<Rational> gaps;
  for (std::size_t j = 0; j + 1 < sorted.size(); ++j) gaps.push_back(mp.value(sorted[j]) - mp.value(sorted[j + 1]));
  Rational vol = 0;
  for (const auto& [a, count] : marked_extension_table(mp)) {
    Rational term(count);
    for (std::size_t j = 0; j < a.size(); ++j) term *= power_over_factorial(gaps[j], a[j]);
    vol += term;
  }
  return vol;
}

// ---------------------------------------------------------------------------
// Vertices.

/// Blocks of the partition pi_x: transitive closure of "comparable with equal value".
inline std::vector<std::vector<int>> point_partition(const MarkedPoset& mp, const std::vector<Rational>& x) {
  const auto& p = mp.poset();
  std::vector<int> parent(p.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (auto [a, b] : p.cover_list())
    if (x[a] == x[b]) parent[find(a)] = find(b);
  std::map<int, std::vector<int>> blocks;
  for (int i = 0; i < p.size(); ++i) blocks[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, block] : blocks) out.push_back(std::move(block));
  return out;
}

inline bool is_vertex(const MarkedPoset& mp, const std::vector<Rational>& x) {
  if (!is_in_polytope(mp, x)) throw PreconditionError("is_vertex: point is not in the marked order polytope");
  for (const auto& block : point_partition(mp, x))
    if (std::none_of(block.begin(), block.end(), [&](int e) { return mp.is_marked(e); })) return false;
  return true;
}

/// Vertex set of O(P,A)_lambda. Candidates give every unmarked element the
/// value of some marking; feasible candidates passing is_vertex are kept.
inline std::vector<std::vector<Rational>> enumerate_vertices(const MarkedPoset& mp) {
  if (auto v = validate_marked_poset(mp); !v) throw PreconditionError(v.message);
  const auto& p = mp.poset();
  std::vector<Rational> values;
  for (int a : mp.marked_elements()) values.push_back(mp.value(a));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<Rational> x(p.size());
  for (int a : mp.marked_elements()) x[a] = mp.value(a);
  std::vector<int> order;
  for (int e : p.topological_order())
    if (!mp.is_marked(e)) order.push_back(e);
  std::vector<std::vector<Rational>> out;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == order.size()) {
      if (is_in_polytope(mp, x) && is_vertex(mp, x)) out.push_back(x);
      return;
    }
    int e = order[k];
    for (const auto& v : values) {
      bool ok = true;
      for (int l : p.lower_covers(e))
        if ((mp.is_marked(l) || std::find(order.begin(), order.begin() + k, l) != order.begin() + k) && x[l] > v)
          ok = false;
      for (int a : mp.marked_elements())
        if ((p.less(e, a) && v > mp.value(a)) || (p.less(a, e) && v < mp.value(a))) ok = false;
      if (!ok) continue;
      x[e] = v;
      rec(k + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline Rational support(const std::vector<std::vector<Rational>>& vertices, const std::vector<Rational>& c,
                        bool maximize = true) {
  std::optional<Rational> best;
  for (const auto& v : vertices) {
    Rational s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += c[i] * v[i];
    if (!best || (maximize ? s > *best : s < *best)) best = s;
  }
  if (!best) throw PreconditionError("support function of an empty polytope");
  return *best;
}

inline std::vector<Rational> random_objective(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-60, 60), den(1, 7);
  std::vector<Rational> c;
  for (int i = 0; i < n; ++i) c.emplace_back(num(rng), den(rng));
  return c;
}

}  // namespace detail

/// Checks O_{lambda+mu} = O_lambda + O_mu through additivity of support
/// functions on `trials` seeded random rational objectives.
inline bool check_minkowski(const MarkedPoset& base, const Marking& lambda, const Marking& mu, int trials,
                            std::uint64_t seed = 20240601) {
  auto P_l = base.with_marking(lambda), P_m = base.with_marking(mu);
  Marking sum(base.size());
  for (int i = 0; i < base.size(); ++i) {
    if (lambda[i].has_value() != mu[i].has_value())
      throw PreconditionError("check_minkowski: markings must share the marked set");
    if (lambda[i]) sum[i] = *lambda[i] + *mu[i];
  }
  auto P_s = base.with_marking(sum);
  auto V_l = enumerate_vertices(P_l), V_m = enumerate_vertices(P_m), V_s = enumerate_vertices(P_s);
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    auto c = detail::random_objective(rng, base.size());
    if (detail::support(V_s, c) != detail::support(V_l, c) + detail::support(V_m, c)) return false;
  }
  return true;
}

/// The unit markings omega_i: 1 on p_1..p_i, 0 on the other marked elements.
inline std::vector<Marking> unit_markings(const MarkedPoset& mp) {
  auto sorted = mp.sorted_marked();
  std::vector<Marking> out;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    Marking w(mp.size());
    for (std::size_t j = 0; j < sorted.size(); ++j) w[sorted[j]] = Rational(j < i ? 1 : 0);
    out.push_back(std::move(w));
  }
  return out;
}

/// Checks O_lambda = sum_i (lambda_i - lambda_{i+1}) O_{omega_i} (lambda_{k+1} = 0)
/// through support functions.
inline bool check_minkowski_decomposition(const MarkedPoset& mp, int trials, std::uint64_t seed = 20240602) {
  auto sorted = mp.sorted_marked();
  auto omegas = unit_markings(mp);
  std::vector<std::vector<std::vector<Rational>>> pieces;
  for (const auto& w : omegas) pieces.push_back(enumerate_vertices(mp.with_marking(w)));
  auto whole = enumerate_vertices(mp);
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    auto c = detail::random_objective(rng, mp.size());
    Rational rhs = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      Rational coeff = mp.value(sorted[i]) - (i + 1 < sorted.size() ? mp.value(sorted[i + 1]) : Rational(0));
      if (coeff >= 0) rhs += coeff * detail::support(pieces[i], c, true);
      else rhs += coeff * detail::support(pieces[i], c, false);
    }
    if (detail::support(whole, c) != rhs) return false;
  }
  return true;
}

struct LogConcavityViolation {
  WeakComposition a;
  int i = 0;  // indices of the two coordinates exchanging one unit
  int j = 0;
};

/// Checks N(a)^2 >= N(a - e_i + e_j) N(a + e_i - e_j) for every feasible a and
/// every pair i < j with a_i, a_j >= 1, and returns the failures.
inline std::vector<LogConcavityViolation> check_log_concavity(const MarkedPoset& mp) {
  if (auto v = validate_marked_poset(mp); !v) throw PreconditionError(v.message);
  auto table = marked_extension_table(mp);
  auto N = [&](const WeakComposition& a) -> Integer {
    auto it = table.find(a);
    return it == table.end() ? Integer(0) : it->second;
  };
  const std::size_t k1 = mp.sorted_marked().size() - 1;
  const std::int64_t total = mp.size() - static_cast<std::int64_t>(k1) - 1;
  std::vector<LogConcavityViolation> out;
  if (k1 == 0) return out;
  for_each_composition(total, k1, WeakComposition(k1, 0), [&](const WeakComposition& a) {
    for (std::size_t i = 0; i < k1; ++i)
      for (std::size_t j = i + 1; j < k1; ++j) {
        if (a[i] < 1 || a[j] < 1) continue;
        auto lo = a, hi = a;
        --lo[i];
        ++lo[j];
        ++hi[i];
        --hi[j];
        Integer n0 = N(a);
        if (n0 * n0 < N(lo) * N(hi)) out.push_back({a, static_cast<int>(i), static_cast<int>(j)});
      }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Order polytopes O(P) as marked polytopes of P-hat.

inline constexpr const char* kBottomId = "^0";
inline constexpr const char* kTopId = "^1";

/// P-hat with 0-hat marked `bottom` and 1-hat marked `top`.
inline MarkedPoset order_polytope_marked(const Poset& p, const Rational& bottom = 0, const Rational& top = 1) {
  std::vector<std::string> ids = p.ids();
  const int n = p.size();
  ids.push_back(kBottomId);
  ids.push_back(kTopId);
  std::vector<std::pair<int, int>> rel = p.cover_list();
  for (int i = 0; i < n; ++i) {
    rel.emplace_back(n, i);
    rel.emplace_back(i, n + 1);
  }
  if (n == 0) rel.emplace_back(0, 1);
  Marking m(n + 2);
  m[n] = bottom;
  m[n + 1] = top;
  return MarkedPoset(Poset::from_relations(std::move(ids), rel), std::move(m));
}

/// Order-preserving maps P -> {0..m}, counted by brute force over all maps.
inline Integer count_order_preserving_maps(const Poset& p, int m) {
  const int n = p.size();
  std::vector<int> x(n, 0);
  Integer count = 0;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      for (auto [a, b] : p.cover_list())
        if (x[a] > x[b]) return;
      ++count;
      return;
    }
    for (int v = 0; v <= m; ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

struct OrderPolynomialCheck {
  Integer lattice_count;
  Integer map_count;
  bool ok() const { return lattice_count == map_count; }
};

/// Lattice points of m O(P) versus order-preserving maps P -> {0..m}.
inline OrderPolynomialCheck order_polynomial_check(const Poset& p, int m) {
  if (m < 0) throw PreconditionError("order_polynomial_check requires m >= 0");
  return {count_lattice_points(order_polytope_marked(p, 0, m)), count_order_preserving_maps(p, m)};
}

}  // namespace gtflow
