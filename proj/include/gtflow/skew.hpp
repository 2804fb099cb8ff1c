#pragma once

// Skew Gelfand-Tsetlin polytopes as marked order polytopes and flow polytopes.

#include "gtflow/combinatorics.hpp"
#include "gtflow/transform.hpp"

#include <string>
#include <vector>

namespace gtflow {

/// Rows 0..m of length n with row 0 = mu, row m = lambda and
/// y(r,i) >= y(r-1,i) >= y(r,i+1).
using SkewPattern = std::vector<std::vector<std::int64_t>>;

namespace detail {

inline void check_skew_shape(const Partition& lambda, const Partition& mu, int m) {
  if (lambda.size() == 0) throw PreconditionError("skew shape needs n >= 1");
  if (lambda.size() != mu.size()) throw PreconditionError("lambda and mu must have the same number of parts");
  if (m < 1) throw PreconditionError("skew shape needs m >= 1");
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (lambda[i] < mu[i]) throw PreconditionError("mu is not contained in lambda");
}

}  // namespace detail

inline std::string skew_element_id(int r, int i) { return "x" + std::to_string(r) + "_" + std::to_string(i); }

/// All integral skew patterns, by direct search.
inline std::vector<SkewPattern> enumerate_skew_patterns(const Partition& lambda, const Partition& mu, int m) {
  detail::check_skew_shape(lambda, mu, m);
  const int n = static_cast<int>(lambda.size());
  SkewPattern y(m + 1, std::vector<std::int64_t>(n, 0));
  y[0] = mu.parts();
  y[m] = lambda.parts();
  std::vector<SkewPattern> out;
  // Row r is bounded by row r-1 from below and by row m from above (entrywise,
  // rows increase with r), and interlaces with row r-1.
  std::function<void(int, int)> rec = [&](int r, int i) {
    if (r == m) {
      for (int k = 0; k < n; ++k) {
        if (y[m][k] < y[m - 1][k]) return;
        if (k + 1 < n && y[m - 1][k] < y[m][k + 1]) return;
      }
      out.push_back(y);
      return;
    }
    if (i == n) {
      rec(r + 1, 0);
      return;
    }
    std::int64_t lo = y[r - 1][i], hi = lambda[i];
    if (i > 0) hi = std::min(hi, y[r - 1][i - 1]);
    for (std::int64_t v = lo; v <= hi; ++v) {
      y[r][i] = v;
      rec(r, i + 1);
    }
  };
  rec(1, 0);
  return out;
}

struct SkewGT {
  Partition lambda, mu;
  int m = 0;
  MarkedPoset poset;
  BoundedEmbedding embedding;

  LatticePoint flatten(const SkewPattern& y) const {
    LatticePoint x;
    for (const auto& row : y) x.insert(x.end(), row.begin(), row.end());
    return x;
  }
};

/// Elements x(r,i) in row-major order; rows 0 and m are marked by mu and lambda.
inline SkewGT build_skew_gt(const Partition& lambda, const Partition& mu, int m) {
  detail::check_skew_shape(lambda, mu, m);
  const int n = static_cast<int>(lambda.size());
  std::vector<std::string> ids;
  Marking marking;
  std::vector<Point2> pts;
  auto idx = [n](int r, int i) { return r * n + (i - 1); };
  for (int r = 0; r <= m; ++r)
    for (int i = 1; i <= n; ++i) {
      ids.push_back(skew_element_id(r, i));
      if (r == 0) marking.emplace_back(Rational(mu[i - 1]));
      else if (r == m) marking.emplace_back(Rational(lambda[i - 1]));
      else marking.emplace_back(std::nullopt);
      pts.push_back({Rational(r), Rational(r - 2 * i)});
    }
  std::vector<std::pair<int, int>> covers;
  for (int r = 1; r <= m; ++r)
    for (int i = 1; i <= n; ++i) {
      covers.emplace_back(idx(r - 1, i), idx(r, i));
      if (i < n) covers.emplace_back(idx(r, i + 1), idx(r - 1, i));
    }
  MarkedPoset mp(Poset::from_covers(std::move(ids), covers), std::move(marking));
  if (auto v = validate_marked_poset(mp); !v) throw PreconditionError(v.message);
  auto emb = embedding_from_coordinates(mp, pts);
  return SkewGT{lambda, mu, m, std::move(mp), std::move(emb)};
}

/// Split FR's left boundary (lambda) and FL's right boundary (mu); interior
/// faces keep their vertex unsplit.
inline std::vector<SplitSide> skew_default_sides(const BoundedEmbedding& emb) {
  std::vector<SplitSide> sides(emb.face_count(), SplitSide::None);
  sides[emb.right_outer_face()] = SplitSide::Left;
  sides[emb.left_outer_face()] = SplitSide::Right;
  return sides;
}

struct SkewFlow {
  SkewGT skew;
  std::vector<SplitSide> sides;
  DualNetwork dual;
  Integer flow_count, lattice_count;
};

/// The flow network for a side assignment, accepted only if its integer-flow
/// count equals the lattice-point count of the marked order polytope.
inline SkewFlow build_skew_flow(const Partition& lambda, const Partition& mu, int m,
                                std::vector<SplitSide> sides = {}) {
  SkewFlow out{build_skew_gt(lambda, mu, m), {}, {}, 0, 0};
  out.sides = sides.empty() ? skew_default_sides(out.skew.embedding) : std::move(sides);
  out.dual = build_dual_network(out.skew.embedding, out.sides);
  out.flow_count = kostant(out.dual.network, out.dual.network.netflow());
  out.lattice_count = count_lattice_points(out.skew.poset);
  if (out.flow_count != out.lattice_count)
    throw ValidationError("side assignment gives " + out.flow_count.str() + " flows but the skew polytope has " +
                          out.lattice_count.str() + " lattice points");
  return out;
}

}  // namespace gtflow
