#pragma once

// Partitions, weak compositions, dominance order and the tableaux used as
// counting oracles.

#include "gtflow/arith.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace gtflow {

using WeakComposition = std::vector<std::int64_t>;

/// Weakly decreasing list of nonnegative integers.
class Partition {
public:
  Partition() = default;
  explicit Partition(std::vector<std::int64_t> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) throw ValidationError("partition parts must be nonnegative");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw ValidationError("partition parts must be weakly decreasing");
    }
  }

  std::size_t size() const { return parts_.size(); }
  std::int64_t operator[](std::size_t i) const { return parts_[i]; }
  const std::vector<std::int64_t>& parts() const { return parts_; }
  /// Number of nonzero parts.
  std::size_t length() const {
    return static_cast<std::size_t>(std::count_if(parts_.begin(), parts_.end(), [](auto p) { return p > 0; }));
  }
  std::int64_t weight() const { return std::accumulate(parts_.begin(), parts_.end(), std::int64_t{0}); }

  friend bool operator==(const Partition&, const Partition&) = default;

private:
  std::vector<std::int64_t> parts_;
};

inline bool dominance_geq(const WeakComposition& j, const WeakComposition& o) {
  if (j.size() != o.size()) throw PreconditionError("dominance_geq: length mismatch");
  std::int64_t sj = 0, so = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    sj += j[i];
    so += o[i];
    if (sj < so) return false;
  }
  return true;
}

/// Calls `visit` for each weak composition of `total` into `parts` parts that
/// dominates `at_least`, in lexicographically decreasing order. `cap`, when
/// nonempty, bounds each entry from above.
inline void for_each_composition(std::int64_t total, std::size_t parts, const WeakComposition& at_least,
                                 const std::function<void(const WeakComposition&)>& visit,
                                 const std::vector<std::int64_t>& cap = {}) {
  if (total < 0 || parts == 0) return;
  if (at_least.size() != parts) throw PreconditionError("enumerate_compositions: at_least has wrong length");
  WeakComposition cur(parts, 0);
  std::vector<std::int64_t> need(parts + 1, 0);  // prefix sums of at_least
  for (std::size_t i = 0; i < parts; ++i) need[i + 1] = need[i] + at_least[i];
  std::function<void(std::size_t, std::int64_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t used,
                                                                         std::int64_t remaining) {
    if (i + 1 == parts) {
      if (!cap.empty() && remaining > cap[i]) return;
      cur[i] = remaining;
      if (used + remaining >= need[i + 1]) visit(cur);
      return;
    }
    std::int64_t hi = remaining;
    if (!cap.empty()) hi = std::min(hi, cap[i]);
    for (std::int64_t v = hi; v >= 0; --v) {
      if (used + v < need[i + 1]) break;
      cur[i] = v;
      rec(i + 1, used + v, remaining - v);
    }
  };
  rec(0, 0, total);
}

inline std::vector<WeakComposition> enumerate_compositions(std::int64_t total, std::size_t parts,
                                                           const WeakComposition& at_least) {
  std::vector<WeakComposition> out;
  for_each_composition(total, parts, at_least, [&](const WeakComposition& c) { out.push_back(c); });
  return out;
}

// ---------------------------------------------------------------------------
// Shifted standard Young tableaux of staircase shape {(i,j) : 1 <= i <= j <= n}.

class ShiftedTableau {
public:
  ShiftedTableau() = default;
  /// `rows[i][k]` holds T(i+1, i+1+k); row i has n-i entries.
  ShiftedTableau(int n, std::vector<std::vector<int>> rows) : n_(n), rows_(std::move(rows)) { validate(); }

  int side() const { return n_; }
  /// 1-based access T(i,j), i <= j.
  int at(int i, int j) const { return rows_[i - 1][j - i]; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }

  std::vector<int> diagonal() const {
    std::vector<int> d;
    for (int i = 1; i <= n_; ++i) d.push_back(at(i, i));
    return d;
  }

  /// The b-vector with T(i,i) = i + b_1 + ... + b_{i-1}.
  WeakComposition diagonal_gaps() const {
    WeakComposition b;
    for (int i = 2; i <= n_; ++i) b.push_back(at(i, i) - at(i - 1, i - 1) - 1);
    return b;
  }

  friend bool operator==(const ShiftedTableau&, const ShiftedTableau&) = default;
  friend auto operator<=>(const ShiftedTableau& a, const ShiftedTableau& b) { return a.rows_ <=> b.rows_; }

private:
  void validate() const {
    if (n_ < 1 || static_cast<int>(rows_.size()) != n_) throw ValidationError("shifted tableau: wrong number of rows");
    int cells = n_ * (n_ + 1) / 2;
    std::vector<bool> seen(cells + 1, false);
    for (int i = 1; i <= n_; ++i) {
      if (static_cast<int>(rows_[i - 1].size()) != n_ - i + 1) throw ValidationError("shifted tableau: ragged row");
      for (int j = i; j <= n_; ++j) {
        int v = at(i, j);
        if (v < 1 || v > cells || seen[v]) throw ValidationError("shifted tableau: entries are not a permutation");
        seen[v] = true;
        if (j > i && at(i, j - 1) >= v) throw ValidationError("shifted tableau: row not increasing");
        if (i > 1 && at(i - 1, j) >= v) throw ValidationError("shifted tableau: column not increasing");
      }
    }
  }

  int n_ = 0;
  std::vector<std::vector<int>> rows_;
};

/// All shSYT of side n, by placing 1, 2, ... into addable corners.
inline std::vector<ShiftedTableau> enumerate_shsyt(int n) {
  if (n < 1) throw PreconditionError("enumerate_shsyt requires n >= 1");
  std::vector<std::vector<int>> rows(n);
  for (int i = 0; i < n; ++i) rows[i].assign(n - i, 0);
  std::vector<int> filled(n, 0);  // number of filled cells in each row
  const int cells = n * (n + 1) / 2;
  std::vector<ShiftedTableau> out;
  std::function<void(int)> rec = [&](int v) {
    if (v > cells) {
      out.emplace_back(n, rows);
      return;
    }
    for (int i = 0; i < n; ++i) {
      int k = filled[i];
      if (k == n - i) continue;
      // cell (i, i+k) needs the cell above, (i-1, i+k), filled
      if (i > 0 && filled[i - 1] < k + 2) continue;
      rows[i][k] = v;
      ++filled[i];
      rec(v + 1);
      --filled[i];
      rows[i][k] = 0;
    }
  };
  rec(1);
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of shSYT of side n with T(i,i) = i + b_1 + ... + b_{i-1}.
inline Integer count_N(int n, const WeakComposition& b) {
  if (n < 1) throw PreconditionError("count_N requires n >= 1");
  if (static_cast<int>(b.size()) != n - 1) throw PreconditionError("count_N: b must have n-1 entries");
  for (auto x : b)
    if (x < 0) throw PreconditionError("count_N: b must be nonnegative");
  std::vector<int> diag(n);
  std::int64_t acc = 0;
  for (int i = 0; i < n; ++i) {
    if (i > 0) acc += b[i - 1];
    diag[i] = static_cast<int>(std::min<std::int64_t>(i + 1 + acc, 1 << 20));
  }
  const int cells = n * (n + 1) / 2;
  if (diag.back() > cells) return 0;
  // Backtrack as in enumerate_shsyt, forcing diagonal cells to their values.
  std::vector<int> filled(n, 0);
  std::vector<int> diag_owner(cells + 1, -1);
  for (int i = 0; i < n; ++i) diag_owner[diag[i]] = i;
  Integer count = 0;
  std::function<void(int)> rec = [&](int v) {
    if (v > cells) {
      ++count;
      return;
    }
    for (int i = 0; i < n; ++i) {
      int k = filled[i];
      if (k == n - i) continue;
      if (i > 0 && filled[i - 1] < k + 2) continue;
      bool is_diag_cell = (k == 0);
      if (is_diag_cell != (diag_owner[v] == i)) continue;
      ++filled[i];
      rec(v + 1);
      --filled[i];
    }
  };
  rec(1);
  return count;
}

/// Number of semistandard tableaux of the given shape with entries in [alphabet],
/// by direct enumeration of fillings.
inline Integer count_ssyt(const Partition& shape, int alphabet) {
  std::vector<std::pair<int, int>> cells;
  for (std::size_t r = 0; r < shape.size(); ++r)
    for (std::int64_t c = 0; c < shape[r]; ++c) cells.emplace_back(static_cast<int>(r), static_cast<int>(c));
  if (cells.empty()) return 1;
  std::vector<std::vector<int>> fill(shape.size());
  for (std::size_t r = 0; r < shape.size(); ++r) fill[r].assign(shape[r], 0);
  Integer count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == cells.size()) {
      ++count;
      return;
    }
    auto [r, c] = cells[idx];
    int lo = 1;
    if (c > 0) lo = std::max(lo, fill[r][c - 1]);
    if (r > 0) lo = std::max(lo, fill[r - 1][c] + 1);
    for (int v = lo; v <= alphabet; ++v) {
      fill[r][c] = v;
      rec(idx + 1);
    }
  };
  rec(0);
  return count;
}

}  // namespace gtflow
