#pragma once

// Leading Ehrhart coefficients recovered from dilation counts by exact
// finite differences.

#include "gtflow/arith.hpp"

#include <functional>
#include <vector>

namespace gtflow {

struct EhrhartFit {
  std::vector<Integer> counts;  // L(0), L(1), ..., L(degree + 1)
  int degree = 0;
  Rational leading;             // Delta^degree L(0) / degree!
  bool polynomial = false;      // Delta^(degree+1) L(0) == 0
};

/// k-th forward difference of `values` at 0.
inline Integer forward_difference(const std::vector<Integer>& values, int k) {
  if (k < 0 || k >= static_cast<int>(values.size())) throw PreconditionError("forward_difference: not enough values");
  Integer total = 0;
  for (int i = 0; i <= k; ++i) {
    Integer term = binomial(k, i) * values[i];
    total += ((k - i) % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

/// Evaluates `count(t)` for t = 0..degree+1 and fits the degree-`degree`
/// polynomial through the first degree+1 values.
inline EhrhartFit fit_ehrhart(const std::function<Integer(int)>& count, int degree) {
  if (degree < 0) throw PreconditionError("fit_ehrhart: negative degree");
  EhrhartFit fit;
  fit.degree = degree;
  for (int t = 0; t <= degree + 1; ++t) fit.counts.push_back(count(t));
  fit.leading = Rational(forward_difference(fit.counts, degree)) / Rational(factorial(degree));
  fit.polynomial = forward_difference(fit.counts, degree + 1) == 0;
  return fit;
}

}  // namespace gtflow
