#pragma once

// Exact integer and rational arithmetic shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gtflow {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// An input object violates one of its structural invariants.
class ValidationError : public Error {
public:
  using Error::Error;
};

inline Integer factorial(std::int64_t n) {
  if (n < 0) throw PreconditionError("factorial of a negative number");
  Integer r = 1;
  for (std::int64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

/// binom(top, k) as a polynomial in `top`, so negative tops are allowed.
/// Returns 0 for k < 0.
inline Integer binomial(const Integer& top, std::int64_t k) {
  if (k < 0) return 0;
  if (top >= 0 && top < k) return 0;
  Integer num = 1;
  for (std::int64_t i = 0; i < k; ++i) num *= (top - i);
  return num / factorial(k);
}

/// Multiset coefficient <<n over k>> = binom(n+k-1, k), polynomial in n.
inline Integer multiset_binomial(const Integer& n, std::int64_t k) {
  if (k < 0) throw PreconditionError("multiset_binomial requires k >= 0");
  return binomial(n + k - 1, k);
}

/// x^e / e! with the convention 0^0 = 1.
inline Rational power_over_factorial(const Rational& x, std::int64_t e) {
  if (e < 0) return 0;
  Rational r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= x;
  return r / Rational(factorial(e));
}

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

inline Integer to_integer(const Rational& q) {
  if (!is_integral(q)) throw PreconditionError("rational value " + q.str() + " is not an integer");
  return numerator(q);
}

inline std::int64_t to_i64(const Integer& z) {
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
    throw Error("integer " + z.str() + " does not fit in 64 bits");
  return static_cast<std::int64_t>(z);
}

/// "p/q" or "p" for integral values.
inline std::string format_rational(const Rational& q) {
  if (is_integral(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw ValidationError("malformed rational '" + std::string(text) + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw ValidationError("malformed rational '" + std::string(text) + "'");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw ValidationError("malformed rational '" + std::string(text) + "'");
    return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace gtflow
