#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace mutclass {

/// Arbitrary-precision integer used for every matrix entry and diagram weight.
using Integer = boost::multiprecision::cpp_int;
/// Exact rational used by the semidefiniteness and kernel routines.
using Rational = boost::multiprecision::cpp_rational;

inline int sign(const Integer& x) { return x.sign(); }

/// [x]_+ = max(x, 0)
inline Integer positive_part(const Integer& x) { return x.sign() > 0 ? x : Integer(0); }

inline Integer abs(const Integer& x) { return x.sign() < 0 ? Integer(-x) : x; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  return abs(a) / gcd(a, b) * abs(b);
}

/// Exact integer square root of a non-negative value, or nullopt when the
/// value is not a perfect square.
inline std::optional<Integer> exact_sqrt(const Integer& x) {
  if (x.sign() < 0) return std::nullopt;
  Integer r = boost::multiprecision::sqrt(x);
  if (r * r != x) return std::nullopt;
  return r;
}

inline bool is_perfect_square(const Integer& x) { return exact_sqrt(x).has_value(); }

/// Square-free part of a positive integer: the unique square-free s with
/// x = s * t^2. Trial division is fine for the weights that occur here.
inline Integer squarefree_part(Integer x) {
  x = abs(x);
  if (x.is_zero()) return 0;
  Integer s = 1;
  for (Integer p = 2; p * p <= x; ++p) {
    int e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    if (e % 2 == 1) s *= p;
  }
  return s * x;
}

/// Square-free part of a*b for square-free a and b.
inline Integer squarefree_product(const Integer& a, const Integer& b) {
  Integer g = gcd(a, b);
  return (a / g) * (b / g);
}

inline bool fits_int64(const Integer& x) {
  return x >= std::numeric_limits<std::int64_t>::min() &&
         x <= std::numeric_limits<std::int64_t>::max();
}

inline std::string to_string(const Integer& x) { return x.str(); }

using IntVector = std::vector<Integer>;

}  // namespace mutclass
