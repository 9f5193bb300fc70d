#pragma once

// Fixed enumerations of rationals. Everything that depends on "the rational
// with minimal index" uses exactly these orders:
//
//   unit rationals   Q cap [0,1]  : 0, 1, 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ...
//   signed rationals Q cap [-1,1] : -1, 0, 1, -1/2, 1/2, -2/3, -1/3, 1/3, 2/3, ...
//
// i.e. by denominator first, then by numerator ascending, reduced fractions
// only.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <boost/integer/common_factor_rt.hpp>

#include "abyss/exact.hpp"

namespace abyss {

/// First `count` elements of the unit-rational enumeration.
inline std::vector<Rational> unit_rationals(std::size_t count) {
  std::vector<Rational> out;
  out.reserve(count);
  if (count > 0) out.emplace_back(0);
  if (count > 1) out.emplace_back(1);
  for (long d = 2; out.size() < count; ++d)
    for (long p = 1; p < d && out.size() < count; ++p)
      if (boost::integer::gcd(p, d) == 1) out.emplace_back(Rational(p, d));
  return out;
}

/// First `count` elements of the signed-rational enumeration.
inline std::vector<Rational> signed_rationals(std::size_t count) {
  std::vector<Rational> out;
  out.reserve(count);
  for (long v : {-1L, 0L, 1L})
    if (out.size() < count) out.emplace_back(v);
  for (long d = 2; out.size() < count; ++d)
    for (long p = -d + 1; p < d && out.size() < count; ++p)
      if (p != 0 && boost::integer::gcd(p < 0 ? -p : p, d) == 1) out.emplace_back(Rational(p, d));
  return out;
}

/// Index of a reduced rational in the signed enumeration (brute force, for
/// small denominators; used by tests and diagnostics).
inline std::optional<std::size_t> signed_rational_index(const Rational& q, std::size_t limit) {
  auto all = signed_rationals(limit);
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] == q) return i;
  return std::nullopt;
}

/// The rational of least denominator (and, for that denominator, least
/// numerator) inside the interval with the given endpoint openness. `hi` may
/// be absent for an unbounded interval. Requires a non-empty interval.
///
/// Within a denominator-then-numerator enumeration this is the element of
/// minimal index in the interval.
inline Rational simplest_rational(const Surd& lo, bool lo_closed, const std::optional<Surd>& hi, bool hi_closed) {
  Integer n = lo.floor();
  Rational candidate = (lo_closed && lo == Surd(Rational(n))) ? Rational(n) : Rational(n + 1);
  Surd c(candidate);
  if (!hi || c < *hi || (hi_closed && c == *hi)) return candidate;
  // Everything lies strictly between the integers n and n+1: write x = n + 1/y.
  Surd base{Rational(n)};
  Surd y_lo = Surd(1) / (*hi - base);
  std::optional<Surd> y_hi;
  if (lo != base) y_hi = Surd(1) / (lo - base);
  Rational y = simplest_rational(y_lo, hi_closed, y_hi, lo_closed);
  return Rational(n) + 1 / y;
}

/// Closed rational intervals [j/2^d, (j+2)/2^d] inside [0,1], listed by
/// depth d = 1, 2, ... and then by j. Consecutive intervals of one depth
/// overlap by half, so the interiors of any single depth cover (0,1).
inline std::vector<std::pair<Rational, Rational>> dyadic_intervals(std::size_t count) {
  std::vector<std::pair<Rational, Rational>> out;
  for (long d = 1; out.size() < count; ++d) {
    Rational step = pow2(-d);
    long cells = 1L << d;
    for (long j = 0; j + 2 <= cells && out.size() < count; ++j) out.emplace_back(step * j, step * (j + 2));
  }
  return out;
}

}  // namespace abyss
