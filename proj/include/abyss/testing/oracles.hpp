#pragma once

// Brute-force reference values, computed without the oracle layer: every
// candidate point is evaluated symbolically and the extremes are taken.

#include <algorithm>
#include <vector>

#include "abyss/build.hpp"

namespace abyss::testing {

/// The fraction of least denominator strictly between lo and hi.
inline std::optional<Surd> least_denominator_fraction(const Surd& lo, const Surd& hi, long max_den = 1L << 18) {
  for (long d = 1; d <= max_den; ++d) {
    Integer n = (lo * Surd(Rational(d))).floor() + 1;
    Surd x(Rational(n, d));
    if (x < hi) return x;
  }
  return std::nullopt;
}

/// Candidate points of [p, q]: the endpoints, the dyadic grid of depth
/// `depth`, every fraction with denominator <= `denominators`, the special
/// points, set members of index <= `members` and the fraction of least
/// denominator inside.
inline std::vector<Point> candidates(const SymbolicFn& f, const Interval<Surd>& span, unsigned depth = 12,
                                     long denominators = 64, std::size_t members = 64) {
  std::vector<Point> out{span.lo, span.hi};
  Interval<Rational> outer = enclose(span, 40);
  for (auto& r : rational_grid(outer, depth))
    if (span.contains(Surd(r))) out.emplace_back(r);
  for (long d = 1; d <= denominators; ++d)
    for (long n = 0; n <= d; ++n) {
      Surd x(Rational(n, d));
      if (span.contains(x)) out.push_back(x);
    }
  if (auto x = least_denominator_fraction(span.lo, span.hi)) out.push_back(*x);
  for (auto& s : f.special_points(members))
    if (span.contains(s)) out.push_back(s);
  if (auto a = f.countable_set())
    for (auto& [n, x] : a->members_upto(members))
      if (span.contains(x)) out.push_back(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Surd brute_sup(const SymbolicFn& f, const Rational& p, const Rational& q) {
  std::optional<Surd> best;
  for (auto& x : candidates(f, {Surd(p), Surd(q)})) {
    Surd v = f(x);
    if (!best || *best < v) best = v;
  }
  return *best;
}

/// Functions vanishing at irrationals have infimum <= 0 on every interval.
inline Surd brute_inf(const SymbolicFn& f, const Rational& p, const Rational& q) {
  std::optional<Surd> best;
  for (auto& x : candidates(f, {Surd(p), Surd(q)})) {
    Surd v = f(x);
    if (!best || v < *best) best = v;
  }
  if (f.has(ClassTag::RationalSupported)) best = min(*best, Surd(0));
  return *best;
}

/// Largest value minus smallest value over the candidates of B(x, 2^-n).
inline Surd brute_ball_osc(const SymbolicFn& f, const Point& x, std::size_t n) {
  Surd r(pow2(-static_cast<long>(n)));
  Interval<Surd> span{max(Surd(0), x - r), min(Surd(1), x + r)};
  std::optional<Surd> lo, hi;
  for (auto& y : candidates(f, span, static_cast<unsigned>(n + 8), 32)) {
    if (!(abs(y - x) < r)) continue;
    Surd v = f(y);
    if (!lo || v < *lo) lo = v;
    if (!hi || *hi < v) hi = v;
  }
  if (f.has(ClassTag::RationalSupported)) lo = min(*lo, Surd(0));
  return *hi - *lo;
}

/// Sup over all partitions drawn from `points` that start at the least
/// point, end at points[i] and use at most `max_points` points, for every i:
/// exhaustive dynamic programming over which points are kept.
inline std::vector<Surd> brute_variations(const SymbolicFn& f, std::vector<Point> points, std::size_t max_points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Surd> v;
  for (auto& p : points) v.push_back(f(p));
  const std::size_t n = points.size();
  // layer[i]: best sum ending at i with the current number of points.
  std::vector<std::optional<Surd>> layer(n);
  layer[0] = Surd(0);
  std::vector<Surd> out(n, Surd(0));
  for (std::size_t c = 2; c <= max_points; ++c) {
    std::vector<std::optional<Surd>> next(n);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (layer[j]) {
          Surd s = *layer[j] + abs(v[i] - v[j]);
          if (!next[i] || *next[i] < s) next[i] = s;
        }
    layer = std::move(next);
    for (std::size_t i = 0; i < n; ++i)
      if (layer[i] && out[i] < *layer[i]) out[i] = *layer[i];
  }
  return out;
}

/// Open balls B(c, r) covering [0,1], checked by a left-to-right sweep over
/// the balls sorted by left end.
inline bool covers_closed_unit(std::vector<RationalBall> balls) {
  std::sort(balls.begin(), balls.end(),
            [](const RationalBall& a, const RationalBall& b) { return a.center - a.radius < b.center - b.radius; });
  std::optional<Rational> reach;
  for (auto& b : balls) {
    Rational l = b.center - b.radius, r = b.center + b.radius;
    if (!reach) {
      if (!(l < 0)) return false;
      reach = r;
    } else if (l < *reach) {
      reach = std::max(*reach, r);
    } else if (*reach <= 1) {
      return false;
    }
  }
  return reach && 1 < *reach;
}

}  // namespace abyss::testing
