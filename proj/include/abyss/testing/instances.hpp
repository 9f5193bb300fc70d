#pragma once

// Seeded random instances of the built-in function families.

#include <random>
#include <set>
#include <vector>

#include "abyss/build.hpp"

namespace abyss::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// A rational in [lo, hi] with denominator `den`.
inline Rational random_rational(Rng& rng, const Rational& lo, const Rational& hi, long den = 64) {
  long a = static_cast<long>(ceil_of(lo * den)), b = static_cast<long>(floor_of(hi * den));
  return Rational(uniform(rng, a, b), den);
}

/// p < q in [0,1], both with denominator `den`.
inline std::pair<Rational, Rational> random_interval(Rng& rng, long den = 64) {
  long a = uniform(rng, 0, den - 1), b = uniform(rng, a + 1, den);
  return {Rational(a, den), Rational(b, den)};
}

/// Sorted distinct interior rationals.
inline std::vector<Rational> random_cuts(Rng& rng, std::size_t count, long den = 64) {
  std::set<long> picks;
  while (picks.size() < count) picks.insert(uniform(rng, 1, den - 1));
  std::vector<Rational> out;
  for (long p : picks) out.emplace_back(p, den);
  return out;
}

/// Continuous piecewise-linear function with values in [lo, hi].
inline SymbolicFn random_piecewise_linear(Rng& rng, const Rational& lo = 0, const Rational& hi = 1) {
  std::vector<std::pair<Rational, Rational>> knots{{Rational(0), random_rational(rng, lo, hi)}};
  for (auto& c : random_cuts(rng, static_cast<std::size_t>(uniform(rng, 1, 4)))) knots.emplace_back(c, random_rational(rng, lo, hi));
  knots.emplace_back(Rational(1), random_rational(rng, lo, hi));
  return piecewise_linear(std::move(knots));
}

/// Right-continuous staircase plus drift of slope at most 8/slope_den;
/// `monotone` keeps jumps and slope non-negative.
inline SymbolicFn random_staircase(Rng& rng, bool monotone, long slope_den = 16) {
  std::vector<std::pair<Rational, Rational>> jumps;
  for (auto& c : random_cuts(rng, static_cast<std::size_t>(uniform(rng, 1, 4)))) {
    Rational h = Rational(uniform(rng, 1, 16), 32);
    if (!monotone && uniform(rng, 0, 1) == 1) h = -h;
    jumps.emplace_back(c, h);
  }
  Rational slope(uniform(rng, monotone ? 0 : -8, 8), slope_den);
  return staircase(std::move(jumps), slope);
}

/// Up to `max_size` distinct points of (0,1), some rational, most of the
/// form a + b sqrt 2.
inline CountableSet random_finite_set(Rng& rng, std::size_t max_size = 12) {
  std::size_t size = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_size)));
  std::vector<Point> pts;
  while (pts.size() < size) {
    Point x = uniform(rng, 0, 3) == 0 ? Surd(Rational(uniform(rng, 1, 127), 128))
                                      : Surd(Rational(uniform(rng, 0, 63), 128), Rational(uniform(rng, 1, 31), 128));
    if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
  }
  return CountableSet::finite(std::move(pts));
}

/// Quasi-continuous instances: continuous pieces, monotone staircases and
/// one-jump steps, sometimes summed with a continuous term.
inline SymbolicFn random_qc(Rng& rng) {
  switch (uniform(rng, 0, 3)) {
    case 0: return random_piecewise_linear(rng);
    case 1: return random_staircase(rng, true);
    case 2: return step(Surd(random_cuts(rng, 1).front()), random_rational(rng, 0, 1), random_rational(rng, 0, 1));
    default: return sum({random_piecewise_linear(rng), step(Surd(random_cuts(rng, 1).front()), 0, Rational(1, 4))});
  }
}

}  // namespace abyss::testing
