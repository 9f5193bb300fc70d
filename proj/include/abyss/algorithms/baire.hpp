#pragma once

// Points of continuity by nested intervals through dense open sets.

#include <algorithm>
#include <functional>

#include "abyss/algorithms/continuity.hpp"

namespace abyss {

/// A map (x, k) -> r > 0 with f(y) < f(x) + 2^-k whenever |x - y| < r.
struct UscoModulus {
  std::string name;
  std::function<Rational(const Point&, std::size_t)> radius;

  Rational operator()(const Point& x, std::size_t k) const { return radius(x, k); }
};

/// Half the distance from x to the nearest listed point other than x itself.
inline Rational half_gap(const Point& x, const std::vector<Point>& avoid) {
  std::optional<Surd> d;
  for (auto& a : avoid) {
    if (a == x) continue;
    Surd e = abs(a - x);
    if (!d || e < *d) d = e;
  }
  if (!d) return Rational(1);
  return positive_lower(*d / Surd(Rational(2)));
}

/// For a penny function: stay away from the members of index < k, whose
/// values are the only ones reaching 2^-k.
inline UscoModulus penny_usco_modulus(const CountableSet& a) {
  return {"penny-modulus", [a](const Point& x, std::size_t k) {
            std::vector<Point> low;
            if (k > 0)
              for (auto& [n, p] : a.members_upto(k - 1)) low.push_back(p);
            return half_gap(x, low);
          }};
}

/// For the indicator of a finite closed set.
inline UscoModulus finite_indicator_usco_modulus(std::vector<Point> points) {
  return {"indicator-modulus", [points = std::move(points)](const Point& x, std::size_t) { return half_gap(x, points); }};
}

inline UscoModulus constant_usco_modulus() {
  return {"constant-modulus", [](const Point&, std::size_t) { return Rational(1); }};
}

/// A dyadic point together with the last interval of the construction.
struct ContinuityPoint {
  Rational point;
  DyadicInterval interval;
  std::size_t stages = 0;
};

namespace detail {

/// Oscillation of the probes on B(x, 2^-n); for rational-supported functions
/// the infimum over any ball is 0.
inline Surd ball_osc(const SymbolicFn& f, const Point& x, std::size_t n, const Oracle& oracle) {
  auto r = oracle.probe_range(f, Region::ball(x, n), x);
  if (f.has(ClassTag::RationalSupported)) return r->hi;
  return r->hi - r->lo;
}

/// Dyadic points of depth d inside the open interval, nearest to its middle first.
inline std::vector<Rational> centred_dyadics(const DyadicInterval& j, std::size_t d, std::size_t limit) {
  Rational step = pow2(-static_cast<long>(d)), mid = j.midpoint();
  std::vector<Rational> out;
  for (Integer i = floor_of(j.lo / step) + 1; Rational(i) * step < j.hi; ++i) out.push_back(Rational(i) * step);
  std::stable_sort(out.begin(), out.end(), [&](const Rational& a, const Rational& b) {
    Rational da = a - mid, db = b - mid;
    if (da < 0) da = -da;
    if (db < 0) db = -db;
    return da < db;
  });
  if (out.size() > limit) out.resize(limit);
  return out;
}

}  // namespace detail

/// A dyadic point whose ball oscillation is at most 2^-k. Level m picks,
/// inside the current interval, a dyadic q whose ball B(q, 2^-N) has
/// oscillation <= 2^-m and continues in the closed half-radius ball.
inline ContinuityPoint point_of_continuity_qc(const SymbolicFn& f, std::size_t k, const Oracle& oracle) {
  detail::require_osc_class(f, "point_of_continuity_qc");
  std::size_t fuel = oracle.budget().fuel;
  ContinuityPoint out{Rational(1, 2), {Rational(0), Rational(1)}};
  for (std::size_t m = 0; m <= k; ++m) {
    bool advanced = false;
    std::size_t s = scale_of(Surd(out.interval.width()));
    for (std::size_t rel = 1; rel <= fuel && !advanced; ++rel) {
      std::size_t n = s + rel;
      Rational h = pow2(-static_cast<long>(n) - 1);
      DyadicInterval inner{out.interval.lo + h, out.interval.hi - h};
      if (inner.hi < inner.lo) continue;
      for (auto& q : detail::centred_dyadics({inner.lo - h / 2, inner.hi + h / 2}, n + 1, 8)) {
        if (q < inner.lo || inner.hi < q) continue;
        if (detail::ball_osc(f, Surd(q), n, oracle) <= eps(m)) {
          out.interval = {q - h, q + h};
          out.point = q;
          advanced = true;
          break;
        }
      }
    }
    if (!advanced)
      throw FuelExhausted("point_of_continuity_qc: level " + std::to_string(m) + " not reached", describe(out.interval));
    ++out.stages;
  }
  return out;
}

/// The usco variant: x belongs to the stage-q open set when f(x) < q (the
/// radius comes from the modulus) or when no value below q occurs near x (the
/// radius comes from the least witness of that search). Stages run over a
/// value grid of spacing 2^-(k+1).
inline ContinuityPoint point_of_continuity_usco(const SymbolicFn& f, const UscoModulus& psi, std::size_t k,
                                                const Oracle& oracle) {
  require_class(f, {ClassTag::Usco}, "usco", collapse_rule(Shape::ValueBelowOnBall).id, "point_of_continuity_usco");
  DyadicInterval values = enclose(f.bounds(), 64);
  Rational spacing = pow2(-static_cast<long>(k) - 1);
  std::size_t fuel = oracle.budget().fuel;
  ContinuityPoint out{Rational(1, 2), {Rational(0), Rational(1)}};

  // Radius of a stage-q ball around x, if x is in that stage's open set.
  auto radius = [&](const Rational& x, const Rational& q) -> std::optional<Rational> {
    Surd fx = f(Surd(x));
    if (fx < Surd(q)) {
      std::size_t j = 0;
      while (Surd(q) < fx + eps(j)) ++j;
      return psi(Surd(x), j);
    }
    MuResult r = oracle.mu_search(query::ValueBelowOnBall{f, Surd(x), Surd(q)});
    if (!r.found()) return std::nullopt;
    return pow2(-static_cast<long>(r.witness->value));
  };

  for (Rational q = values.lo; q <= values.hi + spacing; q += spacing) {
    DyadicInterval& j = out.interval;
    bool advanced = false;
    std::size_t s = scale_of(Surd(j.width()));
    auto try_point = [&](const Rational& x) {
      auto r = radius(x, q);
      if (!r) return false;
      Rational h = std::min<Rational>({*r / 2, x - j.lo, j.hi - x});
      if (h <= 0) return false;
      j = {x - h, x + h};
      out.point = x;
      return true;
    };
    advanced = try_point(j.midpoint());
    for (std::size_t d = s + 2; !advanced && d <= s + 6 && d <= s + fuel; ++d)
      for (auto& c : detail::centred_dyadics(j, d, 8))
        if ((advanced = try_point(c))) break;
    if (!advanced)
      throw FuelExhausted("point_of_continuity_usco: stage " + to_string(q) + " not reached", describe(j));
    ++out.stages;
  }
  return out;
}

}  // namespace abyss
