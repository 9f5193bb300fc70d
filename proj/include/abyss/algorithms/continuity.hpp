#pragma once

// Oscillation, continuity decisions and the moduli built from them.

#include <functional>
#include <memory>
#include <optional>

#include "abyss/algorithms/common.hpp"

namespace abyss {

/// A map (x, k) -> N. Empty when no N up to the fuel works.
struct NaturalModulus {
  std::string name;
  std::function<std::optional<std::size_t>(const Point&, std::size_t)> at;

  std::optional<std::size_t> operator()(const Point& x, std::size_t k) const { return at(x, k); }
};

using ContinuityModulus = NaturalModulus;
using RegulationModulus = NaturalModulus;

namespace detail {

inline bool rational_collapse(const SymbolicFn& f) {
  return f.tags().any_of({ClassTag::QuasiContinuous, ClassTag::RationalSupported});
}

inline void require_osc_class(const SymbolicFn& f, const std::string& operation) {
  if (!rational_collapse(f) && !f.has(ClassTag::Usco))
    require_class(f, {}, "quasi-continuous or usco", collapse_rule(Shape::OscBelow).id, operation);
}

/// [max(0, o - 2^-k), o] with o rounded up to a rational.
inline DyadicInterval osc_bracket(const Surd& o, std::size_t k) {
  Rational hi = o.enclose(static_cast<unsigned>(k + 4)).second;
  Rational lo = hi - pow2(-static_cast<long>(k));
  return {lo < 0 ? Rational(0) : lo, hi};
}

}  // namespace detail

/// Interval of width <= 2^-k around the oscillation of f at x, read off the
/// probes of the ball B(x, 2^-(2k+4)).
inline DyadicInterval osc_point(const SymbolicFn& f, const Point& x, std::size_t k, const Oracle& oracle) {
  detail::require_osc_class(f, "osc_point");
  require_unit(x);
  Region ball = Region::ball(x, 2 * k + 4);
  auto r = oracle.probe_range(f, ball, x);
  if (f.has(ClassTag::QuasiContinuous)) return detail::osc_bracket(r->hi - r->lo, k);
  // Every ball holds irrationals, where the function vanishes.
  if (f.has(ClassTag::RationalSupported)) return detail::osc_bracket(r->hi, k);
  return detail::osc_bracket(f(x) - r->lo, k);
}

/// Yes when f is continuous at x, No when a discontinuity is certified.
inline FueledBool is_continuous_at(const SymbolicFn& f, const Point& x, const Oracle& oracle) {
  detail::require_osc_class(f, "is_continuous_at");
  require_unit(x);
  std::size_t before = oracle.evaluations();
  std::size_t fuel = oracle.budget().fuel;
  FueledBool out;
  if (f.has(ClassTag::Usco)) {
    MuResult r = oracle.mu_search(query::NotLscoAt{f, x});
    out.value = r.found() ? Truth::No : Truth::Yes;
  } else {
    auto r = oracle.probe_range(f, Region::ball(x, 2 * fuel + 4), x);
    Surd o = f.has(ClassTag::QuasiContinuous) ? r->hi - r->lo : r->hi;
    if (!(eps(fuel) < o))
      out.value = Truth::Yes;
    else if (!(o < eps(fuel / 2)))
      out.value = Truth::No;
  }
  out.fuel_spent = oracle.evaluations() - before;
  return out;
}

inline FueledBool is_continuous_at(const SymbolicFn& f, const Point& x, std::size_t fuel) {
  Budget b;
  b.fuel = fuel;
  return is_continuous_at(f, x, Oracle(b));
}

/// G(x, k) = the least N whose ball has probe oscillation <= 2^-(k+1), so
/// that |f(x) - f(y)| < 2^-k on it.
inline ContinuityModulus modulus_continuity_qc(const SymbolicFn& f, const Budget& budget = {}) {
  require_rule(Shape::OscBelow, f);
  auto oracle = std::make_shared<Oracle>(budget);
  return {"G[" + f.name() + "]", [f, oracle](const Point& x, std::size_t k) -> std::optional<std::size_t> {
            MuResult r = oracle->mu_search(query::OscBelow{f, x, k + 1});
            if (!r.found()) return std::nullopt;
            return r.witness->value;
          }};
}

/// A rational open interval (c, d) inside B(x, 2^-N) on which f stays within
/// 2^-k of f(x).
inline DyadicInterval modulus_qc(const SymbolicFn& f, const Point& x, std::size_t k, std::size_t N,
                                 const Oracle& oracle) {
  require_unit(x);
  Surd r = eps(N);
  Surd lo = max(Surd(0), x - r), hi = min(Surd(1), x + r);
  unsigned bits = static_cast<unsigned>(N + 8);
  DyadicInterval ball{lo.enclose(bits).second, hi.enclose(bits).first};
  if (f.bounds().hi - f.bounds().lo < eps(k)) return ball;
  require_class(f, {ClassTag::QuasiContinuous}, "quasi-continuous", collapse_rule(Shape::OscBelow).id, "modulus_qc");

  Surd fx = f(x), margin = eps(k + 1);
  auto fits = [&](const DyadicInterval& c) {
    auto range = oracle.probe_range(f, Region::open({Surd(c.lo), Surd(c.hi)}));
    return range && !(margin < fx - range->lo) && !(margin < range->hi - fx);
  };
  if (fits(ball)) return ball;
  std::size_t fuel = oracle.budget().fuel;
  for (std::size_t d = N + 1; d <= N + fuel; ++d) {
    Rational step = pow2(-static_cast<long>(d));
    std::vector<DyadicInterval> cells;
    Integer first = ceil_of(ball.lo / step), last = floor_of(ball.hi / step);
    for (Integer j = first; j < last; ++j) cells.push_back({Rational(j) * step, Rational(j + 1) * step});
    std::sort(cells.begin(), cells.end(), [&](const DyadicInterval& a, const DyadicInterval& b) {
      return abs(Surd(a.midpoint()) - x) < abs(Surd(b.midpoint()) - x);
    });
    if (cells.size() > 16) cells.resize(16);
    for (auto& c : cells)
      if (fits(c)) return c;
  }
  throw FuelExhausted("modulus_qc: no interval found within " + std::to_string(fuel) + " refinements",
                      describe(ball));
}

/// G0(x, k) = the least N with f(y) < f(x) + 2^-(k+1) for every probe y of
/// B(x, 2^-N). A modulus of lower semi-continuity at points of continuity.
inline NaturalModulus lsco_modulus_on_Cf(const SymbolicFn& f, const Budget& budget = {}) {
  require_class(f, {ClassTag::Usco}, "usco", collapse_rule(Shape::ValueBelowOnBall).id, "lsco_modulus_on_Cf");
  auto oracle = std::make_shared<Oracle>(budget);
  return {"G0[" + f.name() + "]", [f, oracle](const Point& x, std::size_t k) -> std::optional<std::size_t> {
            Surd bound = f(x) + eps(k + 1);
            for (std::size_t n = 0; n <= oracle->budget().fuel; ++n) {
              auto r = oracle->probe_range(f, Region::ball(x, n), x);
              if (r->hi < bound) return n;
            }
            return std::nullopt;
          }};
}

}  // namespace abyss
