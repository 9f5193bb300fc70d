#pragma once

// RM-codes of R2-represented open sets, and separating usco functions.

#include "abyss/algorithms/cousin.hpp"

namespace abyss {

/// An RM-code for O, read off a Baire-1 representation of its indicator.
/// Each of the first `count` dyadic intervals [p, q] is emitted as the ball
/// (p, q) when the indicator stays above 0 on it, and otherwise the seed ball
/// B(x0, 2^-m0) around a point known to lie in O is emitted in its place.
inline RMCode rm_code_from_r2_baire1(const R2Rep& o, const SymbolicFn& indicator_rep, std::size_t count,
                                     const Oracle& oracle) {
  const auto* b = indicator_rep.as<node::Baire1Limit>();
  if (!b || !b->modulus)
    throw RefusedQuery("Baire-1 representation with convergence modulus", collapse_rule(Shape::Baire1Below).id,
                       "rm_code_from_r2_baire1 refused for " + indicator_rep.name() +
                           ": representation insufficient (a convergence modulus is required)");
  RMCode code;
  MuResult seed = oracle.mu_search(query::Baire1Above{indicator_rep, {Surd(0), Surd(1)}, Surd(Rational(1, 2))});
  if (!seed.found()) return code;
  Point x0 = *seed.point;
  Surd r0 = o.radius(x0);
  if (r0.sign() <= 0) throw OracleInconsistency("seed point " + x0.str() + " has no ball inside the open set");
  if (!x0.is_rational()) throw DomainError("seed point " + x0.str() + " is not rational");
  RationalBall seed_ball{x0.rational_part(), pow2(-static_cast<long>(scale_of(r0)))};

  code.prefix_of_infinite = true;
  for (auto& [p, q] : dyadic_intervals(count)) {
    MuResult low =
        oracle.mu_search(query::Baire1Below{indicator_rep, {Surd(p), Surd(q)}, Surd(Rational(1, 2))});
    code.balls.push_back(low.found() ? seed_ball : RationalBall{(p + q) / 2, (q - p) / 2});
  }
  return code;
}

/// The indicator of C1: usco, 1 on C1 and 0 on C0. Rejects intersecting sets.
inline SymbolicFn usco_separator(const ClosedSetRep& c0, const ClosedSetRep& c1) {
  auto meet = [](const ClosedSetRep& finite, const ClosedSetRep& other) {
    for (auto& p : finite.finite_points())
      if (other.contains(p)) throw DomainError("the closed sets share the point " + p.str());
  };
  if (c0.is_finite())
    meet(c0, c1);
  else if (c1.is_finite())
    meet(c1, c0);
  else {
    std::vector<RationalBall> balls;
    for (const ClosedSetRep* c : {&c0, &c1})
      for (auto& i : c->open_complement().components()) balls.push_back({i.midpoint(), i.width() / 2});
    if (!covers_unit_interval(balls)) throw DomainError("the closed sets intersect: their complements miss a point");
  }
  return indicator(c1);
}

}  // namespace abyss
