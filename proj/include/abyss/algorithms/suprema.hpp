#pragma once

// Suprema and infima over rational intervals by halving on the value axis.
// Each comparison "is some value above t" is one collapsed oracle query.

#include "abyss/algorithms/common.hpp"

namespace abyss {

namespace detail {

/// `exceeds(t)` answers whether the extremum lies strictly above t.
template <class Exceeds>
DyadicInterval halve_values(const SymbolicFn& f, std::size_t k, std::size_t fuel, Exceeds exceeds,
                            const std::string& what) {
  DyadicInterval v = enclose(f.bounds(), 64);
  Rational width = pow2(-static_cast<long>(k));
  std::size_t steps = 0;
  while (v.hi - v.lo > width) {
    if (steps++ >= fuel)
      throw FuelExhausted(what + ": fuel exhausted after " + std::to_string(fuel) + " comparisons", describe(v));
    Rational t = (v.lo + v.hi) / 2;
    if (exceeds(Surd(t)))
      v.lo = t;
    else
      v.hi = t;
  }
  return v;
}

inline Interval<Surd> checked_span(const Rational& p, const Rational& q) {
  if (!(p < q)) throw DomainError("expected p < q, got " + to_string(p) + " and " + to_string(q));
  if (p < 0 || q > 1) throw DomainError("interval [" + to_string(p) + ", " + to_string(q) + "] leaves [0,1]");
  return {Surd(p), Surd(q)};
}

}  // namespace detail

/// An interval of width at most 2^-k containing sup over [p,q] of f.
inline DyadicInterval sup_qc(const SymbolicFn& f, const Rational& p, const Rational& q, std::size_t k,
                             const Oracle& oracle) {
  require_rule(Shape::ExistsValueAbove, f);
  Interval<Surd> span = detail::checked_span(p, q);
  return detail::halve_values(
      f, k, oracle.budget().fuel,
      [&](const Surd& t) { return oracle.mu_search(query::ExistsValueAbove{f, span, t}).found(); }, "sup_qc");
}

/// An interval of width at most 2^-k containing inf over [p,q] of f.
inline DyadicInterval inf_usco(const SymbolicFn& f, const Rational& p, const Rational& q, std::size_t k,
                               const Oracle& oracle) {
  require_class(f, {ClassTag::Usco}, "usco", collapse_rule(Shape::ExistsValueBelow).id, "inf_usco");
  Interval<Surd> span = detail::checked_span(p, q);
  return detail::halve_values(
      f, k, oracle.budget().fuel,
      [&](const Surd& t) { return !oracle.mu_search(query::ExistsValueBelow{f, span, t}).found(); }, "inf_usco");
}

/// Supremum of a Baire-1 limit given with its convergence modulus. A probe
/// whose comparison stays undecided within the fuel counts as "not above".
inline DyadicInterval sup_baire1(const SymbolicFn& f, const Rational& p, const Rational& q, std::size_t k,
                                 const Oracle& oracle) {
  const auto* b = f.as<node::Baire1Limit>();
  if (!b || !b->modulus)
    throw RefusedQuery("Baire-1 representation with convergence modulus", collapse_rule(Shape::Baire1Above).id,
                       "sup_baire1 refused for " + f.name() +
                           ": representation insufficient (a convergence modulus is required)");
  Interval<Surd> span = detail::checked_span(p, q);
  return detail::halve_values(
      f, k, oracle.budget().fuel,
      [&](const Surd& t) { return oracle.mu_search(query::Baire1Above{f, span, t}).found(); }, "sup_baire1");
}

/// Infimum of a Baire-1 limit, symmetric to sup_baire1.
inline DyadicInterval inf_baire1(const SymbolicFn& f, const Rational& p, const Rational& q, std::size_t k,
                                 const Oracle& oracle) {
  const auto* b = f.as<node::Baire1Limit>();
  if (!b || !b->modulus)
    throw RefusedQuery("Baire-1 representation with convergence modulus", collapse_rule(Shape::Baire1Below).id,
                       "inf_baire1 refused for " + f.name() +
                           ": representation insufficient (a convergence modulus is required)");
  Interval<Surd> span = detail::checked_span(p, q);
  return detail::halve_values(
      f, k, oracle.budget().fuel,
      [&](const Surd& t) { return !oracle.mu_search(query::Baire1Below{f, span, t}).found(); }, "inf_baire1");
}

}  // namespace abyss
