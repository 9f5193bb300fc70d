#pragma once

// Constructors for every family of the universe. Tags are derived here from
// the structure of the function, never supplied by the caller (except through
// restrict_tags, which can only remove them).

#include <algorithm>
#include <map>
#include <mutex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "abyss/universe.hpp"

namespace abyss {

namespace detail {

inline std::string set_label(const CountableSet& a) {
  switch (a.kind()) {
    case CountableSet::Kind::Sqrt2Dyadic:
      if (a.prefix_limit()) return "sqrt2_dyadic[" + std::to_string(*a.prefix_limit()) + "]";
      return a.overrides().empty() ? "sqrt2_dyadic" : "sqrt2_dyadic*";
    case CountableSet::Kind::Finite: return "finite[" + std::to_string(a.finite_points().size()) + "]";
    case CountableSet::Kind::Tilde: return "tilde(" + set_label(a.tilde_base()) + ")";
  }
  return "?";
}

inline ClassSet piecewise_tags(const node::Piecewise& p) {
  bool continuous = true, qc = true, usco = true, lsco = true, right_continuous = true;
  for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
    const Point& b = p.breakpoints[i];
    Surd l = p.pieces[i](b), r = p.pieces[i + 1](b);
    Surd v = detail::eval_piecewise(p, b);
    continuous = continuous && l == v && r == v;
    qc = qc && (v == l || v == r);
    usco = usco && !(v < max(l, r));
    lsco = lsco && !(min(l, r) < v);
    right_continuous = right_continuous && v == r;
  }
  ClassSet tags{ClassTag::BV};
  if (continuous) tags = tags.with(ClassTag::Continuous);
  if (qc) tags = tags.with(ClassTag::QuasiContinuous);
  if (usco) tags = tags.with(ClassTag::Usco);
  if (lsco) tags = tags.with(ClassTag::Lsco);
  if (right_continuous && p.pieces.front()(Surd(0)).sign() == 0) tags = tags.with(ClassTag::NormalisedBV);
  return tags;
}

inline ClassSet penny_tags() {
  return {ClassTag::Cliquish, ClassTag::Usco, ClassTag::BV, ClassTag::Regulated, ClassTag::Baire1};
}

inline bool penny_like(const SymbolicFn& f) {
  return f.as<node::Penny>() || f.as<node::PennyK>() || f.as<node::TildePenny>() ||
         f.as<std::shared_ptr<const node::Below>>();
}

/// Tags that survive addition of two functions from the class.
inline ClassSet additive_tags(const std::vector<SymbolicFn>& terms) {
  ClassSet common = terms.front().tags();
  for (auto& t : terms) common = common & t.tags();
  std::size_t non_continuous = 0;
  for (auto& t : terms) non_continuous += t.has(ClassTag::Continuous) ? 0 : 1;
  ClassSet out;
  for (ClassTag tag : {ClassTag::Continuous, ClassTag::Cliquish, ClassTag::Usco, ClassTag::Lsco, ClassTag::BV,
                       ClassTag::NormalisedBV, ClassTag::Regulated, ClassTag::Baire1, ClassTag::RationalSupported})
    if (common.has(tag)) out = out.with(tag);
  // quasi-continuity and simple continuity survive adding continuous terms.
  if (non_continuous <= 1) {
    bool qc = true, sc = true;
    for (auto& t : terms) {
      qc = qc && t.has(ClassTag::QuasiContinuous);
      sc = sc && t.has(ClassTag::SimplyContinuous);
    }
    if (qc) out = out.with(ClassTag::QuasiContinuous);
    if (sc) out = out.with(ClassTag::SimplyContinuous);
  }
  return out;
}

inline Poly affine_through(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1) {
  Rational slope = (y1 - y0) / (x1 - x0);
  return Poly{{y0 - slope * x0, slope}};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Piecewise polynomial functions

/// Breakpoints must be strictly increasing and inside (0,1); `pieces` has one
/// more entry than `breakpoints`; `policies` one entry per breakpoint.
inline SymbolicFn piecewise(std::vector<Point> breakpoints, std::vector<Poly> pieces, std::vector<BreakPolicy> policies,
                            std::string name = "piecewise") {
  if (pieces.size() != breakpoints.size() + 1) throw ConstructionError("piecewise: need one more piece than breakpoints");
  if (policies.size() != breakpoints.size()) throw ConstructionError("piecewise: need one policy per breakpoint");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (breakpoints[i].sign() <= 0 || !(breakpoints[i] < Surd(1)))
      throw ConstructionError("piecewise: breakpoint " + breakpoints[i].str() + " not inside (0,1)");
    if (i > 0 && !(breakpoints[i - 1] < breakpoints[i])) throw ConstructionError("piecewise: breakpoints not increasing");
  }
  for (auto& p : pieces)
    if (p.coeffs.empty()) p.coeffs.push_back(0);
  node::Piecewise n{std::move(breakpoints), std::move(pieces), std::move(policies)};
  ClassSet tags = detail::piecewise_tags(n);
  return SymbolicFn(std::move(n), tags, std::move(name));
}

inline SymbolicFn polynomial(Poly p, std::string name = "polynomial") { return piecewise({}, {std::move(p)}, {}, std::move(name)); }
inline SymbolicFn constant(Rational c) {
  std::string name = "constant(" + to_string(c) + ")";
  return polynomial(Poly{{std::move(c)}}, std::move(name));
}
/// x -> a + b x.
inline SymbolicFn affine(Rational a, Rational b) {
  std::string name = "affine(" + to_string(a) + "," + to_string(b) + ")";
  return polynomial(Poly{{std::move(a), std::move(b)}}, std::move(name));
}
inline SymbolicFn identity() { return polynomial(Poly{{Rational(0), Rational(1)}}, "identity"); }

/// `low` on [0, at), `high` on (at, 1], value at `at` chosen by the policy.
inline SymbolicFn step(Point at, Rational low, Rational high, BreakPolicy policy = BreakPolicy::right()) {
  std::string name = "step(" + at.str() + ")";
  return piecewise({std::move(at)}, {Poly{{std::move(low)}}, Poly{{std::move(high)}}}, {std::move(policy)}, std::move(name));
}

/// Right-continuous staircase plus a linear drift: slope * x + sum of the
/// heights of the jumps at positions <= x. Normalised BV when no jump sits at 0.
inline SymbolicFn staircase(std::vector<std::pair<Rational, Rational>> jumps, Rational slope = 0) {
  std::sort(jumps.begin(), jumps.end());
  std::vector<Point> bps;
  std::vector<Poly> pieces;
  std::vector<BreakPolicy> policies;
  Rational level = 0;
  pieces.push_back(Poly{{level, slope}});
  for (auto& [at, height] : jumps) {
    if (!bps.empty() && bps.back() == Surd(at)) throw ConstructionError("staircase: repeated jump position");
    bps.emplace_back(at);
    level += height;
    pieces.push_back(Poly{{level, slope}});
    policies.push_back(BreakPolicy::right());
  }
  return piecewise(std::move(bps), std::move(pieces), std::move(policies), "staircase");
}

/// Continuous piecewise-linear interpolation of the knots (strictly increasing
/// x), constant beyond the first and last knot.
inline SymbolicFn piecewise_linear(std::vector<std::pair<Rational, Rational>> knots, std::string name = "piecewise-linear") {
  if (knots.empty()) throw ConstructionError("piecewise_linear: no knots");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i - 1].first < knots[i].first)) throw ConstructionError("piecewise_linear: knots not increasing");
  std::vector<Rational> cuts;
  for (auto& [x, y] : knots)
    if (x > 0 && x < 1) cuts.push_back(x);
  std::vector<Poly> pieces;
  for (std::size_t s = 0; s <= cuts.size(); ++s) {
    Rational lo = s == 0 ? Rational(0) : cuts[s - 1];
    Rational hi = s == cuts.size() ? Rational(1) : cuts[s];
    Rational t = (lo + hi) / 2;
    if (t <= knots.front().first) pieces.push_back(Poly{{knots.front().second}});
    else if (t >= knots.back().first) pieces.push_back(Poly{{knots.back().second}});
    else {
      std::size_t i = 0;
      while (knots[i + 1].first <= t) ++i;
      pieces.push_back(detail::affine_through(knots[i].first, knots[i].second, knots[i + 1].first, knots[i + 1].second));
    }
  }
  std::vector<Point> bps(cuts.begin(), cuts.end());
  std::vector<BreakPolicy> policies(bps.size(), BreakPolicy::right());
  return piecewise(std::move(bps), std::move(pieces), std::move(policies), std::move(name));
}

// ---------------------------------------------------------------------------
// The adversarial families

inline SymbolicFn thomae() {
  return SymbolicFn(node::Thomae{}, ClassSet{ClassTag::Usco, ClassTag::Regulated, ClassTag::RationalSupported}, "thomae");
}

inline void require_nonempty(const CountableSet& a) {
  if (a.empty()) throw ConstructionError("the countable set must be nonempty");
}

/// 1/2^(Y(x)+1) on A, 0 elsewhere.
inline SymbolicFn build_penny(const CountableSet& a) {
  require_nonempty(a);
  return SymbolicFn(node::Penny{a}, detail::penny_tags(), "penny(" + detail::set_label(a) + ")");
}

/// Penny restricted to the members of index <= k.
inline SymbolicFn build_penny_k(const CountableSet& a, std::size_t k) {
  require_nonempty(a);
  return SymbolicFn(node::PennyK{a, k}, detail::penny_tags(), "penny_k(" + detail::set_label(a) + "," + std::to_string(k) + ")");
}

/// The nowhere-dense companion set and the penny function over it, whose value
/// at the member in band [2^-(n+1), 2^-n) is 2^-(n+1).
inline std::pair<CountableSet, SymbolicFn> build_tilde(const CountableSet& a) {
  require_nonempty(a);
  CountableSet t = CountableSet::tilde(a);
  ClassSet tags = detail::penny_tags().with(ClassTag::SimplyContinuous);
  return {t, SymbolicFn(node::TildePenny{a, t}, tags, "tilde_penny(" + detail::set_label(a) + ")")};
}

/// Strictly positive gauge over the tilde set: 2^-(n+5) at the member of band
/// n; 1/8 elsewhere (cliquish variant) or 2^-(n+6) in band n (usco variant).
inline SymbolicFn build_cover_psi(const CountableSet& a, bool usco_variant) {
  require_nonempty(a);
  CountableSet t = CountableSet::tilde(a);
  if (usco_variant)
    return SymbolicFn(node::CoverPsiUsco{a, t}, ClassSet{ClassTag::Usco}, "cover_psi_usco(" + detail::set_label(a) + ")");
  return SymbolicFn(node::CoverPsi{a, t}, ClassSet{ClassTag::Baire1}, "cover_psi(" + detail::set_label(a) + ")");
}

inline SymbolicFn indicator(ClosedSetRep c) {
  ClassSet tags{ClassTag::Usco};
  if (c.is_finite()) tags = tags.with(ClassTag::BV);
  return SymbolicFn(node::Indicator{std::move(c)}, tags, "indicator");
}

// ---------------------------------------------------------------------------
// Combinators

inline SymbolicFn sum(std::vector<SymbolicFn> terms) {
  if (terms.empty()) return constant(0);
  ClassSet tags = detail::additive_tags(terms);
  std::string name = "sum(";
  for (std::size_t i = 0; i < terms.size(); ++i) name += (i ? "," : "") + terms[i].name();
  name += ")";
  return SymbolicFn(std::make_shared<const node::Sum>(node::Sum{std::move(terms)}), tags, std::move(name));
}

inline SymbolicFn scale(Rational c, SymbolicFn f) {
  ClassSet tags;
  if (c == 0) {
    tags = ClassSet{ClassTag::Continuous, ClassTag::NormalisedBV};
  } else if (c > 0) {
    tags = f.tags();
  } else {
    for (ClassTag t : kAllTags) {
      if (!f.has(t) || t == ClassTag::RationalSupported) continue;
      ClassTag mirrored = t == ClassTag::Usco ? ClassTag::Lsco : t == ClassTag::Lsco ? ClassTag::Usco : t;
      tags = tags.with(mirrored);
    }
  }
  std::string name = "scale(" + to_string(c) + "," + f.name() + ")";
  return SymbolicFn(std::make_shared<const node::Scaled>(node::Scaled{std::move(c), std::move(f)}), tags, std::move(name));
}

inline SymbolicFn difference(SymbolicFn f, SymbolicFn g) {
  ClassSet tags = detail::additive_tags({f, scale(-1, g)});
  std::string name = "difference(" + f.name() + "," + g.name() + ")";
  return SymbolicFn(std::make_shared<const node::Difference>(node::Difference{std::move(f), std::move(g)}), tags,
                    std::move(name));
}

/// Deletes the values >= threshold of a penny-like function.
inline SymbolicFn below(SymbolicFn f, Rational threshold) {
  if (!detail::penny_like(f)) throw ConstructionError("below() is only defined for penny-like functions");
  ClassSet tags = f.tags();
  std::string name = "below(" + f.name() + "," + to_string(threshold) + ")";
  return SymbolicFn(std::make_shared<const node::Below>(node::Below{std::move(f), std::move(threshold)}), tags,
                    std::move(name));
}

/// The same function with its tags cut down to `keep`.
inline SymbolicFn restrict_tags(SymbolicFn f, ClassSet keep) {
  ClassSet tags;
  for (ClassTag t : kAllTags)
    if (f.has(t) && keep.has(t)) tags = tags.with(t);
  if (!tags.subset_of(f.tags())) throw ConstructionError("restrict_tags cannot add classes");
  std::string name = f.name();
  return SymbolicFn(std::make_shared<const node::Restricted>(node::Restricted{std::move(f)}), tags, std::move(name));
}

// ---------------------------------------------------------------------------
// Baire-1 representations

/// Wraps a term sequence so each term is built once.
inline TermSequence memoise_terms(TermSequence make) {
  struct Memo {
    std::mutex lock;
    std::map<std::size_t, SymbolicFn> terms;
  };
  auto memo = std::make_shared<Memo>();
  return [memo, make = std::move(make)](std::size_t i) {
    {
      std::lock_guard<std::mutex> g(memo->lock);
      if (auto it = memo->terms.find(i); it != memo->terms.end()) return it->second;
    }
    SymbolicFn t = make(i);
    std::lock_guard<std::mutex> g(memo->lock);
    return memo->terms.emplace(i, std::move(t)).first->second;
  };
}

/// Penny(A) as the pointwise limit of PennyK(A, n). With the modulus
/// m(x, j) = j the n-th term is within 2^-j of the limit for n >= j.
inline SymbolicFn baire1_penny_k(const CountableSet& a, bool with_modulus) {
  require_nonempty(a);
  node::Baire1Limit n;
  n.family = node::Baire1Limit::Family::PennyK;
  n.source_set = a;
  n.term = memoise_terms([a](std::size_t i) { return build_penny_k(a, i); });
  n.specials = [a](std::size_t max_index) {
    std::vector<Point> out;
    for (auto& [i, p] : a.members_upto(max_index)) out.push_back(p);
    return out;
  };
  n.range = {Surd(0), Surd(Rational(1, 2))};
  n.description = "penny_k(" + detail::set_label(a) + ",n)";
  if (with_modulus) {
    n.modulus = [](const Point&, std::size_t j) { return j; };
    n.stable_index = [a](const Point& x) { return a.index_of(x).value_or(0); };
  }
  std::string name = "baire1(" + n.description + ")";
  return SymbolicFn(std::move(n), ClassSet{ClassTag::Baire1}, std::move(name));
}

/// The constant sequence f, f, f, ...
inline SymbolicFn baire1_constant(const SymbolicFn& f, bool with_modulus) {
  node::Baire1Limit n;
  n.family = node::Baire1Limit::Family::Constant;
  n.source_fns = {f};
  n.term = [f](std::size_t) { return f; };
  n.specials = [f](std::size_t max_index) { return f.special_points(max_index); };
  n.range = f.bounds();
  n.description = "const(" + f.name() + ")";
  if (with_modulus) {
    n.modulus = [](const Point&, std::size_t) { return std::size_t{0}; };
    n.stable_index = [](const Point&) { return std::size_t{0}; };
  }
  std::string name = "baire1(" + n.description + ")";
  return SymbolicFn(std::move(n), ClassSet{ClassTag::Baire1}, std::move(name));
}

/// Disjoint components covering the same open set, sorted.
inline std::vector<Interval<Rational>> merged_components(const R2Rep& o) {
  auto comps = o.components();
  std::sort(comps.begin(), comps.end(), [](auto& a, auto& b) { return a.lo < b.lo; });
  std::vector<Interval<Rational>> out;
  for (auto& c : comps) {
    if (!out.empty() && c.lo < out.back().hi) out.back().hi = std::max(out.back().hi, c.hi);
    else out.push_back(c);
  }
  return out;
}

/// Indicator of an open set as the limit of continuous tents: the n-th term
/// rises with slope 2^n from each component end and is capped at 1.
inline SymbolicFn baire1_open_indicator(const R2Rep& o, bool with_modulus) {
  auto comps = merged_components(o);
  node::Baire1Limit n;
  n.family = node::Baire1Limit::Family::OpenIndicator;
  n.source_open = o;
  n.term = memoise_terms([comps](std::size_t i) {
    Rational h = pow2(-static_cast<long>(i));
    std::vector<std::pair<Rational, Rational>> knots;
    for (auto& c : comps) {
      Rational half = (c.hi - c.lo) / 2;
      if (h < half) {
        knots.emplace_back(c.lo, 0);
        knots.emplace_back(c.lo + h, 1);
        knots.emplace_back(c.hi - h, 1);
        knots.emplace_back(c.hi, 0);
      } else {
        knots.emplace_back(c.lo, 0);
        knots.emplace_back(c.lo + half, half / h);
        knots.emplace_back(c.hi, 0);
      }
    }
    if (knots.empty()) return constant(0);
    // Touching components share an endpoint knot.
    std::vector<std::pair<Rational, Rational>> dedup;
    for (auto& k : knots)
      if (dedup.empty() || dedup.back().first != k.first) dedup.push_back(k);
    return piecewise_linear(std::move(dedup), "tent(" + std::to_string(i) + ")");
  });
  n.specials = [o](std::size_t) { return o.boundary(); };
  n.range = {Surd(0), Surd(1)};
  n.description = "open_indicator_tents";
  if (with_modulus) {
    auto settle = [o](const Point& x) -> std::size_t {
      Surd r = o.radius(x);
      return r.sign() > 0 ? scale_of(r) : 0;
    };
    n.modulus = [settle](const Point& x, std::size_t) { return settle(x); };
    n.stable_index = settle;
  }
  std::string name = "baire1(" + n.description + ")";
  return SymbolicFn(std::move(n), ClassSet{ClassTag::Baire1}, std::move(name));
}

/// Checks, symbolically, that the oscillation of a penny function equals the
/// function itself: values are positive exactly on the set, and the members
/// are distinct, so every ball around a member eventually sees only values
/// below any positive bound other than its own.
inline bool osc_selfcheck(const SymbolicFn& f, std::size_t members = 32) {
  const auto* p = f.as<node::Penny>();
  if (!p) throw DomainError("osc_selfcheck applies to penny functions only, got " + f.name());
  auto list = p->set.members_upto(members);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& [n, a] = list[i];
    if (f(a) != detail::power_of_half(n + 1)) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (list[j].second == a) return false;
  }
  return true;
}

}  // namespace abyss
