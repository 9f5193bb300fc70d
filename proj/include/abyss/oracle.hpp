#pragma once

// Simulation of the least-witness search mu^2 (and so of the existential
// quantifier over the reals) for the handful of query shapes the algorithms
// issue. Each shape is answered through a quantifier-collapse rule that
// replaces "for all / exists real y" by a finite probe table, and each rule is
// only applied to functions whose class tags make the replacement sound. A
// query on any other function is refused.
//
// Fuel bounds the natural-number searches (ball depths, value exponents,
// set-member indices). Resolution bounds how many dyadic layers a probe table
// holds beyond the scale of its region.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "abyss/build.hpp"

namespace abyss {

struct Budget {
  std::size_t fuel = 64;
  unsigned resolution = 8;
  /// Optional sink receiving one line per probed grid depth.
  std::function<void(const std::string&)> trace;

  void log(const std::string& line) const {
    if (trace) trace(line);
  }
};

/// A subinterval of [0,1] with independent endpoint openness.
struct Region {
  Interval<Surd> span;
  bool lo_open = false;
  bool hi_open = false;

  static Region closed(const Interval<Surd>& i) { return clip({i, false, false}); }
  static Region open(const Interval<Surd>& i) { return clip({i, true, true}); }
  /// B(x, 2^-n) intersected with [0,1].
  static Region ball(const Point& x, std::size_t n) {
    Surd r(pow2(-static_cast<long>(n)));
    return open({x - r, x + r});
  }

  bool contains(const Point& x) const {
    bool above = lo_open ? span.lo < x : !(x < span.lo);
    bool below = hi_open ? x < span.hi : !(span.hi < x);
    return above && below;
  }
  bool empty() const { return span.hi < span.lo || (span.lo == span.hi && (lo_open || hi_open)); }
  Surd width() const { return span.hi - span.lo; }

  std::string str() const {
    return std::string(lo_open ? "(" : "[") + span.lo.str() + ", " + span.hi.str() + (hi_open ? ")" : "]");
  }

 private:
  static Region clip(Region r) {
    if (r.span.lo.sign() < 0) {
      r.span.lo = Surd(0);
      r.lo_open = false;
    }
    if (Surd(1) < r.span.hi) {
      r.span.hi = Surd(1);
      r.hi_open = false;
    }
    return r;
  }
};

struct ProbePoint {
  Point x;
  std::size_t layer;
};

/// The finite stand-in for the points of a region. Layer 0 holds the
/// special points of the function (set members and breakpoints of index <=
/// fuel), the closed endpoints, the centre when one is given, the rational of
/// least denominator in the region and every rational with denominator <= 16.
/// Layer d >= 1 holds the dyadic rationals of exact depth d - 1.
class ProbeTable {
 public:
  ProbeTable(const SymbolicFn& f, const Region& region, const Budget& budget, const std::optional<Point>& centre) {
    if (region.empty()) return;
    auto add = [&](const Point& x, std::size_t layer) {
      if (region.contains(x)) points_.push_back({x, layer});
    };
    for (auto& s : f.special_points(budget.fuel)) add(s, 0);
    if (!region.lo_open) add(region.span.lo, 0);
    if (!region.hi_open) add(region.span.hi, 0);
    if (centre) add(*centre, 0);
    if (region.width().sign() == 0) {
      depth_ = 0;
      return;
    }
    add(Surd(simplest_rational(region.span.lo, !region.lo_open, region.span.hi, !region.hi_open)), 0);
    Interval<Rational> outer = enclose(region.span, 8);
    for (long q = 3; q <= 16; ++q) {
      Integer first = ceil_of(outer.lo * q), last = floor_of(outer.hi * q);
      for (Integer p = first; p <= last; ++p) {
        Rational r(p, Integer(q));
        if (denominator_of(r) == q) add(Surd(r), 0);
      }
    }
    std::size_t s = scale_of(region.width());
    depth_ = s + budget.resolution;
    for (std::size_t d = 0; d <= depth_; ++d) {
      Surd scale(pow2(static_cast<long>(d)));
      Surd lo = region.span.lo * scale, hi = region.span.hi * scale;
      Integer first = lo.ceil(), last = hi.floor();
      if (region.lo_open && lo == Surd(Rational(first))) ++first;
      if (region.hi_open && hi == Surd(Rational(last))) --last;
      Rational step = pow2(-static_cast<long>(d));
      for (Integer j = first; j <= last; ++j)
        if (d == 0 || (j & 1) == 1) points_.push_back({Surd(Rational(j) * step), d + 1});
    }
  }

  const std::vector<ProbePoint>& points() const noexcept { return points_; }
  std::size_t depth() const noexcept { return depth_; }

 private:
  std::vector<ProbePoint> points_;
  std::size_t depth_ = 0;
};

// ---------------------------------------------------------------------------
// Query shapes

namespace query {

/// Least N such that all probes r, s in B(x, 2^-N) have |f(r) - f(s)| <= 2^-m.
struct OscBelow {
  SymbolicFn f;
  Point x;
  std::size_t m;
};
/// Least M such that no probe in B(x, 2^-M) has f(r) < q.
struct ValueBelowOnBall {
  SymbolicFn f;
  Point x;
  Surd q;
};
/// Is there y in the interval with f(y) > threshold? Witness: probe layer.
struct ExistsValueAbove {
  SymbolicFn f;
  Interval<Surd> interval;
  Surd threshold;
};
/// Is there y in the interval with f(y) < threshold? Witness: probe layer.
struct ExistsValueBelow {
  SymbolicFn f;
  Interval<Surd> interval;
  Surd threshold;
};
/// As ExistsValueAbove for a Baire-1 limit, deciding each probe through the
/// convergence modulus.
struct Baire1Above {
  SymbolicFn f;
  Interval<Surd> interval;
  Surd threshold;
};
struct Baire1Below {
  SymbolicFn f;
  Interval<Surd> interval;
  Surd threshold;
};
/// Least l such that every ball B(x, 2^-k), k <= fuel, holds a probe with
/// f(r) <= f(x) - 2^-l: a certified failure of lower semi-continuity at x.
struct NotLscoAt {
  SymbolicFn f;
  Point x;
};

}  // namespace query

using QuantQuery = std::variant<query::OscBelow, query::ValueBelowOnBall, query::ExistsValueAbove,
                                query::ExistsValueBelow, query::Baire1Above, query::Baire1Below, query::NotLscoAt>;

enum class Shape { OscBelow, ValueBelowOnBall, ExistsValueAbove, ExistsValueBelow, Baire1Above, Baire1Below, NotLscoAt };

inline constexpr Shape kAllShapes[] = {Shape::OscBelow,         Shape::ValueBelowOnBall, Shape::ExistsValueAbove,
                                       Shape::ExistsValueBelow, Shape::Baire1Above,      Shape::Baire1Below,
                                       Shape::NotLscoAt};

inline Shape shape_of(const QuantQuery& q) { return static_cast<Shape>(q.index()); }

inline const SymbolicFn& subject_of(const QuantQuery& q) {
  return std::visit([](const auto& s) -> const SymbolicFn& { return s.f; }, q);
}

/// Documentation and precondition of one collapse rule.
struct CollapseRule {
  Shape shape;
  std::string shape_name;
  std::string id;
  std::string real_form;
  std::string rational_form;
  std::string precondition;
  std::string anchor;
  /// Any one of these tags licenses the rule.
  std::vector<ClassTag> admitted;
  /// The rule needs a Baire-1 representation with a convergence modulus.
  bool needs_modulus = false;

  bool admits(const SymbolicFn& f) const {
    if (needs_modulus) {
      const auto* b = f.as<node::Baire1Limit>();
      return b && b->modulus.has_value();
    }
    for (ClassTag t : admitted)
      if (f.has(t)) return true;
    return false;
  }
};

inline const std::vector<CollapseRule>& collapse_rules() {
  static const std::vector<CollapseRule> rules = {
      {Shape::OscBelow, "OscBelow", "qc-rational-oscillation",
       "(exists N)(forall w,z in B(x,2^-N)) |f(w)-f(z)| <= 2^-m",
       "(exists N)(forall q,r in B(x,2^-N) cap Q) |f(q)-f(r)| <= 2^-m",
       "quasi-continuous or rational-supported",
       "for quasi-continuous f the oscillation over a ball equals the oscillation over its rationals, with the same N",
       {ClassTag::QuasiContinuous, ClassTag::RationalSupported}},
      {Shape::ValueBelowOnBall, "ValueBelowOnBall", "usco-ball-lower-bound",
       "(exists N)(forall z in B(x,2^-N)) f(z) >= q", "(exists M)(forall r in B(x,2^-M) cap Q) f(r) >= q", "usco",
       "for usco f the set {f < q} is open, so a value below q on a ball is attained at a rational",
       {ClassTag::Usco}},
      {Shape::ExistsValueAbove, "ExistsValueAbove", "qc-rational-sup", "(exists x in [p,q]) f(x) > y",
       "(exists r in [p,q] cap Q) f(r) > y", "quasi-continuous or rational-supported",
       "for quasi-continuous f every value is approached from an open set, hence by rationals",
       {ClassTag::QuasiContinuous, ClassTag::RationalSupported}},
      {Shape::ExistsValueBelow, "ExistsValueBelow", "usco-rational-inf", "(exists x in [p,q]) f(x) < y",
       "(exists r in [p,q] cap Q) f(r) < y", "usco or quasi-continuous",
       "for usco f the set {f < y} is open; the equivalence fails with '>' in place of '<'",
       {ClassTag::Usco, ClassTag::QuasiContinuous}},
      {Shape::Baire1Above, "Baire1Above", "baire1-modulus-sup",
       "(exists x in [p,q]) f(x) > y",
       "(exists r, l)(forall n >= m(r,j)) f_n(r) >= y + 2^-l, the inner search bounded by the convergence modulus",
       "Baire-1 representation with convergence modulus",
       "a Baire-1 representation together with a convergence modulus makes the comparison arithmetical",
       {},
       true},
      {Shape::Baire1Below, "Baire1Below", "baire1-modulus-inf",
       "(exists x in [p,q]) f(x) < y",
       "(exists r, l)(forall n >= m(r,j)) f_n(r) <= y - 2^-l, the inner search bounded by the convergence modulus",
       "Baire-1 representation with convergence modulus",
       "a Baire-1 representation together with a convergence modulus makes the comparison arithmetical",
       {},
       true},
      {Shape::NotLscoAt, "NotLscoAt", "usco-lower-jump",
       "(exists l)(forall k)(exists z in B(x,2^-k)) f(z) <= f(x) - 2^-l",
       "(exists l)(forall k)(exists r in B(x,2^-k) cap Q) f(r) <= f(x) - 2^-l", "usco",
       "for usco f the discontinuity points are those where f is not lsco, and the inner quantifier has rational range",
       {ClassTag::Usco}},
  };
  return rules;
}

inline const CollapseRule& collapse_rule(Shape s) { return collapse_rules().at(static_cast<std::size_t>(s)); }

inline const CollapseRule& collapse_rule(std::string_view name) {
  for (auto& r : collapse_rules())
    if (r.shape_name == name || r.id == name) return r;
  throw DomainError("unknown query shape '" + std::string(name) + "'");
}

/// Throws RefusedQuery unless the rule for `shape` admits f.
inline void require_rule(Shape shape, const SymbolicFn& f) {
  const CollapseRule& r = collapse_rule(shape);
  if (!r.admits(f))
    throw RefusedQuery(r.precondition, r.id,
                       r.shape_name + " refused for " + f.name() + ": requires " + r.precondition + " (rule " + r.id +
                           ": " + r.anchor + ")");
}

struct MuWitness {
  std::size_t value = 0;
  bool minimal = true;
};

/// Found(n) or NotFoundBelow(fuel). `undecided` counts probes whose
/// comparison could not be settled within the fuel (Baire-1 shapes only).
struct MuResult {
  std::optional<MuWitness> witness;
  std::optional<Point> point;
  std::size_t evaluations = 0;
  std::size_t undecided = 0;

  bool found() const noexcept { return witness.has_value(); }
};

/// Decision of "f(y) > t" (sign = +1) or "f(y) < t" (sign = -1) for a Baire-1
/// limit through its modulus. Unknown after `fuel` refinements.
inline Truth baire1_compare(const node::Baire1Limit& b, const Point& y, const Surd& t, int sign, std::size_t fuel,
                            std::size_t& evaluations) {
  for (std::size_t j = 0; j <= fuel; ++j) {
    std::size_t n = (*b.modulus)(y, j);
    Surd v = b.term(n)(y);
    ++evaluations;
    Surd eps(pow2(-static_cast<long>(j)));
    Surd d = sign > 0 ? v - t : t - v;  // f(y) within eps of v
    if (eps < d) return Truth::Yes;
    if (!(Surd(0) < d + eps)) return Truth::No;
  }
  return Truth::Unknown;
}

/// Probe tables are cached per (function, region) so that repeated queries
/// over the same region (value-axis halving) evaluate each probe once. An
/// Oracle is cheap to create; share one only within a single thread.
class Oracle {
 public:
  explicit Oracle(Budget budget = {}) : budget_(std::move(budget)) {}

  const Budget& budget() const noexcept { return budget_; }

  MuResult mu_search(const QuantQuery& q) const {
    require_rule(shape_of(q), subject_of(q));
    return std::visit([&](const auto& s) { return run(s); }, q);
  }

  /// Evaluated probe table (points and exact values).
  struct Table {
    std::vector<ProbePoint> points;
    std::vector<Surd> values;
    std::size_t depth = 0;
    /// Keeps the function alive so its address cannot be reused by another.
    std::optional<SymbolicFn> owner;
  };

  const Table& table(const SymbolicFn& f, const Region& region, const std::optional<Point>& centre = std::nullopt,
                     bool evaluate = true) const {
    std::ostringstream key;
    key << f.id() << '|' << region.str() << '|' << (centre ? centre->str() : "-") << '|' << evaluate;
    auto it = cache_.find(key.str());
    if (it != cache_.end()) return *it->second;
    auto t = std::make_shared<Table>();
    t->owner = f;
    ProbeTable pt(f, region, budget_, centre);
    t->points = pt.points();
    t->depth = pt.depth();
    if (evaluate) {
      t->values.reserve(t->points.size());
      for (auto& p : t->points) t->values.push_back(f(p.x));
      evaluations_ += t->points.size();
    }
    budget_.log("probe " + f.name() + " on " + region.str() + " depth=" + std::to_string(t->depth) +
                " points=" + std::to_string(t->points.size()));
    if (cache_.size() > 4096) cache_.clear();
    return *cache_.emplace(key.str(), std::move(t)).first->second;
  }

  /// Minimum and maximum of the probe values in the region (nothing if empty).
  std::optional<Interval<Surd>> probe_range(const SymbolicFn& f, const Region& region,
                                            const std::optional<Point>& centre = std::nullopt) const {
    const Table& t = table(f, region, centre);
    if (t.values.empty()) return std::nullopt;
    Surd lo = t.values.front(), hi = t.values.front();
    for (auto& v : t.values) {
      lo = min(lo, v);
      hi = max(hi, v);
    }
    return Interval<Surd>{lo, hi};
  }

  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  MuResult run(const query::OscBelow& q) const {
    MuResult out;
    Surd bound(pow2(-static_cast<long>(q.m)));
    for (std::size_t n = 0; n <= budget_.fuel; ++n) {
      auto r = probe_range(q.f, Region::ball(q.x, n), q.x);
      budget_.log("OscBelow depth=" + std::to_string(n));
      if (r && !(bound < r->hi - r->lo)) {
        out.witness = MuWitness{n, true};
        break;
      }
    }
    out.evaluations = evaluations_;
    return out;
  }

  MuResult run(const query::ValueBelowOnBall& q) const {
    MuResult out;
    // A value below q in the deepest ball lies in every ball.
    if (auto deep = probe_range(q.f, Region::ball(q.x, budget_.fuel), q.x); deep && deep->lo < q.q) {
      out.evaluations = evaluations_;
      return out;
    }
    for (std::size_t n = 0; n <= budget_.fuel; ++n) {
      auto r = probe_range(q.f, Region::ball(q.x, n), q.x);
      budget_.log("ValueBelowOnBall depth=" + std::to_string(n));
      if (r && !(r->lo < q.q)) {
        out.witness = MuWitness{n, true};
        break;
      }
    }
    out.evaluations = evaluations_;
    return out;
  }

  /// Up to 8 evenly spread odd dyadics of every depth below the table of
  /// the region, down to `fuel` further layers. Evaluated on first use.
  const Table& tail(const SymbolicFn& f, const Region& region) const {
    const Table& full = table(f, region);
    std::ostringstream os;
    os << f.id() << '|' << region.str() << "|tail";
    std::string key = os.str();
    if (auto it = cache_.find(key); it != cache_.end()) return *it->second;
    auto t = std::make_shared<Table>();
    t->owner = f;
    t->depth = full.depth + budget_.fuel;
    if (region.width().sign() > 0)
      for (std::size_t d = full.depth + 1; d <= t->depth; ++d) {
        Surd scale(pow2(static_cast<long>(d)));
        Integer first = (region.span.lo * scale).floor() + 1, last = (region.span.hi * scale).ceil() - 1;
        if ((first & 1) == 0) ++first;
        if ((last & 1) == 0) --last;
        if (last < first) continue;
        Integer odds = (last - first) / 2 + 1, picks = odds < 8 ? odds : Integer(8);
        Rational step = pow2(-static_cast<long>(d));
        for (Integer i = 0; i < picks; ++i) {
          Integer j = first + 2 * (picks == 1 ? Integer(0) : (i * (odds - 1)) / (picks - 1));
          t->points.push_back({Surd(Rational(j) * step), d + 1});
          t->values.push_back(f(t->points.back().x));
        }
      }
    evaluations_ += t->points.size();
    budget_.log("tail " + f.name() + " on " + region.str() + " depth<=" + std::to_string(t->depth));
    return *cache_.emplace(key, std::move(t)).first->second;
  }

  /// The probe of least layer satisfying `pred`; the sparse tail is searched
  /// only when the full table holds none.
  template <class Pred>
  MuResult first_probe(const SymbolicFn& f, const Interval<Surd>& i, Pred pred, const char* label) const {
    MuResult out;
    Region region = Region::closed(i);
    auto search = [&](const Table& t) {
      std::optional<std::size_t> best;
      for (std::size_t k = 0; k < t.points.size(); ++k)
        if (pred(t.values[k]) && (!best || t.points[k].layer < t.points[*best].layer)) best = k;
      budget_.log(std::string(label) + " layers<=" + std::to_string(t.depth + 1));
      if (best) {
        out.witness = MuWitness{t.points[*best].layer, true};
        out.point = t.points[*best].x;
      }
      return best.has_value();
    };
    if (!search(table(f, region))) search(tail(f, region));
    out.evaluations = evaluations_;
    return out;
  }

  MuResult run(const query::ExistsValueAbove& q) const {
    return first_probe(q.f, q.interval, [&](const Surd& v) { return q.threshold < v; }, "ExistsValueAbove");
  }
  MuResult run(const query::ExistsValueBelow& q) const {
    return first_probe(q.f, q.interval, [&](const Surd& v) { return v < q.threshold; }, "ExistsValueBelow");
  }

  MuResult baire1(const SymbolicFn& f, const Interval<Surd>& i, const Surd& t, int sign, const char* label) const {
    const auto& b = *f.as<node::Baire1Limit>();
    MuResult out;
    const Table& tab = table(f, Region::closed(i), std::nullopt, false);
    std::size_t evals = 0;
    for (auto& p : tab.points) {
      Truth r = baire1_compare(b, p.x, t, sign, budget_.fuel, evals);
      if (r == Truth::Unknown) ++out.undecided;
      if (r == Truth::Yes && (!out.witness || p.layer < out.witness->value)) {
        out.witness = MuWitness{p.layer, true};
        out.point = p.x;
      }
    }
    budget_.log(std::string(label) + " probes=" + std::to_string(tab.points.size()));
    evaluations_ += evals;
    out.evaluations = evaluations_;
    return out;
  }

  MuResult run(const query::Baire1Above& q) const { return baire1(q.f, q.interval, q.threshold, +1, "Baire1Above"); }
  MuResult run(const query::Baire1Below& q) const { return baire1(q.f, q.interval, q.threshold, -1, "Baire1Below"); }

  MuResult run(const query::NotLscoAt& q) const {
    MuResult out;
    Surd fx = q.f(q.x);
    // The balls are nested, so a probe of the deepest one lies in all of them.
    std::optional<Surd> gap;
    if (auto r = probe_range(q.f, Region::ball(q.x, budget_.fuel), q.x)) gap = fx - r->lo;
    budget_.log("NotLscoAt depths<=" + std::to_string(budget_.fuel));
    if (gap && gap->sign() > 0) {
      std::size_t l = 0;
      while (*gap < Surd(pow2(-static_cast<long>(l)))) ++l;
      if (l <= budget_.fuel) out.witness = MuWitness{l, true};
    }
    out.evaluations = evaluations_;
    return out;
  }

  Budget budget_;
  mutable std::map<std::string, std::shared_ptr<Table>> cache_;
  mutable std::size_t evaluations_ = 0;
};

}  // namespace abyss
