#pragma once

// One-sided limits, jumps and variation of regulated functions.

#include <algorithm>

#include "abyss/algorithms/continuity.hpp"

namespace abyss {

struct OneSidedLimits {
  /// Absent at x = 0.
  std::optional<DyadicInterval> left;
  /// Absent at x = 1.
  std::optional<DyadicInterval> right;
};

namespace detail {

inline const char* kRegulatedRule = "regulated-one-sided-limits";
inline const char* kVariationRule = "nbv-partition-sup";

/// The open side interval (x, x + 2^-n) or (x - 2^-n, x), clipped to [0,1].
inline Region side(const Point& x, std::size_t n, bool right) {
  Surd r = eps(n);
  return right ? Region::open({x, x + r}) : Region::open({x - r, x});
}

inline std::optional<DyadicInterval> one_sided_limit(const SymbolicFn& f, const Point& x, std::size_t k, bool right,
                                                     const Oracle& oracle) {
  if (right ? !(x < Surd(1)) : !(Surd(0) < x)) return std::nullopt;
  Surd tolerance = eps(k + 1);
  for (std::size_t n = k + 2; n <= k + 2 + oracle.budget().fuel; ++n) {
    auto r = oracle.probe_range(f, side(x, n, right));
    if (!r || tolerance < r->hi - r->lo) continue;
    Rational mid = ((r->lo + r->hi) / Surd(Rational(2))).approx(static_cast<unsigned>(k + 4));
    return centred_interval(mid, k);
  }
  throw FuelExhausted(std::string("limits_lr: ") + (right ? "right" : "left") + " limit at " + x.str() +
                          " did not settle",
                      "no interval");
}

}  // namespace detail

/// Intervals of width 2^-k containing f(x-) and f(x+).
inline OneSidedLimits limits_lr(const SymbolicFn& f, const Point& x, std::size_t k, const Oracle& oracle) {
  require_class(f, {ClassTag::Regulated}, "regulated", detail::kRegulatedRule, "limits_lr");
  require_unit(x);
  return {detail::one_sided_limit(f, x, k, false, oracle), detail::one_sided_limit(f, x, k, true, oracle)};
}

/// M(x, k): the least M with |f(y) - f(x+)| < 2^-k on (x, x + 2^-M) and
/// |f(y) - f(x-)| < 2^-k on (x - 2^-M, x), checked on the probes.
inline RegulationModulus modulus_regulation(const SymbolicFn& f, const Budget& budget = {}) {
  require_class(f, {ClassTag::Regulated}, "regulated", detail::kRegulatedRule, "modulus_regulation");
  auto oracle = std::make_shared<Oracle>(budget);
  return {"M[" + f.name() + "]", [f, oracle](const Point& x, std::size_t k) -> std::optional<std::size_t> {
            OneSidedLimits lim = limits_lr(f, x, k + 3, *oracle);
            Surd bound = eps(k);
            auto within = [&](const std::optional<DyadicInterval>& l, std::size_t m, bool right) {
              if (!l) return true;
              auto r = oracle->probe_range(f, detail::side(x, m, right));
              if (!r) return true;
              Surd c(l->midpoint());
              return abs(r->lo - c) < bound && abs(r->hi - c) < bound;
            };
            for (std::size_t m = 0; m <= oracle->budget().fuel; ++m)
              if (within(lim.left, m, false) && within(lim.right, m, true)) return m;
            return std::nullopt;
          }};
}

/// The jump points among the first special points of f (breakpoints and set
/// members up to `max_index`), in increasing order. Calling again with a
/// larger index extends the list.
inline std::vector<Point> jump_enum(const SymbolicFn& f, std::size_t max_index, const Oracle& oracle,
                                    std::size_t precision = 30) {
  require_class(f, {ClassTag::Regulated}, "regulated", detail::kRegulatedRule, "jump_enum");
  std::vector<Point> out;
  for (auto& s : f.special_points(max_index)) {
    if (!(Surd(0) < s && s < Surd(1))) continue;
    OneSidedLimits lim = limits_lr(f, s, precision, oracle);
    if (lim.left->hi < lim.right->lo || lim.right->hi < lim.left->lo) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Partition sums of f over a fixed fine partition: the depth-12 dyadic grid,
/// the special points, and a point just left of every special point.
class VariationTable {
 public:
  VariationTable(const SymbolicFn& f, std::size_t fuel) : f_(f) {
    require_class(f, {ClassTag::NormalisedBV}, "normalised-BV", detail::kVariationRule, "variation");
    const long depth = 12;
    Rational step = pow2(-depth);
    for (long j = 0; j <= (1L << depth); ++j) points_.push_back(Surd(step * j));
    Surd before(pow2(-48));
    for (auto& s : f.special_points(fuel)) {
      points_.push_back(s);
      if (before < s) points_.push_back(s - before);
    }
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    values_.reserve(points_.size());
    for (auto& p : points_) values_.push_back(f(p));
    sums_.push_back(Surd(0));
    for (std::size_t i = 1; i < points_.size(); ++i) sums_.push_back(sums_.back() + abs(values_[i] - values_[i - 1]));
  }

  /// Variation of f over [0, x] along the partition with x appended.
  Surd variation_upto(const Point& x) const {
    require_unit(x);
    auto it = std::upper_bound(points_.begin(), points_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - points_.begin()) - 1;
    return sums_[i] + abs(f_(x) - values_[i]);
  }

  const SymbolicFn& fn() const noexcept { return f_; }

 private:
  SymbolicFn f_;
  std::vector<Point> points_;
  std::vector<Surd> values_;
  std::vector<Surd> sums_;
};

/// Interval of width 2^-k around V_0^x(f).
inline DyadicInterval total_variation_nbv(const SymbolicFn& f, const Point& x, std::size_t k,
                                          const Oracle& oracle) {
  VariationTable table(f, oracle.budget().fuel);
  return centred_interval(table.variation_upto(x).approx(static_cast<unsigned>(k + 4)), k);
}

/// f = g - h with g(x) = V_0^x(f) and h = g - f, both non-decreasing.
struct JordanPair {
  std::function<Surd(const Point&)> g;
  std::function<Surd(const Point&)> h;
};

inline JordanPair jordan_nbv(const SymbolicFn& f, const Budget& budget = {}) {
  auto table = std::make_shared<const VariationTable>(f, budget.fuel);
  return {[table](const Point& x) { return table->variation_upto(x); },
          [table](const Point& x) { return table->variation_upto(x) - table->fn()(x); }};
}

}  // namespace abyss
