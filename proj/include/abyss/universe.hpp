#pragma once

// The closed symbolic universe of functions on [0,1].
//
// A SymbolicFn is an immutable handle onto a tree of nodes. Every node knows
// how to evaluate itself exactly at any Point of Q(sqrt 2), which classes it
// belongs to, a range enclosure, and the finitely many "special" points
// (members of its countable set, breakpoints, band boundaries) that rational
// sampling can never find on its own.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "abyss/classes.hpp"
#include "abyss/exact.hpp"
#include "abyss/sets.hpp"

namespace abyss {

/// Polynomial with rational coefficients, lowest degree first.
struct Poly {
  std::vector<Rational> coeffs;

  Surd operator()(const Surd& x) const {
    Surd acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + Surd(*it);
    return acc;
  }
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  bool is_constant() const {
    for (std::size_t i = 1; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) return false;
    return true;
  }
  friend bool operator==(const Poly&, const Poly&) = default;
};

/// Which value a piecewise function takes exactly at a breakpoint.
struct BreakPolicy {
  enum class Kind { Left, Right, Explicit };
  Kind kind = Kind::Right;
  Rational value{0};  // used by Explicit

  static BreakPolicy left() { return {Kind::Left, 0}; }
  static BreakPolicy right() { return {Kind::Right, 0}; }
  static BreakPolicy explicit_value(Rational v) { return {Kind::Explicit, std::move(v)}; }
  friend bool operator==(const BreakPolicy&, const BreakPolicy&) = default;
};

class SymbolicFn;

using TermSequence = std::function<SymbolicFn(std::size_t)>;
using ConvergenceModulus = std::function<std::size_t(const Point&, std::size_t)>;
using SpecialPointSource = std::function<std::vector<Point>(std::size_t)>;

namespace node {

struct Piecewise {
  std::vector<Point> breakpoints;  // strictly increasing, inside (0,1)
  std::vector<Poly> pieces;        // breakpoints.size() + 1 pieces
  std::vector<BreakPolicy> policies;
};
struct Thomae {};
struct Penny {
  CountableSet set;
};
struct PennyK {
  CountableSet set;
  std::size_t k;
};
struct TildePenny {
  CountableSet base;
  CountableSet tilde;
};
struct CoverPsi {
  CountableSet base;
  CountableSet tilde;
};
struct CoverPsiUsco {
  CountableSet base;
  CountableSet tilde;
};
struct Indicator {
  ClosedSetRep set;
};
/// Pointwise limit of continuous terms. `stable_index`, when present, gives an
/// index from which the sequence is constant at x, so evaluation is exact.
struct Baire1Limit {
  enum class Family { PennyK, Constant, OpenIndicator, Custom };
  Family family = Family::Custom;
  // Construction parameters of the built-in families, kept for serialisation.
  std::optional<CountableSet> source_set;
  std::vector<SymbolicFn> source_fns;
  std::optional<R2Rep> source_open;

  TermSequence term;
  std::optional<ConvergenceModulus> modulus;
  std::optional<std::function<std::size_t(const Point&)>> stable_index;
  SpecialPointSource specials;
  Interval<Surd> range{Surd(0), Surd(1)};
  std::string description;
};
struct Sum;
struct Difference;
struct Scaled;
struct Below;
struct Restricted;

}  // namespace node

class SymbolicFn {
 public:
  using Node = std::variant<node::Piecewise, node::Thomae, node::Penny, node::PennyK, node::TildePenny, node::CoverPsi,
                            node::CoverPsiUsco, node::Indicator, node::Baire1Limit, std::shared_ptr<const node::Sum>,
                            std::shared_ptr<const node::Difference>, std::shared_ptr<const node::Scaled>,
                            std::shared_ptr<const node::Below>, std::shared_ptr<const node::Restricted>>;

  SymbolicFn(Node n, ClassSet tags, std::string name)
      : impl_(std::make_shared<const Impl>(Impl{std::move(n), tags, std::move(name)})) {}

  const Node& node() const noexcept { return impl_->node; }
  const ClassSet& tags() const noexcept { return impl_->tags; }
  bool has(ClassTag t) const noexcept { return impl_->tags.has(t); }
  /// Short human-readable name, e.g. "penny(sqrt2_dyadic)".
  const std::string& name() const noexcept { return impl_->name; }
  /// Identity of the underlying node, stable for the lifetime of the handle.
  const void* id() const noexcept { return impl_.get(); }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&impl_->node);
  }

  /// Exact value at x in [0,1].
  Surd operator()(const Point& x) const;
  Surd eval(const Point& x) const { return (*this)(x); }

  /// An interval containing every value of the function on [0,1].
  Interval<Surd> bounds() const;

  /// Points that rational probing cannot discover: set members of index
  /// <= max_index, breakpoints, band boundaries 2^-n for n <= max_index.
  std::vector<Point> special_points(std::size_t max_index) const;

  /// The underlying countable set of a penny-like node, if any.
  std::optional<CountableSet> countable_set() const;

 private:
  struct Impl {
    Node node;
    ClassSet tags;
    std::string name;
  };
  std::shared_ptr<const Impl> impl_;
};

namespace node {
struct Sum {
  std::vector<SymbolicFn> terms;
};
struct Difference {
  SymbolicFn lhs, rhs;
};
struct Scaled {
  Rational factor;
  SymbolicFn fn;
};
/// f(x) where f(x) < threshold, 0 elsewhere. Only built over non-negative
/// penny-like functions, where it deletes the members with the top values.
struct Below {
  SymbolicFn fn;
  Rational threshold;
};
/// The same function viewed with fewer class tags.
struct Restricted {
  SymbolicFn fn;
};
}  // namespace node

namespace detail {

inline Surd power_of_half(std::size_t n) { return Surd(pow2(-static_cast<long>(n))); }

inline Surd penny_value(const CountableSet& a, const Point& x) {
  auto n = a.index_of(x);
  return n ? power_of_half(*n + 1) : Surd(0);
}

/// Piece index for a point strictly between breakpoints, or the breakpoint
/// slot when it hits one exactly.
struct PieceLookup {
  std::size_t piece;
  std::optional<std::size_t> breakpoint;
};

inline PieceLookup locate(const node::Piecewise& p, const Point& x) {
  auto it = std::lower_bound(p.breakpoints.begin(), p.breakpoints.end(), x);
  std::size_t i = static_cast<std::size_t>(it - p.breakpoints.begin());
  if (it != p.breakpoints.end() && *it == x) return {i, i};
  return {i, std::nullopt};
}

inline Surd eval_piecewise(const node::Piecewise& p, const Point& x) {
  auto loc = locate(p, x);
  if (!loc.breakpoint) return p.pieces[loc.piece](x);
  const BreakPolicy& pol = p.policies[*loc.breakpoint];
  switch (pol.kind) {
    case BreakPolicy::Kind::Left: return p.pieces[*loc.breakpoint](x);
    case BreakPolicy::Kind::Right: return p.pieces[*loc.breakpoint + 1](x);
    case BreakPolicy::Kind::Explicit: return Surd(pol.value);
  }
  return Surd(0);
}

inline Surd thomae_value(const Point& x) {
  if (!x.is_rational()) return Surd(0);
  const Rational& r = x.rational_part();
  return Surd(Rational(Integer(1), denominator_of(r)));
}

inline Surd cover_value(const CountableSet& tilde, const Point& x, bool usco_variant) {
  if (auto n = tilde.index_of(x)) return power_of_half(*n + 5);
  if (!usco_variant) return Surd(Rational(1, 8));
  if (x.sign() == 0) return power_of_half(6);
  return power_of_half(band_of(x) + 6);
}

/// Crude but valid range bound of a polynomial on [0,1]: exact for affine
/// pieces, sum of absolute coefficients otherwise.
inline Interval<Surd> poly_bounds(const Poly& p) {
  if (p.degree() <= 1) {
    Surd a = p(Surd(0)), b = p(Surd(1));
    return {min(a, b), max(a, b)};
  }
  Rational total = 0;
  for (auto& c : p.coeffs) total += c < 0 ? Rational(-c) : c;
  return {Surd(Rational(-total)), Surd(total)};
}

inline Interval<Surd> hull(const Interval<Surd>& a, const Interval<Surd>& b) { return {min(a.lo, b.lo), max(a.hi, b.hi)}; }

inline void append(std::vector<Point>& out, const std::vector<Point>& more) { out.insert(out.end(), more.begin(), more.end()); }

inline void append_members(std::vector<Point>& out, const CountableSet& s, std::size_t max_index) {
  for (auto& [n, p] : s.members_upto(max_index)) out.push_back(p);
}

inline void append_band_edges(std::vector<Point>& out, std::size_t max_index) {
  for (std::size_t n = 0; n <= max_index; ++n) out.push_back(power_of_half(n));
}

}  // namespace detail

inline Surd SymbolicFn::operator()(const Point& x) const {
  require_unit(x, "evaluation point");
  return std::visit(
      [&](const auto& n) -> Surd {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Piecewise>) return detail::eval_piecewise(n, x);
        else if constexpr (std::is_same_v<N, node::Thomae>) return detail::thomae_value(x);
        else if constexpr (std::is_same_v<N, node::Penny>) return detail::penny_value(n.set, x);
        else if constexpr (std::is_same_v<N, node::PennyK>) {
          auto i = n.set.index_of(x);
          return i && *i <= n.k ? detail::power_of_half(*i + 1) : Surd(0);
        } else if constexpr (std::is_same_v<N, node::TildePenny>) return detail::penny_value(n.tilde, x);
        else if constexpr (std::is_same_v<N, node::CoverPsi>) return detail::cover_value(n.tilde, x, false);
        else if constexpr (std::is_same_v<N, node::CoverPsiUsco>) return detail::cover_value(n.tilde, x, true);
        else if constexpr (std::is_same_v<N, node::Indicator>) return n.set.contains(x) ? Surd(1) : Surd(0);
        else if constexpr (std::is_same_v<N, node::Baire1Limit>) {
          if (n.stable_index) return n.term((*n.stable_index)(x))(x);
          if (!n.modulus) throw NotEvaluable("'" + n.description + "' is not pointwise evaluable without a convergence modulus");
          throw NotEvaluable("'" + n.description + "' has a convergence modulus but no exact limit; use an approximation algorithm");
        } else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Sum>>) {
          Surd acc(0);
          for (auto& t : n->terms) acc += t(x);
          return acc;
        } else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Difference>>) return n->lhs(x) - n->rhs(x);
        else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Scaled>>) return Surd(n->factor) * n->fn(x);
        else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Below>>) {
          Surd v = n->fn(x);
          return v < Surd(n->threshold) ? v : Surd(0);
        } else return n->fn(x);
      },
      impl_->node);
}

inline Interval<Surd> SymbolicFn::bounds() const {
  return std::visit(
      [&](const auto& n) -> Interval<Surd> {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Piecewise>) {
          Interval<Surd> out = detail::poly_bounds(n.pieces.front());
          for (auto& p : n.pieces) out = detail::hull(out, detail::poly_bounds(p));
          for (auto& pol : n.policies)
            if (pol.kind == BreakPolicy::Kind::Explicit) out = detail::hull(out, {Surd(pol.value), Surd(pol.value)});
          return out;
        } else if constexpr (std::is_same_v<N, node::Thomae> || std::is_same_v<N, node::Indicator>) {
          return {Surd(0), Surd(1)};
        } else if constexpr (std::is_same_v<N, node::Penny> || std::is_same_v<N, node::PennyK> ||
                             std::is_same_v<N, node::TildePenny>) {
          return {Surd(0), Surd(Rational(1, 2))};
        } else if constexpr (std::is_same_v<N, node::CoverPsi>) {
          return {Surd(0), Surd(Rational(1, 8))};
        } else if constexpr (std::is_same_v<N, node::CoverPsiUsco>) {
          return {Surd(0), Surd(Rational(1, 32))};
        } else if constexpr (std::is_same_v<N, node::Baire1Limit>) {
          return n.range;
        } else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Sum>>) {
          Interval<Surd> out{Surd(0), Surd(0)};
          for (auto& t : n->terms) {
            auto b = t.bounds();
            out = {out.lo + b.lo, out.hi + b.hi};
          }
          return out;
        } else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Difference>>) {
          auto a = n->lhs.bounds(), b = n->rhs.bounds();
          return {a.lo - b.hi, a.hi - b.lo};
        } else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Scaled>>) {
          auto b = n->fn.bounds();
          Surd c(n->factor), x = c * b.lo, y = c * b.hi;
          return {min(x, y), max(x, y)};
        } else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Below>>) {
          auto b = n->fn.bounds();
          return {min(b.lo, Surd(0)), max(Surd(0), min(b.hi, Surd(n->threshold)))};
        } else {
          return n->fn.bounds();
        }
      },
      impl_->node);
}

inline std::vector<Point> SymbolicFn::special_points(std::size_t max_index) const {
  std::vector<Point> out;
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Piecewise>) {
          out = n.breakpoints;
        } else if constexpr (std::is_same_v<N, node::Thomae>) {
        } else if constexpr (std::is_same_v<N, node::Penny>) {
          detail::append_members(out, n.set, max_index);
        } else if constexpr (std::is_same_v<N, node::PennyK>) {
          detail::append_members(out, n.set, std::min(max_index, n.k));
        } else if constexpr (std::is_same_v<N, node::TildePenny>) {
          detail::append_members(out, n.tilde, max_index);
        } else if constexpr (std::is_same_v<N, node::CoverPsi>) {
          detail::append_members(out, n.tilde, max_index);
        } else if constexpr (std::is_same_v<N, node::CoverPsiUsco>) {
          detail::append_members(out, n.tilde, max_index);
          detail::append_band_edges(out, max_index);
        } else if constexpr (std::is_same_v<N, node::Indicator>) {
          out = n.set.boundary();
        } else if constexpr (std::is_same_v<N, node::Baire1Limit>) {
          if (n.specials) out = n.specials(max_index);
        } else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Sum>>) {
          for (auto& t : n->terms) detail::append(out, t.special_points(max_index));
        } else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Difference>>) {
          out = n->lhs.special_points(max_index);
          detail::append(out, n->rhs.special_points(max_index));
        } else {
          out = n->fn.special_points(max_index);
        }
      },
      impl_->node);
  std::vector<Point> unit;
  for (auto& p : out)
    if (p.sign() >= 0 && !(Surd(1) < p) && std::find(unit.begin(), unit.end(), p) == unit.end()) unit.push_back(p);
  return unit;
}

inline std::optional<CountableSet> SymbolicFn::countable_set() const {
  return std::visit(
      [&](const auto& n) -> std::optional<CountableSet> {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Penny> || std::is_same_v<N, node::PennyK>) return n.set;
        else if constexpr (std::is_same_v<N, node::TildePenny> || std::is_same_v<N, node::CoverPsi> ||
                           std::is_same_v<N, node::CoverPsiUsco>)
          return n.tilde;
        else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Below>> ||
                           std::is_same_v<N, std::shared_ptr<const node::Restricted>>)
          return n->fn.countable_set();
        else return std::nullopt;
      },
      impl_->node);
}

}  // namespace abyss
