#pragma once

// Countable sets with an injective index map, and the two open/closed set
// representations used by the separator and RM-code algorithms.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "abyss/enumerate.hpp"
#include "abyss/exact.hpp"

namespace abyss {

inline void require_unit(const Point& x, const char* what = "point") {
  if (x.sign() < 0 || Surd(1) < x) throw DomainError(std::string(what) + " " + x.str() + " lies outside [0,1]");
}

/// Least n with x >= 2^-(n+1), for x in (0,1]. Bands [2^-(n+1), 2^-n) tile
/// (0,1); the point 1 falls in band 0.
inline std::size_t band_of(const Point& x) {
  if (x.sign() <= 0) throw DomainError("band of a non-positive point");
  std::size_t n = 0;
  while (x < Surd(pow2(-static_cast<long>(n) - 1))) ++n;
  return n;
}

/// A countable subset A of [0,1] given by an enumeration n -> a_n together with
/// the inverse index map Y (Y(a_n) = n). Membership and indexing are exact.
///
/// Three generators exist:
///  * sqrt2_dyadic : a_n = sqrt(2)/2^(n+1), optionally truncated to a prefix
///                   and with finitely many members replaced;
///  * finite       : an explicit list of distinct points;
///  * tilde        : the nowhere-dense companion set built from another set,
///                   with a_n moved into the band [2^-(n+1), 2^-n) by the
///                   rational shift of least index.
class CountableSet {
 public:
  static CountableSet sqrt2_dyadic(std::optional<std::size_t> limit = std::nullopt,
                                   std::map<std::size_t, Point> overrides = {}) {
    Sqrt2Dyadic g{limit, {}};
    CountableSet out(std::make_shared<const Impl>(Impl{g}));
    for (auto& [n, p] : overrides) {
      require_unit(p, "override");
      if (limit && n >= *limit) throw ConstructionError("override index beyond the prefix length");
      auto clash = out.index_of(p);
      if (clash && *clash != n) throw ConstructionError("override " + p.str() + " duplicates member " + std::to_string(*clash));
      g.overrides[n] = p;
      out = CountableSet(std::make_shared<const Impl>(Impl{g}));
    }
    return out;
  }

  static CountableSet finite(std::vector<Point> points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      require_unit(points[i], "member");
      for (std::size_t j = 0; j < i; ++j)
        if (points[i] == points[j]) throw ConstructionError("duplicate member " + points[i].str() + " (index map not injective)");
    }
    return CountableSet(std::make_shared<const Impl>(Impl{Finite{std::move(points)}}));
  }

  /// The companion set whose n-th member is a_n - q with q the signed rational
  /// of least index putting it in [2^-(n+1), 2^-n).
  static CountableSet tilde(const CountableSet& base) {
    if (!base.all_irrational()) throw ConstructionError("tilde construction needs a set of irrationals; remove rationals first");
    return CountableSet(std::make_shared<const Impl>(Impl{Tilde{std::make_shared<CountableSet>(base)}}));
  }

  std::optional<Point> at(std::size_t n) const {
    return std::visit(
        [&](const auto& g) -> std::optional<Point> {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, Sqrt2Dyadic>) {
            if (g.limit && n >= *g.limit) return std::nullopt;
            if (auto it = g.overrides.find(n); it != g.overrides.end()) return it->second;
            return Surd::sqrt2_dyadic(static_cast<unsigned>(n));
          } else if constexpr (std::is_same_v<G, Finite>) {
            if (n >= g.points.size()) return std::nullopt;
            return g.points[n];
          } else {
            auto a = g.base->at(n);
            if (!a) return std::nullopt;
            return *a - Surd(tilde_shift(*a, n));
          }
        },
        impl_->generator);
  }

  /// Y(x) when x is a member.
  std::optional<std::size_t> index_of(const Point& x) const {
    return std::visit(
        [&](const auto& g) -> std::optional<std::size_t> {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, Sqrt2Dyadic>) {
            for (auto& [n, p] : g.overrides)
              if (p == x) return n;
            if (x.rational_part() != 0 || x.sqrt2_part() <= 0) return std::nullopt;
            const Rational& a = x.sqrt2_part();
            if (numerator_of(a) != 1 || !is_power_of_two(denominator_of(a))) return std::nullopt;
            std::size_t bits = msb(denominator_of(a));
            if (bits == 0) return std::nullopt;  // sqrt(2) itself is outside [0,1]
            std::size_t n = bits - 1;
            if (g.limit && n >= *g.limit) return std::nullopt;
            if (g.overrides.count(n)) return std::nullopt;
            return n;
          } else if constexpr (std::is_same_v<G, Finite>) {
            for (std::size_t i = 0; i < g.points.size(); ++i)
              if (g.points[i] == x) return i;
            return std::nullopt;
          } else {
            if (x.sign() <= 0 || !(x < Surd(1)) || x.is_rational()) return std::nullopt;
            std::size_t n = band_of(x);
            auto member = at(n);
            if (member && *member == x) return n;
            return std::nullopt;
          }
        },
        impl_->generator);
  }

  bool contains(const Point& x) const { return index_of(x).has_value(); }

  /// Number of members, or nothing for an infinite (index-surjective) set.
  std::optional<std::size_t> size() const {
    return std::visit(
        [](const auto& g) -> std::optional<std::size_t> {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, Sqrt2Dyadic>) return g.limit;
          else if constexpr (std::is_same_v<G, Finite>) return g.points.size();
          else return g.base->size();
        },
        impl_->generator);
  }

  /// Y attains every natural number.
  bool surjective() const { return !size().has_value(); }
  bool empty() const { return size() == std::optional<std::size_t>(0); }

  bool all_irrational() const {
    return std::visit(
        [](const auto& g) {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, Sqrt2Dyadic>) {
            for (auto& [n, p] : g.overrides)
              if (p.is_rational()) return false;
            return true;
          } else if constexpr (std::is_same_v<G, Finite>) {
            for (auto& p : g.points)
              if (p.is_rational()) return false;
            return true;
          } else {
            return true;
          }
        },
        impl_->generator);
  }

  /// (n, a_n) for every member with n <= max_index.
  std::vector<std::pair<std::size_t, Point>> members_upto(std::size_t max_index) const {
    std::vector<std::pair<std::size_t, Point>> out;
    std::size_t stop = max_index + 1;
    if (auto s = size()) stop = std::min(stop, *s);
    for (std::size_t n = 0; n < stop; ++n)
      if (auto p = at(n)) out.emplace_back(n, *p);
    return out;
  }

  // Introspection for serialisation.
  enum class Kind { Sqrt2Dyadic, Finite, Tilde };
  Kind kind() const { return static_cast<Kind>(impl_->generator.index()); }
  std::optional<std::size_t> prefix_limit() const { return std::get<Sqrt2Dyadic>(impl_->generator).limit; }
  const std::map<std::size_t, Point>& overrides() const { return std::get<Sqrt2Dyadic>(impl_->generator).overrides; }
  const std::vector<Point>& finite_points() const { return std::get<Finite>(impl_->generator).points; }
  const CountableSet& tilde_base() const { return *std::get<Tilde>(impl_->generator).base; }

  /// The shift q with a - q in band n, least in the signed enumeration.
  static Rational tilde_shift(const Point& a, std::size_t n) {
    Surd upper = a - Surd(pow2(-static_cast<long>(n) - 1));  // y >= 2^-(n+1)  <=>  q <= a - 2^-(n+1)
    Surd lower = a - Surd(pow2(-static_cast<long>(n)));      // y <  2^-n      <=>  q >  a - 2^-n
    return simplest_rational(lower, false, upper, true);
  }

 private:
  struct Sqrt2Dyadic {
    std::optional<std::size_t> limit;
    std::map<std::size_t, Point> overrides;
  };
  struct Finite {
    std::vector<Point> points;
  };
  struct Tilde {
    std::shared_ptr<const CountableSet> base;
  };
  struct Impl {
    std::variant<Sqrt2Dyadic, Finite, Tilde> generator;
  };

  static std::size_t msb(const Integer& n) { return boost::multiprecision::msb(n); }

  explicit CountableSet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// An open set O given by a radius function: x in O iff radius(x) > 0, and
/// then B(x, radius(x)) is inside O. Realised symbolically as a finite union
/// of open rational intervals, the radius being the distance to the boundary
/// of the component containing x.
class R2Rep {
 public:
  R2Rep() = default;
  explicit R2Rep(std::vector<Interval<Rational>> components) : components_(std::move(components)) {
    for (auto& c : components_)
      if (!(c.lo < c.hi)) throw ConstructionError("empty component " + to_string(c));
  }

  Surd radius(const Point& x) const {
    Surd best(0);
    for (auto& c : components_)
      if (Surd(c.lo) < x && x < Surd(c.hi)) best = max(best, min(x - Surd(c.lo), Surd(c.hi) - x));
    return best;
  }
  bool contains(const Point& x) const { return radius(x).sign() > 0; }

  /// Component endpoints lying in [0,1].
  std::vector<Point> boundary() const {
    std::vector<Point> out;
    for (auto& c : components_)
      for (const Rational& e : {c.lo, c.hi})
        if (e >= 0 && e <= 1) out.emplace_back(e);
    return out;
  }

  const std::vector<Interval<Rational>>& components() const noexcept { return components_; }

 private:
  std::vector<Interval<Rational>> components_;
};

/// A closed set: a finite point set, or the complement of an R2-open set.
class ClosedSetRep {
 public:
  static ClosedSetRep points(std::vector<Point> pts) { return ClosedSetRep(Rep{std::move(pts)}); }
  static ClosedSetRep complement_of(R2Rep open) { return ClosedSetRep(Rep{std::move(open)}); }

  bool contains(const Point& x) const {
    if (auto* pts = std::get_if<std::vector<Point>>(&rep_)) {
      for (auto& p : *pts)
        if (p == x) return true;
      return false;
    }
    return !std::get<R2Rep>(rep_).contains(x);
  }

  bool is_finite() const { return std::holds_alternative<std::vector<Point>>(rep_); }
  const std::vector<Point>& finite_points() const { return std::get<std::vector<Point>>(rep_); }
  const R2Rep& open_complement() const { return std::get<R2Rep>(rep_); }

  std::vector<Point> boundary() const { return is_finite() ? finite_points() : open_complement().boundary(); }

 private:
  using Rep = std::variant<std::vector<Point>, R2Rep>;
  explicit ClosedSetRep(Rep r) : rep_(std::move(r)) {}
  Rep rep_;
};

/// An RM-code: a (prefix of a) sequence of rational open balls whose union is
/// the coded open set.
struct RationalBall {
  Rational center;
  Rational radius;
  friend bool operator==(const RationalBall&, const RationalBall&) = default;
};

struct RMCode {
  std::vector<RationalBall> balls;
  bool prefix_of_infinite = false;

  bool covers(const Point& x) const {
    for (auto& b : balls)
      if (abs(x - Surd(b.center)) < Surd(b.radius)) return true;
    return false;
  }
};

}  // namespace abyss
