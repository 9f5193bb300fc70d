#pragma once

// Exact arithmetic substrate: rationals, the field Q(sqrt 2) used to carry
// the irrational points of the function universe, closed intervals, dyadic
// grids and the fueled three-valued truth type.

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abyss/errors.hpp"

namespace abyss {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// 2^e for any integer exponent.
inline Rational pow2(long e) {
  Integer one = 1;
  if (e >= 0) return Rational(one << static_cast<unsigned>(e));
  return Rational(Integer(1), one << static_cast<unsigned>(-e));
}

/// Largest integer <= r.
inline Integer floor_of(const Rational& r) {
  Integer n = numerator_of(r), d = denominator_of(r);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) --q;
  return q;
}

/// Smallest integer >= r.
inline Integer ceil_of(const Rational& r) { return -floor_of(-r); }

inline bool is_power_of_two(const Integer& n) { return n > 0 && (n & (n - 1)) == 0; }

/// "p/q" for non-integers, "p" for integers.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Parses "p/q", "p" or "-p/q". Throws DomainError on malformed text or a zero
/// denominator.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits(num) || !digits(den) || den[0] == '-' || den[0] == '+')
    throw DomainError("malformed rational '" + std::string(text) + "'");
  Integer n{std::string(num[0] == '+' ? num.substr(1) : num)};
  Integer d{std::string(den)};
  if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

/// An exact element rational + sqrt2 * sqrt(2) of Q(sqrt 2).
///
/// Points of [0,1] and function values are carried in this field: it contains
/// every rational, the canonical irrational family sqrt(2)/2^(n+1) and all
/// rational shifts of it, and the order is decidable by squaring.
class Surd {
 public:
  Surd() = default;
  Surd(int v) : rational_(v) {}  // NOLINT(google-explicit-constructor)
  Surd(Rational r) : rational_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Surd(Rational rational, Rational sqrt2) : rational_(std::move(rational)), sqrt2_(std::move(sqrt2)) {}

  /// sqrt(2) / 2^(n+1).
  static Surd sqrt2_dyadic(unsigned n) { return Surd(Rational(0), pow2(-static_cast<long>(n) - 1)); }

  const Rational& rational_part() const noexcept { return rational_; }
  const Rational& sqrt2_part() const noexcept { return sqrt2_; }
  bool is_rational() const noexcept { return sqrt2_ == 0; }

  /// -1, 0 or +1.
  int sign() const {
    int rs = rational_.sign(), as = sqrt2_.sign();
    if (as == 0) return rs;
    if (rs == 0 || rs == as) return as;
    // Opposite signs: compare rational^2 with 2*sqrt2^2.
    Rational lhs = rational_ * rational_, rhs = 2 * sqrt2_ * sqrt2_;
    return lhs > rhs ? rs : as;  // equality impossible: sqrt(2) is irrational
  }

  friend Surd operator+(const Surd& a, const Surd& b) {
    if (a.is_rational() && b.is_rational()) return Surd(a.rational_ + b.rational_);
    return {a.rational_ + b.rational_, a.sqrt2_ + b.sqrt2_};
  }
  friend Surd operator-(const Surd& a, const Surd& b) {
    if (a.is_rational() && b.is_rational()) return Surd(a.rational_ - b.rational_);
    return {a.rational_ - b.rational_, a.sqrt2_ - b.sqrt2_};
  }
  friend Surd operator-(const Surd& a) { return {-a.rational_, -a.sqrt2_}; }
  friend Surd operator*(const Surd& a, const Surd& b) {
    if (b.is_rational()) {
      if (a.is_rational()) return Surd(a.rational_ * b.rational_);
      return {a.rational_ * b.rational_, a.sqrt2_ * b.rational_};
    }
    if (a.is_rational()) return {a.rational_ * b.rational_, a.rational_ * b.sqrt2_};
    return {a.rational_ * b.rational_ + 2 * a.sqrt2_ * b.sqrt2_, a.rational_ * b.sqrt2_ + a.sqrt2_ * b.rational_};
  }
  friend Surd operator/(const Surd& a, const Surd& b) {
    if (b.sign() == 0) throw DomainError("division by zero");
    Rational norm = b.rational_ * b.rational_ - 2 * b.sqrt2_ * b.sqrt2_;
    Surd conj{b.rational_ / norm, -b.sqrt2_ / norm};
    return a * conj;
  }
  Surd& operator+=(const Surd& o) { return *this = *this + o; }
  Surd& operator-=(const Surd& o) { return *this = *this - o; }

  friend bool operator==(const Surd& a, const Surd& b) { return a.rational_ == b.rational_ && a.sqrt2_ == b.sqrt2_; }
  friend std::strong_ordering operator<=>(const Surd& a, const Surd& b) {
    if (a.is_rational() && b.is_rational()) {
      if (a.rational_ < b.rational_) return std::strong_ordering::less;
      return a.rational_ == b.rational_ ? std::strong_ordering::equal : std::strong_ordering::greater;
    }
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  /// Largest integer <= *this.
  Integer floor() const {
    if (is_rational()) return floor_of(rational_);
    Integer p = numerator_of(sqrt2_), q = denominator_of(sqrt2_);
    Integer root = boost::multiprecision::sqrt(Integer(2 * p * p));  // floor(|p| sqrt 2)
    // |sqrt2_| * sqrt(2) lies in [root/q, (root+1)/q), a window of width <= 1.
    Rational upper = sqrt2_ > 0 ? rational_ + Rational(root + 1, q) : rational_ - Rational(root, q);
    Integer n = floor_of(upper);
    return (*this - Surd(Rational(n))).sign() >= 0 ? n : n - 1;
  }
  Integer ceil() const { return -(-*this).floor(); }

  /// Rational enclosure [lo, hi] with hi - lo <= 2^-bits (degenerate when
  /// rational).
  std::pair<Rational, Rational> enclose(unsigned bits) const {
    if (is_rational()) return {rational_, rational_};
    Surd scaled = *this * Surd(pow2(bits));
    Integer f = scaled.floor();
    return {Rational(f) * pow2(-static_cast<long>(bits)), Rational(f + 1) * pow2(-static_cast<long>(bits))};
  }

  /// A rational within 2^-bits (the lower end of the enclosure).
  Rational approx(unsigned bits) const { return enclose(bits).first; }

  double to_double() const {
    return static_cast<double>(rational_) + static_cast<double>(sqrt2_) * 1.4142135623730950488;
  }

  /// Only valid for rational values.
  const Rational& as_rational() const {
    if (!is_rational()) throw DomainError("value " + str() + " is irrational");
    return rational_;
  }

  std::string str() const {
    if (is_rational()) return to_string(rational_);
    std::string out;
    if (rational_ != 0) out = to_string(rational_) + (sqrt2_ > 0 ? "+" : "");
    if (sqrt2_ == -1)
      out += "-";
    else if (sqrt2_ != 1)
      out += to_string(sqrt2_) + "*";
    return out + "sqrt2";
  }

  friend std::ostream& operator<<(std::ostream& os, const Surd& s) { return os << s.str(); }

 private:
  Rational rational_{0};
  Rational sqrt2_{0};
};

/// Points of [0,1] are exact elements of Q(sqrt 2).
using Point = Surd;

inline Surd min(const Surd& a, const Surd& b) { return b < a ? b : a; }
inline Surd max(const Surd& a, const Surd& b) { return a < b ? b : a; }
inline Surd abs(const Surd& a) { return a.sign() < 0 ? -a : a; }

/// Closed interval [lo, hi]. Open balls are represented by the same record;
/// the operation that consumes them decides whether endpoints count.
template <class T>
struct Interval {
  T lo;
  T hi;

  bool contains(const T& x) const { return !(x < lo) && !(hi < x); }
  bool contains_open(const T& x) const { return lo < x && x < hi; }
  T width() const { return hi - lo; }
  T midpoint() const { return (lo + hi) / T(2); }
  bool subset_of(const Interval& o) const { return !(lo < o.lo) && !(o.hi < hi); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

using DyadicInterval = Interval<Rational>;

/// B(x, 2^-k) as an interval record.
template <class T>
Interval<T> ball(const T& x, unsigned k) {
  T r = T(pow2(-static_cast<long>(k)));
  return {x - r, x + r};
}

/// Splits [lo, hi] at its midpoint.
template <class T>
std::pair<Interval<T>, Interval<T>> halve(const Interval<T>& i) {
  if (!(i.lo < i.hi)) throw DomainError("cannot halve a degenerate interval");
  T mid = i.midpoint();
  return {Interval<T>{i.lo, mid}, Interval<T>{mid, i.hi}};
}

/// All j/2^n inside the closed interval, strictly increasing.
template <class T>
std::vector<Rational> rational_grid(const Interval<T>& i, unsigned n) {
  std::vector<Rational> out;
  if (i.hi < i.lo) return out;
  Surd scale(pow2(n));
  Integer first = (Surd(i.lo) * scale).ceil();
  Integer last = (Surd(i.hi) * scale).floor();
  Rational step = pow2(-static_cast<long>(n));
  for (Integer j = first; j <= last; ++j) out.emplace_back(Rational(j) * step);
  return out;
}

inline std::string to_string(const Interval<Rational>& i) { return "[" + to_string(i.lo) + ", " + to_string(i.hi) + "]"; }
inline std::string to_string(const Interval<Surd>& i) { return "[" + i.lo.str() + ", " + i.hi.str() + "]"; }

/// Outer rational enclosure of an interval with Surd endpoints.
inline DyadicInterval enclose(const Interval<Surd>& i, unsigned bits) {
  return {i.lo.enclose(bits).first, i.hi.enclose(bits).second};
}

enum class Truth { Yes, No, Unknown };

inline std::string_view to_string(Truth t) {
  switch (t) {
    case Truth::Yes: return "yes";
    case Truth::No: return "no";
    case Truth::Unknown: return "unknown";
  }
  return "unknown";
}

/// Result of a simulated oracle question. Unknown means the fuel ran out;
/// Yes and No are never revised by a larger budget.
struct FueledBool {
  Truth value = Truth::Unknown;
  std::uint64_t fuel_spent = 0;

  bool yes() const noexcept { return value == Truth::Yes; }
  bool no() const noexcept { return value == Truth::No; }
};

/// Number of halvings needed to get from width w down to <= 2^0 scale, i.e.
/// the least s with 2^-s <= w (w > 0). Used to place grids relative to a
/// region.
inline unsigned scale_of(const Surd& width) {
  if (width.sign() <= 0) throw DomainError("scale of a non-positive width");
  // Estimate from a positive rational lower bound, then correct exactly.
  Rational lower = width.rational_part();
  for (unsigned bits = 16; !width.is_rational(); bits *= 2) {
    lower = width.enclose(bits).first;
    if (lower > 0) break;
  }
  long n = static_cast<long>(msb(numerator_of(lower))), d = static_cast<long>(msb(denominator_of(lower)));
  long s = std::max(0L, d - n);
  while (s > 0 && !(Surd(pow2(-(s - 1))) > width)) --s;
  while (Surd(pow2(-s)) > width) ++s;
  return static_cast<unsigned>(s);
}

}  // namespace abyss
