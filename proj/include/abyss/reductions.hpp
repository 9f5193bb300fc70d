#pragma once

// Reductions that turn a hypothetical functional into a point outside a
// countable set A, and the sampling baseline that cannot see A at all.

#include <functional>
#include <string>
#include <vector>

#include "abyss/algorithms.hpp"

namespace abyss {

/// (f, p, q) -> sup over [p, q] of f, exactly.
using SupOracle = std::function<Rational(const SymbolicFn&, const Rational&, const Rational&)>;
/// (x, k, N) -> a rational open interval inside B(x, 2^-N) on which any two
/// values of the target function differ by less than 2^-k.
using CliqModulusOracle = std::function<DyadicInterval(const Point&, std::size_t, std::size_t)>;

/// Exact suprema by exhaustive evaluation over a dyadic grid of depth
/// `grid_depth` and the first `members` + 1 members of the function's set.
/// Threshold deletions over a penny-like function are resolved symbolically.
inline SupOracle exact_sup_oracle(std::size_t members = 64, unsigned grid_depth = 6) {
  return [members, grid_depth](const SymbolicFn& f, const Rational& p, const Rational& q) {
    if (q < p) throw DomainError("empty interval in sup oracle");
    std::optional<Rational> threshold;
    const SymbolicFn* base = &f;
    while (auto* b = base->as<std::shared_ptr<const node::Below>>()) {
      if (!threshold || (*b)->threshold < *threshold) threshold = (*b)->threshold;
      base = &(*b)->fn;
    }
    auto keep = [&](const Surd& v) { return !threshold || v < Surd(*threshold); };
    Interval<Surd> span{Surd(p), Surd(q)};
    std::optional<Surd> best;
    auto offer = [&](const Point& x) {
      Surd v = (*base)(x);
      if (!keep(v)) v = Surd(0);
      if (!best || *best < v) best = v;
    };
    for (auto& x : rational_grid(Interval<Rational>{p, q}, grid_depth)) offer(Surd(x));
    offer(Surd(p));
    offer(Surd(q));
    if (auto a = base->countable_set())
      for (auto& [n, x] : a->members_upto(members))
        if (span.contains(x)) offer(x);
    for (auto& x : base->special_points(members))
      if (span.contains(x)) offer(x);
    if (!best->is_rational()) throw DomainError("supremum " + best->str() + " is irrational");
    return best->rational_part();
  };
}

/// A dyadic point, the closed interval it was chosen from, and a record of
/// the certificate checks made.
struct RealiserResult {
  Rational point;
  DyadicInterval interval;
  std::vector<DyadicInterval> levels;
  /// Enclosures of the members read off an oracle, in extraction order.
  std::vector<DyadicInterval> extracted;
  /// Points extracted or levels passed, one line each.
  std::vector<std::string> transcript;
  /// Every member of index <= this was checked to lie outside the output.
  std::size_t certified_upto = 0;
};

namespace detail {

inline bool meets(const DyadicInterval& a, const DyadicInterval& b) { return !(a.hi < b.lo) && !(b.hi < a.lo); }

/// Keeps taking left thirds until the interval is at most 2^-k wide.
inline void narrow(DyadicInterval& j, std::size_t k) {
  Rational w = pow2(-static_cast<long>(k));
  while (j.width() > w) j = {j.lo, j.lo + j.width() / 3};
}

/// Checks that the members of index <= upto avoid the output interval and,
/// when `levels` is given, the level interval with index n + 1.
inline std::size_t certify(RealiserResult& r, const CountableSet& a, std::size_t upto) {
  std::size_t count = 0;
  for (auto& [n, x] : a.members_upto(upto)) {
    Interval<Surd> out{Surd(r.interval.lo), Surd(r.interval.hi)};
    if (out.contains(x) || x == Surd(r.point))
      throw OracleInconsistency("member " + std::to_string(n) + " = " + x.str() + " lies in the output interval");
    if (n + 1 < r.levels.size()) {
      const DyadicInterval& l = r.levels[n + 1];
      if (Interval<Surd>{Surd(l.lo), Surd(l.hi)}.contains(x))
        throw OracleInconsistency("member " + std::to_string(n) + " lies in level interval " + std::to_string(n + 1));
    }
    ++count;
  }
  r.certified_upto = upto;
  r.transcript.push_back("certified " + std::to_string(count) + " members of index <= " + std::to_string(upto));
  return count;
}

}  // namespace detail

/// Nested thirds avoiding xs(0), xs(1), ... : at step n keep the left third
/// unless it contains xs(n), else the right third. Stops after `count` points
/// (or when xs runs out) and then narrows to width 2^-k.
inline RealiserResult cantor_diagonal(const std::function<std::optional<Point>(std::size_t)>& xs, std::size_t count,
                                      std::size_t k) {
  RealiserResult r{Rational(1, 2), {Rational(0), Rational(1)}};
  r.levels.push_back(r.interval);
  for (std::size_t n = 0; n < count; ++n) {
    auto x = xs(n);
    if (!x) break;
    Rational third = r.interval.width() / 3;
    DyadicInterval left{r.interval.lo, r.interval.lo + third}, right{r.interval.hi - third, r.interval.hi};
    r.interval = Interval<Surd>{Surd(left.lo), Surd(left.hi)}.contains(*x) ? right : left;
    r.levels.push_back(r.interval);
  }
  detail::narrow(r.interval, k);
  r.point = r.interval.midpoint();
  return r;
}

/// The same construction when only enclosures of the points are known; each
/// enclosure must be narrower than the current third.
inline RealiserResult cantor_diagonal(const std::vector<DyadicInterval>& enclosures, std::size_t k) {
  RealiserResult r{Rational(1, 2), {Rational(0), Rational(1)}};
  r.levels.push_back(r.interval);
  for (std::size_t n = 0; n < enclosures.size(); ++n) {
    Rational third = r.interval.width() / 3;
    DyadicInterval left{r.interval.lo, r.interval.lo + third}, right{r.interval.hi - third, r.interval.hi};
    if (!detail::meets(left, enclosures[n]))
      r.interval = left;
    else if (!detail::meets(right, enclosures[n]))
      r.interval = right;
    else
      throw DomainError("enclosure " + describe(enclosures[n]) + " is too wide to avoid");
    r.levels.push_back(r.interval);
  }
  detail::narrow(r.interval, k);
  r.point = r.interval.midpoint();
  return r;
}

/// Reads off the members of A from exact suprema of Penny(A): the point
/// carrying the current maximum is located bit by bit (left half on ties),
/// then deleted by thresholding, and the next maximum is sought. The
/// enclosures found feed the diagonal construction.
inline RealiserResult realiser_from_sup(const SupOracle& sup, const CountableSet& a, std::size_t k,
                                        std::size_t members = 17, unsigned bits = 40) {
  SymbolicFn f = build_penny(a);
  std::vector<DyadicInterval> found;
  std::vector<std::string> log;
  for (std::size_t round = 0; round < members; ++round) {
    Rational s = sup(f, 0, 1);
    if (s == 0) break;
    DyadicInterval j{Rational(0), Rational(1)};
    for (unsigned b = 0; b < bits; ++b) {
      Rational mid = j.midpoint();
      Rational left = sup(f, j.lo, mid);
      if (s < left) throw OracleInconsistency("supremum grew on a subinterval " + describe({j.lo, mid}));
      if (left == s) {
        j.hi = mid;
        continue;
      }
      Rational right = sup(f, mid, j.hi);
      if (right != s)
        throw OracleInconsistency("supremum " + to_string(s) + " lost on both halves of " + describe(j));
      j.lo = mid;
    }
    found.push_back(j);
    log.push_back("value " + to_string(s) + " at " + describe(j));
    f = below(f, s);
  }
  RealiserResult r = cantor_diagonal(found, k);
  r.transcript = std::move(log);
  r.extracted = std::move(found);
  detail::certify(r, a, members - 1);
  return r;
}

/// The modulus of cliquishness of Penny(A) that keeps clear of the members
/// of index < k: the widest gap they leave inside the ball.
inline CliqModulusOracle canonical_cliq_modulus(const CountableSet& a) {
  return [a](const Point& x, std::size_t k, std::size_t n) -> DyadicInterval {
    Surd r = eps(n);
    std::vector<Surd> cuts{max(Surd(0), x - r), min(Surd(1), x + r)};
    if (k > 0)
      for (auto& [i, y] : a.members_upto(k - 1))
        if (cuts[0] < y && y < cuts[1]) cuts.push_back(y);
    std::sort(cuts.begin(), cuts.end());
    std::size_t best = 0;
    for (std::size_t i = 1; i + 1 < cuts.size(); ++i)
      if (cuts[best + 1] - cuts[best] < cuts[i + 1] - cuts[i]) best = i;
    Surd lo = cuts[best], hi = cuts[best + 1];
    for (unsigned bits = static_cast<unsigned>(n + 8);; bits += 8) {
      DyadicInterval inner{lo.enclose(bits).second, hi.enclose(bits).first};
      if (inner.lo < inner.hi) return inner;
    }
  };
}

/// Nested closed intervals C_0 = [0,1] ⊃ C_1 ⊃ ...: C_{j+1} has the midpoint
/// of F(mid C_j, j+1, N_j) and half its length, with 2^-N_j < |C_j| / 2.
/// Each answer of F is spot-checked against the members of index <= `check`.
inline RealiserResult realiser_from_cliq_modulus(const CliqModulusOracle& F, const CountableSet& a, std::size_t k,
                                                 std::size_t levels = 17, std::size_t check = 64) {
  SymbolicFn f = build_penny(a);
  auto members = a.members_upto(check);
  RealiserResult r{Rational(1, 2), {Rational(0), Rational(1)}};
  r.levels.push_back(r.interval);
  Rational width = pow2(-static_cast<long>(k));
  for (std::size_t j = 0; j < levels || r.interval.width() > width; ++j) {
    if (j > levels + k + 64) throw FuelExhausted("realiser_from_cliq_modulus: no convergence", describe(r.interval));
    Rational mid = r.interval.midpoint();
    std::size_t n = 0;
    while (!(pow2(-static_cast<long>(n)) < r.interval.width() / 2)) ++n;
    DyadicInterval cd = F(Surd(mid), j + 1, n);
    Surd bound = eps(j + 1);
    for (auto& [i, y] : members)
      if (Surd(cd.lo) < y && y < Surd(cd.hi) && !(f(y) < bound))
        throw InvalidModulus("level " + std::to_string(j) + ": interval " + describe(cd) + " holds member " +
                             std::to_string(i) + " = " + y.str() + " with value " + f(y).str() +
                             ", but values there must differ by less than " + bound.str());
    Rational radius = pow2(-static_cast<long>(n));
    if (!(cd.lo < cd.hi) || cd.lo < mid - radius || mid + radius < cd.hi)
      throw InvalidModulus("level " + std::to_string(j) + ": interval " + describe(cd) + " leaves B(" + to_string(mid) +
                           ", 2^-" + std::to_string(n) + ")");
    Rational c = cd.midpoint(), quarter = cd.width() / 4;
    r.interval = {c - quarter, c + quarter};
    r.levels.push_back(r.interval);
    r.transcript.push_back("level " + std::to_string(j) + " " + describe(r.interval));
  }
  r.point = r.interval.midpoint();
  detail::certify(r, a, std::min(levels, check + 1) - 1);
  return r;
}

/// The regulation modulus of Penny(A): both one-sided limits are 0, so M(x,k)
/// only has to keep the members of index < k away from x.
inline RegulationModulus penny_regulation_modulus(const CountableSet& a) {
  return {"penny-regulation", [a](const Point& x, std::size_t k) -> std::optional<std::size_t> {
            std::optional<Surd> d;
            if (k > 0)
              for (auto& [i, y] : a.members_upto(k - 1))
                if (!(y == x) && (!d || abs(y - x) < *d)) d = abs(y - x);
            return d ? scale_of(*d) : 0;
          }};
}

/// Effective Baire category through the open sets {f < 2^-j} of Penny(A),
/// with R2 radii 2^-(M(x, j+2) + 1). Each radius is spot-checked against the
/// members of index <= `check`.
inline RealiserResult realiser_from_regulation_modulus(const RegulationModulus& M, const CountableSet& a,
                                                       std::size_t k, std::size_t levels = 17,
                                                       std::size_t check = 64) {
  SymbolicFn f = build_penny(a);
  auto members = a.members_upto(check);
  RealiserResult r{Rational(1, 2), {Rational(0), Rational(1)}};
  r.levels.push_back(r.interval);
  Rational width = pow2(-static_cast<long>(k));
  auto in_a = [&](const Rational& x) { return a.contains(Surd(x)); };
  for (std::size_t j = 0; j < levels || r.interval.width() > width; ++j) {
    if (j > levels + k + 64) throw FuelExhausted("realiser_from_regulation_modulus: no convergence", describe(r.interval));
    Rational x = r.interval.midpoint();
    for (std::size_t d = scale_of(Surd(r.interval.width())) + 2; in_a(x); ++d)
      for (auto& c : detail::centred_dyadics(r.interval, d, 8))
        if (!in_a(c)) {
          x = c;
          break;
        }
    auto m = M(Surd(x), j + 2);
    if (!m) throw InvalidModulus("modulus undefined at " + to_string(x));
    Surd reach = eps(*m), bound = eps(j + 2);
    for (auto& [i, y] : members) {
      Surd gap = abs(y - Surd(x));
      if (gap.sign() > 0 && gap < reach && !(f(y) < bound))
        throw InvalidModulus("level " + std::to_string(j) + ": M(" + to_string(x) + ", " + std::to_string(j + 2) +
                             ") = " + std::to_string(*m) + " but member " + std::to_string(i) + " = " + y.str() +
                             " within 2^-" + std::to_string(*m) + " has value " + f(y).str() +
                             ", while the one-sided limits are 0");
    }
    Rational h = std::min<Rational>({pow2(-static_cast<long>(*m) - 1), x - r.interval.lo, r.interval.hi - x,
                                     r.interval.width() / 4});
    r.interval = {x - h, x + h};
    r.levels.push_back(r.interval);
    r.transcript.push_back("level " + std::to_string(j) + " " + describe(r.interval));
  }
  r.point = r.interval.midpoint();
  detail::certify(r, a, std::min(levels, check + 1) - 1);
  return r;
}

/// Maximum of f over the dyadic rationals of depth `depth` in [p, q]. Sound
/// for quasi-continuous f; blind to any function living on irrationals.
inline Surd naive_rational_sup(const SymbolicFn& f, const Rational& p, const Rational& q, unsigned depth) {
  Rational scale = pow2(static_cast<long>(depth));
  if (floor_of(q * scale) < ceil_of(p * scale))
    throw DomainError("no grid point in [" + to_string(p) + ", " + to_string(q) + "]");
  // A penny-like function vanishes off its set; with no rational members
  // every grid value is 0, so the 2^depth evaluations are skipped.
  if (auto a = f.countable_set(); a && detail::penny_like(f) && a->all_irrational()) return Surd(0);
  std::optional<Surd> best;
  for (auto& x : rational_grid(Interval<Rational>{p, q}, depth)) {
    Surd v = f(Surd(x));
    if (!best || *best < v) best = v;
  }
  return *best;
}

/// Grid baseline against the exact oracle on one instance.
struct AbyssDemo {
  SymbolicFn fn;
  std::vector<std::pair<unsigned, Surd>> baseline;
  Rational oracle;
  Surd gap;
};

inline AbyssDemo demo_abyss(const SymbolicFn& f, const std::vector<unsigned>& depths) {
  AbyssDemo d{f, {}, exact_sup_oracle()(f, 0, 1), Surd(0)};
  for (unsigned depth : depths) {
    Surd v = naive_rational_sup(f, 0, 1, depth);
    d.baseline.emplace_back(depth, v);
    d.gap = max(d.gap, Surd(d.oracle) - v);
  }
  return d;
}

}  // namespace abyss
