#pragma once

// Finite subcovers of the cover { B(x, psi(x)) : x in [0,1] }.

#include <algorithm>

#include "abyss/algorithms/common.hpp"
#include "abyss/enumerate.hpp"

namespace abyss {

struct RationalBallCover {
  std::vector<RationalBall> balls;
  /// Index of the last enumerated centre that was needed.
  std::size_t n0 = 0;
};

/// Does the union of the open balls contain all of [0,1]?
inline bool covers_unit_interval(std::vector<RationalBall> balls) {
  std::sort(balls.begin(), balls.end(),
            [](const RationalBall& a, const RationalBall& b) { return a.center - a.radius < b.center - b.radius; });
  Rational pos = 0;  // every point below pos is covered, pos itself not yet
  std::size_t i = 0;
  while (pos <= 1) {
    std::optional<Rational> reach;
    for (; i < balls.size() && balls[i].center - balls[i].radius < pos; ++i) {
      Rational hi = balls[i].center + balls[i].radius;
      if (!reach || *reach < hi) reach = hi;
    }
    if (!reach || *reach <= pos) return false;
    pos = *reach;
  }
  return true;
}

/// The balls of a cover that a left-to-right sweep actually uses, in order.
inline std::vector<RationalBall> sweep_chain(std::vector<RationalBall> balls) {
  std::sort(balls.begin(), balls.end(),
            [](const RationalBall& a, const RationalBall& b) { return a.center - a.radius < b.center - b.radius; });
  std::vector<RationalBall> chain;
  Rational pos = 0;
  std::size_t i = 0;
  while (pos <= 1) {
    std::optional<std::size_t> best;
    for (; i < balls.size() && balls[i].center - balls[i].radius < pos; ++i)
      if (!best || balls[*best].center + balls[*best].radius < balls[i].center + balls[i].radius) best = i;
    if (!best || balls[*best].center + balls[*best].radius <= pos) break;
    chain.push_back(balls[*best]);
    pos = chain.back().center + chain.back().radius;
  }
  return chain;
}

/// The shortest prefix q_0, ..., q_n0 of the unit-rational enumeration whose
/// balls B(q_n, psi(q_n)) cover [0,1]. `cls` names the class that licenses
/// the search: quasi-continuous or lsco.
inline RationalBallCover cousin_subcover(const SymbolicFn& psi, ClassTag cls, std::size_t max_centres = 4096) {
  const std::string rule = "cousin-rational-prefix";
  if (cls != ClassTag::QuasiContinuous && cls != ClassTag::Lsco)
    throw DomainError("cousin_subcover works for quasi-continuous or lsco functions, not " +
                      std::string(to_string(cls)));
  require_class(psi, {cls}, std::string(to_string(cls)), rule, "cousin_subcover");

  std::vector<Rational> centres = unit_rationals(max_centres);
  std::vector<RationalBall> balls;
  balls.reserve(centres.size());
  auto grow = [&](std::size_t n) {
    while (balls.size() < n) {
      const Rational& q = centres[balls.size()];
      Surd r = psi(Surd(q));
      if (r.sign() <= 0) throw DomainError("psi(" + to_string(q) + ") = " + r.str() + " is not positive");
      balls.push_back({q, r.is_rational() ? r.rational_part() : positive_lower(r)});
    }
  };
  auto covered = [&](std::size_t n) {
    grow(n);
    return covers_unit_interval({balls.begin(), balls.begin() + static_cast<long>(n)});
  };

  std::size_t hi = 1;
  while (!covered(hi)) {
    if (hi >= max_centres)
      throw FuelExhausted("cousin_subcover: " + std::to_string(max_centres) + " centres do not cover [0,1]",
                          std::to_string(max_centres) + " centres");
    hi = std::min(hi * 2, max_centres);
  }
  std::size_t lo = hi / 2;  // not covering (or zero)
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    (covered(mid) ? hi : lo) = mid;
  }
  return {{balls.begin(), balls.begin() + static_cast<long>(hi)}, hi - 1};
}

}  // namespace abyss
