#include "catch_amalgamated.hpp"

#include "abyss/testing/instances.hpp"
#include "abyss/testing/oracles.hpp"

using namespace abyss;
using namespace abyss::testing;

// The brute-force oracles are the reference for the property checks, so they
// get their own hand-computed cases.

TEST_CASE("least-denominator fractions", "[testing]") {
  CHECK(least_denominator_fraction(Surd(Rational(1, 3)), Surd(Rational(1, 2))) == Surd(Rational(2, 5)));
  CHECK(least_denominator_fraction(Surd(0), Surd(1)) == Surd(Rational(1, 2)));
  CHECK_FALSE(least_denominator_fraction(Surd(Rational(1, 2)), Surd(Rational(1, 2)), 64).has_value());
}

TEST_CASE("brute suprema and infima", "[testing]") {
  CHECK(brute_sup(thomae(), Rational(1, 4), Rational(3, 4)) == Surd(Rational(1, 2)));
  CHECK(brute_sup(thomae(), Rational(1, 3), Rational(2, 5)) == Surd(Rational(1, 3)));
  CHECK(brute_inf(thomae(), 0, 1) == Surd(0));
  CHECK(brute_sup(build_penny(CountableSet::sqrt2_dyadic()), 0, 1) == Surd(Rational(1, 2)));
  CHECK(brute_inf(identity(), Rational(1, 3), Rational(1, 2)) == Surd(Rational(1, 3)));
}

TEST_CASE("brute oscillation over a ball", "[testing]") {
  CHECK(brute_ball_osc(thomae(), Surd(Rational(1, 2)), 4) == Surd(Rational(1, 2)));
  CHECK(brute_ball_osc(step(Surd(Rational(1, 2)), 0, 1), Surd(Rational(1, 2)), 6) == Surd(1));
  CHECK(brute_ball_osc(constant(5), Surd::sqrt2_dyadic(0), 2) == Surd(0));
}

TEST_CASE("brute partition variation", "[testing]") {
  auto sc = staircase({{Rational(1, 3), Rational(1, 2)}, {Rational(2, 3), Rational(1, 4)}});
  std::vector<Point> pts;
  for (auto& r : rational_grid(DyadicInterval{Rational(0), Rational(1)}, 3)) pts.emplace_back(r);
  pts.emplace_back(Rational(1, 3));
  pts.emplace_back(Rational(2, 3));
  auto v = brute_variations(sc, pts, 10);
  CHECK(v.front() == Surd(0));
  CHECK(v.back() == Surd(Rational(3, 4)));

  std::vector<Point> zig{Surd(0), Surd(Rational(1, 4)), Surd(Rational(1, 2)), Surd(1)};
  auto tent = piecewise_linear({{Rational(0), Rational(0)}, {Rational(1, 4), Rational(1)}, {Rational(1, 2), Rational(0)}, {Rational(1), Rational(0)}});
  CHECK(brute_variations(tent, zig, 4).back() == Surd(2));
  CHECK(brute_variations(tent, zig, 2).back() == Surd(0));
}

TEST_CASE("closed cover sweep", "[testing]") {
  CHECK(covers_closed_unit({{Rational(0), Rational(1, 2)}, {Rational(1), Rational(2, 3)}}));
  CHECK_FALSE(covers_closed_unit({{Rational(1, 4), Rational(1, 4)}, {Rational(3, 4), Rational(1, 4)}}));
  CHECK_FALSE(covers_closed_unit({{Rational(0), Rational(1, 2)}, {Rational(1), Rational(1, 2)}}));
}

TEST_CASE("random instances are reproducible and well formed", "[testing]") {
  Rng a(11), b(11);
  for (int i = 0; i < 20; ++i) {
    auto f = random_qc(a);
    auto g = random_qc(b);
    CHECK(f.name() == g.name());
    CHECK(f.has(ClassTag::QuasiContinuous));
    auto x = Surd(random_rational(a, 0, 1));
    random_rational(b, 0, 1);
    CHECK(f(x) == g(x));
  }
  Rng r(3);
  for (int i = 0; i < 20; ++i) {
    auto s = random_finite_set(r);
    for (std::size_t n = 0; auto m = s.at(n); ++n) {
      CHECK(Surd(0) <= *m);
      CHECK(*m <= Surd(1));
    }
    auto iv = random_interval(r);
    CHECK(iv.first < iv.second);
  }
}
