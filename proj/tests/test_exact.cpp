#include "catch_amalgamated.hpp"

#include <set>

#include "abyss/enumerate.hpp"
#include "abyss/errors.hpp"
#include "abyss/exact.hpp"
#include "abyss/sets.hpp"

using namespace abyss;

TEST_CASE("rationals reduce and parse", "[exact]") {
  CHECK(Rational(2, 6) == Rational(1, 3));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("+5") == Rational(5));
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("x/2"), DomainError);
  CHECK_THROWS_AS(parse_rational("3/"), DomainError);
  CHECK(pow2(-3) == Rational(1, 8));
  CHECK(floor_of(Rational(-1, 2)) == -1);
  CHECK(ceil_of(Rational(-1, 2)) == 0);
}

TEST_CASE("ball, halve and the dyadic grid", "[exact]") {
  auto b = ball(Rational(1, 2), 2);
  CHECK(b.lo == Rational(1, 4));
  CHECK(b.hi == Rational(3, 4));
  CHECK(b.width() == Rational(1, 2));

  auto [l, r] = halve(DyadicInterval{Rational(0), Rational(1)});
  CHECK(l == DyadicInterval{Rational(0), Rational(1, 2)});
  CHECK(r == DyadicInterval{Rational(1, 2), Rational(1)});
  CHECK_THROWS_AS(halve(DyadicInterval{Rational(1), Rational(1)}), DomainError);

  auto g = rational_grid(DyadicInterval{Rational(0), Rational(1)}, 2);
  REQUIRE(g.size() == 5);
  CHECK(g[1] == Rational(1, 4));
  CHECK(g.back() == Rational(1));

  auto h = rational_grid(Interval<Surd>{Surd(Rational(0), Rational(1, 4)), Surd(Rational(1, 2))}, 3);
  REQUIRE(h.size() == 2);
  CHECK(h.front() == Rational(3, 8));
  CHECK(rational_grid(DyadicInterval{Rational(1), Rational(0)}, 3).empty());
}

TEST_CASE("surds compare, round and enclose exactly", "[exact]") {
  Surd r2 = Surd(Rational(0), Rational(1));
  CHECK(r2 * r2 == Surd(2));
  CHECK(r2.floor() == 1);
  CHECK(r2.ceil() == 2);
  CHECK(Surd(Rational(3, 2)) > r2);
  CHECK(Surd(Rational(7, 5)) < r2);
  CHECK_FALSE(r2.is_rational());
  CHECK((r2 - r2).is_rational());
  CHECK(Surd::sqrt2_dyadic(0) == Surd(Rational(0), Rational(1, 2)));

  for (unsigned bits : {1u, 8u, 40u}) {
    auto [lo, hi] = r2.enclose(bits);
    CHECK(hi - lo <= pow2(-static_cast<long>(bits)));
    CHECK(Surd(lo) <= r2);
    CHECK(r2 <= Surd(hi));
  }
  CHECK(r2.to_double() == Catch::Approx(1.41421356));
  CHECK(Surd(Rational(1, 3), Rational(1, 8)).str() == "1/3+1/8*sqrt2");
}

TEST_CASE("enumerations are injective and ordered", "[exact]") {
  auto u = unit_rationals(200);
  std::set<Rational> seen(u.begin(), u.end());
  CHECK(seen.size() == u.size());
  for (auto& q : u) {
    CHECK(q >= 0);
    CHECK(q <= 1);
  }
  auto s = signed_rationals(100);
  for (std::size_t i = 0; i < 20; ++i) CHECK(signed_rational_index(s[i], 100) == i);

  CHECK(simplest_rational(Surd(Rational(1, 3)), false, Surd(Rational(1, 2)), false) == Rational(2, 5));
  CHECK(simplest_rational(Surd(Rational(1, 3)), true, Surd(Rational(1, 2)), false) == Rational(1, 3));
  CHECK(simplest_rational(Surd(Rational(0), Rational(1, 2)), false, std::nullopt, false) == Rational(1));

  auto d = dyadic_intervals(4);
  CHECK(d[0] == std::pair{Rational(0), Rational(1)});
  CHECK(d[1] == std::pair{Rational(0), Rational(1, 2)});
}

TEST_CASE("countable sets index their members", "[exact][sets]") {
  auto a = CountableSet::sqrt2_dyadic();
  CHECK(*a.at(3) == Surd::sqrt2_dyadic(3));
  CHECK(a.index_of(Surd::sqrt2_dyadic(5)) == 5);
  CHECK_FALSE(a.contains(Surd(Rational(1, 2))));

  auto t = CountableSet::tilde(a);
  for (std::size_t n = 0; n < 6; ++n) {
    auto y = *t.at(n);
    CHECK(t.index_of(y) == n);
    CHECK(y >= Surd(pow2(-static_cast<long>(n) - 1)));
    CHECK(y < Surd(pow2(-static_cast<long>(n))));
  }

  auto f = CountableSet::finite({Surd(Rational(1, 3)), Surd::sqrt2_dyadic(1)});
  CHECK_FALSE(f.at(2).has_value());
  CHECK(f.index_of(Surd::sqrt2_dyadic(1)) == 1);
  CHECK_THROWS_AS(CountableSet::finite({Surd(Rational(1, 3)), Surd(Rational(1, 3))}), ConstructionError);
  CHECK_THROWS_AS(CountableSet::tilde(f), ConstructionError);
  CHECK_THROWS_AS(CountableSet::sqrt2_dyadic(std::nullopt, {{2, Surd::sqrt2_dyadic(0)}}), ConstructionError);
}
