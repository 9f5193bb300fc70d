#include "catch_amalgamated.hpp"

#include "abyss/reductions.hpp"
#include "abyss/report.hpp"

using namespace abyss;

namespace {

CountableSet roots() { return CountableSet::sqrt2_dyadic(); }

void check_avoids(const RealiserResult& r, const CountableSet& a, std::size_t upto) {
  CHECK(r.interval.contains(r.point));
  for (std::size_t n = 0; n <= upto; ++n) {
    auto m = a.at(n);
    if (!m) break;
    CHECK(*m != Surd(r.point));
  }
}

}  // namespace

TEST_CASE("the exact sup oracle", "[reductions]") {
  auto sup = exact_sup_oracle();
  CHECK(sup(build_penny(roots()), 0, 1) == Rational(1, 2));
  CHECK(sup(thomae(), Rational(1, 4), Rational(3, 4)) == Rational(1, 2));
  CHECK(sup(below(build_penny(roots()), Rational(1, 2)), 0, 1) == Rational(1, 4));
  CHECK_THROWS_AS(sup(identity(), 1, 0), DomainError);
}

TEST_CASE("realiser from a sup oracle", "[reductions]") {
  auto a = roots();
  auto r = realiser_from_sup(exact_sup_oracle(), a, 20);
  CHECK(r.certified_upto >= 16);
  check_avoids(r, a, 16);
  REQUIRE_FALSE(r.extracted.empty());
  CHECK(Surd(r.extracted.front().lo) <= Surd::sqrt2_dyadic(0));
  CHECK(Surd::sqrt2_dyadic(0) <= Surd(r.extracted.front().hi));

  auto single = CountableSet::finite({Surd::sqrt2_dyadic(0)});
  auto r1 = realiser_from_sup(exact_sup_oracle(), single, 20);
  CHECK(r1.transcript.size() == 2);
  check_avoids(r1, single, 0);
}

TEST_CASE("realiser from a cliquishness modulus", "[reductions]") {
  auto a = roots();
  auto c = realiser_from_cliq_modulus(canonical_cliq_modulus(a), a, 20);
  CHECK(c.certified_upto >= 16);
  check_avoids(c, a, 16);

  auto whole = [](const Point&, std::size_t, std::size_t) { return DyadicInterval{Rational(0), Rational(1)}; };
  CHECK_THROWS_AS(realiser_from_cliq_modulus(whole, a, 20), InvalidModulus);
}

TEST_CASE("realiser from a regulation modulus", "[reductions]") {
  auto a = roots();
  auto g = realiser_from_regulation_modulus(penny_regulation_modulus(a), a, 20);
  CHECK(g.certified_upto >= 16);
  check_avoids(g, a, 16);

  RegulationModulus zero{"zero", [](const Point&, std::size_t) { return std::optional<std::size_t>(0); }};
  CHECK_THROWS_AS(realiser_from_regulation_modulus(zero, a, 20), InvalidModulus);
}

TEST_CASE("realisers avoid rational members too", "[reductions]") {
  auto mixed = CountableSet::finite({Surd(Rational(1, 2)), Surd(Rational(1, 4)), Surd(Rational(3, 4)), Surd::sqrt2_dyadic(1)});
  auto r = realiser_from_cliq_modulus(canonical_cliq_modulus(mixed), mixed, 12);
  check_avoids(r, mixed, 3);
}

TEST_CASE("cantor diagonal", "[reductions]") {
  auto d = cantor_diagonal([](std::size_t) { return std::optional<Point>(Surd(0)); }, 5, 10);
  CHECK(d.point != 0);
  auto e = cantor_diagonal([](std::size_t n) { return std::optional<Point>(Surd(Rational(n % 3, 2))); }, 6, 12);
  for (int n = 0; n < 3; ++n) CHECK(e.point != Rational(n, 2));
}

TEST_CASE("naive grid suprema miss the penny", "[reductions][demo]") {
  CHECK(naive_rational_sup(thomae(), Rational(1, 4), Rational(3, 4), 8) == Surd(Rational(1, 2)));
  auto dm = demo_abyss(build_penny(roots()), {8, 16, 24});
  CHECK(dm.oracle == Rational(1, 2));
  REQUIRE(dm.baseline.size() == 3);
  for (auto& [depth, v] : dm.baseline) CHECK(v == Surd(0));
  CHECK(dm.gap == Surd(Rational(1, 2)));
}

TEST_CASE("results serialise to json", "[reductions][json]") {
  auto r = realiser_from_sup(exact_sup_oracle(), roots(), 8);
  auto j = to_json(r);
  CHECK(j.contains("point"));
  CHECK(j.contains("extracted"));
  CHECK(j["extracted"].size() == r.extracted.size());
  auto d = to_json(demo_abyss(build_penny(roots()), {8}));
  CHECK(d["oracle"] == "1/2");
}
