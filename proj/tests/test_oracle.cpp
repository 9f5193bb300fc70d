#include "catch_amalgamated.hpp"

#include "abyss/build.hpp"
#include "abyss/oracle.hpp"
#include "abyss/testing/oracles.hpp"

using namespace abyss;

namespace {

const Interval<Surd> kUnit{Surd(0), Surd(1)};
const Surd kRootHalf = Surd::sqrt2_dyadic(0);

SymbolicFn penny() { return build_penny(CountableSet::sqrt2_dyadic()); }

std::string refused_rule(const QuantQuery& q) {
  try {
    Oracle{}.mu_search(q);
  } catch (const RefusedQuery& e) {
    return e.rule();
  }
  return "";
}

}  // namespace

TEST_CASE("every query shape has exactly one collapse rule", "[oracle]") {
  REQUIRE(collapse_rules().size() == std::size(kAllShapes));
  for (Shape s : kAllShapes) {
    CHECK(collapse_rule(s).shape == s);
    CHECK(&collapse_rule(collapse_rule(s).id) == &collapse_rule(s));
  }
  CHECK_THROWS_AS(collapse_rule("NoSuchShape"), DomainError);
}

TEST_CASE("existential searches return a probe witness", "[oracle]") {
  Oracle o;
  auto r = o.mu_search(query::ExistsValueAbove{thomae(), kUnit, Surd(Rational(1, 2))});
  REQUIRE(r.found());
  REQUIRE(r.point.has_value());
  CHECK(thomae()(*r.point) > Surd(Rational(1, 2)));

  auto none = o.mu_search(query::ExistsValueAbove{thomae(), {Surd(Rational(1, 4)), Surd(Rational(3, 4))}, Surd(Rational(1, 2))});
  CHECK_FALSE(none.found());

  auto below = o.mu_search(query::ExistsValueBelow{penny(), kUnit, Surd(Rational(1, 4))});
  REQUIRE(below.found());
  CHECK(penny()(*below.point) < Surd(Rational(1, 4)));
  CHECK(below.evaluations > 0);
}

TEST_CASE("oscillation search at continuity and discontinuity points", "[oracle]") {
  Oracle o;
  auto at_irrational = o.mu_search(query::OscBelow{thomae(), kRootHalf, 4});
  REQUIRE(at_irrational.found());
  std::size_t n = at_irrational.witness->value;
  CHECK(testing::brute_ball_osc(thomae(), kRootHalf, n) <= Surd(pow2(-4)));

  auto at_rational = o.mu_search(query::OscBelow{thomae(), Surd(Rational(1, 2)), 2});
  CHECK_FALSE(at_rational.found());

  auto flat = o.mu_search(query::OscBelow{constant(3), kRootHalf, 20});
  REQUIRE(flat.found());
  CHECK(flat.witness->value == 0);
}

TEST_CASE("lower jumps of usco functions", "[oracle]") {
  Oracle o;
  auto jump = o.mu_search(query::NotLscoAt{penny(), kRootHalf});
  REQUIRE(jump.found());
  CHECK(jump.witness->value == 1);
  CHECK_FALSE(o.mu_search(query::NotLscoAt{penny(), Surd(Rational(1, 3))}).found());
}

TEST_CASE("value-below search on a usco step", "[oracle]") {
  Oracle o;
  auto s = step(Surd(Rational(1, 2)), 0, 1);
  auto r = o.mu_search(query::ValueBelowOnBall{s, Surd(Rational(3, 4)), Surd(Rational(1, 2))});
  REQUIRE(r.found());
  CHECK(r.witness->value >= 2);
  CHECK(r.witness->value <= 3);
  CHECK_FALSE(o.mu_search(query::ValueBelowOnBall{s, Surd(Rational(1, 2)), Surd(Rational(1, 2))}).found());
}

TEST_CASE("queries outside their licensed class are refused", "[oracle]") {
  auto lsco = difference(constant(1), penny());
  CHECK(refused_rule(query::OscBelow{penny(), Surd(Rational(1, 2)), 3}) == "qc-rational-oscillation");
  CHECK(refused_rule(query::ExistsValueAbove{penny(), kUnit, Surd(0)}) == "qc-rational-sup");
  CHECK(refused_rule(query::ExistsValueBelow{lsco, kUnit, Surd(1)}) == "usco-rational-inf");
  CHECK(refused_rule(query::ValueBelowOnBall{lsco, kRootHalf, Surd(1)}) == "usco-ball-lower-bound");
  CHECK(refused_rule(query::NotLscoAt{lsco, kRootHalf}) == "usco-lower-jump");
  CHECK(refused_rule(query::Baire1Above{penny(), kUnit, Surd(0)}) == "baire1-modulus-sup");
  auto no_modulus = baire1_penny_k(CountableSet::sqrt2_dyadic(), false);
  CHECK(refused_rule(query::Baire1Below{no_modulus, kUnit, Surd(0)}) == "baire1-modulus-inf");
}

TEST_CASE("baire-1 comparisons go through the modulus", "[oracle]") {
  Oracle o;
  auto b = baire1_penny_k(CountableSet::sqrt2_dyadic(), true);
  auto hit = o.mu_search(query::Baire1Above{b, kUnit, Surd(Rational(1, 4))});
  REQUIRE(hit.found());
  CHECK_FALSE(o.mu_search(query::Baire1Above{b, kUnit, Surd(Rational(1, 2))}).found());
}

TEST_CASE("the trace sink sees one line per probe table", "[oracle]") {
  std::vector<std::string> lines;
  Budget b;
  b.trace = [&](const std::string& s) { lines.push_back(s); };
  Oracle o(b);
  o.mu_search(query::ExistsValueAbove{thomae(), kUnit, Surd(Rational(1, 2))});
  REQUIRE_FALSE(lines.empty());
  CHECK(lines.front().rfind("probe thomae", 0) == 0);
}
