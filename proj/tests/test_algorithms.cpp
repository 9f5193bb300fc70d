#include "catch_amalgamated.hpp"

#include "abyss/algorithms/baire.hpp"
#include "abyss/algorithms/continuity.hpp"
#include "abyss/algorithms/cousin.hpp"
#include "abyss/algorithms/suprema.hpp"
#include "abyss/testing/oracles.hpp"

using namespace abyss;

namespace {

const Surd kHalf{Rational(1, 2)};
const Surd kThird{Rational(1, 3)};
const Surd kRootHalf = Surd::sqrt2_dyadic(0);

CountableSet roots() { return CountableSet::sqrt2_dyadic(); }
SymbolicFn penny() { return build_penny(roots()); }

bool brackets(const DyadicInterval& i, const Surd& v, std::size_t k) {
  return Surd(i.lo) <= v && v <= Surd(i.hi) && i.width() <= pow2(-static_cast<long>(k));
}

}  // namespace

TEST_CASE("sup_qc brackets the supremum", "[algorithms][suprema]") {
  Oracle o;
  auto t = sup_qc(thomae(), Rational(1, 4), Rational(3, 4), 10, o);
  CHECK(t == DyadicInterval{Rational(511, 1024), Rational(1, 2)});
  CHECK(brackets(sup_qc(thomae(), 0, 1, 10, o), Surd(1), 10));
  CHECK(brackets(sup_qc(constant(Rational(1, 3)), 0, 1, 20, o), kThird, 20));
  auto pl = piecewise_linear({{Rational(0), Rational(0)}, {Rational(1, 3), Rational(2, 3)}, {Rational(1), Rational(0)}});
  CHECK(brackets(sup_qc(pl, 0, 1, 12, o), Surd(Rational(2, 3)), 12));
  CHECK(brackets(sup_qc(pl, Rational(1, 2), 1, 12, o), testing::brute_sup(pl, Rational(1, 2), 1), 12));
}

TEST_CASE("inf_usco and the baire-1 variants", "[algorithms][suprema]") {
  Oracle o;
  CHECK(brackets(inf_usco(penny(), 0, 1, 8, o), Surd(0), 8));
  CHECK(brackets(inf_usco(thomae(), 0, 1, 10, o), Surd(0), 10));
  CHECK(brackets(inf_usco(step(kHalf, 0, 1), Rational(1, 2), 1, 10, o), Surd(1), 10));
  CHECK(brackets(sup_baire1(baire1_penny_k(roots(), true), 0, 1, 6, o), kHalf, 6));
}

TEST_CASE("suprema refuse outside their class", "[algorithms][suprema]") {
  Oracle o;
  CHECK_THROWS_AS(sup_qc(penny(), 0, 1, 4, o), RefusedQuery);
  CHECK_THROWS_AS(inf_usco(difference(constant(1), penny()), 0, 1, 8, o), RefusedQuery);
  CHECK_THROWS_AS(sup_baire1(baire1_penny_k(roots(), false), 0, 1, 6, o), RefusedQuery);
  CHECK_THROWS_AS(inf_baire1(penny(), 0, 1, 6, o), RefusedQuery);
  CHECK_THROWS_AS(sup_qc(thomae(), Rational(3, 4), Rational(1, 4), 4, o), DomainError);
}

TEST_CASE("oscillation at a point", "[algorithms][continuity]") {
  Oracle o;
  CHECK(brackets(osc_point(thomae(), kHalf, 8, o), kHalf, 8));
  CHECK(brackets(osc_point(thomae(), kRootHalf, 8, o), Surd(0), 8));
  CHECK(brackets(osc_point(step(kHalf, 0, 1), kHalf, 8, o), Surd(1), 8));
  CHECK_THROWS_AS(osc_point(difference(constant(1), penny()), kHalf, 4, o), RefusedQuery);
}

TEST_CASE("continuity decisions", "[algorithms][continuity]") {
  CHECK(is_continuous_at(penny(), kRootHalf, 64).no());
  CHECK(is_continuous_at(penny(), kThird, 64).yes());
  CHECK(is_continuous_at(thomae(), Surd(Rational(2, 3)), 64).no());
  CHECK(is_continuous_at(thomae(), kRootHalf, 64).yes());
  CHECK(is_continuous_at(identity(), kRootHalf, 64).yes());
  CHECK(is_continuous_at(step(kHalf, 0, 1), kHalf, 64).no());
}

TEST_CASE("continuity moduli", "[algorithms][continuity]") {
  auto g = modulus_continuity_qc(thomae());
  auto n = g(kRootHalf, 3);
  REQUIRE(n.has_value());
  CHECK(testing::brute_ball_osc(thomae(), kRootHalf, *n) <= Surd(pow2(-3)));
  CHECK(modulus_continuity_qc(constant(1))(kRootHalf, 5) == std::size_t{0});
  auto id = modulus_continuity_qc(identity())(kRootHalf, 5);
  REQUIRE(id.has_value());
  CHECK(*id >= 6);

  Oracle o;
  auto at_const = modulus_qc(constant(2), kThird, 3, 4, o);
  CHECK(at_const.contains(Rational(1, 3)));
  CHECK(at_const.width() > 0);
  CHECK_THROWS_AS(modulus_qc(thomae(), kHalf, 2, 3, o), RefusedQuery);

  auto lsco = lsco_modulus_on_Cf(penny());
  CHECK(lsco(kThird, 4).has_value());
}

TEST_CASE("points of continuity", "[algorithms][baire]") {
  Oracle o;
  for (const auto& f : {thomae(), constant(1), step(kHalf, 0, 1)}) {
    auto c = point_of_continuity_qc(f, 6, o);
    CHECK(c.interval.contains(c.point));
    CHECK(c.interval.width() <= pow2(-6));
    CHECK(testing::brute_ball_osc(f, Surd(c.point), 16) <= Surd(pow2(-6)));
  }
  auto p = point_of_continuity_usco(penny(), penny_usco_modulus(roots()), 6, o);
  CHECK(testing::brute_ball_osc(penny(), Surd(p.point), 16) <= Surd(pow2(-6)));
  auto u = point_of_continuity_usco(constant(1), constant_usco_modulus(), 6, o);
  CHECK(u.interval.contains(u.point));
}

TEST_CASE("cousin subcovers", "[algorithms][cousin]") {
  auto c = cousin_subcover(constant(Rational(1, 8)), ClassTag::QuasiContinuous);
  CHECK(covers_unit_interval(c.balls));
  CHECK(testing::covers_closed_unit(c.balls));
  CHECK(sweep_chain(c.balls).size() <= c.balls.size());

  auto wide = cousin_subcover(affine(Rational(1, 2), Rational(1, 16)), ClassTag::QuasiContinuous);
  CHECK(testing::covers_closed_unit(wide.balls));

  CHECK_FALSE(covers_unit_interval({{Rational(1, 2), Rational(1, 4)}}));
  CHECK_THROWS_AS(cousin_subcover(build_cover_psi(roots(), false), ClassTag::QuasiContinuous), RefusedQuery);
}
