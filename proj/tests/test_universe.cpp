#include "catch_amalgamated.hpp"

#include "abyss/build.hpp"
#include "abyss/errors.hpp"
#include "abyss/json.hpp"

using namespace abyss;

namespace {

const Surd kHalf{Rational(1, 2)};
const Surd kThird{Rational(1, 3)};
const Surd kRootHalf = Surd::sqrt2_dyadic(0);

CountableSet dyadic_roots() { return CountableSet::sqrt2_dyadic(); }

}  // namespace

TEST_CASE("elementary functions evaluate exactly", "[universe]") {
  CHECK(identity()(kThird) == kThird);
  CHECK(constant(Rational(2, 7))(kRootHalf) == Surd(Rational(2, 7)));
  CHECK(affine(Rational(2), Rational(-1))(kRootHalf) == Surd(Rational(2), Rational(-1, 2)));

  auto right = step(kHalf, 0, 1);
  CHECK(right(Surd(Rational(1, 4))) == Surd(0));
  CHECK(right(kHalf) == Surd(1));
  CHECK(right.has(ClassTag::Usco));

  auto sc = staircase({{Rational(1, 2), Rational(1, 2)}, {Rational(3, 4), Rational(1, 4)}});
  CHECK(sc(Surd(Rational(5, 8))) == kHalf);
  CHECK(sc(Surd(1)) == Surd(Rational(3, 4)));
  CHECK(sc.has(ClassTag::NormalisedBV));

  auto pl = piecewise_linear({{Rational(0), Rational(0)}, {Rational(1, 2), Rational(1)}, {Rational(1), Rational(0)}});
  CHECK(pl(Surd(Rational(1, 4))) == kHalf);
  CHECK(pl.has(ClassTag::Continuous));
}

TEST_CASE("thomae takes 1/q at p/q and vanishes off the rationals", "[universe]") {
  auto t = thomae();
  CHECK(t(Surd(Rational(2, 6))) == kThird);
  CHECK(t(Surd(0)) == Surd(1));
  CHECK(t(kRootHalf) == Surd(0));
  CHECK(t.has(ClassTag::RationalSupported));
  CHECK(t.has(ClassTag::Usco));
  CHECK_FALSE(t.has(ClassTag::QuasiContinuous));
}

TEST_CASE("penny functions weight the n-th member by 2^-(n+1)", "[universe]") {
  auto a = dyadic_roots();
  auto p = build_penny(a);
  CHECK(p(Surd::sqrt2_dyadic(0)) == kHalf);
  CHECK(p(Surd::sqrt2_dyadic(1)) == Surd(Rational(1, 4)));
  CHECK(p(kHalf) == Surd(0));
  CHECK(p.has(ClassTag::Cliquish));
  CHECK(p.has(ClassTag::Usco));
  CHECK(p.has(ClassTag::Regulated));
  CHECK_FALSE(p.has(ClassTag::QuasiContinuous));

  auto pk = build_penny_k(a, 2);
  CHECK(pk(Surd::sqrt2_dyadic(2)) == Surd(Rational(1, 8)));
  CHECK(pk(Surd::sqrt2_dyadic(3)) == Surd(0));

  CHECK(difference(constant(1), p).has(ClassTag::Lsco));
  CHECK(osc_selfcheck(p));
}

TEST_CASE("the tilde companion and the cover functions", "[universe]") {
  auto [at, ft] = build_tilde(CountableSet::finite({Surd(Rational(1, 3), Rational(1, 8))}));
  REQUIRE(at.at(0).has_value());
  CHECK(at.at(0)->str() == "1/3+1/8*sqrt2");
  CHECK(ft(*at.at(0)) == kHalf);

  auto [t, unused] = build_tilde(dyadic_roots());
  auto psi = build_cover_psi(dyadic_roots(), false);
  auto psi_u = build_cover_psi(dyadic_roots(), true);
  CHECK(psi(kThird) == Surd(Rational(1, 8)));
  CHECK(psi(*t.at(0)) == Surd(pow2(-5)));
  CHECK(psi(*t.at(2)) == Surd(pow2(-7)));
  CHECK(psi_u(Surd(0)) == Surd(pow2(-6)));
  CHECK(psi_u(*t.at(0)) == Surd(pow2(-5)));
}

TEST_CASE("indicators and arithmetic combinators", "[universe]") {
  auto ind = indicator(ClosedSetRep::points({kHalf}));
  CHECK(ind(kHalf) == Surd(1));
  CHECK(ind(kThird) == Surd(0));

  auto s = sum({identity(), constant(1)});
  CHECK(s(kThird) == Surd(Rational(4, 3)));
  CHECK(scale(Rational(-2), identity())(kThird) == Surd(Rational(-2, 3)));
  auto capped = below(build_penny(dyadic_roots()), Rational(1, 2));
  CHECK(capped(kRootHalf) == Surd(0));
  CHECK(capped(Surd::sqrt2_dyadic(1)) == Surd(Rational(1, 4)));
  CHECK_THROWS_AS(below(identity(), Rational(1, 2)), ConstructionError);
}

TEST_CASE("baire-1 limits evaluate only with a stable index", "[universe]") {
  auto bi = baire1_open_indicator(R2Rep({{Rational(0), Rational(1, 2)}, {Rational(1, 2), Rational(1)}}), true);
  CHECK(bi(kHalf) == Surd(0));
  CHECK(bi(kThird) == Surd(1));
  auto bp = baire1_penny_k(dyadic_roots(), false);
  CHECK_THROWS_AS(bp(kRootHalf), NotEvaluable);
}

TEST_CASE("domain and construction errors", "[universe]") {
  CHECK_THROWS_AS(identity()(Surd(2)), DomainError);
  CHECK_THROWS_AS(build_penny(CountableSet::finite({})), ConstructionError);
}

TEST_CASE("functions round-trip through json", "[universe][json]") {
  for (const auto& f : {build_penny(dyadic_roots()), thomae(), step(kHalf, 0, 1),
                        baire1_open_indicator(R2Rep({{Rational(1, 4), Rational(3, 4)}}), true),
                        sum({identity(), build_penny(dyadic_roots())})}) {
    auto j = to_json(f);
    CHECK(to_json(fn_from_json(j)) == j);
  }
  CHECK(to_json(build_penny(dyadic_roots())).dump() == R"({"set":{"generator":"sqrt2_dyadic"},"variant":"penny"})");
}
