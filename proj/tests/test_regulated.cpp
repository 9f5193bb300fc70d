#include "catch_amalgamated.hpp"

#include "abyss/algorithms/open_sets.hpp"
#include "abyss/algorithms/regulated.hpp"
#include "abyss/testing/oracles.hpp"

using namespace abyss;

namespace {

const Surd kHalf{Rational(1, 2)};
const Surd kThird{Rational(1, 3)};
const Surd kRootHalf = Surd::sqrt2_dyadic(0);

SymbolicFn penny() { return build_penny(CountableSet::sqrt2_dyadic()); }

SymbolicFn two_steps() { return staircase({{Rational(1, 3), Rational(1, 2)}, {Rational(2, 3), Rational(1, 4)}}); }

bool near(const DyadicInterval& i, const Surd& v) { return Surd(i.lo) <= v && v <= Surd(i.hi); }

int mismatches(const R2Rep& o, const RMCode& c) {
  int bad = 0;
  for (int j = 0; j <= 256; ++j) {
    Surd x(Rational(j, 256));
    if (o.contains(x) != c.covers(x)) ++bad;
  }
  return bad;
}

}  // namespace

TEST_CASE("one-sided limits", "[regulated]") {
  Oracle o;
  auto s = limits_lr(step(kHalf, 0, 1), kHalf, 10, o);
  REQUIRE(s.left);
  REQUIRE(s.right);
  CHECK(near(*s.left, Surd(0)));
  CHECK(near(*s.right, Surd(1)));
  CHECK(s.left->width() <= pow2(-10));

  auto p = limits_lr(penny(), kRootHalf, 10, o);
  CHECK(near(*p.left, Surd(0)));
  CHECK(near(*p.right, Surd(0)));

  auto id = limits_lr(identity(), kThird, 10, o);
  CHECK(near(*id.left, kThird));
  CHECK(near(*id.right, kThird));

  CHECK_FALSE(limits_lr(identity(), Surd(0), 10, o).left.has_value());
  CHECK_FALSE(limits_lr(identity(), Surd(1), 10, o).right.has_value());
}

TEST_CASE("regulation moduli", "[regulated]") {
  auto m = modulus_regulation(identity());
  auto n = m(kThird, 5);
  REQUIRE(n.has_value());
  CHECK(*n >= 5);
  CHECK(modulus_regulation(step(kHalf, 0, 1))(kHalf, 3) == std::size_t{0});
  auto mp = modulus_regulation(penny())(kThird, 5);
  REQUIRE(mp.has_value());
  CHECK(Surd(pow2(-static_cast<long>(*mp))) <= Surd::sqrt2_dyadic(1) - kThird);
  CHECK_THROWS_AS(modulus_regulation(baire1_penny_k(CountableSet::sqrt2_dyadic(), true)), RefusedQuery);
}

TEST_CASE("jump enumeration", "[regulated]") {
  Oracle o;
  auto sc = staircase({{Rational(1, 2), Rational(1, 2)}, {Rational(3, 4), Rational(1, 4)}});
  auto j = jump_enum(sc, 64, o);
  REQUIRE(j.size() == 2);
  CHECK(j[0] == kHalf);
  CHECK(j[1] == Surd(Rational(3, 4)));
  CHECK(jump_enum(penny(), 64, o).empty());
  CHECK(jump_enum(identity(), 64, o).empty());
}

TEST_CASE("total variation of normalised BV functions", "[regulated]") {
  Oracle o;
  CHECK(near(total_variation_nbv(identity(), Surd(1), 10, o), Surd(1)));
  CHECK(near(total_variation_nbv(step(kHalf, 0, 1), Surd(1), 10, o), Surd(1)));
  CHECK(near(total_variation_nbv(two_steps(), Surd(1), 10, o), Surd(Rational(3, 4))));
  CHECK(near(total_variation_nbv(two_steps(), kHalf, 10, o), kHalf));

  auto f = difference(identity(), two_steps());
  CHECK(f.has(ClassTag::NormalisedBV));
  std::vector<Point> pts;
  for (auto& r : rational_grid(DyadicInterval{Rational(0), Rational(1)}, 6)) pts.emplace_back(r);
  pts.emplace_back(Rational(1, 3));
  pts.emplace_back(Rational(2, 3));
  Surd brute = testing::brute_variations(f, pts, 8).back();
  auto tv = total_variation_nbv(f, Surd(1), 10, o);
  CHECK(near(tv, Surd(Rational(7, 4))));
  CHECK(brute <= Surd(tv.hi));
  CHECK(Surd(tv.hi) - brute <= Surd(Rational(1, 16)));

  CHECK_THROWS_AS(total_variation_nbv(penny(), Surd(1), 10, o), RefusedQuery);
}

TEST_CASE("jordan decomposition", "[regulated]") {
  auto f = difference(identity(), two_steps());
  auto jp = jordan_nbv(f);
  Surd prev_g = jp.g(Surd(0)), prev_h = jp.h(Surd(0));
  for (int i = 1; i <= 64; ++i) {
    Surd x(Rational(i, 64));
    Surd g = jp.g(x), h = jp.h(x);
    CHECK(g - h == f(x));
    CHECK(prev_g <= g);
    CHECK(prev_h <= h);
    prev_g = g;
    prev_h = h;
  }
}

TEST_CASE("rm-codes from baire-1 indicators", "[regulated][open-sets]") {
  Budget b;
  b.resolution = 4;
  Oracle o(b);
  R2Rep single({{Rational(1, 4), Rational(3, 4)}});
  auto c = rm_code_from_r2_baire1(single, baire1_open_indicator(single, true), 1024, o);
  CHECK(mismatches(single, c) == 0);

  R2Rep split({{Rational(0), Rational(1, 2)}, {Rational(1, 2), Rational(1)}});
  auto c2 = rm_code_from_r2_baire1(split, baire1_open_indicator(split, true), 1024, o);
  CHECK(mismatches(split, c2) == 0);
  CHECK_FALSE(c2.covers(kHalf));

  R2Rep empty;
  CHECK(rm_code_from_r2_baire1(empty, baire1_open_indicator(empty, true), 1024, o).balls.empty());
}

TEST_CASE("usco separators", "[regulated][open-sets]") {
  auto s = usco_separator(ClosedSetRep::points({Surd(0)}), ClosedSetRep::points({Surd(1)}));
  CHECK(s(Surd(1)) == Surd(1));
  CHECK(s(Surd(0)) == Surd(0));
  CHECK(s.has(ClassTag::Usco));

  auto s2 = usco_separator(ClosedSetRep::complement_of(R2Rep({{Rational(1, 4), Rational(2)}})),
                           ClosedSetRep::complement_of(R2Rep({{Rational(-1), Rational(3, 4)}})));
  CHECK(s2(Surd(Rational(7, 8))) == Surd(1));
  CHECK(s2(Surd(Rational(1, 8))) == Surd(0));

  CHECK_THROWS_AS(usco_separator(ClosedSetRep::points({kHalf}), ClosedSetRep::points({kHalf})), DomainError);
}
