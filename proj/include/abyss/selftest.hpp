#pragma once

// The acceptance suite: nine property checks against independent brute-force
// references, each reported as pass/fail with a JSON record of what was run.
// Everything is seeded, so the transcript is a pure function of the seed.

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "abyss/algorithms.hpp"
#include "abyss/reductions.hpp"
#include "abyss/report.hpp"
#include "abyss/testing/instances.hpp"
#include "abyss/testing/oracles.hpp"

namespace abyss::selftest {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'ab55;

struct Criterion {
  int id = 0;
  std::string name;
  bool pass = false;
  Json detail;
};

struct Report {
  std::uint64_t seed = kDefaultSeed;
  std::vector<Criterion> criteria;

  bool all_pass() const {
    for (auto& c : criteria)
      if (!c.pass) return false;
    return true;
  }

  Json transcript() const {
    Json out{{"schema", "abyss/1"}, {"seed", seed}, {"criteria", Json::array()}};
    for (auto& c : criteria)
      out["criteria"].push_back(Json{{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    out["pass"] = all_pass();
    return out;
  }
};

namespace detail {

using testing::Rng;

inline bool within(const DyadicInterval& i, const Surd& v) { return !(v < Surd(i.lo)) && !(Surd(i.hi) < v); }

/// Runs `body`, turning any library error into a failed record.
template <class Body>
Json guarded(bool& ok, Body body) {
  try {
    return body();
  } catch (const std::exception& e) {
    ok = false;
    return Json{{"error", e.what()}};
  }
}

inline std::uint64_t sub_seed(std::uint64_t seed, int criterion) {
  return seed ^ (0x9e37'79b9'7f4a'7c15ULL * static_cast<std::uint64_t>(criterion));
}

/// An irrational or rational point of (0,1) with a small description.
inline Point random_point(Rng& rng) {
  if (testing::uniform(rng, 0, 2) == 0) return Surd(Rational(testing::uniform(rng, 1, 96), 97));
  return Surd(Rational(testing::uniform(rng, 0, 63), 128), Rational(testing::uniform(rng, 1, 31), 128));
}

inline CountableSet random_infinite_set(Rng& rng) {
  for (;;) {
    std::map<std::size_t, Point> overrides;
    while (overrides.size() < 3) overrides[static_cast<std::size_t>(testing::uniform(rng, 0, 16))] = random_point(rng);
    try {
      return CountableSet::sqrt2_dyadic(std::nullopt, overrides);
    } catch (const ConstructionError&) {
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline Criterion suprema(std::uint64_t seed) {
  using namespace testing;
  Criterion c{1, "oracle equivalence for suprema and infima", true, {}};
  Rng rng(detail::sub_seed(seed, 1));
  const std::size_t k = 10;
  Json rows = Json::array();
  std::size_t failures = 0;
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 200; ++i) {
    auto [p, q] = random_interval(rng);
    Oracle oracle;
    SymbolicFn f = constant(0);
    std::string op;
    switch (i % 5) {
      case 0: f = random_piecewise_linear(rng), op = "sup_qc"; break;
      case 1: f = random_staircase(rng, true), op = "sup_qc"; break;
      case 2: f = thomae(), op = i % 2 ? "inf_usco" : "sup_qc"; break;
      case 3: {
        CountableSet a = random_finite_set(rng);
        f = i % 2 ? build_penny(a) : build_penny_k(a, static_cast<std::size_t>(uniform(rng, 0, 6)));
        op = "inf_usco";
        break;
      }
      default: f = baire1_penny_k(random_finite_set(rng), true), op = "sup_baire1";
    }
    bool ok = true;
    Json row = detail::guarded(ok, [&] {
      DyadicInterval got = op == "sup_qc"     ? sup_qc(f, p, q, k, oracle)
                           : op == "inf_usco" ? inf_usco(f, p, q, k, oracle)
                                              : sup_baire1(f, p, q, k, oracle);
      Surd expect = op == "inf_usco" ? brute_inf(f, p, q) : brute_sup(f, p, q);
      ok = detail::within(got, expect) && got.width() <= pow2(-static_cast<long>(k));
      return Json{{"interval", to_json(got)}, {"brute", to_json(expect)}};
    });
    row["fn"] = f.name();
    row["op"] = op;
    row["span"] = Json::array({to_json(p), to_json(q)});
    row["ok"] = ok;
    if (!ok) ++failures;
    rows.push_back(std::move(row));
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool fast = seconds < 60;
  c.pass = failures == 0 && fast;
  c.detail = Json{{"instances", rows.size()}, {"failures", failures}, {"under_60s", fast}, {"rows", rows}};
  return c;
}

inline Criterion oscillation_identity() {
  Criterion c{2, "oscillation of Penny equals Penny", true, {}};
  CountableSet a = CountableSet::sqrt2_dyadic();
  SymbolicFn f = build_penny(a);
  std::vector<Point> xs;
  for (auto& [n, x] : a.members_upto(24)) xs.push_back(x);
  for (auto& r : unit_rationals(25)) xs.emplace_back(r);
  Json rows = Json::array();
  std::size_t failures = 0;
  Oracle oracle;
  for (auto& x : xs) {
    bool ok = true;
    Json row = detail::guarded(ok, [&] {
      DyadicInterval o = osc_point(f, x, 8, oracle);
      ok = detail::within(o, f(x)) && o.width() <= pow2(-8);
      return Json{{"x", to_json(x)}, {"osc", to_json(o)}, {"value", to_json(f(x))}};
    });
    row["ok"] = ok;
    if (!ok) ++failures;
    rows.push_back(std::move(row));
  }
  c.pass = failures == 0 && xs.size() == 50;
  c.detail = Json{{"points", xs.size()}, {"failures", failures}, {"rows", rows}};
  return c;
}

inline Criterion baire_category(std::uint64_t seed) {
  using namespace testing;
  Criterion c{3, "effective Baire category for quasi-continuous functions", true, {}};
  Rng rng(detail::sub_seed(seed, 3));
  std::vector<SymbolicFn> fns{thomae()};
  for (int i = 0; i < 20; ++i) fns.push_back(random_qc(rng));
  const std::size_t k = 8;
  Json rows = Json::array();
  std::size_t failures = 0;
  for (auto& f : fns) {
    bool ok = true;
    Json row = detail::guarded(ok, [&] {
      Oracle oracle;
      ContinuityPoint p = point_of_continuity_qc(f, k, oracle);
      Oracle doubled(Budget{2 * oracle.budget().fuel});
      DyadicInterval o = osc_point(f, Surd(p.point), k, doubled);
      Surd brute = brute_ball_osc(f, Surd(p.point), 2 * k + 4);
      ok = o.hi <= pow2(-static_cast<long>(k)) && !(Surd(pow2(-static_cast<long>(k))) < brute);
      return Json{{"point", to_json(p)}, {"osc", to_json(o)}, {"brute_osc", to_json(brute)}};
    });
    row["fn"] = f.name();
    row["ok"] = ok;
    if (!ok) ++failures;
    rows.push_back(std::move(row));
  }
  c.pass = failures == 0;
  c.detail = Json{{"instances", fns.size()}, {"failures", failures}, {"rows", rows}};
  return c;
}

inline Criterion cousin(std::uint64_t seed) {
  using namespace testing;
  Criterion c{4, "Cousin covering and its limits", true, {}};
  Rng rng(detail::sub_seed(seed, 4));
  Json rows = Json::array();
  std::size_t failures = 0;
  for (int i = 0; i < 20; ++i) {
    SymbolicFn psi = constant(1);
    ClassTag cls = ClassTag::QuasiContinuous;
    if (i % 2 == 0) {
      psi = random_piecewise_linear(rng, Rational(1, 64), Rational(1, 8));
    } else {
      Rational h(uniform(rng, 2, 8), 64);
      psi = difference(constant(h), scale(h, build_penny(random_finite_set(rng))));
      cls = ClassTag::Lsco;
    }
    bool ok = true;
    Json row = detail::guarded(ok, [&] {
      RationalBallCover cover = cousin_subcover(psi, cls);
      auto prefix = unit_rationals(cover.balls.size());
      for (std::size_t n = 0; n < cover.balls.size(); ++n)
        ok = ok && cover.balls[n].center == prefix[n] && cover.balls[n].radius > 0 &&
             !(psi(Surd(prefix[n])) < Surd(cover.balls[n].radius));
      ok = ok && covers_closed_unit(cover.balls);
      return Json{{"n0", cover.n0}, {"balls", cover.balls.size()}};
    });
    row["psi"] = psi.name();
    row["class"] = std::string(to_string(cls));
    row["ok"] = ok;
    if (!ok) ++failures;
    rows.push_back(std::move(row));
  }

  CountableSet a = CountableSet::sqrt2_dyadic();
  SymbolicFn cover_psi = build_cover_psi(a, false);
  Json refusals = Json::array();
  bool refused = true;
  for (ClassTag cls : {ClassTag::QuasiContinuous, ClassTag::Lsco}) {
    try {
      cousin_subcover(cover_psi, cls);
      refused = false;
      refusals.push_back(Json{{"class", to_string(cls)}, {"refused", false}});
    } catch (const RefusedQuery& e) {
      refusals.push_back(Json{{"class", to_string(cls)}, {"refused", true}, {"rule", e.rule()}, {"anchor", rule_anchor(e.rule())}});
    }
  }

  // Every set of at most 12 centres from the first 12 members of the
  // companion set and 0: the balls' total length stays below 1.
  std::vector<Point> centres{Surd(0)};
  for (auto& [n, x] : CountableSet::tilde(a).members_upto(11)) centres.push_back(x);
  std::vector<Surd> lengths;
  for (auto& x : centres) lengths.push_back(Surd(2) * cover_psi(x));
  Surd worst(0);
  std::size_t selections = 0;
  for (std::uint32_t mask = 1; mask < (1u << centres.size()); ++mask) {
    if (std::popcount(mask) > 12) continue;
    Surd total(0);
    for (std::size_t i = 0; i < centres.size(); ++i)
      if (mask >> i & 1u) total += lengths[i];
    worst = max(worst, total);
    ++selections;
  }
  bool bounded = worst < Surd(1);
  c.pass = failures == 0 && refused && bounded;
  c.detail = Json{{"instances", rows.size()},
                  {"failures", failures},
                  {"rows", rows},
                  {"cover_psi_refusals", refusals},
                  {"selections", selections},
                  {"largest_total_length", to_json(worst)},
                  {"measure_below_one", bounded}};
  return c;
}

inline Criterion jordan(std::uint64_t seed) {
  using namespace testing;
  Criterion c{5, "Jordan decomposition and total variation", true, {}};
  Rng rng(detail::sub_seed(seed, 5));
  Json rows = Json::array();
  std::size_t failures = 0;
  for (int i = 0; i < 20; ++i) {
    SymbolicFn f = random_staircase(rng, false, 64);
    bool ok = true;
    Json row = detail::guarded(ok, [&] {
      JordanPair gh = jordan_nbv(f);
      std::optional<Surd> g_prev, h_prev;
      Surd worst_error(0);
      bool monotone = true;
      for (auto& r : rational_grid(Interval<Rational>{0, 1}, 10)) {
        Surd x(r), g = gh.g(x), h = gh.h(x);
        if ((g_prev && g < *g_prev) || (h_prev && h < *h_prev)) monotone = false;
        worst_error = max(worst_error, abs(g - h - f(x)));
        g_prev = g;
        h_prev = h;
      }
      bool close = !(Surd(pow2(-9)) < worst_error);

      const std::vector<Point> jumps = f.special_points(64);
      std::vector<Point> points;
      for (auto& r : rational_grid(Interval<Rational>{0, 1}, 8)) points.emplace_back(r);
      for (auto& s : jumps) points.push_back(s);
      std::sort(points.begin(), points.end());
      points.erase(std::unique(points.begin(), points.end()), points.end());
      std::vector<Surd> brute = brute_variations(f, points, 10);
      Oracle oracle;
      Json checks = Json::array();
      bool variation_ok = true;
      for (std::size_t j = 0; j < points.size(); ++j) {
        const Point& x = points[j];
        bool special = std::find(jumps.begin(), jumps.end(), x) != jumps.end();
        if (!special && !(x == Surd(1)) && !(x == Surd(Rational(1, 2)))) continue;
        DyadicInterval v = total_variation_nbv(f, x, 8, oracle);
        bool match = !(Surd(pow2(-8)) < abs(Surd(v.midpoint()) - brute[j]));
        variation_ok = variation_ok && match;
        checks.push_back(Json{{"x", to_json(x)}, {"variation", to_json(v)}, {"brute", to_json(brute[j])}, {"ok", match}});
      }
      ok = monotone && close && variation_ok;
      return Json{{"monotone", monotone}, {"max_error", to_json(worst_error)}, {"variation", checks}};
    });
    row["fn"] = f.name();
    row["ok"] = ok;
    if (!ok) ++failures;
    rows.push_back(std::move(row));
  }
  c.pass = failures == 0;
  c.detail = Json{{"instances", rows.size()}, {"failures", failures}, {"rows", rows}};
  return c;
}

inline Criterion abyss() {
  Criterion c{6, "rational sampling misses Penny entirely", true, {}};
  bool ok = true;
  c.detail = detail::guarded(ok, [&] {
    AbyssDemo d = demo_abyss(build_penny(CountableSet::sqrt2_dyadic()), {8, 16, 24});
    for (auto& [depth, v] : d.baseline) ok = ok && v == Surd(0);
    ok = ok && d.oracle == Rational(1, 2) && !(d.gap < Surd(Rational(1, 2)));
    return to_json(d);
  });
  c.pass = ok;
  return c;
}

inline Criterion realisers(std::uint64_t seed) {
  Criterion c{7, "Cantor realisers from sup, cliquishness and regulation oracles", true, {}};
  detail::Rng rng(detail::sub_seed(seed, 7));
  const std::size_t k = 30;
  Json rows = Json::array();
  std::size_t failures = 0;
  auto independent = [](const RealiserResult& r, const CountableSet& a) {
    Interval<Surd> out{Surd(r.interval.lo), Surd(r.interval.hi)};
    for (auto& [n, x] : a.members_upto(16))
      if (out.contains(x)) return false;
    return r.certified_upto >= 16 && out.contains(Surd(r.point));
  };
  const char* names[] = {"sup", "cliq-modulus", "regulation-modulus"};
  for (int which = 0; which < 3; ++which)
    for (int i = 0; i < 10; ++i) {
      CountableSet a = detail::random_infinite_set(rng);
      bool ok = true;
      Json row = detail::guarded(ok, [&] {
        RealiserResult r = which == 0   ? realiser_from_sup(exact_sup_oracle(), a, k)
                           : which == 1 ? realiser_from_cliq_modulus(canonical_cliq_modulus(a), a, k)
                                        : realiser_from_regulation_modulus(penny_regulation_modulus(a), a, k);
        ok = independent(r, a);
        return Json{{"point", to_json(r.point)}, {"certified_upto", r.certified_upto}};
      });
      row["realiser"] = names[which];
      row["set"] = to_json(a);
      row["ok"] = ok;
      if (!ok) ++failures;
      rows.push_back(std::move(row));
    }

  bool bits_ok = true;
  Json bits = detail::guarded(bits_ok, [&] {
    RealiserResult r = realiser_from_sup(exact_sup_oracle(), CountableSet::sqrt2_dyadic(), k);
    Integer expect = boost::multiprecision::sqrt(Integer(1) << 31);  // floor(2^16 sqrt(2)/2)
    Integer got = floor_of(r.extracted.at(0).lo * pow2(16));
    auto binary = [](Integer v) {
      std::string s;
      for (int b = 0; b < 16; ++b, v >>= 1) s.insert(s.begin(), v % 2 == 0 ? '0' : '1');
      return s;
    };
    bits_ok = got == expect;
    return Json{{"expected", "0." + binary(expect)}, {"extracted", "0." + binary(got)}};
  });
  bits["ok"] = bits_ok;
  c.pass = failures == 0 && bits_ok;
  c.detail = Json{{"instances", rows.size()}, {"failures", failures}, {"rows", rows}, {"sqrt2_bits", bits}};
  return c;
}

// ---------------------------------------------------------------------------
// Collapse-rule soundness

namespace detail {

/// Answer of a query as (found, witness) pairs, so that the oracle and the
/// brute-force reference can be compared directly.
struct Answer {
  bool found = false;
  std::size_t witness = 0;
  bool operator==(const Answer&) const = default;
};

inline Json to_json(const Answer& a) { return a.found ? Json(a.witness) : Json("none"); }

inline Answer least(std::size_t fuel, const std::function<bool(std::size_t)>& holds) {
  for (std::size_t n = 0; n <= fuel; ++n)
    if (holds(n)) return {true, n};
  return {};
}

/// Values over the candidates of the open ball B(x, 2^-n).
inline std::vector<Surd> ball_values(const SymbolicFn& f, const Point& x, std::size_t n, bool rationals_only = false) {
  Surd r(pow2(-static_cast<long>(n)));
  Interval<Surd> span{max(Surd(0), x - r), min(Surd(1), x + r)};
  std::vector<Surd> out;
  for (auto& y : testing::candidates(f, span, static_cast<unsigned>(n + 8), 32))
    if (abs(y - x) < r && (!rationals_only || y.is_rational())) out.push_back(f(y));
  return out;
}

inline std::vector<Surd> span_values(const SymbolicFn& f, const Interval<Surd>& span, bool rationals_only = false) {
  std::vector<Surd> out;
  for (auto& y : testing::candidates(f, span))
    if (!rationals_only || y.is_rational()) out.push_back(f(y));
  return out;
}

inline Surd spread(const std::vector<Surd>& v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

/// Exhaustive answer to a query; with `rationals_only` the same evaluation
/// restricted to rational points, i.e. what a collapse would compute.
inline Answer brute_answer(const QuantQuery& query, std::size_t fuel, bool rationals_only = false) {
  return std::visit(
      [&](const auto& q) -> Answer {
        using Q = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<Q, query::OscBelow>) {
          Surd bound(pow2(-static_cast<long>(q.m)));
          return least(fuel, [&](std::size_t n) {
            auto v = ball_values(q.f, q.x, n, rationals_only);
            if (q.f.has(ClassTag::RationalSupported) && !rationals_only) v.push_back(Surd(0));
            return !(bound < spread(v));
          });
        } else if constexpr (std::is_same_v<Q, query::ValueBelowOnBall>) {
          auto below = [&](std::size_t n) {
            for (auto& v : ball_values(q.f, q.x, n, rationals_only))
              if (v < q.q) return true;
            return q.f.has(ClassTag::RationalSupported) && !rationals_only && Surd(0) < q.q;
          };
          if (below(fuel)) return {};
          return least(fuel, [&](std::size_t n) { return !below(n); });
        } else if constexpr (std::is_same_v<Q, query::NotLscoAt>) {
          auto v = ball_values(q.f, q.x, fuel, rationals_only);
          Surd lo = *std::min_element(v.begin(), v.end());
          if (q.f.has(ClassTag::RationalSupported) && !rationals_only) lo = min(lo, Surd(0));
          Surd gap = q.f(q.x) - lo;
          if (gap.sign() <= 0) return {};
          return least(fuel, [&](std::size_t l) { return !(gap < Surd(pow2(-static_cast<long>(l)))); });
        } else {
          constexpr bool above = std::is_same_v<Q, query::ExistsValueAbove> || std::is_same_v<Q, query::Baire1Above>;
          for (auto& v : span_values(q.f, q.interval, rationals_only))
            if (above ? q.threshold < v : v < q.threshold) return {true, 0};
          bool zero = q.f.has(ClassTag::RationalSupported) && !rationals_only;
          return {zero && !above && Surd(0) < q.threshold, 0};
        }
      },
      query);
}

inline Answer oracle_answer(const QuantQuery& q, const Oracle& oracle) {
  MuResult r = oracle.mu_search(q);
  if (!r.found()) return {};
  Shape s = shape_of(q);
  bool positional = s == Shape::OscBelow || s == Shape::ValueBelowOnBall || s == Shape::NotLscoAt;
  return {true, positional ? r.witness->value : 0};
}

inline Interval<Surd> random_span(Rng& rng) {
  auto [p, q] = testing::random_interval(rng, 97);
  return {Surd(p), Surd(q)};
}

inline Surd random_threshold(Rng& rng, long lo = -8, long hi = 97) {
  return Surd(Rational(testing::uniform(rng, lo, hi), 97));
}

struct RulePair {
  Shape shape;
  std::string cls;
  std::function<QuantQuery(Rng&)> make;
};

inline std::vector<RulePair> rule_pairs() {
  using namespace testing;
  auto usco_fn = [](Rng& rng) -> SymbolicFn {
    switch (uniform(rng, 0, 3)) {
      case 0: return thomae();
      case 1: return build_penny(random_finite_set(rng));
      case 2: return random_piecewise_linear(rng);
      default: return sum({random_piecewise_linear(rng), scale(Rational(1, 4), build_penny(random_finite_set(rng)))});
    }
  };
  auto baire1_fn = [](Rng& rng) -> SymbolicFn {
    if (uniform(rng, 0, 1)) return baire1_penny_k(random_finite_set(rng), true);
    return baire1_constant(random_qc(rng), true);
  };
  auto ball_point = [](Rng& rng, const SymbolicFn& f) -> Point {
    if (auto a = f.countable_set(); a && uniform(rng, 0, 1)) {
      auto members = a->members_upto(11);
      return members[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(members.size()) - 1))].second;
    }
    return random_point(rng);
  };
  return {
      {Shape::OscBelow, "quasi-continuous",
       [](Rng& rng) -> QuantQuery {
         return query::OscBelow{random_qc(rng), random_point(rng), static_cast<std::size_t>(uniform(rng, 1, 6))};
       }},
      {Shape::OscBelow, "rational-supported",
       [](Rng& rng) -> QuantQuery {
         return query::OscBelow{thomae(), random_point(rng), static_cast<std::size_t>(uniform(rng, 1, 4))};
       }},
      {Shape::ValueBelowOnBall, "usco",
       [=](Rng& rng) -> QuantQuery {
         SymbolicFn f = usco_fn(rng);
         return query::ValueBelowOnBall{f, ball_point(rng, f), random_threshold(rng)};
       }},
      {Shape::ExistsValueAbove, "quasi-continuous",
       [](Rng& rng) -> QuantQuery {
         return query::ExistsValueAbove{random_qc(rng), random_span(rng), random_threshold(rng, 0, 120)};
       }},
      {Shape::ExistsValueAbove, "rational-supported",
       [](Rng& rng) -> QuantQuery {
         return query::ExistsValueAbove{thomae(), random_span(rng), random_threshold(rng, 0, 60)};
       }},
      {Shape::ExistsValueBelow, "usco",
       [=](Rng& rng) -> QuantQuery {
         return query::ExistsValueBelow{usco_fn(rng), random_span(rng), random_threshold(rng)};
       }},
      {Shape::ExistsValueBelow, "quasi-continuous",
       [](Rng& rng) -> QuantQuery {
         return query::ExistsValueBelow{random_qc(rng), random_span(rng), random_threshold(rng, 0, 120)};
       }},
      {Shape::Baire1Above, "Baire-1 with modulus",
       [=](Rng& rng) -> QuantQuery {
         return query::Baire1Above{baire1_fn(rng), random_span(rng), random_threshold(rng, -8, 60)};
       }},
      {Shape::Baire1Below, "Baire-1 with modulus",
       [=](Rng& rng) -> QuantQuery {
         return query::Baire1Below{baire1_fn(rng), random_span(rng), random_threshold(rng, -8, 60)};
       }},
      {Shape::NotLscoAt, "usco",
       [=](Rng& rng) -> QuantQuery {
         SymbolicFn f = usco_fn(rng);
         return query::NotLscoAt{f, ball_point(rng, f)};
       }},
  };
}

/// Shapes applied to functions outside their rule, with the exhaustive and
/// the rational-only answers that a collapse would have confused.
struct Counterexample {
  std::string description;
  QuantQuery query;
};

inline std::vector<Counterexample> counterexamples() {
  CountableSet a = CountableSet::sqrt2_dyadic();
  SymbolicFn penny = build_penny(a);
  SymbolicFn lsco = difference(constant(1), penny);
  Interval<Surd> right{Surd(Rational(1, 2)), Surd(1)};
  return {
      {"oscillation of the cliquish Penny near sqrt(2)/2", query::OscBelow{penny, Surd(Rational(5, 8)), 2}},
      {"'>' for the usco Penny on [1/2, 1]", query::ExistsValueAbove{penny, right, Surd(Rational(1, 4))}},
      {"lower bound on a ball for the lsco 1 - Penny", query::ValueBelowOnBall{lsco, Surd(Rational(5, 8)), Surd(1)}},
      {"'<' for the lsco 1 - Penny on [1/2, 1]", query::ExistsValueBelow{lsco, right, Surd(1)}},
      {"lower-jump test at sqrt(2)/2, a discontinuity of the lsco -Penny that it cannot see",
       query::NotLscoAt{scale(-1, penny), Surd::sqrt2_dyadic(0)}},
      {"Baire-1 '>' without a representation", query::Baire1Above{thomae(), right, Surd(Rational(1, 4))}},
      {"Baire-1 '<' without a modulus", query::Baire1Below{baire1_penny_k(a, false), right, Surd(Rational(1, 4))}},
  };
}

}  // namespace detail

inline Criterion collapse_soundness(std::uint64_t seed) {
  Criterion c{8, "collapse rules agree with exhaustive evaluation", true, {}};
  detail::Rng rng(detail::sub_seed(seed, 8));
  const std::size_t fuel = 16;
  Json pairs = Json::array();
  std::size_t failures = 0;
  for (auto& pair : detail::rule_pairs()) {
    std::size_t agree = 0, found = 0;
    Json mismatches = Json::array();
    for (int i = 0; i < 100; ++i) {
      QuantQuery q = pair.make(rng);
      bool ok = true;
      Json row = detail::guarded(ok, [&] {
        Oracle oracle(Budget{fuel});
        detail::Answer got = detail::oracle_answer(q, oracle), expect = detail::brute_answer(q, fuel);
        ok = got == expect;
        if (got.found) ++found;
        return Json{{"oracle", to_json(got)}, {"brute", to_json(expect)}};
      });
      if (ok) {
        ++agree;
      } else if (mismatches.size() < 5) {
        row["fn"] = subject_of(q).name();
        mismatches.push_back(std::move(row));
      }
    }
    if (agree != 100) ++failures;
    pairs.push_back(Json{{"shape", collapse_rule(pair.shape).shape_name},
                         {"rule", collapse_rule(pair.shape).id},
                         {"class", pair.cls},
                         {"agree", agree},
                         {"found", found},
                         {"mismatches", mismatches}});
  }

  Json refusals = Json::array();
  for (auto& ce : detail::counterexamples()) {
    Json row{{"case", ce.description}, {"shape", collapse_rule(shape_of(ce.query)).shape_name}};
    bool refused = false;
    try {
      Oracle(Budget{fuel}).mu_search(ce.query);
    } catch (const RefusedQuery& e) {
      refused = true;
      row["rule"] = e.rule();
      row["anchor"] = rule_anchor(e.rule());
    }
    row["refused"] = refused;
    if (!refused) ++failures;
    if (!std::holds_alternative<query::Baire1Above>(ce.query) && !std::holds_alternative<query::Baire1Below>(ce.query)) {
      detail::Answer exact = detail::brute_answer(ce.query, fuel), rational = detail::brute_answer(ce.query, fuel, true);
      row["exhaustive"] = detail::to_json(exact);
      row["rationals_only"] = detail::to_json(rational);
      row["collapse_would_lie"] = !(exact == rational);
    }
    refusals.push_back(std::move(row));
  }
  c.pass = failures == 0;
  c.detail = Json{{"rules", pairs}, {"refusals", refusals}};
  return c;
}

// ---------------------------------------------------------------------------

/// Criteria 1 to 8.
inline Report run_properties(std::uint64_t seed = kDefaultSeed) {
  Report r{seed, {}};
  r.criteria.push_back(suprema(seed));
  r.criteria.push_back(oscillation_identity());
  r.criteria.push_back(baire_category(seed));
  r.criteria.push_back(cousin(seed));
  r.criteria.push_back(jordan(seed));
  r.criteria.push_back(abyss());
  r.criteria.push_back(realisers(seed));
  r.criteria.push_back(collapse_soundness(seed));
  return r;
}

/// The full suite: criteria 1 to 8 run twice, and criterion 9 compares the
/// two serialised transcripts byte for byte.
inline Report run(std::uint64_t seed = kDefaultSeed) {
  Report first = run_properties(seed);
  std::string a = first.transcript().dump(), b = run_properties(seed).transcript().dump();
  first.criteria.push_back({9, "deterministic transcript", a == b, Json{{"bytes", a.size()}, {"identical", a == b}}});
  return first;
}

}  // namespace abyss::selftest
