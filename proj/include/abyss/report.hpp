#pragma once

// JSON encodings of algorithm results. Rationals are always strings.

#include "abyss/json.hpp"
#include "abyss/reductions.hpp"

namespace abyss {

inline Json to_json(Truth t) { return std::string(to_string(t)); }

inline Json to_json(const FueledBool& b) { return Json{{"value", to_json(b.value)}, {"fuel_spent", b.fuel_spent}}; }

inline Json to_json(const OneSidedLimits& l) {
  return Json{{"left", l.left ? to_json(*l.left) : Json(nullptr)}, {"right", l.right ? to_json(*l.right) : Json(nullptr)}};
}

inline Json to_json(const RationalBall& b) { return Json{{"center", to_json(b.center)}, {"radius", to_json(b.radius)}}; }

inline Json to_json(const std::vector<RationalBall>& balls) {
  Json out = Json::array();
  for (auto& b : balls) out.push_back(to_json(b));
  return out;
}

inline Json to_json(const RationalBallCover& c) { return Json{{"n0", c.n0}, {"balls", to_json(c.balls)}}; }

inline Json to_json(const RMCode& c) {
  return Json{{"prefix_of_infinite", c.prefix_of_infinite}, {"balls", to_json(c.balls)}};
}

inline Json to_json(const ContinuityPoint& p) {
  return Json{{"point", to_json(p.point)}, {"interval", to_json(p.interval)}, {"stages", p.stages}};
}

inline Json to_json(const std::vector<DyadicInterval>& is) {
  Json out = Json::array();
  for (auto& i : is) out.push_back(to_json(i));
  return out;
}

inline Json to_json(const RealiserResult& r) {
  return Json{{"point", to_json(r.point)},
              {"interval", to_json(r.interval)},
              {"certified_upto", r.certified_upto},
              {"extracted", to_json(r.extracted)},
              {"transcript", r.transcript}};
}

inline Json to_json(const AbyssDemo& d) {
  Json base = Json::array();
  for (auto& [depth, v] : d.baseline) base.push_back(Json{{"depth", depth}, {"value", to_json(v)}});
  return Json{{"instance", to_json(d.fn)},
              {"name", d.fn.name()},
              {"baseline", base},
              {"oracle", to_json(d.oracle)},
              {"gap", to_json(d.gap)},
              {"gap_at_least_half", !(d.gap < Surd(Rational(1, 2)))}};
}

/// A modulus sampled at the given points and precisions.
inline Json sample_modulus(const NaturalModulus& m, const std::vector<Point>& xs, const std::vector<std::size_t>& ks) {
  Json rows = Json::array();
  for (auto& x : xs)
    for (auto k : ks) {
      auto v = m(x, k);
      rows.push_back(Json{{"x", to_json(x)}, {"k", k}, {"value", v ? Json(*v) : Json(nullptr)}});
    }
  return Json{{"modulus", m.name}, {"samples", rows}};
}

}  // namespace abyss
