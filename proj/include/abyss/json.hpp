#pragma once

// JSON encoding of points, sets and functions (schema "abyss/1").
//
//   point     "p/q"  or  {"rational": "p/q", "sqrt2": "a/b"}
//   set       {"generator": "sqrt2_dyadic", "limit": n?, "overrides": {"n": point}}
//             {"generator": "finite", "points": [point, ...]}
//             {"generator": "tilde", "base": set}
//   function  {"variant": name, ...parameters}
//
// Every rational is a string, so documents round-trip exactly.

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "abyss/build.hpp"

namespace abyss {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "abyss/1";

inline Json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw DomainError("expected a rational string, got " + j.dump());
}

inline Json to_json(const Surd& x) {
  if (x.is_rational()) return to_string(x.rational_part());
  return Json{{"rational", to_string(x.rational_part())}, {"sqrt2", to_string(x.sqrt2_part())}};
}

inline Surd point_from_json(const Json& j) {
  if (j.is_object()) return Surd(rational_from_json(j.at("rational")), rational_from_json(j.at("sqrt2")));
  return Surd(rational_from_json(j));
}

inline Json to_json(const Interval<Rational>& i) { return Json::array({to_json(i.lo), to_json(i.hi)}); }
inline Json to_json(const Interval<Surd>& i) { return Json::array({to_json(i.lo), to_json(i.hi)}); }

inline Interval<Rational> interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("expected an interval [lo, hi], got " + j.dump());
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

// --- sets -----------------------------------------------------------------

inline Json to_json(const CountableSet& a) {
  switch (a.kind()) {
    case CountableSet::Kind::Sqrt2Dyadic: {
      Json j{{"generator", "sqrt2_dyadic"}};
      if (a.prefix_limit()) j["limit"] = *a.prefix_limit();
      if (!a.overrides().empty()) {
        Json o = Json::object();
        for (auto& [n, p] : a.overrides()) o[std::to_string(n)] = to_json(p);
        j["overrides"] = o;
      }
      return j;
    }
    case CountableSet::Kind::Finite: {
      Json pts = Json::array();
      for (auto& p : a.finite_points()) pts.push_back(to_json(p));
      return Json{{"generator", "finite"}, {"points", pts}};
    }
    case CountableSet::Kind::Tilde: return Json{{"generator", "tilde"}, {"base", to_json(a.tilde_base())}};
  }
  return nullptr;
}

inline CountableSet set_from_json(const Json& j) {
  std::string g = j.at("generator").get<std::string>();
  if (g == "sqrt2_dyadic") {
    std::optional<std::size_t> limit;
    if (j.contains("limit")) limit = j.at("limit").get<std::size_t>();
    std::map<std::size_t, Point> overrides;
    if (j.contains("overrides"))
      for (auto& [k, v] : j.at("overrides").items()) overrides[std::stoul(k)] = point_from_json(v);
    return CountableSet::sqrt2_dyadic(limit, std::move(overrides));
  }
  if (g == "finite") {
    std::vector<Point> pts;
    for (auto& p : j.at("points")) pts.push_back(point_from_json(p));
    return CountableSet::finite(std::move(pts));
  }
  if (g == "tilde") return CountableSet::tilde(set_from_json(j.at("base")));
  throw DomainError("unknown set generator '" + g + "'");
}

inline Json to_json(const R2Rep& o) {
  Json comps = Json::array();
  for (auto& c : o.components()) comps.push_back(to_json(c));
  return comps;
}

inline R2Rep r2_from_json(const Json& j) {
  std::vector<Interval<Rational>> comps;
  for (auto& c : j) comps.push_back(interval_from_json(c));
  return R2Rep(std::move(comps));
}

inline Json to_json(const ClosedSetRep& c) {
  if (c.is_finite()) {
    Json pts = Json::array();
    for (auto& p : c.finite_points()) pts.push_back(to_json(p));
    return Json{{"points", pts}};
  }
  return Json{{"complement_of", to_json(c.open_complement())}};
}

inline ClosedSetRep closed_from_json(const Json& j) {
  if (j.contains("points")) {
    std::vector<Point> pts;
    for (auto& p : j.at("points")) pts.push_back(point_from_json(p));
    return ClosedSetRep::points(std::move(pts));
  }
  if (j.contains("complement_of")) return ClosedSetRep::complement_of(r2_from_json(j.at("complement_of")));
  throw DomainError("closed set needs 'points' or 'complement_of'");
}

// --- functions ------------------------------------------------------------

inline Json to_json(const ClassSet& tags) { return tags.names(); }

inline Json to_json(const SymbolicFn& f) {
  return std::visit(
      [&](const auto& n) -> Json {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Piecewise>) {
          Json bps = Json::array(), pieces = Json::array(), pols = Json::array();
          for (auto& b : n.breakpoints) bps.push_back(to_json(b));
          for (auto& p : n.pieces) {
            Json cs = Json::array();
            for (auto& c : p.coeffs) cs.push_back(to_json(c));
            pieces.push_back(cs);
          }
          for (auto& p : n.policies) {
            if (p.kind == BreakPolicy::Kind::Left) pols.push_back("left");
            else if (p.kind == BreakPolicy::Kind::Right) pols.push_back("right");
            else pols.push_back(Json{{"value", to_json(p.value)}});
          }
          return Json{{"variant", "piecewise"}, {"breakpoints", bps}, {"pieces", pieces}, {"policies", pols}};
        } else if constexpr (std::is_same_v<N, node::Thomae>) {
          return Json{{"variant", "thomae"}};
        } else if constexpr (std::is_same_v<N, node::Penny>) {
          return Json{{"variant", "penny"}, {"set", to_json(n.set)}};
        } else if constexpr (std::is_same_v<N, node::PennyK>) {
          return Json{{"variant", "penny_k"}, {"set", to_json(n.set)}, {"k", n.k}};
        } else if constexpr (std::is_same_v<N, node::TildePenny>) {
          return Json{{"variant", "tilde_penny"}, {"set", to_json(n.base)}};
        } else if constexpr (std::is_same_v<N, node::CoverPsi>) {
          return Json{{"variant", "cover_psi"}, {"set", to_json(n.base)}, {"usco", false}};
        } else if constexpr (std::is_same_v<N, node::CoverPsiUsco>) {
          return Json{{"variant", "cover_psi"}, {"set", to_json(n.base)}, {"usco", true}};
        } else if constexpr (std::is_same_v<N, node::Indicator>) {
          return Json{{"variant", "indicator"}, {"closed", to_json(n.set)}};
        } else if constexpr (std::is_same_v<N, node::Baire1Limit>) {
          Json j{{"variant", "baire1"}, {"modulus", n.modulus.has_value()}};
          switch (n.family) {
            case node::Baire1Limit::Family::PennyK:
              j["family"] = "penny_k";
              j["set"] = to_json(*n.source_set);
              break;
            case node::Baire1Limit::Family::Constant:
              j["family"] = "constant";
              j["fn"] = to_json(n.source_fns.front());
              break;
            case node::Baire1Limit::Family::OpenIndicator:
              j["family"] = "open_indicator";
              j["open"] = to_json(*n.source_open);
              break;
            case node::Baire1Limit::Family::Custom:
              throw DomainError("custom Baire-1 representation '" + n.description + "' cannot be serialised");
          }
          return j;
        } else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Sum>>) {
          Json terms = Json::array();
          for (auto& t : n->terms) terms.push_back(to_json(t));
          return Json{{"variant", "sum"}, {"terms", terms}};
        } else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Difference>>) {
          return Json{{"variant", "difference"}, {"lhs", to_json(n->lhs)}, {"rhs", to_json(n->rhs)}};
        } else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Scaled>>) {
          return Json{{"variant", "scale"}, {"factor", to_json(n->factor)}, {"fn", to_json(n->fn)}};
        } else if constexpr (std::is_same_v<N, std::shared_ptr<const node::Below>>) {
          return Json{{"variant", "below"}, {"threshold", to_json(n->threshold)}, {"fn", to_json(n->fn)}};
        } else {
          return Json{{"variant", "restricted"}, {"tags", to_json(f.tags())}, {"fn", to_json(n->fn)}};
        }
      },
      f.node());
}

inline SymbolicFn fn_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("variant")) throw DomainError("function document needs a 'variant' field");
  std::string v = j.at("variant").get<std::string>();
  if (v == "piecewise") {
    std::vector<Point> bps;
    std::vector<Poly> pieces;
    std::vector<BreakPolicy> pols;
    for (auto& b : j.value("breakpoints", Json::array())) bps.push_back(point_from_json(b));
    for (auto& p : j.at("pieces")) {
      Poly poly;
      for (auto& c : p) poly.coeffs.push_back(rational_from_json(c));
      pieces.push_back(std::move(poly));
    }
    for (auto& p : j.value("policies", Json::array())) {
      if (p == "left") pols.push_back(BreakPolicy::left());
      else if (p == "right") pols.push_back(BreakPolicy::right());
      else pols.push_back(BreakPolicy::explicit_value(rational_from_json(p.at("value"))));
    }
    return piecewise(std::move(bps), std::move(pieces), std::move(pols));
  }
  if (v == "constant") return constant(rational_from_json(j.at("value")));
  if (v == "identity") return identity();
  if (v == "thomae") return thomae();
  if (v == "penny") return build_penny(set_from_json(j.at("set")));
  if (v == "penny_k") return build_penny_k(set_from_json(j.at("set")), j.at("k").get<std::size_t>());
  if (v == "tilde_penny") return build_tilde(set_from_json(j.at("set"))).second;
  if (v == "cover_psi") return build_cover_psi(set_from_json(j.at("set")), j.value("usco", false));
  if (v == "indicator") return indicator(closed_from_json(j.at("closed")));
  if (v == "baire1") {
    bool with_modulus = j.value("modulus", true);
    std::string family = j.at("family").get<std::string>();
    if (family == "penny_k") return baire1_penny_k(set_from_json(j.at("set")), with_modulus);
    if (family == "constant") return baire1_constant(fn_from_json(j.at("fn")), with_modulus);
    if (family == "open_indicator") return baire1_open_indicator(r2_from_json(j.at("open")), with_modulus);
    throw DomainError("unknown Baire-1 family '" + family + "'");
  }
  if (v == "sum") {
    std::vector<SymbolicFn> terms;
    for (auto& t : j.at("terms")) terms.push_back(fn_from_json(t));
    return sum(std::move(terms));
  }
  if (v == "difference") return difference(fn_from_json(j.at("lhs")), fn_from_json(j.at("rhs")));
  if (v == "scale") return scale(rational_from_json(j.at("factor")), fn_from_json(j.at("fn")));
  if (v == "below") return below(fn_from_json(j.at("fn")), rational_from_json(j.at("threshold")));
  if (v == "restricted") {
    std::vector<ClassTag> tags;
    for (auto& t : j.at("tags")) tags.push_back(parse_class_tag(t.get<std::string>()));
    ClassSet keep;
    for (auto t : tags) keep = keep.with(t);
    return restrict_tags(fn_from_json(j.at("fn")), keep);
  }
  throw DomainError("unknown function variant '" + v + "'");
}

/// A function document wrapped with the schema marker.
inline Json fn_document(const SymbolicFn& f) {
  return Json{{"schema", kSchema}, {"function", to_json(f)}, {"tags", to_json(f.tags())}};
}

}  // namespace abyss
