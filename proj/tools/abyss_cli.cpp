// Command-line front end: one subcommand per operation, JSON on stdout.
//
// Exit codes: 0 success, 1 usage or input error, 2 refusal (class
// precondition not met), 3 fuel exhausted.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

#include "abyss/algorithms.hpp"
#include "abyss/json.hpp"
#include "abyss/reductions.hpp"
#include "abyss/report.hpp"
#include "abyss/selftest.hpp"

namespace {

using namespace abyss;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Inline JSON, @file, or a bare file path.
Json load_json(const std::string& text) {
  std::string body = text;
  if (!body.empty() && body[0] == '@') body = read_file(body.substr(1));
  else if (!body.empty() && body[0] != '{' && body[0] != '[' && body[0] != '"') body = read_file(body);
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
}

CountableSet load_set(const std::string& text) {
  if (text == "canonical" || text == "sqrt2_dyadic") return CountableSet::sqrt2_dyadic();
  return set_from_json(load_json(text));
}

SymbolicFn named_fn(const std::string& name) {
  CountableSet a = CountableSet::sqrt2_dyadic();
  if (name == "thomae") return thomae();
  if (name == "penny") return build_penny(a);
  if (name == "penny-baire1") return baire1_penny_k(a, true);
  if (name == "tilde-penny") return build_tilde(a).second;
  if (name == "cover-psi") return build_cover_psi(a, false);
  if (name == "cover-psi-usco") return build_cover_psi(a, true);
  if (name == "identity") return identity();
  if (name == "staircase") return staircase({{Rational(1, 2), Rational(1, 2)}, {Rational(3, 4), Rational(1, 4)}});
  if (std::regex_match(name, std::regex(R"(penny-k:\d+)"))) return build_penny_k(a, std::stoul(name.substr(8)));
  throw UsageError("unknown function '" + name +
                   "' (named: thomae, penny, penny-k:<k>, penny-baire1, tilde-penny, cover-psi, cover-psi-usco, "
                   "identity, staircase; or inline JSON, @file)");
}

SymbolicFn load_fn(const std::string& text) {
  if (text.empty()) throw UsageError("--fn is required");
  if (text[0] == '{' || text[0] == '@') {
    Json j = load_json(text);
    return fn_from_json(j.contains("function") ? j.at("function") : j);
  }
  return named_fn(text);
}

/// "p/q", "a+b*sqrt2", "b*sqrt2" or a JSON point.
Point parse_point(const std::string& text) {
  if (!text.empty() && text[0] == '{') return point_from_json(Json::parse(text));
  static const std::regex surd(R"(\s*(?:([-+]?[0-9./]+)\s*([-+])\s*)?([0-9./]*)\s*\*?\s*sqrt2\s*)");
  std::smatch m;
  if (std::regex_match(text, m, surd)) {
    Rational a = m[1].matched ? parse_rational(m[1].str()) : Rational(0);
    Rational b = m[3].length() ? parse_rational(m[3].str()) : Rational(1);
    if (m[2].matched && m[2].str() == "-") b = -b;
    return Surd(a, b);
  }
  return Surd(parse_rational(text));
}

struct Options {
  std::string fn;
  std::size_t fuel = 64;
  unsigned resolution = 8;
  bool trace = false;
  std::string out;
  std::size_t k = 10;
  std::vector<std::string> interval;
  std::vector<std::string> xs;
  std::string kind;
  std::size_t n = 0;
  std::size_t count = 16;
  std::string set = "canonical";
  std::string open, c0, c1;
  std::vector<unsigned> depths;
  bool plot = false;
  std::uint64_t seed = selftest::kDefaultSeed;
};

struct Command {
  std::string name;
  std::function<Json(const Options&, const Oracle&)> run;
};

std::pair<Rational, Rational> interval_of(const Options& o) {
  if (o.interval.size() != 2) throw UsageError("--interval takes two endpoints");
  return {parse_rational(o.interval[0]), parse_rational(o.interval[1])};
}

Point single_x(const Options& o) {
  if (o.xs.size() != 1) throw UsageError("--x takes one point");
  return parse_point(o.xs[0]);
}

Json modulus_result(const NaturalModulus& m, const Point& x, std::size_t k) {
  auto v = m(x, k);
  return Json{{"modulus", m.name}, {"value", v ? Json(*v) : Json(nullptr)}};
}

std::vector<Command> commands() {
  return {
      {"eval",
       [](const Options& o, const Oracle&) -> Json {
         SymbolicFn f = load_fn(o.fn);
         if (o.plot) {
           for (auto& r : rational_grid(Interval<Rational>{0, 1}, o.resolution)) {
             Surd v = f(Surd(r));
             std::cout << to_string(r) << ',' << v.str() << ',' << Surd(r).to_double() << ',' << v.to_double() << '\n';
           }
           return nullptr;
         }
         Json values = Json::array();
         for (auto& x : o.xs) {
           Point p = parse_point(x);
           values.push_back(Json{{"x", to_json(p)}, {"value", to_json(f(p))}});
         }
         return Json{{"function", to_json(f)}, {"tags", to_json(f.tags())}, {"values", values}};
       }},
      {"sup",
       [](const Options& o, const Oracle& oracle) -> Json {
         SymbolicFn f = load_fn(o.fn);
         auto [p, q] = interval_of(o);
         bool b1 = f.as<node::Baire1Limit>() != nullptr;
         DyadicInterval i = b1 ? sup_baire1(f, p, q, o.k, oracle) : sup_qc(f, p, q, o.k, oracle);
         return Json{{"method", b1 ? "sup_baire1" : "sup_qc"}, {"interval", to_json(i)}};
       }},
      {"inf",
       [](const Options& o, const Oracle& oracle) -> Json {
         SymbolicFn f = load_fn(o.fn);
         auto [p, q] = interval_of(o);
         bool b1 = f.as<node::Baire1Limit>() != nullptr;
         DyadicInterval i = b1 ? inf_baire1(f, p, q, o.k, oracle) : inf_usco(f, p, q, o.k, oracle);
         return Json{{"method", b1 ? "inf_baire1" : "inf_usco"}, {"interval", to_json(i)}};
       }},
      {"osc",
       [](const Options& o, const Oracle& oracle) -> Json {
         SymbolicFn f = load_fn(o.fn);
         Point x = single_x(o);
         return Json{{"x", to_json(x)}, {"interval", to_json(osc_point(f, x, o.k, oracle))}};
       }},
      {"continuity",
       [](const Options& o, const Oracle& oracle) -> Json {
         SymbolicFn f = load_fn(o.fn);
         Point x = single_x(o);
         return Json{{"x", to_json(x)}, {"continuous", to_json(is_continuous_at(f, x, oracle))}};
       }},
      {"modulus",
       [](const Options& o, const Oracle& oracle) -> Json {
         SymbolicFn f = load_fn(o.fn);
         Point x = single_x(o);
         const std::string kind = o.kind.empty() ? "continuity" : o.kind;
         Json out{{"kind", kind}, {"x", to_json(x)}, {"k", o.k}};
         if (kind == "continuity") out["result"] = modulus_result(modulus_continuity_qc(f, oracle.budget()), x, o.k);
         else if (kind == "regulation") out["result"] = modulus_result(modulus_regulation(f, oracle.budget()), x, o.k);
         else if (kind == "lsco") out["result"] = modulus_result(lsco_modulus_on_Cf(f, oracle.budget()), x, o.k);
         else if (kind == "qc") out["result"] = Json{{"interval", to_json(modulus_qc(f, x, o.k, o.n, oracle))}, {"N", o.n}};
         else throw UsageError("--kind must be continuity, qc, regulation or lsco");
         return out;
       }},
      {"point-of-continuity",
       [](const Options& o, const Oracle& oracle) -> Json {
         SymbolicFn f = load_fn(o.fn);
         if (f.tags().any_of({ClassTag::QuasiContinuous, ClassTag::RationalSupported}) || !f.has(ClassTag::Usco))
           return Json{{"method", "qc"}, {"point", to_json(point_of_continuity_qc(f, o.k, oracle))}};
         auto a = f.countable_set();
         UscoModulus psi = a ? penny_usco_modulus(*a) : constant_usco_modulus();
         return Json{{"method", "usco"},
                     {"usco_modulus", psi.name},
                     {"point", to_json(point_of_continuity_usco(f, psi, o.k, oracle))}};
       }},
      {"cousin",
       [](const Options& o, const Oracle&) -> Json {
         SymbolicFn psi = load_fn(o.fn);
         std::string kind = o.kind.empty() ? (psi.has(ClassTag::QuasiContinuous) ? "qc" : "lsco") : o.kind;
         ClassTag cls = kind == "qc" ? ClassTag::QuasiContinuous : kind == "lsco" ? ClassTag::Lsco : ClassTag::Cliquish;
         if (cls == ClassTag::Cliquish) throw UsageError("--kind must be qc or lsco");
         return to_json(cousin_subcover(psi, cls));
       }},
      {"limits",
       [](const Options& o, const Oracle& oracle) -> Json {
         SymbolicFn f = load_fn(o.fn);
         Point x = single_x(o);
         return Json{{"x", to_json(x)}, {"limits", to_json(limits_lr(f, x, o.k, oracle))}};
       }},
      {"jumps",
       [](const Options& o, const Oracle& oracle) -> Json {
         SymbolicFn f = load_fn(o.fn);
         Json out = Json::array();
         for (auto& p : jump_enum(f, o.count, oracle)) out.push_back(to_json(p));
         return Json{{"jumps", out}};
       }},
      {"variation",
       [](const Options& o, const Oracle& oracle) -> Json {
         SymbolicFn f = load_fn(o.fn);
         Point x = o.xs.empty() ? Surd(1) : single_x(o);
         return Json{{"x", to_json(x)}, {"interval", to_json(total_variation_nbv(f, x, o.k, oracle))}};
       }},
      {"jordan",
       [](const Options& o, const Oracle& oracle) -> Json {
         SymbolicFn f = load_fn(o.fn);
         JordanPair gh = jordan_nbv(f, oracle.budget());
         std::vector<Point> xs;
         for (auto& x : o.xs) xs.push_back(parse_point(x));
         if (xs.empty())
           for (auto& r : rational_grid(Interval<Rational>{0, 1}, 4)) xs.emplace_back(r);
         Json rows = Json::array();
         for (auto& x : xs)
           rows.push_back(Json{{"x", to_json(x)}, {"f", to_json(f(x))}, {"g", to_json(gh.g(x))}, {"h", to_json(gh.h(x))}});
         return Json{{"rows", rows}};
       }},
      {"rm-code",
       [](const Options& o, const Oracle& oracle) -> Json {
         if (o.open.empty()) throw UsageError("--open is required");
         R2Rep open = r2_from_json(load_json(o.open));
         SymbolicFn rep = baire1_open_indicator(open, true);
         return Json{{"open", to_json(open)}, {"code", to_json(rm_code_from_r2_baire1(open, rep, o.count, oracle))}};
       }},
      {"separator",
       [](const Options& o, const Oracle&) -> Json {
         if (o.c0.empty() || o.c1.empty()) throw UsageError("--c0 and --c1 are required");
         SymbolicFn f = usco_separator(closed_from_json(load_json(o.c0)), closed_from_json(load_json(o.c1)));
         Json values = Json::array();
         for (auto& x : o.xs) {
           Point p = parse_point(x);
           values.push_back(Json{{"x", to_json(p)}, {"value", to_json(f(p))}});
         }
         return Json{{"function", to_json(f)}, {"tags", to_json(f.tags())}, {"values", values}};
       }},
      {"realiser",
       [](const Options& o, const Oracle&) -> Json {
         CountableSet a = load_set(o.set);
         const std::string via = o.kind.empty() ? "sup" : o.kind;
         RealiserResult r = via == "sup"          ? realiser_from_sup(exact_sup_oracle(), a, o.k)
                            : via == "cliq"       ? realiser_from_cliq_modulus(canonical_cliq_modulus(a), a, o.k)
                            : via == "regulation" ? realiser_from_regulation_modulus(penny_regulation_modulus(a), a, o.k)
                                                  : throw UsageError("--kind must be sup, cliq or regulation");
         return Json{{"via", via}, {"set", to_json(a)}, {"result", to_json(r)}};
       }},
      {"demo-abyss",
       [](const Options& o, const Oracle&) -> Json {
         std::string family = o.kind.empty() ? "penny" : o.kind;
         CountableSet a = load_set(o.set);
         SymbolicFn f = family == "penny"         ? build_penny(a)
                        : family == "tilde-penny" ? build_tilde(a).second
                                                  : throw UsageError("--family must be penny or tilde-penny");
         std::vector<unsigned> depths = o.depths.empty() ? std::vector<unsigned>{8, 16, 24} : o.depths;
         return to_json(demo_abyss(f, depths));
       }},
  };
}

int fail(int code, Json error) {
  std::cout << Json{{"schema", kSchema}, {"error", std::move(error)}}.dump(2) << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on discontinuous functions of [0,1]"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::string> trace;
  std::function<Json(const Options&, const Oracle&)> chosen;
  std::string chosen_name;
  bool selftest_run = false;

  for (auto& cmd : commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, "");
    sub->add_option("--fn", o.fn, "function: a name, inline JSON or @file");
    sub->add_option("--fuel", o.fuel, "fuel bound for searches")->envname("ABYSS_FUEL")->check(CLI::PositiveNumber);
    sub->add_option("--resolution", o.resolution, "extra dyadic depth of probe grids")->check(CLI::PositiveNumber);
    sub->add_flag("--trace", o.trace, "include the oracle query log");
    sub->add_option("--out", o.out, "write the JSON here instead of stdout");
    sub->add_option("--k", o.k, "precision: output width 2^-k")->check(CLI::PositiveNumber);
    sub->add_option("--interval", o.interval, "endpoints p q")->expected(2);
    sub->add_option("--x", o.xs, "point(s): p/q or a+b*sqrt2");
    sub->add_option("--kind,--family,--via", o.kind, "variant of the operation");
    sub->add_option("--n", o.n, "ball exponent N");
    sub->add_option("--count,--max-index", o.count, "number of items to produce");
    sub->add_option("--set", o.set, "countable set: canonical, inline JSON or @file");
    sub->add_option("--open", o.open, "open set as R2 components (JSON)");
    sub->add_option("--c0", o.c0, "first closed set (JSON)");
    sub->add_option("--c1", o.c1, "second closed set (JSON)");
    sub->add_option("--depth", o.depths, "grid depth(s)");
    if (cmd.name == "eval") sub->add_flag("--plot-data", o.plot, "CSV of x, f(x) on the dyadic grid of depth --resolution");
    sub->callback([&, cmd] {
      chosen = cmd.run;
      chosen_name = cmd.name;
    });
  }
  CLI::App* st = app.add_subcommand("selftest", "run the acceptance suite");
  st->add_option("--seed", o.seed, "seed of the random instances");
  st->add_option("--out", o.out, "write the transcript here instead of stdout");
  st->callback([&] { selftest_run = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  auto emit = [&](const Json& doc) {
    if (o.out.empty()) {
      std::cout << doc.dump(2) << '\n';
      return;
    }
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot write '" + o.out + "'");
    f << doc.dump(2) << '\n';
  };

  try {
    if (selftest_run) {
      selftest::Report r = selftest::run(o.seed);
      emit(r.transcript());
      for (auto& c : r.criteria) std::cerr << "criterion " << c.id << ": " << (c.pass ? "pass" : "FAIL") << '\n';
      return r.all_pass() ? 0 : 1;
    }
    Budget budget{o.fuel, o.resolution};
    if (o.trace) budget.trace = [&](const std::string& line) { trace.push_back(line); };
    Oracle oracle(budget);
    Json result = chosen(o, oracle);
    if (o.plot) return 0;
    Json doc{{"schema", kSchema}, {"command", chosen_name}, {"fuel", o.fuel}, {"k", o.k}, {"result", result}};
    if (o.trace) doc["trace"] = trace;
    emit(doc);
    return 0;
  } catch (const RefusedQuery& e) {
    return fail(2, Json{{"kind", "refused"},
                        {"required", e.required()},
                        {"rule", e.rule()},
                        {"anchor", rule_anchor(e.rule())},
                        {"message", e.what()}});
  } catch (const FuelExhausted& e) {
    return fail(3, Json{{"kind", "fuel-exhausted"}, {"best_so_far", e.best_so_far()}, {"message", e.what()}});
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return fail(1, Json{{"kind", "usage"}, {"message", e.what()}});
  } catch (const std::exception& e) {
    return fail(1, Json{{"kind", "error"}, {"message", e.what()}});
  }
}
