#pragma once

#include "morse_levels/io/json.hpp"
#include "morse_levels/levelset/model_fields.hpp"
#include "morse_levels/mechanics/bundles.hpp"
#include "morse_levels/mechanics/handles.hpp"
#include "morse_levels/mechanics/pendulum.hpp"
#include "morse_levels/mechanics/reference.hpp"
#include "morse_levels/mechanics/rtbp.hpp"

#include <fstream>
#include <functional>
#include <string>
#include <vector>

#ifndef MORSE_LEVELS_VERSION
#define MORSE_LEVELS_VERSION "0.0.0"
#endif

namespace morse_levels {

struct ScenarioConfig {
  std::string kind;
  Json parameters = Json::object();
  std::vector<CoefficientSpec> coefficients;
  std::optional<Json> levels;
  std::string report_name = "report.json";
  Json raw;
};

inline const std::vector<std::string>& scenario_kinds() {
  static const std::vector<std::string> k{"reference", "pl_field", "grid", "bundle", "pendulum", "rtbp", "nbody"};
  return k;
}

inline ScenarioConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw ValidationError("config needs a string 'kind'");
  ScenarioConfig c;
  c.raw = j;
  c.kind = j["kind"].get<std::string>();
  if (std::find(scenario_kinds().begin(), scenario_kinds().end(), c.kind) == scenario_kinds().end())
    throw ValidationError("unknown scenario kind '" + c.kind + "'");
  if (j.contains("parameters")) {
    if (!j["parameters"].is_object()) throw ValidationError("'parameters' must be an object");
    c.parameters = j["parameters"];
  }
  if (j.contains("coefficients")) {
    for (const auto& s : j["coefficients"]) {
      if (!s.is_string()) throw ValidationError("coefficients must be strings such as \"Q\" or \"Fp:2\"");
      c.coefficients.push_back(parse_coefficient(s.get<std::string>()));
    }
  }
  if (c.coefficients.empty()) c.coefficients.push_back(CoefficientSpec::rationals());
  if (j.contains("levels")) {
    if (!j["levels"].is_array()) throw ValidationError("'levels' must be an array");
    c.levels = j["levels"];
  }
  if (j.contains("outputs") && j["outputs"].contains("report")) c.report_name = j["outputs"]["report"].get<std::string>();
  if (c.report_name.empty() || c.report_name.find('/') != std::string::npos)
    throw ValidationError("report name must be a plain file name");
  // kind-specific required parameters
  auto need = [&](const char* key) {
    if (!c.parameters.contains(key))
      throw ValidationError("kind '" + c.kind + "' needs parameter '" + std::string(key) + "'");
  };
  if (c.kind == "reference") need("name");
  if (c.kind == "grid") {
    need("shape");
    need("lower");
    need("upper");
    if (!c.levels) throw ValidationError("grid scenarios need explicit 'levels'");
  }
  if (c.kind == "bundle") need("base");
  if (c.kind == "rtbp") need("mu");
  if (c.kind == "nbody") need("n");
  if (c.kind == "pl_field" && !c.parameters.contains("model") && !c.parameters.contains("facets"))
    throw ValidationError("pl_field needs 'model' or 'facets' and 'values'");
  return c;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

struct RunOutput {
  Json report;
  std::vector<std::pair<std::string, std::string>> tables;  // file name, contents
};

namespace detail {

inline std::string coeff_file_tag(const CoefficientSpec& c) {
  auto s = to_string(c);
  std::replace(s.begin(), s.end(), ':', '_');
  return s;
}

inline std::vector<Rational> rational_list(const Json& j) {
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

inline PLScalarField pl_field_from(const Json& p) {
  if (p.contains("model")) {
    const auto model = p["model"].get<std::string>();
    if (model == "sphere") {
      const int m = p.value("m", 2);
      if (m < 1 || m > 8) throw ValidationError("sphere model needs 1 <= m <= 8");
      return sphere_height(m);
    }
    if (model == "torus") return torus_height(p.value("n", 8), p.value("m", 6), p.value("a", 3));
    if (model == "genus") {
      const int g = p.value("g", 2);
      if (g < 0 || g > 20) throw ValidationError("genus model needs 0 <= g <= 20");
      return genus_surface_height(g);
    }
    if (model == "rp2") return rp2_perfect_height();
    throw ValidationError("unknown pl_field model '" + model + "'");
  }
  if (!p.contains("values")) throw ValidationError("pl_field with 'facets' needs 'values'");
  std::vector<Simplex> facets;
  for (const auto& f : p["facets"]) facets.push_back(f.get<Simplex>());
  auto values = rational_list(p["values"]);
  return PLScalarField(SimplicialComplex(facets, static_cast<int>(values.size())), values, p.value("perturb", true));
}

inline std::vector<DeclaredLevel> declared_levels(const PLScalarField& f) {
  std::vector<DeclaredLevel> out;
  for (const auto& cv : critical_vertices(f)) {
    const bool nd = cv.type == VertexType::Critical;
    out.push_back({cv.value, {{to_double(cv.value), nd ? cv.index : 0, 1, std::nullopt, nd}}});
  }
  return out;
}

inline std::vector<Rational> field_levels(const ScenarioConfig& c, const PLScalarField& f) {
  return c.levels ? rational_list(*c.levels) : interleaving_levels(f.values());
}

inline Json field_json(const PLScalarField& f) {
  Json crit = Json::array();
  for (const auto& cv : critical_vertices(f)) {
    Json j{{"vertex", cv.vertex},
           {"value", to_string(cv.value)},
           {"type", cv.type == VertexType::Critical ? "critical" : "degenerate"}};
    if (cv.type == VertexType::Critical) j["index"] = cv.index;
    crit.push_back(j);
  }
  return Json{{"dimension", f.base().dimension()},
              {"vertices", f.base().vertex_count()},
              {"cells", f.cells().size()},
              {"critical_vertices", crit}};
}

inline SurfaceModel base_surface(const std::string& name) {
  if (name == "sphere") return sphere_surface();
  if (name == "disk") return disk_surface();
  if (name == "annulus") return annulus_surface();
  if (name == "torus") return make_surface(torus_seven_vertex());
  throw ValidationError("unknown bundle base '" + name + "' (sphere, torus, disk, annulus)");
}

inline CircleBundleModel bundle_from(const Json& p) {
  auto base = base_surface(p["base"].get<std::string>());
  if (base.closed()) return circle_bundle(base, p.value("euler", 0LL));
  if (p.contains("euler") && p["euler"].get<long long>() != 0)
    throw ValidationError("bundles over a base with boundary are trivialized; 'euler' must be 0");
  return collapsed_circle_bundle(base);
}

inline RtbpOptions rtbp_options(const Json& p) {
  RtbpOptions o;
  if (p.contains("window")) {
    o.lo = p["window"].at(0).get<double>();
    o.hi = p["window"].at(1).get<double>();
  }
  o.samples = p.value("samples", o.samples);
  o.mask_spacings = p.value("mask_spacings", o.mask_spacings);
  if (o.samples > 2000) throw ValidationError("rtbp samples above 2000 per axis are not supported");
  return o;
}

inline GridField grid_from(const Json& p) {
  auto shape = p["shape"].get<std::vector<std::size_t>>();
  auto lower = p["lower"].get<std::vector<double>>();
  auto upper = p["upper"].get<std::vector<double>>();
  if (shape.size() != lower.size() || shape.size() != upper.size() || shape.empty() || shape.size() > 3)
    throw ValidationError("grid needs matching 1-3 dimensional shape, lower and upper");
  std::size_t total = 1;
  for (auto s : shape) {
    if (s < 2) throw ValidationError("grid axes need at least 2 samples");
    total *= s;
  }
  if (total > 4'000'000) throw ValidationError("grid larger than 4e6 samples");
  if (p.contains("values")) {
    auto values = p["values"].get<std::vector<double>>();
    if (values.size() != total) throw ValidationError("grid 'values' has the wrong length");
    std::size_t i = 0;
    auto g = sample_grid(shape, lower, upper, [&](const std::vector<double>&) { return values[i++]; });
    if (p.contains("mask")) {
      auto mask = p["mask"].get<std::vector<int>>();
      if (mask.size() != total) throw ValidationError("grid 'mask' has the wrong length");
      g.mask.assign(mask.begin(), mask.end());
    }
    return g;
  }
  const auto fn = p.value("function", std::string("bowl"));
  std::function<double(const std::vector<double>&)> f;
  if (fn == "bowl")
    f = [](const std::vector<double>& x) {
      double s = 0;
      for (double v : x) s += v * v;
      return s;
    };
  else if (fn == "saddle" && shape.size() == 2)
    f = [](const std::vector<double>& x) { return x[0] * x[0] - x[1] * x[1]; };
  else if (fn == "monkey" && shape.size() == 2)
    f = [](const std::vector<double>& x) { return x[0] * x[0] * x[0] - 3 * x[0] * x[1] * x[1]; };
  else
    throw ValidationError("unknown grid function '" + fn + "' (bowl, saddle, monkey)");
  return sample_grid(shape, lower, upper, f);
}

inline std::vector<Rational> pendulum_energies(const ScenarioConfig& c) {
  if (c.parameters.contains("energies")) return rational_list(c.parameters["energies"]);
  if (c.levels) return rational_list(*c.levels);
  auto crit = pendulum_critical();
  return {(crit[0].value + crit[1].value) / 2, (crit[1].value + crit[2].value) / 2, crit[2].value + 1};
}

inline QuadraticPotential pendulum_potential(const Json& p) {
  QuadraticPotential v;
  if (p.contains("a")) v.a = rational_from_json(p["a"]);
  if (p.contains("b")) v.b = rational_from_json(p["b"]);
  return v;
}

// A coefficient system in which two summaries differ, preferring the witness.
inline Json witness_check(const CellComplex& below, const CellComplex& above, const std::optional<std::string>& witness) {
  std::vector<CoefficientSpec> order;
  if (witness) {
    try {
      order.push_back(parse_coefficient(*witness));
    } catch (const ValidationError&) {
    }
  }
  for (auto c : {CoefficientSpec::rationals(), CoefficientSpec::prime_field(2), CoefficientSpec::integers()})
    order.push_back(c);
  for (const auto& c : order) {
    auto a = homology(below, c), b = homology(above, c);
    if (!(a == b)) return Json{{"coeff", to_string(c)}, {"below", to_json(a)}, {"above", to_json(b)}, {"differ", true}};
  }
  return Json{{"differ", false}};
}

inline Json pendulum_level_json(const PendulumLevel& l, const std::vector<CoefficientSpec>& coeffs) {
  Json h = Json::array();
  for (const auto& c : coeffs) h.push_back(to_json(homology(l.level.complex, c)));
  return Json{{"energy", to_string(l.h)}, {"region", l.region}, {"z_range", {l.z_lo, l.z_hi}},
              {"model", l.model},       {"cells", l.level.complex.size()}, {"homology", h}};
}

inline Json pendulum_verdicts(const QuadraticPotential& v, const std::string& which) {
  auto crit = pendulum_critical(v);
  Json out = Json::array();
  for (int i = 0; i < 2; ++i) {
    if (which == "lower" && i != 0) continue;
    if (which == "upper" && i != 1) continue;
    const auto& c = crit[static_cast<std::size_t>(i + 1)];
    auto q = pendulum_query(i, v);
    auto verdict_i = verdict(q);
    // level models on either side of this maximum
    const Rational below = (crit[static_cast<std::size_t>(i)].value + c.value) / 2;
    const Rational above = i == 0 ? Rational((c.value + crit[2].value) / 2) : Rational(c.value + 1);
    auto lb = pendulum_level(below, v), la = pendulum_level(above, v);
    Json j{{"critical", {{"kind", c.kind}, {"z", to_string(c.z)}, {"value", to_string(c.value)}}},
           {"query", to_json(q)},
           {"verdict", to_json(verdict_i)},
           {"below", {{"energy", to_string(below)}, {"model", lb.model}}},
           {"above", {{"energy", to_string(above)}, {"model", la.model}}}};
    if (verdict_i.outcome == Outcome::MustChange)
      j["witness_check"] = witness_check(lb.level.complex, la.level.complex, verdict_i.witness);
    out.push_back(j);
  }
  return out;
}

inline Json envelope(const std::string& sub, const Json& input) {
  return Json{{"schema", 1}, {"tool", "morse-levels"}, {"version", MORSE_LEVELS_VERSION}, {"subcommand", sub},
              {"input", input}};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// sweep

inline RunOutput run_sweep(const ScenarioConfig& c) {
  RunOutput out;
  out.report = detail::envelope("sweep", c.raw);
  out.report["kind"] = c.kind;
  const auto& p = c.parameters;
  Json tables = Json::array();
  auto add_table = [&](const SweepTable& t, const std::string& stem) {
    tables.push_back(to_json(t));
    const auto tag = stem + "_" + detail::coeff_file_tag(t.coeff);
    out.tables.push_back({tag + ".csv", to_csv(t)});
    for (int d = 0; d <= t.max_dim(); ++d) out.tables.push_back({tag + "_b" + std::to_string(d) + ".dat", to_gnuplot(t, d)});
  };

  if (c.kind == "pl_field") {
    auto f = detail::pl_field_from(p);
    const auto mode = p.value("mode", std::string("level"));
    if (mode != "level" && mode != "sublevel") throw ValidationError("mode must be 'level' or 'sublevel'");
    auto levels = detail::field_levels(c, f);
    out.report["field"] = detail::field_json(f);
    for (const auto& coeff : c.coefficients)
      add_table(sweep(f, levels, coeff, mode == "level" ? SweepMode::Level : SweepMode::Sublevel), "sweep");
  } else if (c.kind == "grid") {
    auto g = detail::grid_from(p);
    auto levels = c.levels->get<std::vector<double>>();
    if (g.dimension() == 2) {
      Json crit = Json::array();
      for (const auto& q : detect_grid_critical_points(g)) crit.push_back(to_json(q));
      out.report["critical_points"] = crit;
    }
    for (const auto& coeff : c.coefficients) add_table(sweep(g, levels, coeff), "sweep");
  } else if (c.kind == "rtbp") {
    auto s = rtbp_potential(p["mu"].get<double>(), detail::rtbp_options(p));
    Json eq = Json::array();
    for (const auto& e : s.equilibria) {
      Json j{{"name", e.name}, {"x", e.x}, {"y", e.y}, {"value", e.value}, {"index", e.index}};
      if (e.detected) {
        j["detected"] = to_json(*e.detected);
        j["distance_spacings"] = e.distance;
      }
      eq.push_back(j);
    }
    out.report["equilibria"] = eq;
    out.report["warnings"] = s.warnings;
    out.report["grid"] = {{"samples", s.options.samples},
                          {"window", {s.options.lo, s.options.hi}},
                          {"spacing", s.spacing()},
                          {"mask", "samples within " + std::to_string(s.options.mask_spacings) +
                                       " spacings of a primary are excluded (punctures)"}};
    auto levels = c.levels ? c.levels->get<std::vector<double>>() : rtbp_levels(s);
    for (const auto& coeff : c.coefficients) add_table(sweep(s.grid, levels, coeff), "sweep");
  } else if (c.kind == "pendulum") {
    auto v = detail::pendulum_potential(p);
    Json rows = Json::array();
    for (const auto& h : detail::pendulum_energies(c))
      rows.push_back(detail::pendulum_level_json(pendulum_level(h, v), c.coefficients));
    Json crit = Json::array();
    for (const auto& k : pendulum_critical(v))
      crit.push_back({{"kind", k.kind}, {"z", to_string(k.z)}, {"value", to_string(k.value)}});
    out.report["critical"] = crit;
    out.report["levels"] = rows;
  } else if (c.kind == "reference") {
    Json items = Json::array();
    std::vector<std::string> names{p["name"].get<std::string>()};
    if (p.contains("compare")) names.push_back(p["compare"].get<std::string>());
    for (const auto& n : names) {
      auto r = reference_complex(n);
      Json h = Json::array();
      for (const auto& coeff : c.coefficients) h.push_back(to_json(homology(r.complex, coeff)));
      items.push_back({{"name", n},
                       {"cells", r.complex.size()},
                       {"expected", to_json(r.expected)},
                       {"matches_expected", homology_integral(r.complex) == r.expected},
                       {"homology", h}});
    }
    out.report["complexes"] = items;
    if (names.size() == 2) {
      Json cmp = Json::array();
      auto a = reference_complex(names[0]).complex, b = reference_complex(names[1]).complex;
      for (const auto& coeff : c.coefficients)
        cmp.push_back({{"coeff", to_string(coeff)},
                       {"equal_summaries", homology(a, coeff) == homology(b, coeff)},
                       {"equal_betti", homology(a, coeff).betti_vector() == homology(b, coeff).betti_vector()}});
      out.report["comparison"] = cmp;
    }
  } else if (c.kind == "bundle") {
    auto b = detail::bundle_from(p);
    Json h = Json::array();
    for (const auto& coeff : c.coefficients) h.push_back(to_json(homology(b.complex, coeff)));
    out.report["bundle"] = {{"base", p["base"]}, {"euler", b.euler}, {"collapsed", b.collapsed}, {"cells", b.complex.size()}};
    out.report["homology"] = h;
    for (std::size_t v = 0; v < b.fiber_cell.size(); ++v)
      if (b.fiber_cell[v] != CircleBundleModel::npos) {
        auto order = cycle_class_order(b.complex, b.fiber_cycle(static_cast<int>(v)));
        out.report["fiber_order"] = order ? Json(detail::integer_json(*order)) : Json("infinite");
        break;
      }
  } else {
    throw ValidationError("kind '" + c.kind + "' is verdict-only: the reduced manifold has no complex model");
  }
  if (!tables.empty()) out.report["tables"] = tables;
  return out;
}

// ---------------------------------------------------------------------------
// verdict

inline RunOutput run_verdict(const ScenarioConfig& c) {
  RunOutput out;
  out.report = detail::envelope("verdict", c.raw);
  out.report["kind"] = c.kind;
  const auto& p = c.parameters;
  Json items = Json::array();
  auto add = [&](const std::string& label, const LevelPassQuery& q) {
    items.push_back({{"label", label}, {"query", to_json(q)}, {"verdict", to_json(verdict(q))}});
  };
  if (p.contains("query")) {
    add("query", query_from_json(p["query"]));
  } else if (c.kind == "pendulum") {
    const auto which = p.value("maximum", std::string("both"));
    if (which != "both" && which != "lower" && which != "upper")
      throw ValidationError("pendulum 'maximum' must be lower, upper or both");
    out.report["maxima"] = detail::pendulum_verdicts(detail::pendulum_potential(p), which);
  } else if (c.kind == "rtbp") {
    auto s = rtbp_potential(p["mu"].get<double>(), detail::rtbp_options(p));
    add("L1", rtbp_query(s, 0));
    add("L2", rtbp_query(s, 1));
    add("L3", rtbp_query(s, 2));
    add("L4+L5", rtbp_query(s, 3));
  } else if (c.kind == "nbody") {
    const int n = p["n"].get<int>();
    out.report["note"] = "verdict only: the reduced planar " + std::to_string(n) + "-body manifold has dimension " +
                         std::to_string(4 * n - 6) + " and no complex model is built";
    if (p.contains("index")) {
      add("index " + std::to_string(p["index"].get<int>()), nbody_query(n, p["index"].get<int>(), p.value("pair", false)));
    } else {
      for (int k = 0; k <= 2 * n - 4; ++k) add("index " + std::to_string(k), nbody_query(n, k, p.value("pair", false)));
    }
  } else if (c.kind == "pl_field") {
    auto f = detail::pl_field_from(p);
    for (const auto& d : detail::declared_levels(f)) {
      LevelPassQuery q;
      q.m = f.base().dimension();
      q.points = d.points;
      add("level " + to_string(d.value), q);
    }
  } else {
    throw ValidationError("kind '" + c.kind + "' needs a 'query' parameter for verdicts");
  }
  if (!items.empty()) out.report["verdicts"] = items;
  return out;
}

// ---------------------------------------------------------------------------
// conformance

inline RunOutput run_conformance(const ScenarioConfig& c) {
  if (c.kind != "pl_field") throw ValidationError("conformance checks need a pl_field scenario");
  RunOutput out;
  out.report = detail::envelope("conformance", c.raw);
  out.report["kind"] = c.kind;
  auto f = detail::pl_field_from(c.parameters);
  const int m = c.parameters.value("manifold_dim", f.base().dimension());
  auto levels = detail::field_levels(c, f);
  auto declared = detail::declared_levels(f);
  out.report["field"] = detail::field_json(f);
  Json reports = Json::array(), sub = Json::array();
  bool ok = true;
  for (const auto& coeff : c.coefficients) {
    auto t = sweep(f, levels, coeff);
    out.tables.push_back({"sweep_" + detail::coeff_file_tag(coeff) + ".csv", to_csv(t)});
    auto rep = check_conformance(t, declared, m);
    ok = ok && rep.ok();
    reports.push_back(to_json(rep));
    if (coeff.is_field()) {
      std::size_t held = 0, total = 0;
      Json failures = Json::array();
      for (const auto& pc : sublevel_subadditivity(f, levels, coeff)) {
        ++total;
        if (pc.result.holds)
          ++held;
        else
          failures.push_back({{"lo", to_string(pc.lo)}, {"hi", to_string(pc.hi)}, {"difference", pc.result.difference}});
      }
      ok = ok && held == total;
      sub.push_back({{"coeff", to_string(coeff)}, {"pairs", total}, {"holding", held}, {"failures", failures}});
    }
  }
  out.report["conformance"] = reports;
  out.report["subadditivity"] = sub;
  out.report["ok"] = ok;
  return out;
}

// ---------------------------------------------------------------------------
// examples

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> n{"rp2-no-change", "handles", "pendulum", "euler", "lens-vs-s2xs1", "rtbp"};
  return n;
}

inline RunOutput run_example(const std::string& name) {
  RunOutput out;
  out.report = detail::envelope("example", Json{{"example", name}});
  Json& r = out.report;
  if (name == "rp2-no-change") {
    auto f = rp2_perfect_height();
    auto crit = critical_vertices(f);
    Rational mid;
    for (const auto& cv : crit)
      if (cv.type == VertexType::Critical && cv.index == 1) mid = cv.value;
    const Rational below = (crit.front().value + mid) / 2, above = (mid + crit.back().value) / 2;
    Json sides = Json::array();
    bool equal = true;
    for (const auto& coeff : {CoefficientSpec::prime_field(2), CoefficientSpec::integers()}) {
      auto a = homology(slice(f, below), coeff), b = homology(slice(f, above), coeff);
      equal = equal && a == b;
      sides.push_back({{"coeff", to_string(coeff)}, {"below", to_json(a)}, {"above", to_json(b)}, {"equal", a == b}});
    }
    LevelPassQuery q;
    q.m = 2;
    q.points.push_back({to_double(mid), 1, 1, std::nullopt, true});
    r["field"] = detail::field_json(f);
    r["critical_value"] = to_string(mid);
    r["levels"] = {to_string(below), to_string(above)};
    r["summaries"] = sides;
    r["equal_summaries"] = equal;
    r["query"] = to_json(q);
    r["verdict"] = to_json(verdict(q));
  } else if (name == "handles") {
    Json items = Json::array();
    for (const auto& h : handle_examples()) {
      auto deltas = handle_deltas(h, CoefficientSpec::rationals());
      items.push_back({{"name", h.name},
                       {"k", h.k},
                       {"m", h.m},
                       {"before", to_json(homology_integral(h.before))},
                       {"after", to_json(homology_integral(h.after))},
                       {"deltas", deltas},
                       {"allowed", allowed_deltas(h.k, h.m).contains(deltas)}});
    }
    r["handles"] = items;
  } else if (name == "pendulum") {
    Json levels = Json::array();
    for (auto h : {Rational(1, 4), Rational(1), Rational(2)})
      levels.push_back(detail::pendulum_level_json(pendulum_level(h), {CoefficientSpec::integers()}));
    r["levels"] = levels;
    r["maxima"] = detail::pendulum_verdicts(QuadraticPotential{}, "both");
  } else if (name == "euler") {
    Json items = Json::array();
    auto cap = latitude_surface(-1, 0.5);
    const auto below = collapsed_circle_bundle(cap);
    for (long long e : {0LL, 1LL, 2LL, 3LL}) {
      auto b = circle_bundle(sphere_surface(), e);
      auto order = cycle_class_order(b.complex, b.fiber_cycle(0));
      LevelPassQuery q;
      q.m = 4;
      q.points.push_back({1, 2, 1, true, true});
      q.bundle = BundleContext{2, true, true, true, e, false, false};
      auto v = verdict(q);
      Json j{{"euler", e},
             {"fiber_order", order ? Json(detail::integer_json(*order)) : Json("infinite")},
             {"below", to_json(homology_integral(below.complex))},
             {"above", to_json(homology_integral(b.complex))},
             {"query", to_json(q)},
             {"verdict", to_json(v)}};
      if (v.outcome == Outcome::MustChange) j["witness_check"] = detail::witness_check(below.complex, b.complex, v.witness);
      items.push_back(j);
    }
    r["bundles"] = items;
  } else if (name == "lens-vs-s2xs1") {
    auto a = reference_complex("lens(4)").complex, b = reference_complex("s2xs1").complex;
    auto za = homology_integral(a), zb = homology_integral(b);
    auto fa = homology(a, CoefficientSpec::prime_field(2)), fb = homology(b, CoefficientSpec::prime_field(2));
    r["integral"] = {{"lens(4)", to_json(za)}, {"s2xs1", to_json(zb)}, {"equal", za == zb}};
    r["f2"] = {{"lens(4)", to_json(fa)}, {"s2xs1", to_json(fb)}, {"equal_betti", fa.betti_vector() == fb.betti_vector()}};
  } else if (name == "rtbp") {
    ScenarioConfig c;
    c.kind = "rtbp";
    c.parameters = Json{{"mu", 0.2}};
    c.coefficients = {CoefficientSpec::rationals()};
    c.raw = Json{{"kind", "rtbp"}, {"parameters", c.parameters}};
    auto s = run_sweep(c);
    r["equilibria"] = s.report["equilibria"];
    r["warnings"] = s.report["warnings"];
    r["tables"] = s.report["tables"];
    r["verdicts"] = run_verdict(c).report["verdicts"];
    out.tables = s.tables;
  } else {
    std::string known;
    for (const auto& n : example_names()) known += (known.empty() ? "" : ", ") + n;
    throw ValidationError("unknown example '" + name + "' (known: " + known + ")");
  }
  return out;
}

}  // namespace morse_levels
