#pragma once

#include "morse_levels/homology/homology.hpp"
#include "morse_levels/levelset/grid.hpp"
#include "morse_levels/levelset/sweep.hpp"
#include "morse_levels/morserules/conformance.hpp"
#include "morse_levels/morserules/rules.hpp"

#include <json.hpp>

#include <string>

namespace morse_levels {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

}  // namespace detail

/// {"coeff": .., "dims": {"0": {"betti": b, "torsion": [..]}, ..}}
inline Json to_json(const HomologySummary& s) {
  Json dims = Json::object();
  for (std::size_t d = 0; d < s.dims.size(); ++d) {
    Json t = Json::array();
    for (const auto& x : s.dims[d].torsion) t.push_back(detail::integer_json(x));
    dims[std::to_string(d)] = Json{{"betti", s.dims[d].betti}, {"torsion", t}};
  }
  return Json{{"coeff", to_string(s.coeff)}, {"dims", dims}, {"text", to_string(s)}};
}

inline Json to_json(const SweepTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row{{"level", to_double(r.level)}, {"level_exact", to_string(r.level)}, {"cells", r.cells},
             {"homology", to_json(r.summary)}};
    if (r.flagged) row["flagged_mask_samples"] = r.flagged;
    rows.push_back(row);
  }
  return Json{{"coeff", to_string(t.coeff)}, {"mode", to_string(t.mode)}, {"rows", rows}, {"jumps", t.jumps}};
}

inline Json to_json(const CriticalPointRecord& p) {
  Json j{{"value", p.value}, {"index", p.index}, {"count", p.count}, {"non_degenerate", p.non_degenerate}};
  if (p.is_global_max) j["is_global_max"] = *p.is_global_max;
  return j;
}

inline Json to_json(const LevelPassQuery& q) {
  Json pts = Json::array();
  for (const auto& p : q.points) pts.push_back(to_json(p));
  Json j{{"m", q.m}, {"points", pts}, {"assumptions_hold", q.assumptions_hold}};
  if (q.bundle) {
    const auto& b = *q.bundle;
    Json bj{{"rank", b.rank},
            {"base_closed", b.base_closed},
            {"base_orientable", b.base_orientable},
            {"bundle_orientable", b.bundle_orientable},
            {"trivial_outside_disk", b.trivial_outside_disk},
            {"is_cotangent", b.is_cotangent}};
    if (b.euler_number) bj["euler_number"] = *b.euler_number;
    j["bundle"] = bj;
  }
  return j;
}

inline Json to_json(const Verdict& v) {
  Json j{{"outcome", to_string(v.outcome)}, {"rule", v.rule}, {"rules", v.rules}};
  if (v.witness) j["witness"] = *v.witness;
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

inline Json to_json(const ConformanceReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json j{{"row", e.row},
           {"lo", to_string(e.lo)},
           {"hi", to_string(e.hi)},
           {"status", to_string(e.status)},
           {"deltas", e.deltas}};
    if (e.index) j["index"] = *e.index;
    if (!e.violating_dims.empty()) j["violating_dims"] = e.violating_dims;
    if (!e.note.empty()) j["note"] = e.note;
    entries.push_back(j);
  }
  Json counts = Json::object();
  for (auto s : {ConformanceStatus::Regular, ConformanceStatus::Misaligned, ConformanceStatus::Unchecked,
                 ConformanceStatus::Exempt, ConformanceStatus::Conformant, ConformanceStatus::Violation})
    counts[to_string(s)] = r.count(s);
  return Json{{"m", r.m}, {"coeff", to_string(r.coeff)}, {"ok", r.ok()}, {"counts", counts}, {"entries", entries}};
}

inline Json to_json(const GridCriticalPoint& p) {
  Json j{{"x", p.position[0]}, {"y", p.position[1]}, {"value", p.value}, {"ring_changes", p.ring_changes},
         {"non_degenerate", p.non_degenerate}};
  if (p.index) j["index"] = *p.index;
  return j;
}

// ---------------------------------------------------------------------------
// Reading

/// Exact rational from a JSON integer, a string "p/q" or a decimal string.
/// Floating JSON numbers are taken at their binary value.
inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return from_double(j.get<double>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ValidationError("expected a number or a rational string, got " + j.dump());
}

inline CriticalPointRecord point_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("index")) throw ValidationError("critical point needs an 'index'");
  CriticalPointRecord p;
  p.value = j.contains("value") ? to_double(rational_from_json(j["value"])) : 0.0;
  p.index = j["index"].get<int>();
  p.count = j.value("count", 1);
  if (j.contains("is_global_max")) p.is_global_max = j["is_global_max"].get<bool>();
  p.non_degenerate = j.value("non_degenerate", true);
  return p;
}

inline LevelPassQuery query_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("points"))
    throw ValidationError("query needs 'm' and 'points'");
  LevelPassQuery q;
  q.m = j["m"].get<int>();
  for (const auto& p : j["points"]) q.points.push_back(point_from_json(p));
  q.assumptions_hold = j.value("assumptions_hold", true);
  if (j.contains("bundle")) {
    const auto& b = j["bundle"];
    BundleContext c;
    c.rank = b.at("rank").get<int>();
    c.base_closed = b.value("base_closed", false);
    c.base_orientable = b.value("base_orientable", false);
    c.bundle_orientable = b.value("bundle_orientable", false);
    c.trivial_outside_disk = b.value("trivial_outside_disk", false);
    c.is_cotangent = b.value("is_cotangent", false);
    if (b.contains("euler_number") && !b["euler_number"].is_null()) c.euler_number = b["euler_number"].get<long long>();
    q.bundle = c;
  }
  return q;
}

}  // namespace morse_levels
