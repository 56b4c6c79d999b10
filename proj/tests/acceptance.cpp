// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fails.

#include "property_checks.hpp"

#include "morse_levels/levelset/model_fields.hpp"
#include "morse_levels/levelset/sweep.hpp"
#include "morse_levels/mechanics/bundles.hpp"
#include "morse_levels/mechanics/handles.hpp"
#include "morse_levels/mechanics/pendulum.hpp"
#include "morse_levels/mechanics/reference.hpp"
#include "morse_levels/mechanics/rtbp.hpp"
#include "morse_levels/morserules/conformance.hpp"
#include "morse_levels/morserules/rules.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

namespace {

struct Result {
  std::vector<std::string> failures;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string join(const std::vector<long long>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

const CoefficientSpec kQ = CoefficientSpec::rationals();
const CoefficientSpec kZ = CoefficientSpec::integers();
const CoefficientSpec kF2 = CoefficientSpec::prime_field(2);

// 1
Result rp2_no_change() {
  Result o;
  auto f = rp2_perfect_height();
  auto crit = critical_vertices(f);
  std::optional<Rational> mid;
  int critical = 0;
  for (const auto& cv : crit) {
    critical += cv.type == VertexType::Critical;
    if (cv.type == VertexType::Critical && cv.index == 1) mid = cv.value;
  }
  o.expect(critical == 3, "expected three critical vertices");
  o.expect(mid.has_value(), "no index-1 vertex");
  if (!mid) return o;
  const Rational below = (crit.front().value + *mid) / 2, above = (*mid + crit.back().value) / 2;
  for (const auto& coeff : {kF2, kZ}) {
    auto a = homology(slice(f, below), coeff), b = homology(slice(f, above), coeff);
    o.expect(a == b, "slices differ over " + to_string(coeff));
    o.expect(a.betti_vector() == std::vector<std::size_t>{1, 1}, "slice below is not a circle over " + to_string(coeff));
    o.expect(b.betti_vector() == std::vector<std::size_t>{1, 1}, "slice above is not a circle over " + to_string(coeff));
    o.expect(a.torsion(0).empty() && a.torsion(1).empty(), "torsion in the slice");
  }
  LevelPassQuery q;
  q.m = 2;
  q.points.push_back({to_double(*mid), 1, 1, std::nullopt, true});
  auto v = verdict(q);
  o.expect(v.outcome == Outcome::MayNotChange, "verdict is " + to_string(v.outcome));
  o.detail = "b=(1,1) both sides over F2 and Z, verdict " + to_string(v.outcome) + " (" + v.rule + ")";
  return o;
}

// 2
Result handle_deltas_match() {
  Result o;
  const std::vector<std::pair<int, long long>> expect{{1, 2}, {1, 1}, {0, -1}};
  auto hs = handle_examples();
  o.expect(hs.size() == 3, "expected three handle examples");
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < hs.size() && i < 3; ++i) {
    auto d = handle_deltas(hs[i], kQ);
    auto dz = betti_deltas(homology_integral(hs[i].before), homology_integral(hs[i].after));
    const auto [l, want] = expect[i];
    const long long got = l < static_cast<int>(d.size()) ? d[static_cast<std::size_t>(l)] : 0;
    o.expect(got == want, hs[i].name + ": j" + std::to_string(l) + " = " + std::to_string(got));
    o.expect(d == dz, hs[i].name + ": deltas over Q and Z differ");
    o.expect(allowed_deltas(hs[i].k, hs[i].m).contains(d), hs[i].name + ": deltas outside the allowed set");
    parts.push_back(hs[i].name + " j=(" + join(d) + ")");
  }
  for (const auto& p : parts) o.detail += (o.detail.empty() ? "" : "; ") + p;
  return o;
}

// 3
Result pendulum_trichotomy() {
  Result o;
  const std::vector<std::pair<Rational, std::vector<long long>>> cases{
      {Rational(0), {}}, {Rational(1), {}}, {Rational(2), {2}}};
  const std::vector<std::size_t> b1{1, 0, 0};
  const std::vector<std::string> models{"S2xS1", "S3", "RP3"};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto lv = pendulum_level(cases[i].first);
    auto h = homology_integral(lv.level.complex);
    std::vector<long long> tors;
    for (const auto& t : h.torsion(1)) tors.push_back(static_cast<long long>(t));
    o.expect(lv.model == models[i], "level " + to_string(cases[i].first) + " modelled as " + lv.model);
    o.expect(h.betti(1) == b1[i] && tors == cases[i].second, "H1 of " + models[i] + " is " + to_string(h));
  }
  auto lower = verdict(pendulum_query(0)), upper = verdict(pendulum_query(1));
  o.expect(lower.outcome == Outcome::MustChange, "local maximum verdict " + to_string(lower.outcome));
  o.expect(upper.outcome == Outcome::MustChange, "global maximum verdict " + to_string(upper.outcome));
  o.expect(upper.witness && *upper.witness == "Zk:2", "top witness " + upper.witness.value_or("none"));
  if (upper.witness) {
    auto coeff = parse_coefficient(*upper.witness);
    auto cap = homology(pendulum_level(Rational(1)).level.complex, coeff);
    auto full = homology(pendulum_level(Rational(2)).level.complex, coeff);
    o.expect(!(cap == full), "witness coefficient does not separate the two sides");
  }
  o.detail = "H1 = Z, 0, Z2; maxima " + to_string(lower.outcome) + "/" + to_string(upper.outcome) +
             ", top witness " + upper.witness.value_or("none");
  return o;
}

// 4
Result euler_trichotomy() {
  Result o;
  auto below = collapsed_circle_bundle(latitude_surface(-1, 0.5));
  const auto s3 = integral_summary({1, 0, 0, 1});
  o.expect(homology_integral(below.complex) == s3, "collapsed cap bundle is not S3");
  std::vector<std::string> parts;
  for (long long e : {0LL, 1LL, -1LL, 2LL, 3LL}) {
    auto b = circle_bundle(sphere_surface(), e);
    auto order = cycle_class_order(b.complex, b.fiber_cycle(0));
    if (e == 0) {
      o.expect(!order, "fibre class has finite order for e = 0");
      auto product = product_complex(sphere_surface().cells, cw_sphere(1, "f"));
      o.expect(homology_integral(b.complex) == homology_integral(product), "e = 0 differs from the product");
      o.expect(homology_integral(b.complex) == integral_summary({1, 1, 1, 1}), "e = 0 is not S2xS1");
    } else {
      o.expect(order && *order == Integer(e < 0 ? -e : e), "fibre order wrong for e = " + std::to_string(e));
    }
    if (e == 1 || e == -1) {
      o.expect(homology_integral(b.complex) == s3, "e = " + std::to_string(e) + " is not S3");
      LevelPassQuery q;
      q.m = 4;
      q.points.push_back({1, 2, 1, true, true});
      q.bundle = BundleContext{2, true, true, true, e, false, false};
      auto v = verdict(q);
      o.expect(v.outcome == Outcome::MayNotChange && v.rule == rule_id::kHopf, "Hopf case verdict " + v.rule);
    }
    parts.push_back("e=" + std::to_string(e) + ":" + (order ? order->str() : std::string("inf")));
  }
  for (const auto& p : parts) o.detail += (o.detail.empty() ? "fibre orders " : " ") + p;
  return o;
}

// 5
Result lens_vs_product() {
  Result o;
  auto a = reference_complex("lens(4)").complex, b = reference_complex("s2xs1").complex;
  auto za = homology_integral(a), zb = homology_integral(b);
  o.expect(za.betti(1) == 0 && za.torsion(1) == std::vector<Integer>{4}, "H1(L(4,1)) is " + to_string(za));
  o.expect(zb.betti(1) == 1 && zb.torsion(1).empty(), "H1(S2xS1) is " + to_string(zb));
  o.expect(!(za == zb), "integral homology does not separate them");
  auto fa = homology(a, kF2), fb = homology(b, kF2);
  o.expect(fa.betti_vector() == fb.betti_vector(), "F2 Betti numbers differ");
  o.detail = "H1: Z4 vs Z; F2 Betti (" + join(fa.betti_vector()) + ") on both";
  return o;
}

// 6
Result rtbp() {
  Result o;
  auto s = rtbp_potential(0.2, RtbpOptions{});
  o.expect(s.grid.shape == std::vector<std::size_t>{400, 400}, "grid is not 400x400");
  const std::vector<int> want{1, 1, 1, 2, 2};
  double worst = 0;
  for (std::size_t i = 0; i < s.equilibria.size(); ++i) {
    const auto& e = s.equilibria[i];
    o.expect(e.index == want[i], e.name + " analytic index " + std::to_string(e.index));
    o.expect(e.detected.has_value(), e.name + " not detected within two spacings");
    if (!e.detected) continue;
    worst = std::max(worst, e.distance);
    o.expect(e.detected->index && *e.detected->index == want[i], e.name + " detected index differs");
  }
  for (const auto& w : s.warnings) o.expect(false, w);
  auto t = rtbp_sweep(s, kQ);
  std::vector<std::size_t> b0, b1;
  for (const auto& r : t.rows) {
    b0.push_back(r.summary.betti(0));
    b1.push_back(r.summary.betti(1));
  }
  // rows: below L1, L1..L2, L2..L3, L3..L4, above L4/L5
  o.expect(b0.size() == 5, "expected five sweep rows");
  if (b0.size() == 5) {
    o.expect(b0[0] == 3 && b0[1] == 2 && b0[2] == 1, "b0 is not 3,2,1 across L1, L2");
    o.expect(b1[2] > b1[1] || b1[3] > b1[2], "b1 rises at neither the L2 nor the L3 pass");
  }
  std::ostringstream d;
  d << "indices (1,1,1,2,2), max offset " << worst << " spacings; b0=(" << join(b0) << ") b1=(" << join(b1) << ")";
  o.detail = d.str();
  return o;
}

// 7
Result properties() {
  Result o;
  std::mt19937 rng(20261019);
  int n = 0;
  for (; n < 120; ++n) {
    auto c = props::random_complex(rng);
    o.expect(c.size() <= 300, "complex too large");
    for (const auto& b : props::check_complex(c, rng)) o.expect(false, "complex " + std::to_string(n) + ": " + b);
  }
  o.detail = std::to_string(n) + " complexes, " + std::to_string(o.failures.size()) + " violations";
  return o;
}

// Boundary of the (m+1)-dimensional cross-polytope: an m-sphere on 2m + 2 vertices.
SimplicialComplex cross_polytope_boundary(int m) {
  std::vector<Simplex> facets;
  for (int mask = 0; mask < (1 << (m + 1)); ++mask) {
    Simplex s;
    for (int i = 0; i <= m; ++i) s.push_back(2 * i + ((mask >> i) & 1));
    facets.push_back(s);
  }
  return SimplicialComplex(facets, 2 * m + 2);
}

// 8
Result conformance() {
  Result o;
  std::size_t conformant = 0, entries = 0, pairs = 0;
  auto run = [&](const PLScalarField& f, int m, const std::string& name) {
    std::vector<DeclaredLevel> declared;
    for (const auto& cv : critical_vertices(f)) {
      const bool nd = cv.type == VertexType::Critical;
      declared.push_back({cv.value, {{to_double(cv.value), nd ? cv.index : 0, 1, std::nullopt, nd}}});
    }
    auto levels = interleaving_levels(f.values());
    for (const auto& coeff : {kQ, kF2, kZ}) {
      auto rep = check_conformance(sweep(f, levels, coeff), declared, m);
      o.expect(rep.ok(), name + ": violation over " + to_string(coeff));
      o.expect(rep.count(ConformanceStatus::Misaligned) == 0, name + ": misaligned levels");
      conformant += rep.count(ConformanceStatus::Conformant);
      entries += rep.entries.size();
    }
    for (const auto& coeff : {kQ, kF2}) {
      for (const auto& p : sublevel_subadditivity(f, levels, coeff)) {
        ++pairs;
        o.expect(p.result.holds, name + ": subadditivity fails for (" + to_string(p.lo) + ", " + to_string(p.hi) + ")");
      }
    }
  };
  for (int m = 1; m <= 4; ++m) run(sphere_height(m), m, "sphere(" + std::to_string(m) + ")");
  std::mt19937 rng(11);
  for (int m = 1; m <= 4; ++m)
    for (int trial = 0; trial < 6; ++trial) {
      auto base = cross_polytope_boundary(m);
      std::vector<int> perm(base.vertex_count());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Rational> values;
      for (int p : perm) values.emplace_back(2 * p);
      run(PLScalarField(base, values), m, "random sphere(" + std::to_string(m) + ")");
    }
  run(torus_height(), 2, "torus");
  run(genus_surface_height(2), 2, "genus 2");
  o.expect(conformant > 0, "no interval was checked against the rule");
  o.detail = std::to_string(entries) + " intervals, " + std::to_string(conformant) + " conformant, " +
             std::to_string(pairs) + " sublevel pairs";
  return o;
}

// 9
Result duality() {
  Result o;
  std::mt19937 rng(2024);
  int n = 0;
  for (; n < 1000; ++n) {
    LevelPassQuery q;
    q.m = std::uniform_int_distribution<int>(1, 9)(rng);
    const int pts = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int i = 0; i < pts; ++i)
      q.points.push_back({0, std::uniform_int_distribution<int>(0, q.m)(rng),
                          std::uniform_int_distribution<int>(1, 3)(rng), std::nullopt, rng() % 10 != 0});
    q.assumptions_hold = rng() % 10 != 0;
    auto a = verdict(q), b = verdict(mirrored(q));
    if (a.outcome != b.outcome || a.rule != b.rule || a.rules != b.rules)
      o.expect(false, "query " + std::to_string(n) + ": " + a.rule + " vs " + b.rule);
  }
  o.detail = std::to_string(n) + " queries, " + std::to_string(o.failures.size()) + " mismatches";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Result()> run;
  };
  const std::vector<Criterion> all{
      {1, "rp2 no-change", 1, rp2_no_change},
      {2, "handle deltas", 5, handle_deltas_match},
      {3, "pendulum trichotomy", 5, pendulum_trichotomy},
      {4, "euler trichotomy", 0, euler_trichotomy},
      {5, "lens vs S2xS1", 0, lens_vs_product},
      {6, "restricted three-body", 60, rtbp},
      {7, "property suite", 0, properties},
      {8, "conformance suite", 0, conformance},
      {9, "verdict duality", 0, duality},
  };
  int failed = 0;
  for (const auto& c : all) {
    Result o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s)
      o.failures.push_back("took " + std::to_string(secs) + " s, budget " + std::to_string(c.budget_s) + " s");
    const bool ok = o.failures.empty();
    failed += !ok;
    std::printf("%s %d %s (%.2f s): %s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, o.detail.c_str());
    for (std::size_t i = 0; i < o.failures.size() && i < 10; ++i) std::printf("    %s\n", o.failures[i].c_str());
    if (o.failures.size() > 10) std::printf("    ... %zu more\n", o.failures.size() - 10);
  }
  return failed ? 1 : 0;
}
