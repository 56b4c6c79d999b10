#include <catch_amalgamated.hpp>

#include "morse_levels/levelset/grid.hpp"
#include "morse_levels/levelset/model_fields.hpp"
#include "morse_levels/levelset/pl_field.hpp"
#include "morse_levels/levelset/sweep.hpp"

#include <cmath>
#include <map>
#include <random>

using namespace morse_levels;

namespace {

const CoefficientSpec kQ = CoefficientSpec::rationals();
const CoefficientSpec kF2 = CoefficientSpec::prime_field(2);

// Oracle for {f <= a}: the full simplicial subcomplex on the lower vertices,
// rebuilt from scratch.
HomologySummary lower_star_homology(const PLScalarField& f, const Rational& a, const CoefficientSpec& coeff) {
  std::vector<Simplex> keep;
  const auto& k = f.base();
  for (int d = 0; d <= k.dimension(); ++d)
    for (const auto& s : k.simplices(d)) {
      bool all = true;
      for (int v : s) all = all && f.value(v) < a;
      if (all) keep.push_back(s);
    }
  if (keep.empty()) return homology(CellComplex{}, coeff);
  std::map<int, int> relabel;
  for (const auto& s : keep)
    for (int v : s) relabel.emplace(v, static_cast<int>(relabel.size()));
  for (auto& s : keep)
    for (int& v : s) v = relabel.at(v);
  return homology(SimplicialComplex(keep, static_cast<int>(relabel.size())).to_cell_complex(), coeff);
}

// Every codimension-one face of the slice is a face of exactly two top cells.
bool closed_pseudomanifold(const CellComplex& c) {
  const int top = c.dimension();
  if (top < 1) return true;
  std::vector<int> uses(c.count(top - 1), 0);
  for (std::size_t i = 0; i < c.count(top); ++i)
    for (const auto& t : c.boundary({top, i})) uses[t.face.index] += 1;
  return std::all_of(uses.begin(), uses.end(), [](int u) { return u == 2; });
}

PLScalarField random_field(const SimplicialComplex& k, std::mt19937& rng, int range = 7) {
  std::uniform_int_distribution<int> dist(0, range);
  std::vector<Rational> values;
  for (std::size_t i = 0; i < k.vertex_count(); ++i) values.emplace_back(dist(rng));
  return PLScalarField(k, values);
}

std::vector<Rational> probe_levels(const PLScalarField& f) {
  std::vector<Rational> out;
  for (const auto& v : f.values()) {
    out.push_back(v);
    out.push_back(v + Rational(1, 3));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST_CASE("slice examples", "[levelset]") {
  SECTION("one triangle gives one edge") {
    PLScalarField f(SimplicialComplex({{0, 1, 2}}), {Rational(0), Rational(1), Rational(2)});
    auto s = slice(f, Rational(1, 2));
    CHECK(s.counts() == std::vector<std::size_t>{2, 1});
    CHECK(validate_complex(s).valid());
    CHECK(homology(s, kQ).betti_vector() == std::vector<std::size_t>{1});
  }
  SECTION("boundary of the 3-simplex gives a circle") {
    auto f = sphere_height(2);
    for (auto a : {Rational(1, 2), Rational(3, 2), Rational(5, 2)}) {
      auto s = slice(f, a);
      CHECK(validate_complex(s).valid());
      CHECK(homology(s, kQ).betti_vector() == std::vector<std::size_t>{1, 1});
    }
  }
  SECTION("torus middle band gives two circles") {
    auto f = torus_height();
    // critical values 0, 3, 12, 15
    auto s = slice(f, Rational(15, 2));
    CHECK(homology(s, kQ).betti_vector() == std::vector<std::size_t>{2, 2});
    CHECK(closed_pseudomanifold(s));
  }
  SECTION("level equal to a vertex value with perturbation off") {
    PLScalarField f(SimplicialComplex({{0, 1, 2}}), {Rational(0), Rational(1), Rational(2)}, false);
    CHECK_THROWS_AS(slice(f, Rational(1)), ValidationError);
    PLScalarField g(SimplicialComplex({{0, 1, 2}}), {Rational(0), Rational(1), Rational(2)});
    // perturbed: vertex 1 sits above the level
    CHECK(homology(slice(g, Rational(1)), kQ).betti_vector() == std::vector<std::size_t>{1});
  }
  SECTION("level outside the range is empty") {
    CHECK(slice(sphere_height(2), Rational(-1)).size() == 0);
    CHECK(slice(sphere_height(2), Rational(9)).size() == 0);
  }
}

TEST_CASE("region_complex examples", "[levelset]") {
  SECTION("truncated triangle is contractible") {
    PLScalarField f(SimplicialComplex({{0, 1, 2}}), {Rational(0), Rational(1), Rational(2)});
    auto r = region_complex(f, Rational(1, 2), Rational(3, 2));
    CHECK(validate_complex(r).valid());
    CHECK(euler_characteristic(r) == 1);
    CHECK(homology_integral(r).betti_vector() == std::vector<std::size_t>{1});
  }
  SECTION("sphere band is an annulus") {
    auto f = sphere_height(2);
    auto r = region_complex(f, Rational(1, 2), Rational(5, 2));
    CHECK(validate_complex(r).valid());
    CHECK(homology(r, kQ).betti_vector() == std::vector<std::size_t>{1, 1});
  }
  SECTION("full range keeps the Euler characteristic") {
    auto f = torus_height();
    auto r = region_complex(f, Rational(-1), Rational(100));
    CHECK(euler_characteristic(r) == euler_characteristic(f.cells()));
    CHECK(homology_integral(r) == homology_integral(f.cells()));
  }
  SECTION("bad bounds") {
    CHECK_THROWS_AS(region_complex(sphere_height(2), Rational(2), Rational(1)), ValidationError);
  }
}

TEST_CASE("sublevel_complex examples", "[levelset]") {
  auto f = torus_height();
  CHECK(homology(sublevel_complex(f, Rational(1, 2)), kQ).betti_vector() == std::vector<std::size_t>{1});
  CHECK(homology(sublevel_complex(f, Rational(7)), kQ).betti_vector() == std::vector<std::size_t>{1, 1});
  CHECK(homology(sublevel_complex(f, Rational(14)), kQ).betti_vector() == std::vector<std::size_t>{1, 2});
  CHECK(homology(sublevel_complex(f, Rational(100)), kQ) == homology(f.cells(), kQ));
}

TEST_CASE("sublevel complexes match the lower-star oracle", "[levelset][oracle]") {
  std::mt19937 rng(11);
  std::vector<SimplicialComplex> bases = {rp2_six_vertex(), torus_height(5, 4).base(), simplex_boundary(3),
                                          SimplicialComplex({{0, 1, 2, 3}, {2, 3, 4}, {4, 5}, {5, 6, 7}})};
  for (const auto& k : bases)
    for (int trial = 0; trial < 6; ++trial) {
      auto f = random_field(k, rng);
      for (const auto& a : probe_levels(f))
        for (auto coeff : {kQ, kF2, CoefficientSpec::integers()}) {
          auto sub = sublevel_complex(f, a);
          REQUIRE(validate_complex(sub).valid());
          CHECK(homology(sub, coeff) == lower_star_homology(f, a, coeff));
        }
    }
}

TEST_CASE("level sets: structural properties", "[levelset][oracle]") {
  std::mt19937 rng(5);
  std::vector<SimplicialComplex> closed = {rp2_six_vertex(), torus_height(4, 3).base(), simplex_boundary(3),
                                           simplex_boundary(4)};
  for (const auto& k : closed)
    for (int trial = 0; trial < 8; ++trial) {
      auto f = random_field(k, rng, 20);
      for (const auto& a : probe_levels(f)) {
        auto s = slice(f, a);
        REQUIRE(validate_complex(s).valid());
        CHECK(closed_pseudomanifold(s));
        // narrow band without vertex values retracts to the slice
        if (std::find(f.values().begin(), f.values().end(), a) == f.values().end()) {
          auto band = region_complex(f, a - Rational(1, 100), a + Rational(1, 100));
          REQUIRE(validate_complex(band).valid());
          CHECK(homology(band, kF2) == homology(s, kF2));
          CHECK(homology_integral(band) == homology_integral(s));
          CHECK(homology(slice(f.negated(), -a), kF2) == homology(s, kF2));
        }
      }
    }
}

TEST_CASE("region Euler characteristic adds up", "[levelset][oracle]") {
  std::mt19937 rng(9);
  auto k = torus_height(5, 4).base();
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_field(k, rng, 30);
    auto levels = probe_levels(f);
    for (std::size_t i = 0; i + 1 < levels.size(); i += 3) {
      const auto& a = levels[i];
      const auto& b = levels[i + 1];
      // chi(M^b) = chi(M^a) + chi(M_a^b) - chi(f^-1(a))
      CHECK(euler_characteristic(sublevel_complex(f, b)) ==
            euler_characteristic(sublevel_complex(f, a)) + euler_characteristic(region_complex(f, a, b)) -
                euler_characteristic(slice(f, a)));
    }
  }
}

TEST_CASE("critical vertices of model fields", "[levelset]") {
  auto indices = [](const PLScalarField& f) {
    std::map<int, int> count;
    for (const auto& cv : critical_vertices(f)) {
      REQUIRE(cv.type == VertexType::Critical);
      count[cv.index] += 1;
    }
    return count;
  };
  for (int m = 1; m <= 4; ++m) CHECK(indices(sphere_height(m)) == std::map<int, int>{{0, 1}, {m, 1}});
  CHECK(indices(torus_height()) == std::map<int, int>{{0, 1}, {1, 2}, {2, 1}});
  for (int g = 0; g <= 3; ++g) {
    auto f = genus_surface_height(g);
    CHECK(homology(f.cells(), kQ).betti_vector() ==
          std::vector<std::size_t>{1, static_cast<std::size_t>(2 * g), 1});
    if (g == 0)
      CHECK(indices(f) == std::map<int, int>{{0, 1}, {2, 1}});
    else
      CHECK(indices(f) == std::map<int, int>{{0, 1}, {1, 2 * g}, {2, 1}});
  }
  auto rp2 = rp2_perfect_height();
  CHECK(indices(rp2) == std::map<int, int>{{0, 1}, {1, 1}, {2, 1}});
}

TEST_CASE("sweep examples", "[levelset]") {
  SECTION("sphere height has no interior jumps") {
    auto t = sweep(sphere_height(3), {Rational(1, 2), Rational(3, 2), Rational(5, 2), Rational(7, 2)}, kQ);
    CHECK(t.jumps.empty());
    for (const auto& r : t.rows) CHECK(r.summary.betti_vector() == std::vector<std::size_t>{1, 0, 1});
  }
  SECTION("torus height, levels between the critical values") {
    auto t = sweep(torus_height(), {Rational(3, 2), Rational(15, 2), Rational(27, 2)}, kQ);
    std::vector<std::size_t> b0;
    for (const auto& r : t.rows) b0.push_back(r.summary.betti(0));
    CHECK(b0 == std::vector<std::size_t>{1, 2, 1});
    CHECK(t.jumps == std::vector<std::size_t>{0, 1});
    auto csv = to_csv(t);
    CHECK(csv.rfind("level,level_exact,b0,b1,torsion\n", 0) == 0);
    CHECK(csv.find("7.5,15/2,2,2,") != std::string::npos);
    CHECK(to_gnuplot(t, 0).find("13.5 1\n") != std::string::npos);
  }
  SECTION("RP2 around the saddle over F2") {
    auto f = rp2_perfect_height();
    auto t = sweep(f, {Rational(7, 4), Rational(9, 4)}, kF2);
    CHECK(t.rows[0].summary.betti_vector() == std::vector<std::size_t>{1, 1});
    CHECK(t.rows[0].summary == t.rows[1].summary);
    CHECK(t.jumps.empty());
    auto sub = sweep(f, {Rational(7, 4), Rational(9, 4)}, kF2, SweepMode::Sublevel);
    CHECK(sub.jumps.size() == 1);
  }
  SECTION("unsorted levels are rejected") {
    CHECK_THROWS_AS(sweep(sphere_height(2), {Rational(1), Rational(1)}, kQ), ValidationError);
  }
  SECTION("summaries are constant between vertex values") {
    std::mt19937 rng(3);
    auto f = random_field(rp2_six_vertex(), rng, 40);
    auto levels = interleaving_levels(f.values());
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
      auto t = sweep(f, {levels[i] + Rational(1, 7), levels[i] + Rational(1, 5)}, kF2);
      CHECK(t.jumps.empty());
    }
  }
}

TEST_CASE("cubical sublevel examples", "[levelset]") {
  auto bowl = sample_grid({21, 21}, {-1, -1}, {1, 1}, [](const std::vector<double>& p) {
    return p[0] * p[0] + p[1] * p[1];
  });
  SECTION("bowl below and above the minimum") {
    CHECK(cubical_sublevel(bowl, -0.5).complex.size() == 0);
    auto c = cubical_sublevel(bowl, 0.5).complex;
    CHECK(validate_complex(c).valid());
    CHECK(homology(c, kQ).betti_vector() == std::vector<std::size_t>{1});
    CHECK(homology(cubical_sublevel(bowl, 10).complex, kQ).betti_vector() == std::vector<std::size_t>{1});
  }
  SECTION("full grid is a square") {
    auto c = cubical_sublevel(bowl, 10).complex;
    CHECK(c.counts() == std::vector<std::size_t>{441, 840, 400});
  }
  SECTION("annulus via a mask") {
    auto g = sample_grid(
        {31, 31}, {-1.5, -1.5}, {1.5, 1.5}, [](const std::vector<double>& p) { return p[0] * p[0] + p[1] * p[1]; },
        [](const std::vector<double>& p) { return std::hypot(p[0], p[1]) < 0.35; });
    auto cub = cubical_sublevel(g, 1.0);
    CHECK(homology(cub.complex, kQ).betti_vector() == std::vector<std::size_t>{1, 1});
    CHECK(cub.flagged.empty());
    auto low = cubical_sublevel(g, 0.15);
    CHECK(!low.flagged.empty());
  }
  SECTION("three-dimensional ball and shell") {
    auto g = sample_grid({13, 13, 13}, {-1.2, -1.2, -1.2}, {1.2, 1.2, 1.2}, [](const std::vector<double>& p) {
      const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
      return (r - 0.8) * (r - 0.8);
    });
    auto c = cubical_sublevel(g, 0.05).complex;
    REQUIRE(validate_complex(c).valid());
    CHECK(homology(c, kQ).betti_vector() == std::vector<std::size_t>{1, 0, 1});
  }
  SECTION("grid sweep") {
    auto t = sweep(bowl, {-0.5, 0.25, 0.5}, kQ);
    CHECK(t.jumps == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(sweep(bowl, {0.5, 0.25}, kQ), ValidationError);
  }
}

TEST_CASE("grid critical points", "[levelset]") {
  SECTION("quadratic bowl") {
    auto g = sample_grid({21, 21}, {-1, -1}, {1, 1},
                         [](const std::vector<double>& p) { return p[0] * p[0] + 2 * p[1] * p[1]; });
    auto pts = detect_grid_critical_points(g);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].index == 0);
    CHECK(pts[0].non_degenerate);
    CHECK(std::abs(pts[0].position[0]) < 1e-12);
  }
  SECTION("saddle and maximum") {
    auto g = sample_grid({21, 21}, {-1, -1}, {1, 1},
                         [](const std::vector<double>& p) { return p[0] * p[0] - p[1] * p[1] + 0.1; });
    auto pts = detect_grid_critical_points(g);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].index == 1);
    auto h = sample_grid({21, 21}, {-1, -1}, {1, 1},
                         [](const std::vector<double>& p) { return 1 - p[0] * p[0] - p[1] * p[1]; });
    auto q = detect_grid_critical_points(h);
    REQUIRE(q.size() == 1);
    CHECK(q[0].index == 2);
  }
  SECTION("monkey saddle is flagged degenerate") {
    auto g = sample_grid({21, 21}, {-1, -1}, {1, 1}, [](const std::vector<double>& p) {
      return p[0] * p[0] * p[0] - 3 * p[0] * p[1] * p[1];
    });
    auto pts = detect_grid_critical_points(g);
    // the sampled zero line x = 0 adds two discrete saddles next to the origin
    std::size_t flagged = 0;
    for (const auto& p : pts) {
      if (p.non_degenerate) continue;
      ++flagged;
      CHECK_FALSE(p.index.has_value());
      CHECK(p.ring_changes == 6);
      CHECK(std::abs(p.position[0]) + std::abs(p.position[1]) < 1e-12);
    }
    CHECK(flagged == 1);
  }
  SECTION("rejects non-2D grids") {
    auto g = sample_grid({3, 3, 3}, {0, 0, 0}, {1, 1, 1}, [](const std::vector<double>&) { return 0.0; });
    CHECK_THROWS_AS(detect_grid_critical_points(g), ValidationError);
  }
}
