#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include "morse_levels/chaincore/constructions.hpp"
#include "morse_levels/chaincore/simplicial.hpp"
#include "morse_levels/homology/homology.hpp"

#include <random>

using namespace morse_levels;

namespace {

const std::vector<Simplex> kRp2Facets = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                          {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}};

// 7-vertex torus (Moebius-Kantor / Csaszar triangulation).
const std::vector<Simplex> kTorusFacets = {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 0}, {5, 6, 1}, {6, 0, 2},
                                           {0, 1, 5}, {1, 2, 6}, {2, 3, 0}, {3, 4, 1}, {4, 5, 2}, {5, 6, 3}, {6, 0, 4}};

CellComplex lens_cw(long long k) {
  CellComplex::Builder b;
  b.add_cell(0);
  auto e1 = b.add_cell(1);
  auto e2 = b.add_cell(2, {{e1, k}});
  b.add_cell(3, {{e2, 0}});
  b.ensure_dim(3);
  return std::move(b).build();
}

std::vector<std::size_t> bv(std::initializer_list<std::size_t> v) { return v; }

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

}  // namespace

TEST_CASE("Smith normal form agrees with determinantal divisors", "[homology][snf]") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    auto m = random_matrix(rng, r, c, -6, 6);
    if (trial % 3 == 0)  // force some structure: scaled rows
      for (std::size_t j = 0; j < c; ++j) m(0, j) *= 4;
    auto snf = smith_normal_form(m, true);
    auto expected = oracle::invariant_factors_by_minors(m);
    REQUIRE(snf.diagonal == expected);
    // U A V = S, U U^-1 = 1, V V^-1 = 1
    IntMatrix s(r, c);
    for (std::size_t i = 0; i < snf.rank(); ++i) s(i, i) = snf.diagonal[i];
    CHECK(snf.U * m * snf.V == s);
    CHECK(snf.U * snf.U_inv == IntMatrix::identity(r));
    CHECK(snf.V * snf.V_inv == IntMatrix::identity(c));
  }
}

TEST_CASE("sparse invariant factors match dense Smith form", "[homology][snf]") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    SparseIntMatrix sp;
    sp.rows = r;
    sp.columns.resize(c);
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t i = 0; i < r; ++i)
        if (rng() % 3 == 0) sp.columns[j].push_back({i, static_cast<long long>(rng() % 7) - 3});
    auto f = invariant_factors(sp);
    auto dense = smith_normal_form(sp.to_dense());
    CHECK(f.rank == dense.rank());
    std::vector<Integer> nontrivial;
    for (auto& d : dense.diagonal)
      if (d > 1) nontrivial.push_back(d);
    CHECK(f.nontrivial == nontrivial);
  }
}

TEST_CASE("signed-graph fast path matches elimination", "[homology]") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 8, c = rng() % 10;
    SparseIntMatrix sp;
    sp.rows = r;
    sp.columns.resize(c);
    for (auto& col : sp.columns) {
      std::size_t k = rng() % 3;
      std::size_t a = rng() % r, b = rng() % r;
      if (k >= 1) col.push_back({a, rng() % 2 ? 1 : -1});
      if (k == 2 && b != a) col.push_back({b, rng() % 2 ? 1 : -1});
    }
    auto g = signed_graph_rank(sp);
    REQUIRE(g);
    auto dense = sp.to_dense();
    CHECK(g->rank_char0 == oracle::rational_rank(dense));
    CHECK(g->rank_char2 == oracle::f2_rank(dense));
    auto f = oracle::invariant_factors_by_minors(dense);
    std::size_t twos = 0;
    for (auto& d : f) twos += d == 2;
    if (std::min(r, c) <= 5) CHECK(g->twos == twos);
  }
}

TEST_CASE("homology_field examples", "[homology]") {
  auto s2 = simplex_boundary(2).to_cell_complex();
  CHECK(homology_field(s2, CoefficientSpec::rationals()).betti_vector() == bv({1, 0, 1}));

  auto rp2 = SimplicialComplex(kRp2Facets).to_cell_complex();
  CHECK(homology_field(rp2, CoefficientSpec::prime_field(2)).betti_vector() == bv({1, 1, 1}));
  CHECK(homology_field(rp2, CoefficientSpec::rationals()).betti_vector() == bv({1}));

  auto torus = SimplicialComplex(kTorusFacets).to_cell_complex();
  REQUIRE(euler_characteristic(torus) == 0);
  CHECK(homology_field(torus, CoefficientSpec::rationals()).betti_vector() == bv({1, 2, 1}));

  // rank checks against the bitset oracle on the raw boundary matrices
  auto cc = chain_complex(rp2);
  CHECK(field_rank(cc.boundary[1], CoefficientSpec::prime_field(2)) == oracle::f2_rank(cc.boundary[1].to_dense()));
  CHECK(field_rank(cc.boundary[2], CoefficientSpec::prime_field(2)) == oracle::f2_rank(cc.boundary[2].to_dense()));
  CHECK(field_rank(cc.boundary[2], CoefficientSpec::rationals()) == oracle::rational_rank(cc.boundary[2].to_dense()));
}

TEST_CASE("homology_integral examples", "[homology]") {
  auto l4 = homology_integral(lens_cw(4));
  CHECK(l4.betti_vector() == bv({1, 0, 0, 1}));
  CHECK(l4.torsion(1) == std::vector<Integer>{4});

  auto rp3 = homology_integral(lens_cw(2));
  CHECK(rp3.torsion(1) == std::vector<Integer>{2});

  auto s2s1 = homology_integral(product_complex(cw_sphere(2), cw_sphere(1)));
  CHECK(s2s1.betti_vector() == bv({1, 1, 1, 1}));
  for (int d = 0; d <= 3; ++d) CHECK(s2s1.torsion(d).empty());

  auto rp2 = homology_integral(SimplicialComplex(kRp2Facets).to_cell_complex());
  CHECK(rp2.betti_vector() == bv({1}));
  CHECK(rp2.torsion(1) == std::vector<Integer>{2});
}

TEST_CASE("homology_mod_k via universal coefficients", "[homology]") {
  auto rp3 = homology_integral(lens_cw(2));
  auto m2 = homology_mod_k(rp3, 2);
  CHECK(m2.torsion(1) == std::vector<Integer>{2});
  CHECK(m2.torsion(2) == std::vector<Integer>{2});
  CHECK(m2.torsion(0) == std::vector<Integer>{2});
  CHECK(m2.torsion(3) == std::vector<Integer>{2});

  auto s3 = homology_integral(cw_sphere(3));
  CHECK(homology_mod_k(s3, 2).torsion(1).empty());

  auto l4 = homology_mod_k(homology_integral(lens_cw(4)), 2);
  CHECK(l4.torsion(1) == std::vector<Integer>{2});
  auto s2s1 = homology_mod_k(homology_integral(product_complex(cw_sphere(2), cw_sphere(1))), 2);
  CHECK(s2s1.torsion(1) == std::vector<Integer>{2});

  CHECK_THROWS_AS(homology_mod_k(rp3, 1), ValidationError);

  // Z/6 over Z/4 x Z/2 mixes primes: Z4 (+) Z2 (+) ... invariant factors
  CHECK(invariant_factor_form({2, 3}) == std::vector<Integer>{6});
  CHECK(invariant_factor_form({2, 4}) == std::vector<Integer>{2, 4});
  CHECK(invariant_factor_form({6, 4, 1}) == std::vector<Integer>{2, 12});
}

TEST_CASE("relative_homology examples", "[homology]") {
  auto disk = cw_disk(2);
  auto bd = labelled_subcomplex(disk, [](const std::string& l) { return l != "d"; });
  auto h = relative_homology(disk, bd, CoefficientSpec::rationals());
  CHECK(h.betti_vector() == bv({0, 0, 1}));

  // (S^1 x D^2, S^1 x S^1): F in degrees 2 and 3
  auto pair = product_complex(cw_sphere(1, "p"), cw_disk(2, "q"));
  auto a = labelled_subcomplex(pair, [](const std::string& l) { return l.find("qd") == std::string::npos; });
  auto rel = relative_homology(pair, a, CoefficientSpec::rationals());
  CHECK(rel.betti_vector() == bv({0, 0, 1, 1}));

  auto all = Subcomplex::all(pair);
  CHECK(relative_homology(pair, all, CoefficientSpec::rationals()).top() == -1);

  Subcomplex open(disk);
  open.insert({2, 0});
  CHECK_THROWS_AS(relative_homology(disk, open, CoefficientSpec::rationals()), ValidationError);
}

TEST_CASE("induced_map examples", "[homology]") {
  auto torus = product_complex(cw_sphere(1, "x"), cw_sphere(1, "y"));
  auto cc = chain_complex(torus);
  ChainMap id;
  for (int d = 0; d <= 2; ++d) id.components.push_back(IntMatrix::identity(cc.count(d)));
  for (auto coeff : {CoefficientSpec::rationals(), CoefficientSpec::prime_field(3), CoefficientSpec::integers()}) {
    auto m = induced_map(id, cc, cc, 1, coeff);
    CHECK(m.rows == 2);
    CHECK(m.is_identity());
  }

  // fiber circle into the torus
  auto fiber = labelled_subcomplex(torus, [](const std::string& l) { return l == "xvxys" || l == "xvxyv"; });
  auto pm = pair_maps(torus, fiber);
  auto inc = induced_map(pm.inclusion, pm.sub, pm.whole, 1, CoefficientSpec::integers());
  CHECK(inc.rows == 2);
  CHECK(inc.cols == 1);
  CHECK(inc.rank() == 1);

  // degree-2 self-map of S^1
  auto circle = chain_complex(cw_sphere(1));
  ChainMap twice;
  twice.components.push_back(IntMatrix::identity(1));
  IntMatrix two(1, 1);
  two(0, 0) = 2;
  twice.components.push_back(two);
  auto m = induced_map(twice, circle, circle, 1, CoefficientSpec::integers());
  CHECK(m.at(0, 0) == 2);
  CHECK(induced_map(twice, circle, circle, 1, CoefficientSpec::prime_field(2)).rank() == 0);

  // not a chain map: edge of an interval sent to 0, endpoints kept
  auto interval = chain_complex(cw_disk(1));
  ChainMap broken;
  broken.components.push_back(IntMatrix::identity(2));
  broken.components.push_back(IntMatrix(1, 1));
  try {
    induced_map(broken, interval, interval, 0, CoefficientSpec::rationals());
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("1:0") != std::string::npos);
  }
}

TEST_CASE("cycle_class_order examples", "[homology]") {
  // RP^2: the loop 0-1-2-... generator. Take the edge cycle 0->1->3->0? Use the CW model.
  CellComplex::Builder b;
  b.add_cell(0);
  auto e = b.add_cell(1);
  b.add_cell(2, {{e, 2}});
  auto rp2 = std::move(b).build();
  CHECK(cycle_class_order(rp2, {1, {{0, 1}}}) == Integer(2));

  // 6-vertex triangulation: loop 0-1-3 (not a face). H_1 = Z/2, so the order is
  // 2 exactly when the loop survives in F_2 homology (bitset oracle), else 1.
  SimplicialComplex tri(kRp2Facets);
  auto c = tri.to_cell_complex();
  auto e01 = *tri.find({0, 1}), e13 = *tri.find({1, 3}), e03 = *tri.find({0, 3});
  auto order = cycle_class_order(c, {1, {{e01, 1}, {e13, 1}, {e03, -1}}});
  auto d2 = chain_complex(c).boundary[2].to_dense();
  IntMatrix aug(d2.rows(), d2.cols() + 1);
  for (std::size_t r = 0; r < d2.rows(); ++r)
    for (std::size_t k = 0; k < d2.cols(); ++k) aug(r, k) = d2(r, k);
  aug(e01, d2.cols()) = 1;
  aug(e13, d2.cols()) = 1;
  aug(e03, d2.cols()) = 1;
  Integer expected = oracle::f2_rank(aug) > oracle::f2_rank(d2) ? 2 : 1;
  REQUIRE(order);
  CHECK(*order == expected);

  auto s2s1 = product_complex(cw_sphere(2, "b"), cw_sphere(1, "f"));
  std::size_t fiber = 0;
  for (std::size_t i = 0; i < s2s1.count(1); ++i)
    if (s2s1.label({1, i}) == "bvxfs") fiber = i;
  CHECK_FALSE(cycle_class_order(s2s1, {1, {{fiber, 1}}}).has_value());

  auto triangle = SimplicialComplex({{0, 1, 2}});
  auto tc = triangle.to_cell_complex();
  auto z = CycleChain{1, {{*triangle.find({0, 1}), 1}, {*triangle.find({1, 2}), 1}, {*triangle.find({0, 2}), -1}}};
  CHECK(cycle_class_order(tc, z) == Integer(1));

  CHECK_THROWS_AS(cycle_class_order(tc, {1, {{0, 1}}}), ValidationError);
}

TEST_CASE("homology of the empty complex is empty", "[homology]") {
  CHECK(homology_integral(CellComplex{}).dims.empty());
  CHECK(homology_field(CellComplex{}, CoefficientSpec::rationals()).top() == -1);
}
