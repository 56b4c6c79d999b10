#pragma once

// Randomized complexes and the homological identities they must satisfy.

#include "oracles.hpp"

#include "morse_levels/chaincore/constructions.hpp"
#include "morse_levels/chaincore/simplicial.hpp"
#include "morse_levels/homology/homology.hpp"

#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace morse_levels;

namespace props {

const std::vector<std::uint64_t> kPrimes{2, 3, 5};

CellComplex moore_space(long long k) {
  CellComplex::Builder b;
  b.add_cell(0, {}, "m");
  auto e = b.add_cell(1, {}, "m1");
  b.add_cell(2, {{e, k}}, "m2");
  return std::move(b).build();
}

SimplicialComplex random_simplicial(std::mt19937& rng, int max_vertices, int max_facet_size) {
  std::uniform_int_distribution<int> nv(3, max_vertices), nf(1, 9), size(1, max_facet_size);
  const int v = nv(rng);
  std::vector<Simplex> facets;
  const int f = nf(rng);
  for (int i = 0; i < f; ++i) {
    std::vector<int> verts(static_cast<std::size_t>(v));
    std::iota(verts.begin(), verts.end(), 0);
    std::shuffle(verts.begin(), verts.end(), rng);
    verts.resize(static_cast<std::size_t>(std::min(size(rng), v)));
    facets.push_back(verts);
  }
  return SimplicialComplex(facets, v);
}

/// Simplicial complexes, some multiplied by or joined with torsion-carrying CW pieces.
CellComplex random_complex(std::mt19937& rng) {
  for (;;) {
    std::uniform_int_distribution<int> kind(0, 3), tor(2, 6);
    CellComplex c;
    switch (kind(rng)) {
      case 0: c = random_simplicial(rng, 9, 4).to_cell_complex(); break;
      case 1: c = product_complex(random_simplicial(rng, 6, 3).to_cell_complex(), moore_space(tor(rng))); break;
      case 2: c = disjoint_union(random_simplicial(rng, 7, 3).to_cell_complex(), moore_space(tor(rng))); break;
      default:
        c = product_complex(moore_space(tor(rng)), moore_space(tor(rng)));
        c = disjoint_union(c, random_simplicial(rng, 6, 3).to_cell_complex());
        break;
    }
    if (c.size() <= 300) return c;
  }
}

Subcomplex random_subcomplex(std::mt19937& rng, const CellComplex& c) {
  std::bernoulli_distribution keep(0.3);
  Subcomplex s(c);
  for (int d = 0; d <= c.dimension(); ++d)
    for (std::size_t i = 0; i < c.count(d); ++i)
      if (keep(rng)) s.insert({d, i});
  return face_closure(c, std::move(s));
}

// b_d = n_d - rank d_d - rank d_{d+1}, ranks from the oracles.
std::vector<std::size_t> oracle_betti(const ChainComplex& cc, std::uint64_t p) {
  std::vector<std::size_t> rank(static_cast<std::size_t>(cc.dimension() + 2), 0);
  for (int d = 1; d <= cc.dimension(); ++d) {
    auto m = cc.boundary_matrix(d).to_dense();
    rank[static_cast<std::size_t>(d)] = p == 0   ? oracle::rational_rank(m)
                                        : p == 2 ? oracle::f2_rank(m)
                                                 : oracle::fp_rank(m, static_cast<long long>(p));
  }
  std::vector<std::size_t> out;
  for (int d = 0; d <= cc.dimension(); ++d)
    out.push_back(cc.count(d) - rank[static_cast<std::size_t>(d)] - rank[static_cast<std::size_t>(d + 1)]);
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

long long alternating(const HomologySummary& h) {
  long long chi = 0;
  for (std::size_t d = 0; d < h.dims.size(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<long long>(h.dims[d].betti);
  return chi;
}

/// Runs every identity on one complex and a random pair inside it; returns
/// a message per violation.
inline std::vector<std::string> check_complex(const CellComplex& c, std::mt19937& rng) {
  std::vector<std::string> bad;
  auto fail = [&](const std::string& what) { bad.push_back(what + " (" + std::to_string(c.size()) + " cells)"); };
  auto cc = chain_complex(c);

  for (int d = 2; d <= cc.dimension(); ++d) {
    auto sq = cc.boundary_matrix(d - 1).to_dense() * cc.boundary_matrix(d).to_dense();
    for (std::size_t r = 0; r < sq.rows(); ++r)
      for (std::size_t k = 0; k < sq.cols(); ++k)
        if (sq(r, k) != 0) fail("boundary squared nonzero in dimension " + std::to_string(d));
  }
  if (!validate_complex(c).valid()) fail("validation report not empty");

  const long long chi = euler_characteristic(c);
  auto hz = homology_integral(cc);
  auto hq = homology(cc, CoefficientSpec::rationals());
  if (alternating(hq) != chi) fail("Euler characteristic over Q");
  if (alternating(hz) != chi) fail("Euler characteristic over Z");
  if (hq.betti_vector() != oracle_betti(cc, 0)) fail("Betti numbers over Q disagree with the rank oracle");
  if (hq.betti_vector() != hz.betti_vector()) fail("free rank over Z differs from Q");
  for (auto p : kPrimes) {
    const std::string tag = " over F_" + std::to_string(p);
    auto hp = homology(cc, CoefficientSpec::prime_field(p));
    if (alternating(hp) != chi) fail("Euler characteristic" + tag);
    if (hp.betti_vector() != oracle_betti(cc, p)) fail("Betti numbers disagree with the rank oracle" + tag);
    for (int d = 0; d <= cc.dimension(); ++d) {
      std::size_t expect = hz.betti(d);
      for (const auto& t : hz.torsion(d)) expect += (t % p == 0);
      for (const auto& t : hz.torsion(d - 1)) expect += (t % p == 0);
      if (hp.betti(d) != expect) fail("universal coefficients in dimension " + std::to_string(d) + tag);
    }
  }

  auto a = random_subcomplex(rng, c);
  auto maps = pair_maps(c, a);
  for (const auto& coeff : {CoefficientSpec::rationals(), CoefficientSpec::prime_field(2)}) {
    const std::string tag = " over " + to_string(coeff);
    auto ha = homology(maps.sub, coeff), hx = homology(maps.whole, coeff), hxa = homology(maps.relative, coeff);
    if (!(relative_homology(c, a, coeff) == hxa)) fail("relative homology differs from the quotient complex" + tag);
    if (alternating(hx) != alternating(ha) + alternating(hxa)) fail("Euler characteristic of the pair" + tag);
    std::vector<std::size_t> r(static_cast<std::size_t>(cc.dimension() + 1), 0);
    for (int d = 0; d <= cc.dimension(); ++d)
      r[static_cast<std::size_t>(d)] = induced_map(maps.inclusion, maps.sub, maps.whole, d, coeff).rank();
    for (int d = 0; d <= cc.dimension() + 1; ++d) {
      // H_d(A) -> H_d(X) -> H_d(X, A) -> H_{d-1}(A) -> H_{d-1}(X)
      const std::size_t rd = d <= cc.dimension() ? r[static_cast<std::size_t>(d)] : 0;
      const std::size_t rd1 = d >= 1 ? r[static_cast<std::size_t>(d - 1)] : 0;
      if (hxa.betti(d) != (hx.betti(d) - rd) + (ha.betti(d - 1) - rd1))
        fail("long exact sequence rank identity in dimension " + std::to_string(d) + tag);
    }
  }
  return bad;
}

}  // namespace props
