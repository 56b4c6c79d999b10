#pragma once

#include "morse_levels/chaincore/constructions.hpp"
#include "morse_levels/chaincore/simplicial.hpp"
#include "morse_levels/homology/homology.hpp"
#include "morse_levels/levelset/model_fields.hpp"

#include <regex>
#include <string>
#include <vector>

namespace morse_levels {

struct ReferenceComplex {
  std::string name;
  CellComplex complex;
  HomologySummary expected;  // integral homology of the space it models
};

/// Integral summary from Betti numbers and per-dimension torsion.
inline HomologySummary integral_summary(const std::vector<std::size_t>& betti,
                                        const std::vector<std::vector<long long>>& torsion = {}) {
  HomologySummary s;
  s.coeff = CoefficientSpec::integers();
  const std::size_t n = std::max(betti.size(), torsion.size());
  s.dims.resize(n);
  for (std::size_t d = 0; d < n; ++d) {
    if (d < betti.size()) s.dims[d].betti = betti[d];
    if (d < torsion.size())
      for (long long t : torsion[d]) s.dims[d].torsion.emplace_back(t);
  }
  return s;
}

/// Lens space L(k, 1) with one cell per dimension: d e2 = k e1.
inline CellComplex lens_space(long long k) {
  if (k < 1) throw ValidationError("lens space needs k >= 1");
  CellComplex::Builder b;
  b.add_cell(0, {}, "v");
  auto e1 = b.add_cell(1, {}, "e1");
  auto e2 = b.add_cell(2, {{e1, k}}, "e2");
  (void)e2;
  b.add_cell(3, {}, "e3");
  return std::move(b).build();
}

/// Seven-vertex torus.
inline SimplicialComplex torus_seven_vertex() {
  std::vector<Simplex> facets;
  for (int i = 0; i < 7; ++i) {
    facets.push_back({i, (i + 1) % 7, (i + 3) % 7});
    facets.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return SimplicialComplex(facets, 7);
}

/// Names: sphere(n), torus2, rp2, lens(k), s2xs1, genus(g), kuehnel_cp2.
inline ReferenceComplex reference_complex(const std::string& name) {
  std::smatch m;
  static const std::regex with_arg(R"(^(sphere|lens|genus)\((\d{1,6})\)$)");
  if (std::regex_match(name, m, with_arg)) {
    const std::string kind = m[1];
    const long long n = std::stoll(m[2]);
    if (n > 1000) throw ValidationError("reference parameter too large: " + name);
    if (kind == "sphere") {
      if (n > 12) throw ValidationError("sphere dimension above 12 is not supported");
      std::vector<std::size_t> b(static_cast<std::size_t>(n + 1), 0);
      b[0] += 1;
      b[static_cast<std::size_t>(n)] += 1;
      return {name, simplex_boundary(static_cast<int>(n)).to_cell_complex(), integral_summary(b)};
    }
    if (kind == "lens") {
      if (n < 1) throw ValidationError("lens(k) needs k >= 1");
      if (n == 1) return {name, lens_space(1), integral_summary({1, 0, 0, 1})};
      return {name, lens_space(n), integral_summary({1, 0, 0, 1}, {{}, {n}})};
    }
    const auto g = static_cast<std::size_t>(n);
    if (n > 20) throw ValidationError("genus above 20 is not supported");
    return {name, genus_surface_height(static_cast<int>(n)).cells(), integral_summary({1, 2 * g, 1})};
  }
  if (name == "torus2") return {name, torus_seven_vertex().to_cell_complex(), integral_summary({1, 2, 1})};
  if (name == "rp2") return {name, rp2_six_vertex().to_cell_complex(), integral_summary({1}, {{}, {2}})};
  if (name == "s2xs1")
    return {name, product_complex(cw_sphere(2, "a"), cw_sphere(1, "b")), integral_summary({1, 1, 1, 1})};
  if (name == "kuehnel_cp2")
    throw ValidationError("reference 'kuehnel_cp2' is an optional target and is not built");
  throw ValidationError("unknown reference complex '" + name + "'");
}

}  // namespace morse_levels
