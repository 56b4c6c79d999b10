#pragma once

#include "morse_levels/chaincore/constructions.hpp"
#include "morse_levels/homology/homology.hpp"
#include "morse_levels/mechanics/surface.hpp"

#include <optional>
#include <vector>

namespace morse_levels {

/// Cellular model of a circle bundle over a triangulated surface. Each base
/// cell s contributes s x p and s x f, where p, f are the cells of the fibre
/// circle; in dimension d the s x p cells come first, then the s x f cells.
struct CircleBundleModel {
  CellComplex complex;
  long long euler = 0;
  bool collapsed = false;
  std::vector<std::size_t> fiber_cell;  // per base vertex: index of the 1-cell v x f, npos if collapsed

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Fibre circle over base vertex v as a 1-cycle.
  CycleChain fiber_cycle(int v = 0) const {
    const std::size_t i = fiber_cell.at(static_cast<std::size_t>(v));
    if (i == npos) throw ValidationError("fibre over a boundary vertex is collapsed");
    return CycleChain{1, {{i, 1}}};
  }
};

namespace detail {

// collapsed[d][i]: the fibre over base cell (d, i) shrinks to a point.
inline CircleBundleModel build_bundle(const CellComplex& base, long long euler,
                                      const std::vector<std::vector<bool>>& collapsed) {
  const int top = base.dimension();
  std::vector<std::vector<std::size_t>> fiber_index(static_cast<std::size_t>(top + 1));
  // index of s x f inside dimension dim(s) + 1
  for (int d = 0; d <= top; ++d) {
    auto& idx = fiber_index[static_cast<std::size_t>(d)];
    idx.assign(base.count(d), CircleBundleModel::npos);
    std::size_t next = d + 1 <= top ? base.count(d + 1) : 0;
    for (std::size_t i = 0; i < base.count(d); ++i)
      if (!collapsed[static_cast<std::size_t>(d)][i]) idx[i] = next++;
  }

  CellComplex::Builder b;
  for (int d = 0; d <= top + 1; ++d) {
    b.ensure_dim(d);
    if (d <= top)
      for (std::size_t i = 0; i < base.count(d); ++i) {
        std::vector<BoundaryTerm> terms;
        for (const auto& t : base.boundary({d, i})) terms.push_back({{d - 1, t.face.index}, t.coeff});
        if (d == 2 && i == 0 && euler != 0) {
          const std::size_t f = fiber_index[0][0];
          if (f == CircleBundleModel::npos) throw ValidationError("twist needs an uncollapsed fibre over vertex 0");
          terms.push_back({{1, f}, euler});
        }
        b.add_cell(d, std::move(terms));
      }
    if (d >= 1)
      for (std::size_t i = 0; i < base.count(d - 1); ++i) {
        if (fiber_index[static_cast<std::size_t>(d - 1)][i] == CircleBundleModel::npos) continue;
        std::vector<BoundaryTerm> terms;
        for (const auto& t : base.boundary({d - 1, i})) {
          const std::size_t f = fiber_index[static_cast<std::size_t>(d - 2)][t.face.index];
          if (f != CircleBundleModel::npos) terms.push_back({{d - 1, f}, t.coeff});
        }
        b.add_cell(d, std::move(terms));
      }
  }
  CircleBundleModel m;
  m.complex = std::move(b).build();
  m.euler = euler;
  m.fiber_cell = fiber_index[0];
  return m;
}

}  // namespace detail

/// Oriented circle bundle with Euler number e over a closed orientable
/// surface. The twist is an extra incidence e from the first 2-cell (over
/// the fibre point) onto the fibre over vertex 0; e = 0 is the product.
inline CircleBundleModel circle_bundle(const SurfaceModel& base, long long e) {
  if (!base.closed()) throw ValidationError("circle_bundle needs a closed base; use collapsed_circle_bundle");
  if (!is_orientable(base)) throw ValidationError("circle_bundle needs an orientable base");
  std::vector<std::vector<bool>> none;
  for (int d = 0; d <= base.cells.dimension(); ++d) none.emplace_back(base.cells.count(d), false);
  return detail::build_bundle(base.cells, e, none);
}

/// Trivial circle bundle over a surface with boundary whose fibres over the
/// boundary are collapsed to points: the energy level over a Hill region.
inline CircleBundleModel collapsed_circle_bundle(const SurfaceModel& base) {
  if (base.closed()) throw ValidationError("collapsed_circle_bundle needs a base with boundary; use circle_bundle");
  auto bd = base.boundary_subcomplex();
  std::vector<std::vector<bool>> mask;
  for (int d = 0; d <= base.cells.dimension(); ++d) {
    mask.emplace_back(base.cells.count(d), false);
    for (std::size_t i = 0; i < base.cells.count(d); ++i) mask.back()[i] = bd.contains({d, i});
  }
  auto m = detail::build_bundle(base.cells, 0, mask);
  m.collapsed = true;
  return m;
}

}  // namespace morse_levels
