#pragma once

#include "morse_levels/chaincore/cell_complex.hpp"
#include "morse_levels/homology/smith.hpp"

#include <vector>

namespace morse_levels {

/// Free chain complex over Z: cell counts and sparse boundary matrices.
/// boundary[d] maps C_d -> C_{d-1}; boundary[0] has zero rows.
struct ChainComplex {
  std::vector<std::size_t> counts;
  std::vector<SparseIntMatrix> boundary;

  int dimension() const { return static_cast<int>(counts.size()) - 1; }
  std::size_t count(int d) const { return (d < 0 || d > dimension()) ? 0 : counts[static_cast<std::size_t>(d)]; }

  /// The matrix of d_d, with an empty matrix of the right shape outside the range.
  SparseIntMatrix boundary_matrix(int d) const {
    if (d >= 0 && d <= dimension()) return boundary[static_cast<std::size_t>(d)];
    SparseIntMatrix m;
    m.rows = count(d - 1);
    m.columns.resize(count(d));
    return m;
  }
};

/// Cellular chain complex of c, or of the pair (c, a) when a is given:
/// cells of a are deleted and the remaining cells renumbered in order.
inline ChainComplex chain_complex(const CellComplex& c, const Subcomplex* a = nullptr) {
  if (a) require_face_closed(c, *a);
  ChainComplex out;
  const int top = c.dimension();
  std::vector<std::vector<std::size_t>> index(static_cast<std::size_t>(top + 1));
  constexpr std::size_t gone = static_cast<std::size_t>(-1);
  for (int d = 0; d <= top; ++d) {
    auto& idx = index[static_cast<std::size_t>(d)];
    idx.assign(c.count(d), gone);
    std::size_t next = 0;
    for (std::size_t i = 0; i < c.count(d); ++i)
      if (!a || !a->contains({d, i})) idx[i] = next++;
    out.counts.push_back(next);
  }
  for (int d = 0; d <= top; ++d) {
    SparseIntMatrix m;
    m.rows = d == 0 ? 0 : out.counts[static_cast<std::size_t>(d - 1)];
    m.columns.resize(out.counts[static_cast<std::size_t>(d)]);
    const auto& idx = index[static_cast<std::size_t>(d)];
    for (std::size_t i = 0; i < c.count(d); ++i) {
      if (idx[i] == gone) continue;
      auto& col = m.columns[idx[i]];
      for (const auto& t : c.boundary({d, i})) {
        std::size_t row = index[static_cast<std::size_t>(d - 1)][t.face.index];
        if (row != gone) col.push_back({row, t.coeff});
      }
    }
    out.boundary.push_back(std::move(m));
  }
  return out;
}

/// Chain map given by one integer matrix per dimension
/// (rows: target cells, columns: source cells).
struct ChainMap {
  std::vector<IntMatrix> components;

  const IntMatrix* component(int d) const {
    return (d < 0 || d >= static_cast<int>(components.size())) ? nullptr : &components[static_cast<std::size_t>(d)];
  }
};

namespace detail {

inline std::vector<Integer> apply(const SparseIntMatrix& m, const std::vector<Integer>& v) {
  std::vector<Integer> out(m.rows);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (v[c] == 0) continue;
    for (const auto& [r, x] : m.columns[c]) out[r] += v[c] * x;
  }
  return out;
}

inline std::vector<Integer> apply_map(const ChainMap& f, int d, std::size_t target_count, const std::vector<Integer>& v) {
  const IntMatrix* m = f.component(d);
  if (!m) return std::vector<Integer>(target_count);
  return (*m) * v;
}

}  // namespace detail

/// Throws ValidationError naming the first source cell where f d != d f,
/// or where the component shapes do not fit.
inline void require_chain_map(const ChainMap& f, const ChainComplex& source, const ChainComplex& target) {
  const int top = std::max(source.dimension(), target.dimension());
  for (int d = 0; d <= top; ++d) {
    // a missing component is read as zero
    if (const IntMatrix* m = f.component(d))
      if (m->rows() != target.count(d) || m->cols() != source.count(d))
        throw ValidationError("chain map component in dimension " + std::to_string(d) + " has the wrong shape");
  }
  for (int d = 1; d <= source.dimension(); ++d) {
    auto src_bd = source.boundary_matrix(d);
    auto tgt_bd = target.boundary_matrix(d);
    for (std::size_t i = 0; i < source.count(d); ++i) {
      std::vector<Integer> e(source.count(d));
      e[i] = 1;
      auto lhs = detail::apply_map(f, d - 1, target.count(d - 1), detail::apply(src_bd, e));
      auto rhs = detail::apply(tgt_bd, detail::apply_map(f, d, target.count(d), e));
      if (lhs != rhs)
        throw ValidationError("not a chain map: boundary does not commute at source cell " +
                              to_string(CellRef{d, i}));
    }
  }
}

/// Chain map induced by a cell-to-cell assignment (cells sent to npos map to 0).
inline ChainMap cellular_map(const std::vector<std::vector<std::size_t>>& assignment,
                             const std::vector<std::size_t>& source_counts,
                             const std::vector<std::size_t>& target_counts) {
  ChainMap f;
  for (std::size_t d = 0; d < source_counts.size(); ++d) {
    std::size_t rows = d < target_counts.size() ? target_counts[d] : 0;
    IntMatrix m(rows, source_counts[d]);
    for (std::size_t i = 0; i < source_counts[d]; ++i) {
      std::size_t j = assignment[d][i];
      if (j != static_cast<std::size_t>(-1)) m(j, i) = 1;
    }
    f.components.push_back(std::move(m));
  }
  return f;
}

struct PairMaps {
  ChainComplex sub, whole, relative;
  ChainMap inclusion;   // sub -> whole
  ChainMap projection;  // whole -> relative
};

/// Chain complexes of A, X and (X, A) with the maps of the short exact sequence.
inline PairMaps pair_maps(const CellComplex& x, const Subcomplex& a) {
  require_face_closed(x, a);
  PairMaps out;
  out.whole = chain_complex(x);
  out.relative = chain_complex(x, &a);
  // chain complex of A, cells renumbered in order
  const int top = x.dimension();
  std::vector<std::vector<std::size_t>> sub_index(static_cast<std::size_t>(top + 1)),
      rel_index(static_cast<std::size_t>(top + 1));
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  for (int d = 0; d <= top; ++d) {
    std::size_t ns = 0, nr = 0;
    for (std::size_t i = 0; i < x.count(d); ++i) {
      bool in_a = a.contains({d, i});
      sub_index[static_cast<std::size_t>(d)].push_back(in_a ? ns++ : none);
      rel_index[static_cast<std::size_t>(d)].push_back(in_a ? none : nr++);
    }
    out.sub.counts.push_back(ns);
  }
  for (int d = 0; d <= top; ++d) {
    SparseIntMatrix m;
    m.rows = d == 0 ? 0 : out.sub.counts[static_cast<std::size_t>(d - 1)];
    m.columns.resize(out.sub.counts[static_cast<std::size_t>(d)]);
    for (std::size_t i = 0; i < x.count(d); ++i) {
      std::size_t si = sub_index[static_cast<std::size_t>(d)][i];
      if (si == none) continue;
      for (const auto& t : x.boundary({d, i}))
        m.columns[si].push_back({sub_index[static_cast<std::size_t>(d - 1)][t.face.index], t.coeff});
    }
    out.sub.boundary.push_back(std::move(m));
  }
  std::vector<std::vector<std::size_t>> incl(static_cast<std::size_t>(top + 1)), proj(static_cast<std::size_t>(top + 1));
  for (int d = 0; d <= top; ++d) {
    const auto ud = static_cast<std::size_t>(d);
    incl[ud].assign(out.sub.counts[ud], none);
    for (std::size_t i = 0; i < x.count(d); ++i)
      if (sub_index[ud][i] != none) incl[ud][sub_index[ud][i]] = i;
    proj[ud] = rel_index[ud];
  }
  out.inclusion = cellular_map(incl, out.sub.counts, out.whole.counts);
  out.projection = cellular_map(proj, out.whole.counts, out.relative.counts);
  return out;
}

}  // namespace morse_levels
