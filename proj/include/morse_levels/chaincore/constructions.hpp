#pragma once

#include "morse_levels/chaincore/cell_complex.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace morse_levels {

namespace detail {

inline std::string product_label(const std::string& a, const std::string& b) {
  if (a.empty() && b.empty()) return {};
  return a + "x" + b;
}

}  // namespace detail

/// Cartesian product with the graded Leibniz boundary
///   d(s x t) = ds x t + (-1)^{dim s} s x dt.
/// Cells of dimension d are ordered by (dim s, index s, index t).
inline CellComplex product_complex(const CellComplex& a, const CellComplex& b) {
  CellComplex::Builder builder;
  if (a.empty() || b.empty()) return std::move(builder).build();

  const int top = a.dimension() + b.dimension();
  // offset[p][q]: first index of the (p, q) block inside dimension p + q
  std::vector<std::vector<std::size_t>> offset(static_cast<std::size_t>(a.dimension() + 1),
                                               std::vector<std::size_t>(static_cast<std::size_t>(b.dimension() + 1), 0));
  for (int d = 0; d <= top; ++d) {
    std::size_t running = 0;
    for (int p = 0; p <= a.dimension(); ++p) {
      int q = d - p;
      if (q < 0 || q > b.dimension()) continue;
      offset[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = running;
      running += a.count(p) * b.count(q);
    }
  }
  auto ref = [&](CellRef s, CellRef t) {
    return CellRef{s.dim + t.dim, offset[static_cast<std::size_t>(s.dim)][static_cast<std::size_t>(t.dim)] +
                                      s.index * b.count(t.dim) + t.index};
  };

  const bool labelled = a.has_labels() || b.has_labels();
  builder.ensure_dim(top);
  for (int d = 0; d <= top; ++d) {
    for (int p = 0; p <= a.dimension(); ++p) {
      int q = d - p;
      if (q < 0 || q > b.dimension()) continue;
      for (std::size_t i = 0; i < a.count(p); ++i) {
        for (std::size_t j = 0; j < b.count(q); ++j) {
          CellRef s{p, i}, t{q, j};
          std::vector<BoundaryTerm> terms;
          for (const auto& f : a.boundary(s)) terms.push_back({ref(f.face, t), f.coeff});
          long long sign = (p % 2 == 0) ? 1 : -1;
          for (const auto& g : b.boundary(t)) terms.push_back({ref(s, g.face), sign * g.coeff});
          builder.add_cell(d, std::move(terms), labelled ? detail::product_label(a.label(s), b.label(t)) : std::string{});
        }
      }
    }
  }
  return std::move(builder).build();
}

/// Index maps produced when cells are renumbered.
struct CellMap {
  /// new index per old cell, or npos if the cell was removed
  std::vector<std::vector<std::size_t>> index;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t operator()(CellRef r) const { return index[static_cast<std::size_t>(r.dim)][r.index]; }
};

/// Quotient X/A at the chain level. The cells of `s` are replaced by one
/// base vertex (always cell 0:0, label "*"); incidences of 1-cells onto
/// collapsed vertices are moved to the base vertex and incidences of higher
/// cells onto collapsed cells are dropped. For CW input the reduced homology
/// of the result is H(X, A).
inline CellComplex collapse_subcomplex(const CellComplex& c, const Subcomplex& s, CellMap* map_out = nullptr) {
  require_face_closed(c, s);
  CellMap map;
  for (int d = 0; d <= c.dimension(); ++d) {
    map.index.emplace_back(c.count(d), CellMap::npos);
    std::size_t next = d == 0 ? 1 : 0;
    for (std::size_t i = 0; i < c.count(d); ++i)
      if (!s.contains({d, i})) map.index.back()[i] = next++;
  }

  CellComplex::Builder builder;
  const bool labelled = c.has_labels();
  builder.add_cell(0, {}, "*");
  for (int d = 0; d <= c.dimension(); ++d) {
    builder.ensure_dim(d);
    for (std::size_t i = 0; i < c.count(d); ++i) {
      CellRef cell{d, i};
      if (s.contains(cell)) continue;
      std::vector<BoundaryTerm> terms;
      long long base = 0;
      for (const auto& t : c.boundary(cell)) {
        if (!s.contains(t.face))
          terms.push_back({{t.face.dim, map(t.face)}, t.coeff});
        else if (d == 1)
          base += t.coeff;
      }
      if (base != 0) terms.push_back({{0, 0}, base});
      builder.add_cell(d, std::move(terms), labelled ? c.label(cell) : std::string{});
    }
  }
  if (map_out) *map_out = std::move(map);
  return std::move(builder).build();
}

/// The face-closed subcomplex `s` as a complex of its own, cells renumbered
/// in their original order.
inline CellComplex restrict_complex(const CellComplex& c, const Subcomplex& s, CellMap* map_out = nullptr) {
  require_face_closed(c, s);
  CellMap map;
  int top = -1;
  for (int d = 0; d <= c.dimension(); ++d) {
    map.index.emplace_back(c.count(d), CellMap::npos);
    std::size_t next = 0;
    for (std::size_t i = 0; i < c.count(d); ++i)
      if (s.contains({d, i})) map.index.back()[i] = next++;
    if (next > 0) top = d;
  }
  CellComplex::Builder builder;
  const bool labelled = c.has_labels();
  for (int d = 0; d <= top; ++d) {
    builder.ensure_dim(d);
    for (std::size_t i = 0; i < c.count(d); ++i) {
      if (!s.contains({d, i})) continue;
      std::vector<BoundaryTerm> terms;
      for (const auto& t : c.boundary({d, i})) terms.push_back({{t.face.dim, map(t.face)}, t.coeff});
      builder.add_cell(d, std::move(terms), labelled ? c.label({d, i}) : std::string{});
    }
  }
  if (map_out) *map_out = std::move(map);
  return std::move(builder).build();
}

/// Image of `t` (a subset of the cells of `s`) in restrict_complex(c, s).
inline Subcomplex restrict_subcomplex(const CellComplex& restricted, const CellMap& map, const Subcomplex& t) {
  Subcomplex out(restricted);
  for (const auto& r : t.cells()) {
    const std::size_t j = map(r);
    if (j == CellMap::npos) throw ValidationError("cell " + to_string(r) + " lies outside the restricted complex");
    out.insert({r.dim, j});
  }
  return out;
}

/// Disjoint union: cells of `a` first, then those of `b` with shifted indices.
inline CellComplex disjoint_union(const CellComplex& a, const CellComplex& b) {
  CellComplex::Builder builder;
  const bool labelled = a.has_labels() || b.has_labels();
  const int top = std::max(a.dimension(), b.dimension());
  for (int d = 0; d <= top; ++d) {
    builder.ensure_dim(d);
    for (std::size_t i = 0; i < a.count(d); ++i) {
      auto bd = a.boundary({d, i});
      builder.add_cell(d, {bd.begin(), bd.end()}, labelled ? a.label({d, i}) : std::string{});
    }
    for (std::size_t i = 0; i < b.count(d); ++i) {
      std::vector<BoundaryTerm> terms;
      for (const auto& t : b.boundary({d, i}))
        terms.push_back({{t.face.dim, t.face.index + a.count(t.face.dim)}, t.coeff});
      builder.add_cell(d, std::move(terms), labelled ? b.label({d, i}) : std::string{});
    }
  }
  return std::move(builder).build();
}

/// Pushout of two labelled complexes along the cells whose labels occur in
/// both. Shared cells must have the same dimension and (after matching
/// labels) the same boundary; otherwise ValidationError.
inline CellComplex glue_by_label(const CellComplex& a, const CellComplex& b) {
  std::map<std::string, CellRef> in_a;
  for (int d = 0; d <= a.dimension(); ++d)
    for (std::size_t i = 0; i < a.count(d); ++i) {
      auto l = a.label({d, i});
      if (l.empty()) throw ValidationError("glue_by_label: unlabelled cell " + to_string(CellRef{d, i}));
      if (!in_a.emplace(l, CellRef{d, i}).second) throw ValidationError("glue_by_label: duplicate label '" + l + "'");
    }

  CellComplex::Builder builder;
  const int top = std::max(a.dimension(), b.dimension());
  std::vector<std::vector<std::size_t>> b_index;
  for (int d = 0; d <= b.dimension(); ++d) b_index.emplace_back(b.count(d));

  for (int d = 0; d <= top; ++d) {
    builder.ensure_dim(d);
    for (std::size_t i = 0; i < a.count(d); ++i) {
      auto bd = a.boundary({d, i});
      builder.add_cell(d, {bd.begin(), bd.end()}, a.label({d, i}));
    }
    for (std::size_t i = 0; i < b.count(d); ++i) {
      CellRef cell{d, i};
      auto l = b.label(cell);
      if (l.empty()) throw ValidationError("glue_by_label: unlabelled cell " + to_string(cell));
      std::vector<BoundaryTerm> terms;
      for (const auto& t : b.boundary(cell))
        terms.push_back({{t.face.dim, b_index[static_cast<std::size_t>(t.face.dim)][t.face.index]}, t.coeff});
      std::sort(terms.begin(), terms.end(), [](const BoundaryTerm& x, const BoundaryTerm& y) { return x.face < y.face; });

      if (auto it = in_a.find(l); it != in_a.end()) {
        if (it->second.dim != d)
          throw ValidationError("glue_by_label: label '" + l + "' names cells of different dimensions");
        auto existing = a.boundary(it->second);
        if (!std::equal(existing.begin(), existing.end(), terms.begin(), terms.end()))
          throw ValidationError("glue_by_label: shared cell '" + l + "' has different boundaries");
        b_index[static_cast<std::size_t>(d)][i] = it->second.index;
        continue;
      }
      b_index[static_cast<std::size_t>(d)][i] = builder.count(d);
      builder.add_cell(d, std::move(terms), l);
    }
  }
  return std::move(builder).build();
}

// ---------------------------------------------------------------------------
// Minimal CW building blocks. Labels are "<prefix><role>" so that a sphere
// S^{n-1} built with some prefix is literally the boundary of the disk D^n
// built with the same prefix, which is what glue_by_label relies on.

inline CellComplex cw_point(const std::string& prefix = "") {
  CellComplex::Builder b;
  b.add_cell(0, {}, prefix + "v");
  return std::move(b).build();
}

/// S^n with one 0-cell and one n-cell (two 0-cells for n = 0).
inline CellComplex cw_sphere(int n, const std::string& prefix = "") {
  if (n < 0) throw ValidationError("sphere dimension must be non-negative");
  CellComplex::Builder b;
  if (n == 0) {
    b.add_cell(0, {}, prefix + "a");
    b.add_cell(0, {}, prefix + "b");
  } else {
    b.add_cell(0, {}, prefix + "v");
    b.add_cell(n, {}, prefix + "s");
  }
  return std::move(b).build();
}

/// D^n whose boundary subcomplex is cw_sphere(n - 1, prefix). The interior
/// cell is labelled prefix + interior, so two disks with different
/// `interior` tags share exactly their boundary.
inline CellComplex cw_disk(int n, const std::string& prefix = "", const std::string& interior = "d") {
  if (n < 0) throw ValidationError("disk dimension must be non-negative");
  CellComplex::Builder b;
  if (n == 0) {
    b.add_cell(0, {}, prefix + "v");
  } else if (n == 1) {
    auto a = b.add_cell(0, {}, prefix + "a");
    auto z = b.add_cell(0, {}, prefix + "b");
    b.add_cell(1, {{z, 1}, {a, -1}}, prefix + interior);
  } else {
    b.add_cell(0, {}, prefix + "v");
    auto s = b.add_cell(n - 1, {}, prefix + "s");
    b.add_cell(n, {{s, 1}}, prefix + interior);
  }
  return std::move(b).build();
}

/// Cells of `c` whose label is accepted by `pred`, closed under faces.
template <class Pred>
Subcomplex labelled_subcomplex(const CellComplex& c, Pred pred) {
  Subcomplex s(c);
  for (int d = 0; d <= c.dimension(); ++d)
    for (std::size_t i = 0; i < c.count(d); ++i)
      if (pred(c.label({d, i}))) s.insert({d, i});
  return face_closure(c, std::move(s));
}

}  // namespace morse_levels
