#pragma once

#include "morse_levels/chaincore/cell_complex.hpp"
#include "morse_levels/chaincore/simplicial.hpp"
#include "morse_levels/homology/homology.hpp"
#include "morse_levels/numbers.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace morse_levels {

/// Simplexwise-linear function given by exact vertex values.
///
/// With `perturb` on (the default) vertex i carries the value
/// v_i + (i + 1) eps for an infinitesimal eps > 0, so no vertex sits on a
/// level and no two vertices tie. A vertex whose value equals a level is
/// therefore above it. With `perturb` off such levels are rejected.
class PLScalarField {
 public:
  PLScalarField(SimplicialComplex base, std::vector<Rational> values, bool perturb = true)
      : base_(std::move(base)), values_(std::move(values)), perturb_(perturb) {
    if (values_.size() != base_.vertex_count())
      throw ValidationError("field has " + std::to_string(values_.size()) + " values for " +
                            std::to_string(base_.vertex_count()) + " vertices");
    cells_ = base_.to_cell_complex();
  }

  const SimplicialComplex& base() const { return base_; }
  const CellComplex& cells() const { return cells_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& value(int v) const { return values_[static_cast<std::size_t>(v)]; }
  bool perturbed() const { return perturb_; }

  /// Whether vertex v lies strictly below level a (after perturbation).
  bool below(int v, const Rational& a) const {
    const Rational& x = value(v);
    if (x < a) return true;
    if (x > a) return false;
    if (!perturb_)
      throw ValidationError("level " + to_string(a) + " equals the value of vertex " + std::to_string(v) +
                            " and perturbation is off");
    return false;
  }

  /// Total order on vertices used by the perturbation.
  bool lower(int u, int v) const {
    if (value(u) != value(v)) return value(u) < value(v);
    return u < v;
  }

  PLScalarField negated() const {
    // the perturbation does not negate; exact when no level hits a value
    std::vector<Rational> neg;
    for (const auto& x : values_) neg.push_back(-x);
    return PLScalarField(base_, std::move(neg), perturb_);
  }

 private:
  SimplicialComplex base_;
  std::vector<Rational> values_;
  bool perturb_;
  CellComplex cells_;
};

namespace detail {

struct LevelSides {
  std::vector<unsigned char> below;  // per vertex
};

inline LevelSides sides(const PLScalarField& f, const Rational& a) {
  LevelSides s;
  s.below.resize(f.base().vertex_count());
  for (std::size_t v = 0; v < s.below.size(); ++v) s.below[v] = f.below(static_cast<int>(v), a);
  return s;
}

inline bool straddles(const Simplex& t, const LevelSides& s) {
  bool lo = false, hi = false;
  for (int v : t) (s.below[static_cast<std::size_t>(v)] ? lo : hi) = true;
  return lo && hi;
}

/// +1 when the edge runs upward through the level (first vertex below).
inline long long crossing_sign(const Simplex& edge, const LevelSides& s) {
  return s.below[static_cast<std::size_t>(edge[0])] ? 1 : -1;
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

/// Slice cells of one level inside an output complex under construction:
/// index[d][i] is the output index of the slice of simplex (d, i), a cell of
/// dimension d - 1.
struct SliceCells {
  std::vector<std::vector<std::size_t>> index;
};

inline SliceCells number_slice(const PLScalarField& f, const LevelSides& s, std::vector<std::size_t>& next) {
  SliceCells out;
  const int top = f.base().dimension();
  out.index.resize(static_cast<std::size_t>(top + 1));
  for (int d = 1; d <= top; ++d) {
    auto& idx = out.index[static_cast<std::size_t>(d)];
    idx.assign(f.base().count(d), kNone);
    for (std::size_t i = 0; i < f.base().count(d); ++i)
      if (straddles(f.base().simplices(d)[i], s)) idx[i] = next[static_cast<std::size_t>(d - 1)]++;
  }
  return out;
}

inline std::vector<BoundaryTerm> slice_boundary(const PLScalarField& f, const LevelSides& s, const SliceCells& sc,
                                                int d, std::size_t i) {
  std::vector<BoundaryTerm> terms;
  if (d < 2) return terms;
  for (const auto& t : f.cells().boundary({d, i})) {
    std::size_t face = sc.index[static_cast<std::size_t>(d - 1)][t.face.index];
    if (face == kNone) continue;
    long long c = t.coeff;
    if (d == 2) c *= crossing_sign(f.base().simplices(1)[t.face.index], s);
    terms.push_back({{d - 2, face}, c});
  }
  return terms;
}

}  // namespace detail

/// Level set f^{-1}(a) as a polytopal complex: one (d-1)-cell per d-simplex
/// whose vertices straddle a.
inline CellComplex slice(const PLScalarField& f, const Rational& a) {
  auto s = detail::sides(f, a);
  const int top = f.base().dimension();
  std::vector<std::size_t> next(static_cast<std::size_t>(std::max(top, 1)), 0);
  auto sc = detail::number_slice(f, s, next);
  CellComplex::Builder b;
  for (int d = 1; d <= top; ++d)
    for (std::size_t i = 0; i < f.base().count(d); ++i)
      if (sc.index[static_cast<std::size_t>(d)][i] != detail::kNone)
        b.add_cell(d - 1, detail::slice_boundary(f, s, sc, d, i));
  return std::move(b).build();
}

/// {lo <= f <= hi}; either bound may be absent. Each simplex meeting the
/// region contributes its truncation; truncation faces on the two levels
/// are slice cells.
inline CellComplex region_complex(const PLScalarField& f, const std::optional<Rational>& lo,
                                  const std::optional<Rational>& hi) {
  if (lo && hi && !(*lo < *hi)) throw ValidationError("region needs lo < hi");
  const SimplicialComplex& k = f.base();
  const int top = k.dimension();
  std::optional<detail::LevelSides> sl, sh;
  if (lo) sl = detail::sides(f, *lo);
  if (hi) sh = detail::sides(f, *hi);

  auto inside = [&](const Simplex& t) {
    bool above_lo = !sl, below_hi = !sh;
    for (int v : t) {
      if (sl && !sl->below[static_cast<std::size_t>(v)]) above_lo = true;
      if (sh && sh->below[static_cast<std::size_t>(v)]) below_hi = true;
    }
    return above_lo && below_hi;
  };

  // numbering: per output dimension, interior cells, then lo cells, then hi cells
  std::vector<std::size_t> next(static_cast<std::size_t>(top + 1), 0);
  std::vector<std::vector<std::size_t>> interior(static_cast<std::size_t>(top + 1));
  for (int d = 0; d <= top; ++d) {
    auto& idx = interior[static_cast<std::size_t>(d)];
    idx.assign(k.count(d), detail::kNone);
    for (std::size_t i = 0; i < k.count(d); ++i)
      if (inside(k.simplices(d)[i])) idx[i] = next[static_cast<std::size_t>(d)]++;
  }
  detail::SliceCells lo_cells, hi_cells;
  if (sl) lo_cells = detail::number_slice(f, *sl, next);
  if (sh) hi_cells = detail::number_slice(f, *sh, next);

  CellComplex::Builder b;
  for (int d = 0; d <= top; ++d) {
    b.ensure_dim(d);
    for (std::size_t i = 0; i < k.count(d); ++i) {
      if (interior[static_cast<std::size_t>(d)][i] == detail::kNone) continue;
      std::vector<BoundaryTerm> terms;
      for (const auto& t : f.cells().boundary({d, i})) {
        std::size_t face = interior[static_cast<std::size_t>(d - 1)][t.face.index];
        if (face != detail::kNone) terms.push_back({{d - 1, face}, t.coeff});
      }
      const Simplex& tau = k.simplices(d)[i];
      if (sl && d >= 1 && lo_cells.index[static_cast<std::size_t>(d)][i] != detail::kNone) {
        long long alpha = d == 1 ? -detail::crossing_sign(tau, *sl) : (d % 2 == 0 ? 1 : -1);
        terms.push_back({{d - 1, lo_cells.index[static_cast<std::size_t>(d)][i]}, alpha});
      }
      if (sh && d >= 1 && hi_cells.index[static_cast<std::size_t>(d)][i] != detail::kNone) {
        long long beta = d == 1 ? detail::crossing_sign(tau, *sh) : (d % 2 == 0 ? -1 : 1);
        terms.push_back({{d - 1, hi_cells.index[static_cast<std::size_t>(d)][i]}, beta});
      }
      b.add_cell(d, std::move(terms));
    }
    if (d + 1 <= top) {
      if (sl)
        for (std::size_t i = 0; i < k.count(d + 1); ++i)
          if (lo_cells.index[static_cast<std::size_t>(d + 1)][i] != detail::kNone)
            b.add_cell(d, detail::slice_boundary(f, *sl, lo_cells, d + 1, i));
      if (sh)
        for (std::size_t i = 0; i < k.count(d + 1); ++i)
          if (hi_cells.index[static_cast<std::size_t>(d + 1)][i] != detail::kNone)
            b.add_cell(d, detail::slice_boundary(f, *sh, hi_cells, d + 1, i));
    }
  }
  return std::move(b).build();
}

/// Truncation {f <= a}.
inline CellComplex sublevel_complex(const PLScalarField& f, const Rational& a) {
  return region_complex(f, std::nullopt, a);
}

/// Full subcomplex on the vertices below a; a deformation retract of {f <= a}.
inline Subcomplex lower_star_subcomplex(const PLScalarField& f, const Rational& a) {
  auto s = detail::sides(f, a);
  Subcomplex out(f.cells());
  for (int d = 0; d <= f.base().dimension(); ++d)
    for (std::size_t i = 0; i < f.base().count(d); ++i) {
      bool all = true;
      for (int v : f.base().simplices(d)[i]) all = all && s.below[static_cast<std::size_t>(v)];
      if (all) out.insert({d, i});
    }
  return out;
}

// ---------------------------------------------------------------------------
// Critical vertices

enum class VertexType { Regular, Critical, Degenerate };

struct CriticalVertex {
  int vertex = 0;
  Rational value;
  VertexType type = VertexType::Regular;
  int index = -1;  // Morse index for Critical vertices
  std::vector<std::size_t> reduced_betti;  // reduced F_2 Betti numbers of the lower link
};

/// Classifies each vertex by the reduced F_2 homology of its lower link:
/// a single class in degree k-1 (the empty link counting as degree -1)
/// makes it critical of index k; no homology means regular.
inline std::vector<CriticalVertex> classify_vertices(const PLScalarField& f) {
  std::vector<CriticalVertex> out;
  const auto& k = f.base();
  for (int v = 0; v < static_cast<int>(k.vertex_count()); ++v) {
    std::vector<Simplex> lower_link;
    for (auto& s : k.link(v)) {
      bool all = true;
      for (int w : s) all = all && f.lower(w, v);
      if (all) lower_link.push_back(s);
    }
    CriticalVertex cv;
    cv.vertex = v;
    cv.value = f.value(v);
    if (lower_link.empty()) {
      cv.type = VertexType::Critical;
      cv.index = 0;
      out.push_back(cv);
      continue;
    }
    // relabel to a compact vertex range
    std::map<int, int> relabel;
    for (auto& s : lower_link)
      for (int w : s) relabel.emplace(w, 0);
    int n = 0;
    for (auto& [w, idx] : relabel) idx = n++;
    std::vector<Simplex> gens;
    for (auto s : lower_link) {
      for (int& w : s) w = relabel.at(w);
      gens.push_back(std::move(s));
    }
    SimplicialComplex link(gens, n);
    auto h = homology_field(link.to_cell_complex(), CoefficientSpec::prime_field(2));
    cv.reduced_betti = h.betti_vector();
    cv.reduced_betti[0] -= 1;
    std::size_t total = 0;
    int where = -1;
    for (std::size_t d = 0; d < cv.reduced_betti.size(); ++d) {
      total += cv.reduced_betti[d];
      if (cv.reduced_betti[d]) where = static_cast<int>(d);
    }
    if (total == 0) {
      cv.type = VertexType::Regular;
    } else if (total == 1) {
      cv.type = VertexType::Critical;
      cv.index = where + 1;
    } else {
      cv.type = VertexType::Degenerate;
    }
    out.push_back(cv);
  }
  return out;
}

/// Only the critical and degenerate vertices, in increasing perturbed order.
inline std::vector<CriticalVertex> critical_vertices(const PLScalarField& f) {
  std::vector<CriticalVertex> out;
  for (auto& cv : classify_vertices(f))
    if (cv.type != VertexType::Regular) out.push_back(std::move(cv));
  std::sort(out.begin(), out.end(),
            [&](const CriticalVertex& a, const CriticalVertex& b) { return f.lower(a.vertex, b.vertex); });
  return out;
}

}  // namespace morse_levels
