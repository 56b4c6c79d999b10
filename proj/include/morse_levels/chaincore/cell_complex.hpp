#pragma once

#include "morse_levels/numbers.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace morse_levels {

/// Handle of a cell: its dimension and its dense index within that dimension.
struct CellRef {
  int dim = 0;
  std::size_t index = 0;

  friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

inline std::string to_string(const CellRef& c) {
  return std::to_string(c.dim) + ":" + std::to_string(c.index);
}

struct BoundaryTerm {
  CellRef face;
  long long coeff = 0;

  friend bool operator==(const BoundaryTerm&, const BoundaryTerm&) = default;
};

/// Finite graded CW complex given by integer incidence data.
///
/// Cells are addressed by (dim, index) with dense indices per dimension.
/// A complex is immutable once built; use CellComplex::Builder to make one.
/// Nothing here enforces the CW invariants: see validate_complex().
class CellComplex {
 public:
  class Builder;

  CellComplex() = default;

  /// Top dimension, or -1 for the empty complex.
  int dimension() const { return static_cast<int>(dims_.size()) - 1; }

  std::size_t count(int d) const {
    if (d < 0 || d > dimension()) return 0;
    return dims_[static_cast<std::size_t>(d)].offsets.size() - 1;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (int d = 0; d <= dimension(); ++d) n += count(d);
    return n;
  }

  bool empty() const { return size() == 0; }

  bool contains(CellRef c) const { return c.index < count(c.dim); }

  std::span<const BoundaryTerm> boundary(CellRef c) const {
    const auto& layer = dims_[static_cast<std::size_t>(c.dim)];
    return {layer.terms.data() + layer.offsets[c.index], layer.terms.data() + layer.offsets[c.index + 1]};
  }

  /// Label of a cell (empty unless the builder set one).
  std::string label(CellRef c) const {
    const auto& layer = dims_[static_cast<std::size_t>(c.dim)];
    if (layer.labels.empty()) return {};
    return layer.labels[c.index];
  }

  bool has_labels() const {
    return std::any_of(dims_.begin(), dims_.end(), [](const Layer& l) { return !l.labels.empty(); });
  }

  /// Per-dimension cell counts, index = dimension.
  std::vector<std::size_t> counts() const {
    std::vector<std::size_t> out;
    for (int d = 0; d <= dimension(); ++d) out.push_back(count(d));
    return out;
  }

  friend bool operator==(const CellComplex& a, const CellComplex& b) {
    if (a.dimension() != b.dimension()) return false;
    for (int d = 0; d <= a.dimension(); ++d) {
      if (a.count(d) != b.count(d)) return false;
      for (std::size_t i = 0; i < a.count(d); ++i) {
        CellRef c{d, i};
        auto x = a.boundary(c);
        auto y = b.boundary(c);
        if (!std::equal(x.begin(), x.end(), y.begin(), y.end())) return false;
        if (a.label(c) != b.label(c)) return false;
      }
    }
    return true;
  }

 private:
  struct Layer {
    std::vector<std::size_t> offsets{0};
    std::vector<BoundaryTerm> terms;
    std::vector<std::string> labels;  // empty, or one per cell
  };
  std::vector<Layer> dims_;
};

class CellComplex::Builder {
 public:
  Builder() = default;

  /// Appends a cell of dimension `dim`. Terms are stored as given (zero
  /// coefficients dropped, repeated faces merged).
  CellRef add_cell(int dim, std::vector<BoundaryTerm> terms = {}, std::string label = {}) {
    if (dim < 0) throw ValidationError("cell dimension must be non-negative");
    ensure_dim(dim);
    auto& layer = complex_.dims_[static_cast<std::size_t>(dim)];
    std::size_t index = layer.offsets.size() - 1;
    std::sort(terms.begin(), terms.end(),
              [](const BoundaryTerm& x, const BoundaryTerm& y) { return x.face < y.face; });
    std::size_t start = layer.terms.size();
    for (auto& t : terms) {
      if (layer.terms.size() > start && layer.terms.back().face == t.face) {
        layer.terms.back().coeff += t.coeff;
        if (layer.terms.back().coeff == 0) layer.terms.pop_back();
      } else if (t.coeff != 0) {
        layer.terms.push_back(t);
      }
    }
    layer.offsets.push_back(layer.terms.size());
    if (!label.empty() || !layer.labels.empty()) {
      layer.labels.resize(index);
      layer.labels.push_back(std::move(label));
    }
    return {dim, index};
  }

  /// Makes sure dimensions 0..dim exist even if they stay empty.
  void ensure_dim(int dim) {
    while (complex_.dimension() < dim) complex_.dims_.emplace_back();
  }

  std::size_t count(int d) const { return complex_.count(d); }

  CellComplex build() && {
    // trailing empty dimensions carry no information
    while (!complex_.dims_.empty() && complex_.dims_.back().offsets.size() == 1) complex_.dims_.pop_back();
    for (auto& layer : complex_.dims_)
      if (!layer.labels.empty()) layer.labels.resize(layer.offsets.size() - 1);
    return std::move(complex_);
  }

 private:
  CellComplex complex_;
};

// ---------------------------------------------------------------------------
// Subcomplexes

/// Membership mask over the cells of a complex.
class Subcomplex {
 public:
  Subcomplex() = default;
  explicit Subcomplex(const CellComplex& c) {
    for (int d = 0; d <= c.dimension(); ++d) member_.emplace_back(c.count(d), false);
  }

  static Subcomplex all(const CellComplex& c) {
    Subcomplex s(c);
    for (auto& layer : s.member_) std::fill(layer.begin(), layer.end(), true);
    return s;
  }

  bool contains(CellRef r) const {
    if (r.dim < 0 || r.dim >= static_cast<int>(member_.size())) return false;
    const auto& layer = member_[static_cast<std::size_t>(r.dim)];
    return r.index < layer.size() && layer[r.index];
  }

  void insert(CellRef r) {
    if (r.dim < 0 || r.dim >= static_cast<int>(member_.size()) ||
        r.index >= member_[static_cast<std::size_t>(r.dim)].size())
      throw ValidationError("subcomplex cell " + to_string(r) + " is not a cell of the complex");
    member_[static_cast<std::size_t>(r.dim)][r.index] = true;
  }

  void erase(CellRef r) {
    if (contains(r)) member_[static_cast<std::size_t>(r.dim)][r.index] = false;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& layer : member_) n += static_cast<std::size_t>(std::count(layer.begin(), layer.end(), true));
    return n;
  }

  std::vector<CellRef> cells() const {
    std::vector<CellRef> out;
    for (std::size_t d = 0; d < member_.size(); ++d)
      for (std::size_t i = 0; i < member_[d].size(); ++i)
        if (member_[d][i]) out.push_back({static_cast<int>(d), i});
    return out;
  }

  bool matches(const CellComplex& c) const {
    if (static_cast<int>(member_.size()) != c.dimension() + 1) return false;
    for (int d = 0; d <= c.dimension(); ++d)
      if (member_[static_cast<std::size_t>(d)].size() != c.count(d)) return false;
    return true;
  }

 private:
  std::vector<std::vector<bool>> member_;
};

inline Subcomplex make_subcomplex(const CellComplex& c, const std::vector<CellRef>& cells) {
  Subcomplex s(c);
  for (const auto& r : cells) s.insert(r);
  return s;
}

/// Smallest face-closed subcomplex containing `s`.
inline Subcomplex face_closure(const CellComplex& c, Subcomplex s) {
  for (int d = c.dimension(); d >= 1; --d)
    for (std::size_t i = 0; i < c.count(d); ++i)
      if (s.contains({d, i}))
        for (const auto& t : c.boundary({d, i})) s.insert(t.face);
  return s;
}

/// First cell of `s` that has a face outside `s`, if any.
inline std::optional<CellRef> first_open_cell(const CellComplex& c, const Subcomplex& s) {
  for (int d = 1; d <= c.dimension(); ++d)
    for (std::size_t i = 0; i < c.count(d); ++i)
      if (s.contains({d, i}))
        for (const auto& t : c.boundary({d, i}))
          if (!s.contains(t.face)) return CellRef{d, i};
  return std::nullopt;
}

inline void require_face_closed(const CellComplex& c, const Subcomplex& s) {
  if (!s.matches(c)) throw ValidationError("subcomplex mask does not match the complex");
  if (auto open = first_open_cell(c, s))
    throw ValidationError("subcomplex is not closed under faces: cell " + to_string(*open) +
                          " has a face outside it");
}

// ---------------------------------------------------------------------------
// Validation

enum class IssueKind { DanglingFace, DimensionGap, NonzeroSquare, NotSimplicial };

inline std::string to_string(IssueKind k) {
  switch (k) {
    case IssueKind::DanglingFace: return "dangling face";
    case IssueKind::DimensionGap: return "dimension gap";
    case IssueKind::NonzeroSquare: return "boundary of boundary nonzero";
    case IssueKind::NotSimplicial: return "not simplicial";
  }
  return "unknown";
}

struct ValidationIssue {
  IssueKind kind;
  CellRef cell;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool valid() const { return issues.empty(); }
  bool has(IssueKind k) const {
    return std::any_of(issues.begin(), issues.end(), [k](const ValidationIssue& i) { return i.kind == k; });
  }
};

struct ValidationOptions {
  /// Also require +-1 incidences and exactly d+1 facets per d-cell.
  bool simplicial = false;
};

/// Checks the structural invariants of a complex. Problems are reported,
/// never thrown.
inline ValidationReport validate_complex(const CellComplex& c, ValidationOptions opts = {}) {
  ValidationReport report;
  auto add = [&](IssueKind k, CellRef cell, std::string msg) {
    report.issues.push_back({k, cell, to_string(k) + " at cell " + to_string(cell) + ": " + std::move(msg)});
  };

  for (int d = 0; d <= c.dimension(); ++d) {
    for (std::size_t i = 0; i < c.count(d); ++i) {
      CellRef cell{d, i};
      bool faces_ok = true;
      for (const auto& t : c.boundary(cell)) {
        if (t.face.dim != d - 1) {
          add(IssueKind::DimensionGap, cell,
              "face " + to_string(t.face) + " has dimension " + std::to_string(t.face.dim));
          faces_ok = false;
        } else if (!c.contains(t.face)) {
          add(IssueKind::DanglingFace, cell, "face " + to_string(t.face) + " does not exist");
          faces_ok = false;
        }
      }
      if (!faces_ok || d < 2) {
        if (opts.simplicial && faces_ok) {
          auto b = c.boundary(cell);
          bool unit = std::all_of(b.begin(), b.end(), [](const BoundaryTerm& t) { return t.coeff == 1 || t.coeff == -1; });
          if (b.size() != static_cast<std::size_t>(d == 0 ? 0 : d + 1) || !unit)
            add(IssueKind::NotSimplicial, cell, "expected " + std::to_string(d == 0 ? 0 : d + 1) + " unit facets");
        }
        continue;
      }
      std::map<std::size_t, long long> square;
      for (const auto& t : c.boundary(cell))
        for (const auto& u : c.boundary(t.face)) {
          if (u.face.dim != d - 2 || !c.contains(u.face)) continue;  // reported at the face itself
          square[u.face.index] += t.coeff * u.coeff;
        }
      for (const auto& [face, coeff] : square) {
        if (coeff != 0) {
          add(IssueKind::NonzeroSquare, cell,
              "coefficient " + std::to_string(coeff) + " on cell " + to_string(CellRef{d - 2, face}));
          break;
        }
      }
      if (opts.simplicial) {
        auto b = c.boundary(cell);
        bool unit = std::all_of(b.begin(), b.end(), [](const BoundaryTerm& t) { return t.coeff == 1 || t.coeff == -1; });
        if (b.size() != static_cast<std::size_t>(d + 1) || !unit)
          add(IssueKind::NotSimplicial, cell, "expected " + std::to_string(d + 1) + " unit facets");
      }
    }
  }
  return report;
}

/// Throws InvariantViolation with the first issue if `c` is invalid.
inline void require_valid(const CellComplex& c, std::string_view context) {
  auto report = validate_complex(c);
  if (!report.valid())
    throw InvariantViolation(std::string(context) + ": " + report.issues.front().message);
}

inline long long euler_characteristic(const CellComplex& c) {
  long long chi = 0;
  for (int d = 0; d <= c.dimension(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(c.count(d));
  return chi;
}

}  // namespace morse_levels
