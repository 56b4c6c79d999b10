#pragma once

#include "morse_levels/chaincore/cell_complex.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace morse_levels {

using Simplex = std::vector<int>;  // sorted vertex ids

/// Abstract simplicial complex generated by a list of simplices. All faces
/// are added; simplices of each dimension are stored in lexicographic order,
/// which also fixes the cell indices of to_cell_complex().
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  explicit SimplicialComplex(const std::vector<Simplex>& generators, int vertex_count = -1) {
    int max_vertex = -1;
    std::vector<std::vector<Simplex>> by_dim;
    auto add = [&](Simplex s) {
      auto d = static_cast<std::size_t>(s.size() - 1);
      if (by_dim.size() <= d) by_dim.resize(d + 1);
      by_dim[d].push_back(std::move(s));
    };
    for (auto s : generators) {
      if (s.empty()) continue;
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw ValidationError("simplex with a repeated vertex");
      if (s.front() < 0) throw ValidationError("negative vertex id");
      max_vertex = std::max(max_vertex, s.back());
      // every non-empty subset
      const std::size_t n = s.size();
      if (n > 20) throw ValidationError("simplex dimension too large");
      for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
        Simplex face;
        for (std::size_t i = 0; i < n; ++i)
          if (mask & (1UL << i)) face.push_back(s[i]);
        add(std::move(face));
      }
    }
    if (vertex_count < 0) vertex_count = max_vertex + 1;
    if (max_vertex >= vertex_count) throw ValidationError("vertex id exceeds vertex count");
    if (by_dim.empty()) by_dim.resize(1);
    for (int v = 0; v < vertex_count; ++v) by_dim[0].push_back({v});
    for (auto& layer : by_dim) {
      std::sort(layer.begin(), layer.end());
      layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
    }
    while (!by_dim.empty() && by_dim.back().empty()) by_dim.pop_back();
    simplices_ = std::move(by_dim);
    for (std::size_t d = 0; d < simplices_.size(); ++d)
      for (std::size_t i = 0; i < simplices_[d].size(); ++i) index_.emplace(simplices_[d][i], i);
  }

  int dimension() const { return static_cast<int>(simplices_.size()) - 1; }
  std::size_t vertex_count() const { return simplices_.empty() ? 0 : simplices_[0].size(); }
  std::size_t count(int d) const {
    return (d < 0 || d > dimension()) ? 0 : simplices_[static_cast<std::size_t>(d)].size();
  }

  const std::vector<Simplex>& simplices(int d) const { return simplices_[static_cast<std::size_t>(d)]; }
  const Simplex& simplex(CellRef r) const { return simplices_[static_cast<std::size_t>(r.dim)][r.index]; }

  std::optional<std::size_t> find(const Simplex& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Top-dimensional simplices and every simplex that is not a face of another.
  std::vector<Simplex> maximal_simplices() const {
    std::vector<Simplex> out;
    for (int d = dimension(); d >= 0; --d)
      for (const auto& s : simplices(d)) {
        bool covered = false;
        if (d < dimension())
          for (const auto& t : simplices(d + 1))
            if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
              covered = true;
              break;
            }
        if (!covered) out.push_back(s);
      }
    return out;
  }

  /// Cellular chain complex with d[v0..vd] = sum_i (-1)^i [.. ^vi ..].
  CellComplex to_cell_complex() const {
    CellComplex::Builder b;
    for (int d = 0; d <= dimension(); ++d) {
      b.ensure_dim(d);
      for (const auto& s : simplices(d)) {
        std::vector<BoundaryTerm> terms;
        if (d > 0) {
          for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex face;
            for (std::size_t j = 0; j < s.size(); ++j)
              if (j != i) face.push_back(s[j]);
            terms.push_back({{d - 1, index_.at(face)}, (i % 2 == 0) ? 1 : -1});
          }
        }
        b.add_cell(d, std::move(terms));
      }
    }
    return std::move(b).build();
  }

  /// Simplices tau with v not in tau and tau + {v} in the complex.
  std::vector<Simplex> link(int v) const {
    std::vector<Simplex> out;
    for (int d = 1; d <= dimension(); ++d)
      for (const auto& s : simplices(d))
        if (std::binary_search(s.begin(), s.end(), v)) {
          Simplex t;
          for (int w : s)
            if (w != v) t.push_back(w);
          out.push_back(std::move(t));
        }
    return out;
  }

 private:
  std::vector<std::vector<Simplex>> simplices_;
  std::map<Simplex, std::size_t> index_;
};

/// Boundary of the standard (n+1)-simplex on vertices 0..n+1: a PL n-sphere.
inline SimplicialComplex simplex_boundary(int n) {
  std::vector<Simplex> facets;
  for (int skip = 0; skip <= n + 1; ++skip) {
    Simplex f;
    for (int v = 0; v <= n + 1; ++v)
      if (v != skip) f.push_back(v);
    facets.push_back(std::move(f));
  }
  return SimplicialComplex(facets);
}

}  // namespace morse_levels
