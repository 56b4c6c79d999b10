#pragma once

#include "morse_levels/chaincore/simplicial.hpp"
#include "morse_levels/homology/homology.hpp"

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace morse_levels {

/// Triangulated surface, possibly with boundary.
struct SurfaceModel {
  SimplicialComplex tri;
  CellComplex cells;
  std::vector<std::vector<int>> boundary;  // boundary circles as vertex cycles
  std::vector<double> height;              // optional per-vertex coordinate (latitude models)

  bool closed() const { return boundary.empty(); }

  /// Boundary as a subcomplex of `cells`.
  Subcomplex boundary_subcomplex() const {
    Subcomplex s(cells);
    for (const auto& circle : boundary)
      for (std::size_t i = 0; i < circle.size(); ++i) {
        int a = circle[i], b = circle[(i + 1) % circle.size()];
        if (a > b) std::swap(a, b);
        s.insert({0, *tri.find({a})});
        s.insert({0, *tri.find({b})});
        s.insert({1, *tri.find({a, b})});
      }
    return s;
  }
};

namespace detail {

// Walks the edges that lie in exactly one triangle into cycles.
inline std::vector<std::vector<int>> boundary_cycles(const SimplicialComplex& k) {
  std::map<std::pair<int, int>, int> uses;
  for (const auto& t : k.simplices(2))
    for (int i = 0; i < 3; ++i) {
      Simplex e;
      for (int j = 0; j < 3; ++j)
        if (j != i) e.push_back(t[static_cast<std::size_t>(j)]);
      uses[{e[0], e[1]}] += 1;
    }
  std::map<int, std::vector<int>> adj;
  for (const auto& [e, n] : uses) {
    if (n > 2) throw ValidationError("edge in more than two triangles: not a surface");
    if (n == 1) {
      adj[e.first].push_back(e.second);
      adj[e.second].push_back(e.first);
    }
  }
  for (const auto& [v, nb] : adj)
    if (nb.size() != 2) throw ValidationError("boundary vertex " + std::to_string(v) + " is not on a single circle");
  std::vector<std::vector<int>> out;
  std::map<int, bool> seen;
  for (const auto& [start, nb] : adj) {
    if (seen[start]) continue;
    std::vector<int> cyc{start};
    seen[start] = true;
    int prev = start, cur = nb[0];
    while (cur != start) {
      cyc.push_back(cur);
      seen[cur] = true;
      const auto& n2 = adj[cur];
      int next = n2[0] == prev ? n2[1] : n2[0];
      prev = cur;
      cur = next;
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

}  // namespace detail

/// Checks that `k` is a pure 2-dimensional surface (interior links circles,
/// boundary links arcs) and records its boundary.
inline SurfaceModel make_surface(SimplicialComplex k) {
  if (k.dimension() != 2) throw ValidationError("surface must be 2-dimensional");
  SurfaceModel s;
  s.boundary = detail::boundary_cycles(k);
  std::vector<bool> on_boundary(k.vertex_count(), false);
  for (const auto& c : s.boundary)
    for (int v : c) on_boundary[static_cast<std::size_t>(v)] = true;
  for (int v = 0; v < static_cast<int>(k.vertex_count()); ++v) {
    std::vector<Simplex> edges;
    for (auto& l : k.link(v))
      if (l.size() == 2) edges.push_back(l);
    if (edges.empty()) throw ValidationError("vertex " + std::to_string(v) + " is in no triangle");
    std::map<int, int> degree;
    for (const auto& e : edges) {
      degree[e[0]]++;
      degree[e[1]]++;
    }
    int ends = 0;
    for (const auto& [w, d] : degree) {
      if (d > 2) throw ValidationError("link of vertex " + std::to_string(v) + " branches");
      ends += d == 1;
    }
    if (ends != (on_boundary[static_cast<std::size_t>(v)] ? 2 : 0))
      throw ValidationError("link of vertex " + std::to_string(v) + " is neither a circle nor an arc");
    // connected link
    std::map<int, std::vector<int>> adj;
    for (const auto& e : edges) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
    }
    std::vector<int> stack{adj.begin()->first};
    std::map<int, bool> seen{{stack.back(), true}};
    while (!stack.empty()) {
      int w = stack.back();
      stack.pop_back();
      for (int x : adj[w])
        if (!seen[x]) {
          seen[x] = true;
          stack.push_back(x);
        }
    }
    if (seen.size() != adj.size()) throw ValidationError("link of vertex " + std::to_string(v) + " is disconnected");
  }
  s.cells = k.to_cell_complex();
  s.tri = std::move(k);
  return s;
}

/// Orientability of a surface: H_2(S, boundary; Z) has rank equal to the
/// number of components exactly when every component is orientable.
inline bool is_orientable(const SurfaceModel& s) {
  auto rel = s.closed() ? homology_integral(s.cells)
                        : relative_homology(s.cells, s.boundary_subcomplex(), CoefficientSpec::integers());
  auto h = homology_integral(s.cells);
  return rel.betti(2) == h.betti(0);
}

/// Latitude triangulation of the part of the unit sphere with z in [lo, hi].
/// A bound at -1 or 1 closes the surface with a pole; otherwise the ring at
/// that height is a boundary circle. `rings` >= 2 latitude circles of
/// `sectors` >= 3 vertices are spread over the open interval.
inline SurfaceModel latitude_surface(double lo, double hi, int rings = 4, int sectors = 6) {
  if (!(lo < hi) || lo < -1 || hi > 1) throw ValidationError("latitude band needs -1 <= lo < hi <= 1");
  if (rings < 2 || sectors < 3) throw ValidationError("latitude surface needs >= 2 rings of >= 3 vertices");
  const bool south = lo <= -1, north = hi >= 1;
  std::vector<double> z;
  // outer rings sit on the bounds unless a pole closes that end
  const int s0 = south ? 1 : 0, s1 = north ? 1 : 0;
  for (int r = 0; r < rings; ++r)
    z.push_back(lo + (hi - lo) * (r + s0) / static_cast<double>(rings - 1 + s0 + s1));
  std::vector<Simplex> tri;
  std::vector<double> height;
  auto ring_v = [&](int r, int i) { return r * sectors + ((i % sectors) + sectors) % sectors; };
  for (int r = 0; r < rings; ++r)
    for (int i = 0; i < sectors; ++i) height.push_back(z[static_cast<std::size_t>(r)]);
  for (int r = 0; r + 1 < rings; ++r)
    for (int i = 0; i < sectors; ++i) {
      tri.push_back({ring_v(r, i), ring_v(r, i + 1), ring_v(r + 1, i)});
      tri.push_back({ring_v(r, i + 1), ring_v(r + 1, i + 1), ring_v(r + 1, i)});
    }
  int n = rings * sectors;
  if (south) {
    const int pole = n++;
    height.push_back(-1);
    for (int i = 0; i < sectors; ++i) tri.push_back({pole, ring_v(0, i), ring_v(0, i + 1)});
  }
  if (north) {
    const int pole = n++;
    height.push_back(1);
    for (int i = 0; i < sectors; ++i) tri.push_back({pole, ring_v(rings - 1, i), ring_v(rings - 1, i + 1)});
  }
  auto s = make_surface(SimplicialComplex(tri, n));
  s.height = std::move(height);
  return s;
}

inline SurfaceModel sphere_surface() { return latitude_surface(-1, 1); }
inline SurfaceModel disk_surface() { return latitude_surface(0, 1); }
inline SurfaceModel annulus_surface() { return latitude_surface(-0.5, 0.5); }

}  // namespace morse_levels
