#pragma once

#include "morse_levels/chaincore/simplicial.hpp"
#include "morse_levels/levelset/pl_field.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace morse_levels {

/// Boundary of the (m+1)-simplex with f(i) = i: one minimum, one maximum.
inline PLScalarField sphere_height(int m) {
  std::vector<Rational> values;
  for (int i = 0; i <= m + 1; ++i) values.emplace_back(i);
  return PLScalarField(simplex_boundary(m), values);
}

/// Grid torus Z_n x Z_m with f = a*g_n(i) + g_m(j), g_k(i) = min(i, k - i).
/// With a > 1 the four critical values are 0, g_m, a*g_n, a*g_n + g_m.
inline PLScalarField torus_height(int n = 8, int m = 6, int a = 3) {
  if (n < 3 || m < 3) throw ValidationError("torus grid needs at least 3 x 3 vertices");
  auto id = [&](int i, int j) { return ((i % n + n) % n) + n * ((j % m + m) % m); };
  std::vector<Simplex> tri;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      tri.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tri.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
    }
  std::vector<Rational> values(static_cast<std::size_t>(n * m));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) values[static_cast<std::size_t>(id(i, j))] = a * std::min(i, n - i) + std::min(j, m - j);
  return PLScalarField(SimplicialComplex(tri, n * m), values);
}

/// Closed orientable surface of genus g as the double of a planar region: a
/// (3g+2) x 5 block of unit squares with g square holes. Each square is
/// coned from its centre, so the two copies share only boundary vertices.
/// The field is 1000 x + y in half-unit coordinates, which is generic along
/// the long axis: one minimum, 2g saddles, one maximum.
inline PLScalarField genus_surface_height(int g) {
  if (g < 0) throw ValidationError("genus must be non-negative");
  const int w = 3 * g + 2, h = 5;
  auto hole = [&](int x, int y) { return y == 2 && x >= 2 && x < w - 1 && (x - 2) % 3 == 0; };
  auto square_in = [&](int x, int y) { return x >= 0 && y >= 0 && x < w && y < h && !hole(x, y); };
  auto boundary = [&](int x, int y) {
    return !(square_in(x - 1, y - 1) && square_in(x, y - 1) && square_in(x - 1, y) && square_in(x, y));
  };

  std::vector<Rational> values;
  std::vector<Simplex> tri;
  // corner ids per copy; boundary corners shared
  std::vector<int> corner[2];
  corner[0].assign(static_cast<std::size_t>((w + 1) * (h + 1)), -1);
  corner[1] = corner[0];
  auto value_at = [](int X, int Y) { return Rational(1000 * X + Y); };
  for (int copy = 0; copy < 2; ++copy)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        if (!square_in(x, y)) continue;
        int c[4];
        const int pts[4][2] = {{x, y}, {x + 1, y}, {x + 1, y + 1}, {x, y + 1}};
        for (int r = 0; r < 4; ++r) {
          auto k = static_cast<std::size_t>(pts[r][0] + (w + 1) * pts[r][1]);
          int& slot = corner[copy][k];
          if (slot < 0) {
            if (copy == 1 && boundary(pts[r][0], pts[r][1])) {
              slot = corner[0][k];
            } else {
              slot = static_cast<int>(values.size());
              values.push_back(value_at(2 * pts[r][0], 2 * pts[r][1]));
            }
          }
          c[r] = slot;
        }
        const int centre = static_cast<int>(values.size());
        values.push_back(value_at(2 * x + 1, 2 * y + 1));
        for (int r = 0; r < 4; ++r) tri.push_back({c[r], c[(r + 1) % 4], centre});
      }
  const int n = static_cast<int>(values.size());
  return PLScalarField(SimplicialComplex(tri, n), values);
}

/// Six-vertex real projective plane.
inline SimplicialComplex rp2_six_vertex() {
  return SimplicialComplex({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                            {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}},
                           6);
}

/// A perfect PL Morse function on the six-vertex RP^2 (critical points of
/// index 0, 1, 2), found by trying every vertex order. Values are ranks
/// shifted so the saddle sits at 2.
inline PLScalarField rp2_perfect_height() {
  const auto k = rp2_six_vertex();
  std::vector<int> order(6);
  std::iota(order.begin(), order.end(), 0);
  do {
    std::vector<Rational> values(6);
    for (int r = 0; r < 6; ++r) values[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r;
    PLScalarField f(k, values);
    auto crit = critical_vertices(f);
    if (crit.size() != 3) continue;
    bool ok = crit[1].type == VertexType::Critical && crit[1].index == 1;
    if (!ok) continue;
    const Rational shift = 2 - crit[1].value;
    for (auto& v : values) v += shift;
    return PLScalarField(k, values);
  } while (std::next_permutation(order.begin(), order.end()));
  throw InvariantViolation("no perfect vertex order on RP^2");
}

}  // namespace morse_levels
