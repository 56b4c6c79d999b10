#pragma once

#include "morse_levels/chaincore/cell_complex.hpp"
#include "morse_levels/numbers.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace morse_levels {

/// Samples of a function on a rectangular lattice (axis 0 varies fastest).
/// Masked samples are excluded from every sublevel set, e.g. near a
/// singularity of a potential.
struct GridField {
  std::vector<std::size_t> shape;
  std::vector<double> origin;
  std::vector<double> spacing;
  std::vector<double> values;
  std::vector<unsigned char> mask;  // empty, or 1 = excluded per sample

  std::size_t dimension() const { return shape.size(); }
  std::size_t size() const {
    std::size_t n = 1;
    for (auto s : shape) n *= s;
    return shape.empty() ? 0 : n;
  }
  bool masked(std::size_t i) const { return !mask.empty() && mask[i]; }

  std::size_t stride(std::size_t axis) const {
    std::size_t s = 1;
    for (std::size_t a = 0; a < axis; ++a) s *= shape[a];
    return s;
  }
  std::vector<std::size_t> coords(std::size_t i) const {
    std::vector<std::size_t> c(shape.size());
    for (std::size_t a = 0; a < shape.size(); ++a) {
      c[a] = i % shape[a];
      i /= shape[a];
    }
    return c;
  }
  std::vector<double> position(std::size_t i) const {
    auto c = coords(i);
    std::vector<double> p(c.size());
    for (std::size_t a = 0; a < c.size(); ++a) p[a] = origin[a] + spacing[a] * static_cast<double>(c[a]);
    return p;
  }

  void check() const {
    if (shape.empty() || shape.size() > 4) throw ValidationError("grid fields have 1 to 4 axes");
    if (origin.size() != shape.size() || spacing.size() != shape.size())
      throw ValidationError("grid origin/spacing do not match the number of axes");
    for (auto s : shape)
      if (s < 2) throw ValidationError("each grid axis needs at least 2 samples");
    for (auto h : spacing)
      if (!(h > 0)) throw ValidationError("grid spacing must be positive");
    if (values.size() != size()) throw ValidationError("grid value count does not match its shape");
    if (!mask.empty() && mask.size() != size()) throw ValidationError("grid mask size does not match its shape");
  }
};

/// Samples fn on a lattice; mask_fn (optional) marks excluded samples.
inline GridField sample_grid(const std::vector<std::size_t>& shape, const std::vector<double>& lower,
                             const std::vector<double>& upper,
                             const std::function<double(const std::vector<double>&)>& fn,
                             const std::function<bool(const std::vector<double>&)>& mask_fn = {}) {
  GridField g;
  g.shape = shape;
  g.origin = lower;
  for (std::size_t a = 0; a < shape.size(); ++a)
    g.spacing.push_back((upper[a] - lower[a]) / static_cast<double>(shape[a] - 1));
  g.values.resize(g.size());
  if (mask_fn) g.mask.assign(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto p = g.position(i);
    if (mask_fn && mask_fn(p)) {
      g.mask[i] = 1;
      g.values[i] = 0;  // never read
      continue;
    }
    g.values[i] = fn(p);
  }
  g.check();
  return g;
}

struct CubicalSublevel {
  CellComplex complex;
  std::vector<std::size_t> flagged;  // masked samples next to an unmasked sample above h
};

/// Full cubical subcomplex of the lattice on the unmasked samples with
/// value <= h: every cube whose corners all qualify.
inline CubicalSublevel cubical_sublevel(const GridField& g, double h) {
  g.check();
  const std::size_t n = g.size(), dim = g.dimension();
  std::vector<unsigned char> in(n);
  for (std::size_t i = 0; i < n; ++i) in[i] = !g.masked(i) && g.values[i] <= h;

  CubicalSublevel out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.masked(i)) continue;
    auto c = g.coords(i);
    bool flag = false;
    for (std::size_t a = 0; a < dim && !flag; ++a)
      for (int dir : {-1, 1}) {
        if ((dir < 0 && c[a] == 0) || (dir > 0 && c[a] + 1 == g.shape[a])) continue;
        std::size_t j = dir < 0 ? i - g.stride(a) : i + g.stride(a);
        if (!g.masked(j) && g.values[j] > h) flag = true;
      }
    if (flag) out.flagged.push_back(i);
  }

  // cubes are (axis set, base sample); the axis set is a bitmask
  const unsigned masks = 1u << dim;
  std::vector<std::vector<std::int64_t>> index(masks, std::vector<std::int64_t>());
  std::vector<std::size_t> strides(dim);
  for (std::size_t a = 0; a < dim; ++a) strides[a] = g.stride(a);

  auto corners_in = [&](std::size_t base, unsigned m, const std::vector<std::size_t>& c) {
    for (std::size_t a = 0; a < dim; ++a)
      if ((m >> a & 1u) && c[a] + 1 >= g.shape[a]) return false;
    for (unsigned sub = m;; sub = (sub - 1) & m) {
      std::size_t v = base;
      for (std::size_t a = 0; a < dim; ++a)
        if (sub >> a & 1u) v += strides[a];
      if (!in[v]) return false;
      if (sub == 0) break;
    }
    return true;
  };

  std::vector<std::size_t> count(dim + 1, 0);
  std::vector<unsigned> order;  // masks sorted by popcount, then value
  for (std::size_t k = 0; k <= dim; ++k)
    for (unsigned m = 0; m < masks; ++m)
      if (static_cast<std::size_t>(__builtin_popcount(m)) == k) order.push_back(m);
  for (unsigned m : order) {
    auto& idx = index[m];
    idx.assign(n, -1);
    const auto k = static_cast<std::size_t>(__builtin_popcount(m));
    for (std::size_t i = 0; i < n; ++i) {
      if (!in[i]) continue;
      if (m != 0 && !corners_in(i, m, g.coords(i))) continue;
      idx[i] = static_cast<std::int64_t>(count[k]++);
    }
  }

  CellComplex::Builder b;
  for (unsigned m : order) {
    const int k = __builtin_popcount(m);
    b.ensure_dim(k);
    for (std::size_t i = 0; i < n; ++i) {
      if (index[m][i] < 0) continue;
      std::vector<BoundaryTerm> terms;
      int j = 0;
      for (std::size_t a = 0; a < dim; ++a) {
        if (!(m >> a & 1u)) continue;
        const unsigned face = m & ~(1u << a);
        const long long sign = (j % 2 == 0) ? 1 : -1;
        terms.push_back({{k - 1, static_cast<std::size_t>(index[face][i + strides[a]])}, sign});
        terms.push_back({{k - 1, static_cast<std::size_t>(index[face][i])}, -sign});
        ++j;
      }
      b.add_cell(k, std::move(terms));
    }
  }
  out.complex = std::move(b).build();
  return out;
}

// ---------------------------------------------------------------------------
// Critical points of 2D samples

struct GridCriticalPoint {
  std::size_t sample = 0;
  std::array<double, 2> position{};
  double value = 0;
  int ring_changes = 0;                // sign changes around the 8-neighbour ring
  std::optional<int> index;            // Hessian index when non-degenerate
  bool non_degenerate = false;
  double hessian_det = 0;
  std::array<double, 3> hessian{};     // fxx, fxy, fyy
};

struct CriticalPointOptions {
  double relative_tolerance = 1e-8;  // |det H| < tol * scale^2 is degenerate
};

/// Local extrema and saddles of a 2D sample grid. Neighbours are compared by
/// (value, sample index); a point that some tie resolution turns into a
/// higher-order saddle is reported but left unclassified. The index
/// comes from the signs of the finite-difference Hessian eigenvalues.
inline std::vector<GridCriticalPoint> detect_grid_critical_points(const GridField& g, CriticalPointOptions opts = {}) {
  g.check();
  if (g.dimension() != 2) throw ValidationError("critical point detection needs a 2D grid");
  const std::size_t nx = g.shape[0], ny = g.shape[1];
  const double hx = g.spacing[0], hy = g.spacing[1];
  auto at = [&](std::size_t x, std::size_t y) { return x + nx * y; };
  auto higher = [&](std::size_t a, std::size_t b) {
    return g.values[a] > g.values[b] || (g.values[a] == g.values[b] && a > b);
  };
  // ring in cyclic order
  const int ring[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};

  std::vector<GridCriticalPoint> out;
  for (std::size_t y = 1; y + 1 < ny; ++y)
    for (std::size_t x = 1; x + 1 < nx; ++x) {
      const std::size_t c = at(x, y);
      if (g.masked(c)) continue;
      bool full = true;
      std::array<int, 8> side{};  // +1 above, -1 below, 0 tied
      double scale = std::abs(g.values[c]);
      for (int r = 0; r < 8; ++r) {
        std::size_t q = at(static_cast<std::size_t>(static_cast<long>(x) + ring[r][0]),
                           static_cast<std::size_t>(static_cast<long>(y) + ring[r][1]));
        if (g.masked(q)) {
          full = false;
          break;
        }
        side[static_cast<std::size_t>(r)] = g.values[q] > g.values[c] ? 1 : g.values[q] < g.values[c] ? -1 : 0;
        if (side[static_cast<std::size_t>(r)] == 0) side[static_cast<std::size_t>(r)] = higher(q, c) ? 2 : -2;
        scale = std::max(scale, std::abs(g.values[q]));
      }
      if (!full) continue;
      // ring pattern with ties resolved by index, and with ties all up / all down
      auto pattern = [&](int tied) {
        std::array<bool, 8> up{};
        for (std::size_t r = 0; r < 8; ++r) {
          const int s = side[r];
          up[r] = (s == 2 || s == -2) ? (tied == 0 ? s > 0 : tied > 0) : s > 0;
        }
        int changes = 0;
        for (std::size_t r = 0; r < 8; ++r) changes += up[r] != up[(r + 1) % 8];
        const bool extremum = changes == 0;
        return std::pair<int, bool>{changes, extremum};
      };
      const auto [changes, extremum] = pattern(0);
      // a tie may only move a saddle to a neighbour, never raise its order
      const bool tie_dependent = pattern(1).first > 4 || pattern(-1).first > 4;
      if (!extremum && changes <= 2) continue;  // regular

      GridCriticalPoint p;
      p.sample = c;
      auto pos = g.position(c);
      p.position = {pos[0], pos[1]};
      p.value = g.values[c];
      p.ring_changes = changes;
      const double f0 = g.values[c];
      const double fxx = (g.values[at(x + 1, y)] - 2 * f0 + g.values[at(x - 1, y)]) / (hx * hx);
      const double fyy = (g.values[at(x, y + 1)] - 2 * f0 + g.values[at(x, y - 1)]) / (hy * hy);
      const double fxy = (g.values[at(x + 1, y + 1)] - g.values[at(x + 1, y - 1)] - g.values[at(x - 1, y + 1)] +
                          g.values[at(x - 1, y - 1)]) /
                         (4 * hx * hy);
      p.hessian = {fxx, fxy, fyy};
      p.hessian_det = fxx * fyy - fxy * fxy;
      p.non_degenerate = std::abs(p.hessian_det) >= opts.relative_tolerance * scale * scale && changes <= 4 && !tie_dependent;
      if (p.non_degenerate) {
        if (p.hessian_det < 0)
          p.index = 1;
        else
          p.index = (fxx + fyy) > 0 ? 0 : 2;
      }
      out.push_back(p);
    }
  return out;
}

}  // namespace morse_levels
