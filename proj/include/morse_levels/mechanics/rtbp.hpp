#pragma once

#include "morse_levels/levelset/grid.hpp"
#include "morse_levels/levelset/sweep.hpp"
#include "morse_levels/morserules/rules.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace morse_levels {

/// Effective potential of the planar circular restricted three-body problem
/// in the rotating frame; primaries of mass 1 - mu at (-mu, 0) and mu at (1 - mu, 0).
inline double rtbp_V(double mu, double x, double y) {
  const double r1 = std::hypot(x + mu, y), r2 = std::hypot(x - 1 + mu, y);
  return -0.5 * (x * x + y * y) - (1 - mu) / r1 - mu / r2;
}

struct RtbpOptions {
  double lo = -2, hi = 2;       // square window
  std::size_t samples = 400;    // per axis
  double mask_spacings = 2;     // samples within this many spacings of a primary are masked
};

struct RtbpEquilibrium {
  std::string name;  // L1 .. L5
  double x = 0, y = 0, value = 0;
  int index = 0;
  std::optional<GridCriticalPoint> detected;
  double distance = 0;  // to the detected sample, in grid spacings
};

struct RtbpScenario {
  double mu = 0;
  RtbpOptions options;
  GridField grid;
  std::vector<RtbpEquilibrium> equilibria;  // L1, L2, L3, L4, L5
  std::vector<GridCriticalPoint> detected;
  std::vector<std::string> warnings;

  double spacing() const { return grid.spacing.at(0); }
};

namespace detail {

inline double rtbp_dVdx_axis(double mu, double x) {
  const double a = x + mu, b = x - 1 + mu;
  return -x + (1 - mu) * a / std::pow(std::abs(a), 3) + mu * b / std::pow(std::abs(b), 3);
}

inline double bisect(double mu, double lo, double hi) {
  double flo = rtbp_dVdx_axis(mu, lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi), fm = rtbp_dVdx_axis(mu, mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline int rtbp_index(double mu, double x, double y) {
  const double h = 1e-5;
  auto V = [&](double a, double b) { return rtbp_V(mu, a, b); };
  const double f0 = V(x, y);
  const double fxx = (V(x + h, y) - 2 * f0 + V(x - h, y)) / (h * h);
  const double fyy = (V(x, y + h) - 2 * f0 + V(x, y - h)) / (h * h);
  const double fxy = (V(x + h, y + h) - V(x + h, y - h) - V(x - h, y + h) + V(x - h, y - h)) / (4 * h * h);
  const double det = fxx * fyy - fxy * fxy;
  if (det < 0) return 1;
  return fxx + fyy > 0 ? 0 : 2;
}

}  // namespace detail

/// The five equilibria: collinear ones by bisection on dV/dx along y = 0,
/// triangular ones at (1/2 - mu, +-sqrt(3)/2).
inline std::vector<RtbpEquilibrium> rtbp_equilibria(double mu) {
  if (!(mu > 0 && mu < 1)) throw ValidationError("mass ratio must lie in (0, 1)");
  const double eps = 1e-12, far = 1e3;
  const double p1 = -mu, p2 = 1 - mu;
  std::vector<RtbpEquilibrium> out(5);
  out[0] = {"L1", detail::bisect(mu, p1 + eps, p2 - eps), 0};
  out[1] = {"L2", detail::bisect(mu, p2 + eps, far), 0};
  out[2] = {"L3", detail::bisect(mu, -far, p1 - eps), 0};
  out[3] = {"L4", 0.5 - mu, std::sqrt(3.0) / 2};
  out[4] = {"L5", 0.5 - mu, -std::sqrt(3.0) / 2};
  for (auto& e : out) {
    e.value = rtbp_V(mu, e.x, e.y);
    e.index = detail::rtbp_index(mu, e.x, e.y);
  }
  return out;
}

/// Masked grid samples of V with the equilibria matched to detected grid
/// critical points (nearest within two spacings).
inline RtbpScenario rtbp_potential(double mu, RtbpOptions opts = {}) {
  if (!(opts.lo < opts.hi) || opts.samples < 8) throw ValidationError("rtbp window needs lo < hi and >= 8 samples");
  RtbpScenario s;
  s.mu = mu;
  s.options = opts;
  s.equilibria = rtbp_equilibria(mu);
  const double h = (opts.hi - opts.lo) / static_cast<double>(opts.samples - 1);
  const double rmask = opts.mask_spacings * h;
  s.grid = sample_grid(
      {opts.samples, opts.samples}, {opts.lo, opts.lo}, {opts.hi, opts.hi},
      [mu](const std::vector<double>& p) { return rtbp_V(mu, p[0], p[1]); },
      [mu, rmask](const std::vector<double>& p) {
        return std::hypot(p[0] + mu, p[1]) < rmask || std::hypot(p[0] - 1 + mu, p[1]) < rmask;
      });
  s.detected = detect_grid_critical_points(s.grid);
  for (auto& e : s.equilibria) {
    if (e.x <= opts.lo || e.x >= opts.hi || e.y <= opts.lo || e.y >= opts.hi) {
      s.warnings.push_back("window does not contain " + e.name);
      continue;
    }
    double best = 1e300;
    for (const auto& p : s.detected) {
      const double d = std::hypot(p.position[0] - e.x, p.position[1] - e.y) / h;
      if (d < best) {
        best = d;
        e.detected = p;
      }
    }
    e.distance = best;
    if (best > 2) {
      e.detected.reset();
      s.warnings.push_back("no grid critical point within two spacings of " + e.name);
    }
  }
  return s;
}

/// Sublevel thresholds between the equilibrium values: one below L1, one
/// between consecutive distinct values, one above L4/L5.
inline std::vector<double> rtbp_levels(const RtbpScenario& s, double margin = 0.05) {
  std::vector<double> v;
  for (const auto& e : s.equilibria) v.push_back(e.value);
  std::sort(v.begin(), v.end());
  std::vector<double> out{v.front() - margin};
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i + 1] - v[i] > 1e-9) out.push_back(0.5 * (v[i] + v[i + 1]));
  out.push_back(v.back() + margin);
  return out;
}

inline SweepTable rtbp_sweep(const RtbpScenario& s, const CoefficientSpec& coeff) {
  return sweep(s.grid, rtbp_levels(s), coeff);
}

/// Passing L1, L2 or L3 (i = 0, 1, 2) on the 3-dimensional energy surface
/// (m = 4 phase space); i = 3 passes L4 and L5 together. The Hill regions
/// are not compact, so no bundle context is attached.
inline LevelPassQuery rtbp_query(const RtbpScenario& s, int i) {
  if (i < 0 || i > 3) throw ValidationError("rtbp query index must be 0..3");
  LevelPassQuery q;
  q.m = 4;
  if (i < 3) {
    const auto& e = s.equilibria[static_cast<std::size_t>(i)];
    q.points.push_back({e.value, e.index, 1, std::nullopt, true});
  } else {
    for (int j = 3; j < 5; ++j) {
      const auto& e = s.equilibria[static_cast<std::size_t>(j)];
      q.points.push_back({e.value, e.index, 1, true, true});
    }
  }
  return q;
}

/// Reduced planar n-body problem: a critical point of index at most 2n - 4
/// on a (4n - 6)-manifold; `pair` gives two points of the same index.
inline LevelPassQuery nbody_query(int n, int index, bool pair = false) {
  if (n < 2) throw ValidationError("n-body query needs n >= 2");
  if (index < 0 || index > 2 * n - 4) throw ValidationError("n-body critical points have index at most 2n - 4");
  LevelPassQuery q;
  q.m = 4 * n - 6;
  q.points.push_back({0, index, pair ? 2 : 1, std::nullopt, true});
  return q;
}

}  // namespace morse_levels
