#pragma once

#include "morse_levels/mechanics/bundles.hpp"
#include "morse_levels/mechanics/surface.hpp"
#include "morse_levels/morserules/rules.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace morse_levels {

/// Potential V(z) = a z^2 + b z on the unit sphere (z the height), a > 0.
struct QuadraticPotential {
  Rational a{1};
  Rational b{-1, 2};

  Rational operator()(const Rational& z) const { return a * z * z + b * z; }
  Rational vertex() const { return -b / (2 * a); }
};

struct PendulumCritical {
  std::string kind;  // "minimum circle", "local maximum", "global maximum"
  Rational z;
  Rational value;
  int index = 0;
  bool non_degenerate = true;
};

/// Critical set of V on S^2, computed from the coefficients: the two poles
/// and, when the vertex of the parabola lies strictly inside (-1, 1), a
/// circle of minima (degenerate as a Morse critical set).
inline std::vector<PendulumCritical> pendulum_critical(const QuadraticPotential& v = {}) {
  if (v.a <= 0) throw ValidationError("pendulum potential needs a > 0");
  const Rational zs = v.vertex();
  if (!(zs > -1 && zs < 1)) throw ValidationError("pendulum potential needs its vertex inside (-1, 1)");
  const Rational north = v(Rational(1)), south = v(Rational(-1));
  if (north == south) throw ValidationError("pendulum maxima on one level are not modelled");
  std::vector<PendulumCritical> out;
  out.push_back({"minimum circle", zs, v(zs), 0, false});
  out.push_back({north < south ? "local maximum" : "global maximum", Rational(1), north, 2, true});
  out.push_back({south < north ? "local maximum" : "global maximum", Rational(-1), south, 2, true});
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.value < y.value; });
  return out;
}

struct PendulumLevel {
  Rational h;
  std::string region;  // "band", "cap", "sphere"
  double z_lo = 0, z_hi = 0;
  SurfaceModel hill;
  CircleBundleModel level;
  std::string model;  // topology the level model represents
};

/// Energy level H = h of the pendulum on T*S^2 as a collapsed (or, over the
/// whole sphere, twisted with e = 2) circle bundle over the Hill region.
inline PendulumLevel pendulum_level(const Rational& h, const QuadraticPotential& v = {}) {
  const auto crit = pendulum_critical(v);
  for (const auto& c : crit)
    if (h == c.value) throw ValidationError("energy " + to_string(h) + " is the critical value of the " + c.kind);
  if (h < crit.front().value) throw ValidationError("energy " + to_string(h) + " is below the minimum: empty Hill region");

  PendulumLevel out;
  out.h = h;
  const bool south = v(Rational(-1)) < h, north = v(Rational(1)) < h;
  const double zs = to_double(v.vertex());
  const double r = std::sqrt(to_double((h - v(v.vertex())) / v.a));
  out.z_lo = south ? -1.0 : zs - r;
  out.z_hi = north ? 1.0 : zs + r;
  if (south && north) {
    out.region = "sphere";
    out.hill = sphere_surface();
    out.level = circle_bundle(out.hill, 2);  // unit cotangent bundle, e = chi(S^2)
    out.model = "RP3";
  } else if (south || north) {
    out.region = "cap";
    out.hill = latitude_surface(out.z_lo, out.z_hi);
    out.level = collapsed_circle_bundle(out.hill);
    out.model = "S3";
  } else {
    out.region = "band";
    out.hill = latitude_surface(out.z_lo, out.z_hi);
    out.level = collapsed_circle_bundle(out.hill);
    out.model = "S2xS1";
  }
  return out;
}

/// Query for passing one of the two maxima (0 = lower, 1 = higher).
inline LevelPassQuery pendulum_query(int which, const QuadraticPotential& v = {}) {
  auto crit = pendulum_critical(v);
  if (which != 0 && which != 1) throw ValidationError("pendulum has two maxima: 0 or 1");
  const auto& c = crit[static_cast<std::size_t>(1 + which)];
  LevelPassQuery q;
  q.m = 4;
  q.points.push_back({to_double(c.value), c.index, 1, c.kind == "global maximum", c.non_degenerate});
  BundleContext b;
  b.rank = 2;
  b.base_closed = b.base_orientable = b.bundle_orientable = true;
  b.euler_number = 2;
  b.is_cotangent = true;
  q.bundle = b;
  return q;
}

}  // namespace morse_levels
