#pragma once

#include "morse_levels/homology/homology.hpp"
#include "morse_levels/levelset/grid.hpp"
#include "morse_levels/levelset/pl_field.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace morse_levels {

enum class SweepMode { Level, Sublevel };

inline std::string to_string(SweepMode m) { return m == SweepMode::Level ? "level" : "sublevel"; }

struct SweepRow {
  Rational level;
  HomologySummary summary;
  std::size_t cells = 0;
  std::size_t flagged = 0;  // grid sweeps: masked samples touching the threshold
};

/// Homology per level; jumps[i] = j means rows j and j + 1 differ.
struct SweepTable {
  CoefficientSpec coeff;
  SweepMode mode = SweepMode::Level;
  std::vector<SweepRow> rows;
  std::vector<std::size_t> jumps;

  int max_dim() const {
    int m = -1;
    for (const auto& r : rows) m = std::max(m, static_cast<int>(r.summary.dims.size()) - 1);
    return m;
  }
};

namespace detail {

inline void finish_jumps(SweepTable& t) {
  t.jumps.clear();
  for (std::size_t i = 0; i + 1 < t.rows.size(); ++i)
    if (!(t.rows[i].summary == t.rows[i + 1].summary)) t.jumps.push_back(i);
}

inline void require_sorted(const std::vector<Rational>& levels) {
  for (std::size_t i = 0; i + 1 < levels.size(); ++i)
    if (!(levels[i] < levels[i + 1])) throw ValidationError("sweep levels must be strictly increasing");
}

}  // namespace detail

inline SweepTable sweep(const PLScalarField& f, const std::vector<Rational>& levels, const CoefficientSpec& coeff,
                        SweepMode mode = SweepMode::Level) {
  detail::require_sorted(levels);
  SweepTable t{coeff, mode, {}, {}};
  for (const auto& a : levels) {
    CellComplex c = mode == SweepMode::Level ? slice(f, a) : sublevel_complex(f, a);
    t.rows.push_back({a, homology(c, coeff), c.size(), 0});
  }
  detail::finish_jumps(t);
  return t;
}

/// Sublevel sweep of a grid field by cubical complexes.
inline SweepTable sweep(const GridField& g, const std::vector<double>& levels, const CoefficientSpec& coeff) {
  std::vector<Rational> exact;
  for (double h : levels) exact.push_back(from_double(h));
  detail::require_sorted(exact);
  SweepTable t{coeff, SweepMode::Sublevel, {}, {}};
  for (std::size_t i = 0; i < levels.size(); ++i) {
    auto cub = cubical_sublevel(g, levels[i]);
    t.rows.push_back({exact[i], homology(cub.complex, coeff), cub.complex.size(), cub.flagged.size()});
  }
  detail::finish_jumps(t);
  return t;
}

/// Decimal rendering used in CSV and plot files.
inline std::string level_decimal(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", to_double(r));
  return buf;
}

/// level,level_exact,b0,...,bN,torsion
inline std::string to_csv(const SweepTable& t) {
  std::ostringstream os;
  const int n = std::max(t.max_dim(), 0);
  os << "level,level_exact";
  for (int d = 0; d <= n; ++d) os << ",b" << d;
  os << ",torsion\n";
  for (const auto& r : t.rows) {
    os << level_decimal(r.level) << "," << to_string(r.level);
    for (int d = 0; d <= n; ++d) os << "," << r.summary.betti(d);
    std::string tors;
    for (int d = 0; d <= n; ++d) {
      auto tv = r.summary.torsion(d);
      if (tv.empty()) continue;
      if (!tors.empty()) tors += " ";
      tors += "H" + std::to_string(d) + ":";
      for (std::size_t i = 0; i < tv.size(); ++i) tors += (i ? "+" : "") + std::string("Z") + tv[i].str();
    }
    os << "," << tors << "\n";
  }
  return os.str();
}

/// Two-column "level b_d" data for one Betti index.
inline std::string to_gnuplot(const SweepTable& t, int d) {
  std::ostringstream os;
  os << "# level b" << d << "\n";
  for (const auto& r : t.rows) os << level_decimal(r.level) << " " << r.summary.betti(d) << "\n";
  return os.str();
}

/// Levels halfway between consecutive distinct values, plus one below the
/// minimum and one above the maximum.
inline std::vector<Rational> interleaving_levels(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<Rational> out;
  if (values.empty()) return out;
  out.push_back(values.front() - 1);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) out.push_back((values[i] + values[i + 1]) / 2);
  out.push_back(values.back() + 1);
  return out;
}

}  // namespace morse_levels
