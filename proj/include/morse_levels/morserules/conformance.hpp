#pragma once

#include "morse_levels/chaincore/constructions.hpp"
#include "morse_levels/homology/homology.hpp"
#include "morse_levels/levelset/sweep.hpp"
#include "morse_levels/morserules/rules.hpp"

#include <string>
#include <vector>

namespace morse_levels {

/// Critical points declared at one critical value.
struct DeclaredLevel {
  Rational value;
  std::vector<CriticalPointRecord> points;
};

enum class ConformanceStatus { Regular, Misaligned, Unchecked, Exempt, Conformant, Violation };

inline std::string to_string(ConformanceStatus s) {
  switch (s) {
    case ConformanceStatus::Regular: return "regular";
    case ConformanceStatus::Misaligned: return "misaligned";
    case ConformanceStatus::Unchecked: return "unchecked";
    case ConformanceStatus::Exempt: return "exempt";
    case ConformanceStatus::Conformant: return "conformant";
    case ConformanceStatus::Violation: return "violation";
  }
  return "?";
}

/// One interval between consecutive sweep levels.
struct ConformanceEntry {
  std::size_t row = 0;  // interval (rows[row], rows[row + 1])
  Rational lo, hi;
  ConformanceStatus status = ConformanceStatus::Regular;
  std::vector<long long> deltas;   // b_l(hi) - b_l(lo)
  std::vector<int> violating_dims;
  std::optional<int> index;
  std::string note;
};

struct ConformanceReport {
  int m = 0;
  CoefficientSpec coeff;
  std::vector<ConformanceEntry> entries;

  std::size_t count(ConformanceStatus s) const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.status == s;
    return n;
  }
  bool ok() const { return count(ConformanceStatus::Violation) == 0; }
};

inline std::vector<long long> betti_deltas(const HomologySummary& before, const HomologySummary& after) {
  const std::size_t n = std::max(before.dims.size(), after.dims.size());
  std::vector<long long> out(n);
  for (std::size_t l = 0; l < n; ++l)
    out[l] = static_cast<long long>(after.betti(static_cast<int>(l))) -
             static_cast<long long>(before.betti(static_cast<int>(l)));
  return out;
}

/// Compares each jump of a level sweep of an m-manifold against the delta
/// rule of the single critical point declared inside the interval.
inline ConformanceReport check_conformance(const SweepTable& table, const std::vector<DeclaredLevel>& declared, int m) {
  ConformanceReport rep;
  rep.m = m;
  rep.coeff = table.coeff;
  for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
    const auto& a = table.rows[i];
    const auto& b = table.rows[i + 1];
    ConformanceEntry e;
    e.row = i;
    e.lo = a.level;
    e.hi = b.level;
    e.deltas = betti_deltas(a.summary, b.summary);
    const bool jump = !(a.summary == b.summary);

    std::vector<const DeclaredLevel*> inside;
    bool on_level = false;
    for (const auto& d : declared) {
      if (d.value == a.level || d.value == b.level) on_level = true;
      if (a.level < d.value && d.value < b.level) inside.push_back(&d);
    }
    if (on_level) {
      e.status = ConformanceStatus::Misaligned;
      e.note = "declared critical value equals a sweep level";
    } else if (inside.empty()) {
      e.status = jump ? ConformanceStatus::Misaligned : ConformanceStatus::Regular;
      if (jump) e.note = "jump without a declared critical value";
    } else if (inside.size() > 1) {
      e.status = ConformanceStatus::Unchecked;
      e.note = "several critical values in one interval";
    } else {
      const auto& pts = inside.front()->points;
      int total = 0;
      for (const auto& p : pts) total += p.count;
      if (total != 1) {
        e.status = ConformanceStatus::Unchecked;
        e.note = "more than one critical point on the level";
      } else if (!pts.front().non_degenerate) {
        e.status = ConformanceStatus::Unchecked;
        e.note = "degenerate critical point";
      } else if (!table.coeff.is_field()) {
        e.status = ConformanceStatus::Unchecked;
        e.note = "delta rule needs field coefficients";
      } else {
        const int k = pts.front().index;
        e.index = k;
        if (k < 0 || k > m) throw ValidationError("declared index out of range");
        if (2 * k == m) {
          e.status = ConformanceStatus::Exempt;
          e.note = "middle dimension";
        } else {
          auto allowed = allowed_deltas(k, m);
          if (allowed.contains(e.deltas)) {
            e.status = ConformanceStatus::Conformant;
          } else {
            e.status = ConformanceStatus::Violation;
            auto active = allowed.active_dims();
            for (int l = 0; l < static_cast<int>(e.deltas.size()); ++l)
              if (e.deltas[static_cast<std::size_t>(l)] != 0 && !active.count(l)) e.violating_dims.push_back(l);
            if (e.violating_dims.empty()) {
              if (allowed.low >= 1) e.violating_dims.push_back(allowed.low - 1);
              e.violating_dims.push_back(allowed.low);
            }
          }
        }
      }
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

enum class MiddleDimResult { Different, Inconclusive };

inline std::string to_string(MiddleDimResult r) { return r == MiddleDimResult::Different ? "DIFFERENT" : "INCONCLUSIVE"; }

struct MiddleDimReport {
  MiddleDimResult result = MiddleDimResult::Inconclusive;
  std::optional<Integer> order_a, order_b;  // nullopt = infinite order
};

/// Compares the orders of the two attaching cycles in H_{k-1}(U; Z).
inline MiddleDimReport middle_dim_criterion(const CellComplex& u, const CycleChain& za, const CycleChain& zb) {
  if (za.dim != zb.dim) throw ValidationError("attaching cycles must have the same dimension");
  MiddleDimReport r;
  r.order_a = cycle_class_order(u, za);
  r.order_b = cycle_class_order(u, zb);
  r.result = r.order_a == r.order_b ? MiddleDimResult::Inconclusive : MiddleDimResult::Different;
  return r;
}

/// P(A) + P(X, A) - P(X) = (1 + t) Q(t) with Q >= 0 for a pair A in X.
struct Subadditivity {
  bool holds = false;
  std::vector<long long> difference;
  std::vector<long long> quotient;
};

inline Subadditivity subadditivity(const std::vector<std::size_t>& p_sub, const std::vector<std::size_t>& p_rel,
                                   const std::vector<std::size_t>& p_whole) {
  const std::size_t n = std::max({p_sub.size(), p_rel.size(), p_whole.size()});
  auto get = [](const std::vector<std::size_t>& v, std::size_t i) {
    return i < v.size() ? static_cast<long long>(v[i]) : 0LL;
  };
  Subadditivity s;
  s.difference.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.difference[i] = get(p_sub, i) + get(p_rel, i) - get(p_whole, i);
  // synthetic division by 1 + t
  long long carry = 0;
  s.holds = true;
  for (std::size_t i = 0; i < n; ++i) {
    const long long q = s.difference[i] - carry;
    if (i + 1 == n) {
      s.holds = s.holds && q == 0;
    } else {
      s.quotient.push_back(q);
      s.holds = s.holds && q >= 0;
      carry = q;
    }
  }
  if (n == 0) s.holds = true;
  return s;
}

struct SublevelPairCheck {
  Rational lo, hi;
  Subadditivity result;
};

/// Subadditivity for every pair of lower-star sublevel sets lo < hi taken
/// from `levels`.
inline std::vector<SublevelPairCheck> sublevel_subadditivity(const PLScalarField& f, const std::vector<Rational>& levels,
                                                             const CoefficientSpec& coeff) {
  std::vector<SublevelPairCheck> out;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    CellMap map;
    auto x = restrict_complex(f.cells(), lower_star_subcomplex(f, levels[j]), &map);
    const auto px = homology(x, coeff).betti_vector();
    for (std::size_t i = 0; i < j; ++i) {
      if (!(levels[i] < levels[j])) continue;
      auto a = restrict_subcomplex(x, map, lower_star_subcomplex(f, levels[i]));
      auto pa = a.size() == 0 ? std::vector<std::size_t>{0} : homology(restrict_complex(x, a), coeff).betti_vector();
      auto rel = relative_homology(x, a, coeff).betti_vector();
      out.push_back({levels[i], levels[j], subadditivity(pa, rel, px)});
    }
  }
  return out;
}

}  // namespace morse_levels
