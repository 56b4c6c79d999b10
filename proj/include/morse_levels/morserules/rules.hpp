#pragma once

#include "morse_levels/numbers.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace morse_levels {

/// Critical points of one index sitting on a single level.
struct CriticalPointRecord {
  double value = 0;
  int index = 0;
  int count = 1;
  std::optional<bool> is_global_max;  // of the potential, bundle queries only
  bool non_degenerate = true;
};

/// Rank-n vector bundle over an n-dimensional base; the energy function lives
/// on the total space of dimension 2n.
struct BundleContext {
  int rank = 0;
  bool base_closed = false;
  bool base_orientable = false;
  bool bundle_orientable = false;
  std::optional<long long> euler_number;
  bool trivial_outside_disk = false;
  bool is_cotangent = false;
};

struct LevelPassQuery {
  int m = 0;
  std::vector<CriticalPointRecord> points;
  std::optional<BundleContext> bundle;
  bool assumptions_hold = true;
};

enum class Outcome { MustChange, MayNotChange, NoRule };

inline std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::MustChange: return "MUST_CHANGE";
    case Outcome::MayNotChange: return "MAY_NOT_CHANGE";
    case Outcome::NoRule: return "NO_RULE";
  }
  return "?";
}

struct Verdict {
  Outcome outcome = Outcome::NoRule;
  std::string rule;                // first rule that fired, or empty
  std::vector<std::string> rules;  // every rule that applies, in priority order
  std::optional<std::string> witness;
  std::string reason;
};

namespace rule_id {
inline constexpr const char* kLevel = "thm:level";
inline constexpr const char* kLevel2 = "thm:level2";
inline constexpr const char* kNotGlobalMax = "cor:not_global_maximum";
inline constexpr const char* kManyGlobalMax = "cor:many_global_maxima";
inline constexpr const char* kClosedOne = "thm:closed_manifold(1)";
inline constexpr const char* kClosedTwo = "thm:closed_manifold(2)";
inline constexpr const char* kAdams = "prop:adams";
inline constexpr const char* kProjectivePlane = "ex:projective_plane";
inline constexpr const char* kHopf = "ex:hopf";
}  // namespace rule_id

// ---------------------------------------------------------------------------
// Betti deltas across one non-degenerate critical point

/// Constraint on j_l = b_l(after) - b_l(before) for one critical point of
/// index k on an m-manifold, 2k != m. For k < m/2 the pair (j_{k-1}, j_k) is
/// one of `pairs`, dimensions in `free_dims` are unconstrained and every other
/// j_l vanishes. For k > m/2 the constraint is the one for m - k with every
/// sign reversed (the same levels swept downwards).
struct AllowedDeltas {
  int k = 0;
  int m = 0;
  int low = 0;  // k or m - k, whichever is below m/2
  bool mirrored = false;
  std::vector<std::pair<int, int>> pairs;  // (j_{low-1}, j_low)
  std::set<int> free_dims;

  /// Whether the delta vector (index l = level-set homology degree) is allowed.
  bool contains(const std::vector<long long>& j) const {
    auto at = [&](int l) -> long long {
      if (l < 0 || l >= static_cast<int>(j.size())) return 0;
      long long v = j[static_cast<std::size_t>(l)];
      return mirrored ? -v : v;
    };
    const int top = std::max(static_cast<int>(j.size()), m);
    for (int l = 0; l < top; ++l) {
      if (l == low - 1 || l == low || free_dims.count(l)) continue;
      if (at(l) != 0) return false;
    }
    const std::pair<int, int> observed{static_cast<int>(at(low - 1)), static_cast<int>(at(low))};
    return std::find(pairs.begin(), pairs.end(), observed) != pairs.end();
  }

  /// Levels whose delta may be nonzero.
  std::set<int> active_dims() const {
    std::set<int> out(free_dims);
    if (low >= 1) out.insert(low - 1);
    out.insert(low);
    return out;
  }
};

inline AllowedDeltas allowed_deltas(int k, int m) {
  if (m < 1) throw ValidationError("manifold dimension must be positive");
  if (k < 0 || k > m) throw ValidationError("index " + std::to_string(k) + " out of range for m = " + std::to_string(m));
  if (2 * k == m) throw ValidationError("no delta constraint in the middle dimension k = m/2");
  AllowedDeltas a;
  a.k = k;
  a.m = m;
  a.mirrored = 2 * k > m;
  a.low = a.mirrored ? m - k : k;
  const int q = a.low;
  a.pairs.push_back({0, 1});
  if (2 * q == m - 1) a.pairs.push_back({0, 2});
  if (q >= 1) a.pairs.push_back({-1, 0});
  for (int l : {m - q - 1, m - q, m - 2, m - 1})
    if (l >= 0 && l != q - 1 && l != q) a.free_dims.insert(l);
  return a;
}

/// Allowed change of b_{n-1} across a non-degenerate local maximum of the
/// potential on an n-dimensional base.
inline std::vector<int> maxima_delta_rule(bool is_global) {
  if (is_global) return {-1, 0, 1};
  return {-1};
}

// ---------------------------------------------------------------------------
// Verdicts

namespace detail {

inline void check_query(const LevelPassQuery& q) {
  if (q.m < 1) throw ValidationError("query needs m >= 1");
  if (q.points.empty()) throw ValidationError("query needs at least one critical point");
  for (const auto& p : q.points) {
    if (p.index < 0 || p.index > q.m)
      throw ValidationError("critical point index " + std::to_string(p.index) + " outside [0, " +
                            std::to_string(q.m) + "]");
    if (p.count < 1) throw ValidationError("critical point count must be positive");
  }
  if (q.bundle) {
    const auto& b = *q.bundle;
    if (b.rank < 1) throw ValidationError("bundle rank must be positive");
    if (q.m != 2 * b.rank)
      throw ValidationError("bundle of rank " + std::to_string(b.rank) + " needs m = " + std::to_string(2 * b.rank));
    for (const auto& p : q.points)
      if (p.index > b.rank) throw ValidationError("potential critical point index exceeds the base dimension");
    if (b.euler_number && !(b.base_closed && b.base_orientable && b.bundle_orientable))
      throw ValidationError("Euler number needs a closed orientable base and an orientable bundle");
  }
}

inline std::optional<std::string> projective_plane_name(int m) {
  switch (m) {
    case 2: return "RP^2 perfect Morse";
    case 4: return "CP^2 perfect Morse";
    case 8: return "HP^2 perfect Morse";
    case 16: return "OP^2 perfect Morse";
    default: return std::nullopt;
  }
}

}  // namespace detail

inline Verdict verdict(const LevelPassQuery& q) {
  detail::check_query(q);
  Verdict v;
  if (!q.assumptions_hold) {
    v.reason = "standing assumptions not declared";
    return v;
  }
  for (const auto& p : q.points)
    if (!p.non_degenerate) {
      v.reason = "degenerate critical point";
      return v;
    }

  const int m = q.m;
  int total = 0;
  std::map<int, int> by_index;
  for (const auto& p : q.points) {
    total += p.count;
    by_index[p.index] += p.count;
  }
  std::optional<std::string> witness;
  auto fire = [&](const char* id, std::optional<std::string> w = std::nullopt) {
    v.rules.push_back(id);
    if (v.rule.empty()) {
      v.rule = id;
      witness = std::move(w);
    }
  };

  // single index
  if (by_index.size() == 1 && 2 * by_index.begin()->first != m) fire(rule_id::kLevel);
  // an isolated index
  for (const auto& [k, n] : by_index) {
    if (2 * k == m) continue;
    if (!by_index.count(k - 1) && !by_index.count(k + 1) && !by_index.count(m - k)) {
      fire(rule_id::kLevel2);
      break;
    }
  }

  if (q.bundle) {
    const auto& b = *q.bundle;
    const int n = b.rank;
    bool all_global = true, any_unknown = false;
    int global = 0;
    for (const auto& p : q.points) {
      if (!p.is_global_max) any_unknown = true;
      else if (*p.is_global_max) global += p.count;
      else all_global = false;
    }
    all_global = all_global && !any_unknown;
    if (b.base_orientable && total == 1 && q.points[0].is_global_max == false) fire(rule_id::kNotGlobalMax);
    if (b.base_orientable && all_global && global >= 3) fire(rule_id::kManyGlobalMax);
    const bool closed_setting = b.base_closed && b.base_orientable && b.bundle_orientable;
    if (closed_setting && all_global && b.euler_number) {
      const long long e = *b.euler_number;
      if (global == 1 && e != 1 && e != -1)
        fire(rule_id::kClosedOne, e == 0 ? std::string("Q") : "Zk:" + std::to_string(e < 0 ? -e : e));
      if (global == 2 && e != 0) fire(rule_id::kClosedTwo, std::string("Q"));
    }
    if (b.trivial_outside_disk && total == 1 && n != 2 && n != 4 && n != 8) fire(rule_id::kAdams);
  }

  if (!v.rule.empty()) {
    v.outcome = Outcome::MustChange;
    v.witness = witness;
    return v;
  }

  // known counterexamples
  if (!q.bundle && total == 1 && 2 * q.points[0].index == m) {
    if (auto name = detail::projective_plane_name(m)) {
      v.outcome = Outcome::MayNotChange;
      v.rule = rule_id::kProjectivePlane;
      v.rules = {v.rule};
      v.witness = *name;
      return v;
    }
  }
  if (q.bundle) {
    const auto& b = *q.bundle;
    const bool single_global = total == 1 && q.points[0].is_global_max == true;
    if (single_global && b.euler_number && (*b.euler_number == 1 || *b.euler_number == -1) &&
        (b.rank == 2 || b.rank == 4 || b.rank == 8)) {
      v.outcome = Outcome::MayNotChange;
      v.rule = rule_id::kHopf;
      v.rules = {v.rule};
      v.witness = "Hopf";
      return v;
    }
    if (!b.euler_number) {
      v.reason = "Euler number unknown";
      return v;
    }
  }
  v.reason = "no rule applies";
  return v;
}

/// Same query with every index k replaced by m - k.
inline LevelPassQuery mirrored(LevelPassQuery q) {
  for (auto& p : q.points) p.index = q.m - p.index;
  return q;
}

}  // namespace morse_levels
