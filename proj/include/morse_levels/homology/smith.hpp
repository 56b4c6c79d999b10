#pragma once

#include "morse_levels/homology/int_matrix.hpp"

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace morse_levels {

/// Result of a Smith normal form computation: U * A * V = diag(d_1, ..., d_r, 0, ...)
/// with d_i > 0 and d_i | d_{i+1}. Transforms are filled only on request.
struct SmithForm {
  std::vector<Integer> diagonal;  // nonzero invariant factors, in order
  IntMatrix U, U_inv, V, V_inv;

  std::size_t rank() const { return diagonal.size(); }
};

namespace detail {

class SmithReducer {
 public:
  SmithReducer(IntMatrix a, bool transforms) : a_(std::move(a)), transforms_(transforms) {
    if (transforms_) {
      u_ = IntMatrix::identity(a_.rows());
      u_inv_ = IntMatrix::identity(a_.rows());
      v_ = IntMatrix::identity(a_.cols());
      v_inv_ = IntMatrix::identity(a_.cols());
    }
  }

  SmithForm run() {
    const std::size_t n = std::min(a_.rows(), a_.cols());
    SmithForm out;
    for (std::size_t t = 0; t < n; ++t) {
      auto pivot = smallest_entry(t);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      reduce_pivot(t);
      if (a_(t, t) < 0) negate_row(t);
      out.diagonal.push_back(a_(t, t));
    }
    if (transforms_) {
      out.U = std::move(u_);
      out.U_inv = std::move(u_inv_);
      out.V = std::move(v_);
      out.V_inv = std::move(v_inv_);
    }
    return out;
  }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        const Integer& x = a_(i, j);
        if (x == 0) continue;
        Integer ax = abs_value(x);
        if (!best || ax < best_abs) {
          best = {i, j};
          best_abs = ax;
          if (best_abs == 1) return best;
        }
      }
    return best;
  }

  void reduce_pivot(std::size_t t) {
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (a_(i, t) == 0) continue;
        Integer q = a_(i, t) / a_(t, t);
        add_row(i, t, -q);
        if (a_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (a_(t, j) == 0) continue;
        Integer q = a_(t, j) / a_(t, t);
        add_col(j, t, -q);
        if (a_(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a remainder smaller than the pivot survived; make it the pivot
        std::size_t bi = t, bj = t;
        Integer best = abs_value(a_(t, t));
        for (std::size_t i = t + 1; i < a_.rows(); ++i)
          if (a_(i, t) != 0 && abs_value(a_(i, t)) < best) best = abs_value(a_(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < a_.cols(); ++j)
          if (a_(t, j) != 0 && abs_value(a_(t, j)) < best) best = abs_value(a_(t, j)), bi = t, bj = j;
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      if (abs_value(a_(t, t)) == 1) return;
      // the pivot must divide the rest of the block
      bool divides = true;
      for (std::size_t i = t + 1; i < a_.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < a_.cols(); ++j)
          if (a_(i, j) % a_(t, t) != 0) {
            add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) return;
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    a_.swap_rows(a, b);
    if (transforms_) {
      u_.swap_rows(a, b);
      u_inv_.swap_cols(a, b);
    }
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    a_.swap_cols(a, b);
    if (transforms_) {
      v_.swap_cols(a, b);
      v_inv_.swap_rows(a, b);
    }
  }
  void add_row(std::size_t target, std::size_t source, const Integer& f) {
    a_.add_row(target, source, f);
    if (transforms_) {
      u_.add_row(target, source, f);
      u_inv_.add_col(source, target, -f);
    }
  }
  void add_col(std::size_t target, std::size_t source, const Integer& f) {
    a_.add_col(target, source, f);
    if (transforms_) {
      v_.add_col(target, source, f);
      v_inv_.add_row(source, target, -f);
    }
  }
  void negate_row(std::size_t r) {
    a_.negate_row(r);
    if (transforms_) {
      u_.negate_row(r);
      u_inv_.negate_col(r);
    }
  }

  IntMatrix a_;
  bool transforms_;
  IntMatrix u_, u_inv_, v_, v_inv_;
};

}  // namespace detail

/// Smith normal form by elimination with minimal-absolute-value pivots.
inline SmithForm smith_normal_form(const IntMatrix& a, bool with_transforms = false) {
  return detail::SmithReducer(a, with_transforms).run();
}

// ---------------------------------------------------------------------------
// Invariant factors of sparse integer matrices (boundary matrices)

/// Column-major sparse integer matrix with small entries, as produced by
/// cellular boundary maps.
struct SparseIntMatrix {
  std::size_t rows = 0;
  std::vector<std::vector<std::pair<std::size_t, long long>>> columns;

  std::size_t cols() const { return columns.size(); }

  IntMatrix to_dense() const {
    IntMatrix m(rows, cols());
    for (std::size_t c = 0; c < cols(); ++c)
      for (const auto& [r, v] : columns[c]) m(r, c) += v;
    return m;
  }
};

struct InvariantFactors {
  std::size_t rank = 0;
  std::vector<Integer> nontrivial;  // factors > 1, divisibility ordered
};

/// Rank and invariant factors without transforms. Unit pivots are
/// eliminated sparsely first; the remaining block goes through dense SNF.
inline InvariantFactors invariant_factors(const SparseIntMatrix& m) {
  std::vector<std::map<std::size_t, Integer>> rows(m.rows);
  std::vector<std::set<std::size_t>> col_rows(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.columns[c]) {
      if (v == 0) continue;
      Integer& slot = rows[r][c];
      slot += v;
      if (slot == 0) {
        rows[r].erase(c);
        col_rows[c].erase(r);
      } else {
        col_rows[c].insert(r);
      }
    }

  std::vector<bool> row_alive(m.rows, true), col_alive(m.cols(), true);
  InvariantFactors out;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!col_alive[c] || col_rows[c].empty()) continue;
      std::optional<std::size_t> pivot_row;
      for (std::size_t r : col_rows[c]) {
        const Integer& v = rows[r].at(c);
        if (v == 1 || v == -1)
          if (!pivot_row || rows[r].size() < rows[*pivot_row].size()) pivot_row = r;
      }
      if (!pivot_row) continue;
      const std::size_t p = *pivot_row;
      const Integer unit = rows[p].at(c);
      std::vector<std::size_t> others(col_rows[c].begin(), col_rows[c].end());
      for (std::size_t r : others) {
        if (r == p) continue;
        Integer factor = rows[r].at(c) * unit;  // unit^-1 == unit
        for (const auto& [col, v] : rows[p]) {
          Integer& slot = rows[r][col];
          slot -= factor * v;
          if (slot == 0) {
            rows[r].erase(col);
            col_rows[col].erase(r);
          } else {
            col_rows[col].insert(r);
          }
        }
      }
      for (const auto& [col, v] : rows[p]) col_rows[col].erase(p);
      rows[p].clear();
      row_alive[p] = false;
      col_alive[c] = false;
      ++out.rank;
      progress = true;
    }
  }

  // dense remainder
  std::vector<std::size_t> live_rows, live_cols;
  for (std::size_t r = 0; r < m.rows; ++r)
    if (row_alive[r] && !rows[r].empty()) live_rows.push_back(r);
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (col_alive[c] && !col_rows[c].empty()) live_cols.push_back(c);
  if (!live_rows.empty() && !live_cols.empty()) {
    std::map<std::size_t, std::size_t> col_pos;
    for (std::size_t j = 0; j < live_cols.size(); ++j) col_pos[live_cols[j]] = j;
    IntMatrix rest(live_rows.size(), live_cols.size());
    for (std::size_t i = 0; i < live_rows.size(); ++i)
      for (const auto& [col, v] : rows[live_rows[i]]) rest(i, col_pos.at(col)) = v;
    auto snf = smith_normal_form(rest);
    out.rank += snf.rank();
    for (auto& d : snf.diagonal)
      if (d > 1) out.nontrivial.push_back(d);
  }
  return out;
}

}  // namespace morse_levels
