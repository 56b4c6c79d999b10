#pragma once

#include "morse_levels/chaincore/coefficients.hpp"
#include "morse_levels/homology/smith.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace morse_levels {

// ---------------------------------------------------------------------------
// Field arithmetic

struct PrimeFieldOps {
  using value_type = std::uint64_t;
  std::uint64_t p;

  value_type from(long long x) const {
    long long r = x % static_cast<long long>(p);
    return static_cast<value_type>(r < 0 ? r + static_cast<long long>(p) : r);
  }
  value_type from(const Integer& x) const {
    Integer r = x % p;
    if (r < 0) r += p;
    return r.convert_to<value_type>();
  }
  value_type zero() const { return 0; }
  value_type one() const { return 1 % p; }
  bool is_zero(value_type x) const { return x == 0; }
  value_type add(value_type a, value_type b) const { return (a + b) % p; }
  value_type sub(value_type a, value_type b) const { return (a + p - b) % p; }
  value_type mul(value_type a, value_type b) const { return (a * b) % p; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type inv(value_type a) const {
    value_type result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  Rational to_rational(value_type a) const { return Rational(Integer(a)); }
};

struct RationalOps {
  using value_type = Rational;

  value_type from(long long x) const { return Rational(x); }
  value_type from(const Integer& x) const { return Rational(x); }
  value_type zero() const { return Rational(0); }
  value_type one() const { return Rational(1); }
  bool is_zero(const value_type& x) const { return x == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const { return 1 / a; }
  Rational to_rational(const value_type& a) const { return a; }
};

/// Calls fn(ops) with the arithmetic for a field coefficient spec.
template <class Fn>
decltype(auto) with_field(const CoefficientSpec& coeff, Fn&& fn) {
  if (coeff.kind == CoefficientSpec::Kind::PrimeField) return fn(PrimeFieldOps{coeff.modulus});
  if (coeff.kind == CoefficientSpec::Kind::Rationals) return fn(RationalOps{});
  throw ValidationError("coefficient " + to_string(coeff) + " is not a field");
}

// ---------------------------------------------------------------------------
// Matrices with at most two unit entries per column (graph-like)

/// Rank data for a matrix whose columns (or rows) each hold at most two
/// nonzero entries, all equal to +-1. Such a matrix is the incidence matrix
/// of a signed graph with half-edges; per connected component the left
/// kernel is one-dimensional exactly when the component is balanced and has
/// no half-edge (over characteristic 2: no half-edge). Unbalanced components
/// without half-edges carry one invariant factor 2.
struct SignedGraphRank {
  std::size_t rank_char0 = 0;
  std::size_t rank_char2 = 0;
  std::size_t twos = 0;  // invariant factors equal to 2
};

namespace detail {

struct ParityUnionFind {
  std::vector<std::size_t> parent;
  std::vector<unsigned char> parity;  // parity relative to parent
  explicit ParityUnionFind(std::size_t n) : parent(n), parity(n, 0) { std::iota(parent.begin(), parent.end(), 0); }

  std::pair<std::size_t, unsigned char> find(std::size_t x) {
    unsigned char acc = 0;
    std::size_t root = x;
    while (parent[root] != root) {
      acc ^= parity[root];
      root = parent[root];
    }
    // path compression with parity bookkeeping
    unsigned char along = acc;
    while (parent[x] != root) {
      std::size_t next = parent[x];
      unsigned char px = parity[x];
      parent[x] = root;
      parity[x] = along;
      along ^= px;
      x = next;
    }
    return {root, acc};
  }
};

inline std::optional<SignedGraphRank> signed_graph_rank_columns(
    std::size_t rows, const std::vector<std::vector<std::pair<std::size_t, long long>>>& cols) {
  for (const auto& col : cols) {
    if (col.size() > 2) return std::nullopt;
    for (const auto& [r, v] : col)
      if (v != 1 && v != -1) return std::nullopt;
    if (col.size() == 2 && col[0].first == col[1].first) return std::nullopt;
  }
  ParityUnionFind uf(rows);
  std::vector<unsigned char> half(rows, 0), unbalanced(rows, 0);
  for (const auto& col : cols) {
    if (col.empty()) continue;
    if (col.size() == 1) {
      half[col[0].first] = 1;  // marked on the vertex; folded into roots below
      continue;
    }
    // left kernel relation: y_b = -(s_a s_b) y_a, parity 1 means y_b = -y_a
    unsigned char rel = (col[0].second * col[1].second > 0) ? 1 : 0;
    auto [ra, pa] = uf.find(col[0].first);
    auto [rb, pb] = uf.find(col[1].first);
    if (ra == rb) {
      if ((pa ^ pb) != rel) unbalanced[ra] = 1;
    } else {
      uf.parent[rb] = ra;
      uf.parity[rb] = static_cast<unsigned char>(pa ^ pb ^ rel);
      unbalanced[ra] = unbalanced[ra] | unbalanced[rb];
    }
  }
  std::vector<unsigned char> root_half(rows, 0), root_unbal(rows, 0), is_root(rows, 0);
  for (std::size_t v = 0; v < rows; ++v) {
    auto [r, _] = uf.find(v);
    is_root[r] = 1;
    root_half[r] |= half[v];
    root_unbal[r] |= unbalanced[v];
  }
  SignedGraphRank out;
  std::size_t kernel0 = 0, kernel2 = 0;
  for (std::size_t v = 0; v < rows; ++v) {
    if (!is_root[v]) continue;
    if (!root_half[v]) {
      ++kernel2;
      if (!root_unbal[v])
        ++kernel0;
      else
        ++out.twos;
    }
  }
  out.rank_char0 = rows - kernel0;
  out.rank_char2 = rows - kernel2;
  return out;
}

inline SparseIntMatrix transpose(const SparseIntMatrix& m) {
  SparseIntMatrix t;
  t.rows = m.cols();
  t.columns.resize(m.rows);
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.columns[c]) t.columns[r].push_back({c, v});
  return t;
}

}  // namespace detail

/// Graph-like fast path; nullopt when neither the columns nor the rows
/// qualify.
inline std::optional<SignedGraphRank> signed_graph_rank(const SparseIntMatrix& m) {
  if (auto r = detail::signed_graph_rank_columns(m.rows, m.columns)) return r;
  auto t = detail::transpose(m);
  return detail::signed_graph_rank_columns(t.rows, t.columns);
}

// ---------------------------------------------------------------------------
// Sparse column reduction over a field

template <class F>
std::size_t sparse_rank(const SparseIntMatrix& m, const F& ops) {
  using V = typename F::value_type;
  using Column = std::vector<std::pair<std::size_t, V>>;
  std::vector<Column> cols(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::map<std::size_t, V> acc;
    for (const auto& [r, v] : m.columns[c]) {
      auto it = acc.find(r);
      V add = ops.from(v);
      if (it == acc.end())
        acc.emplace(r, add);
      else
        it->second = ops.add(it->second, add);
    }
    for (auto& [r, v] : acc)
      if (!ops.is_zero(v)) cols[c].push_back({r, v});
  }
  std::vector<std::ptrdiff_t> owner(m.rows, -1);
  std::size_t rank = 0;
  Column scratch;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    Column& col = cols[j];
    while (!col.empty() && owner[col.back().first] >= 0) {
      const Column& other = cols[static_cast<std::size_t>(owner[col.back().first])];
      V factor = ops.mul(col.back().second, ops.inv(other.back().second));
      scratch.clear();
      std::size_t a = 0, b = 0;
      while (a < col.size() || b < other.size()) {
        if (b == other.size() || (a < col.size() && col[a].first < other[b].first)) {
          scratch.push_back(col[a++]);
        } else if (a == col.size() || other[b].first < col[a].first) {
          scratch.push_back({other[b].first, ops.neg(ops.mul(factor, other[b].second))});
          ++b;
        } else {
          V v = ops.sub(col[a].second, ops.mul(factor, other[b].second));
          if (!ops.is_zero(v)) scratch.push_back({col[a].first, v});
          ++a, ++b;
        }
      }
      col.swap(scratch);
    }
    if (!col.empty()) {
      owner[col.back().first] = static_cast<std::ptrdiff_t>(j);
      ++rank;
    }
  }
  return rank;
}

/// Rank of an integer matrix read in a field.
inline std::size_t field_rank(const SparseIntMatrix& m, const CoefficientSpec& coeff) {
  if (m.rows == 0 || m.cols() == 0) return 0;
  if (auto g = signed_graph_rank(m)) {
    bool char2 = coeff.kind == CoefficientSpec::Kind::PrimeField && coeff.modulus == 2;
    return char2 ? g->rank_char2 : g->rank_char0;
  }
  return with_field(coeff, [&](const auto& ops) { return sparse_rank(m, ops); });
}

// ---------------------------------------------------------------------------
// Dense matrices over a field

template <class F>
class FieldMatrix {
 public:
  using V = typename F::value_type;

  FieldMatrix(const F& ops, std::size_t rows, std::size_t cols)
      : ops_(ops), rows_(rows), cols_(cols), data_(rows * cols, ops.zero()) {}

  static FieldMatrix identity(const F& ops, std::size_t n) {
    FieldMatrix m(ops, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ops.one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const F& ops() const { return ops_; }
  V& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const V& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<V> column(std::size_t c) const {
    std::vector<V> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  std::vector<V> operator*(const std::vector<V>& v) const {
    std::vector<V> out(rows_, ops_.zero());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!ops_.is_zero((*this)(r, c)) && !ops_.is_zero(v[c]))
          out[r] = ops_.add(out[r], ops_.mul((*this)(r, c), v[c]));
    return out;
  }

 private:
  F ops_;
  std::size_t rows_, cols_;
  std::vector<V> data_;
};

/// Reduced row echelon form R of M together with an invertible T, T M = R.
template <class F>
struct EchelonForm {
  FieldMatrix<F> R, T;
  std::vector<std::size_t> pivot_cols;  // pivot column of row i

  std::size_t rank() const { return pivot_cols.size(); }

  /// Some x with M x = b, or nullopt when inconsistent.
  std::optional<std::vector<typename F::value_type>> solve(const std::vector<typename F::value_type>& b) const {
    const auto& ops = R.ops();
    auto y = T * b;
    for (std::size_t i = rank(); i < y.size(); ++i)
      if (!ops.is_zero(y[i])) return std::nullopt;
    std::vector<typename F::value_type> x(R.cols(), ops.zero());
    for (std::size_t i = 0; i < rank(); ++i) x[pivot_cols[i]] = y[i];
    return x;
  }

  /// Basis of the null space of M.
  std::vector<std::vector<typename F::value_type>> kernel_basis() const {
    const auto& ops = R.ops();
    std::vector<bool> is_pivot(R.cols(), false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<typename F::value_type>> out;
    for (std::size_t f = 0; f < R.cols(); ++f) {
      if (is_pivot[f]) continue;
      std::vector<typename F::value_type> v(R.cols(), ops.zero());
      v[f] = ops.one();
      for (std::size_t i = 0; i < rank(); ++i) v[pivot_cols[i]] = ops.neg(R(i, f));
      out.push_back(std::move(v));
    }
    return out;
  }
};

template <class F>
EchelonForm<F> echelon(FieldMatrix<F> m) {
  const F ops = m.ops();
  auto t = FieldMatrix<F>::identity(ops, m.rows());
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && ops.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
      for (std::size_t j = 0; j < t.cols(); ++j) std::swap(t(p, j), t(row, j));
    }
    auto inv = ops.inv(m(row, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = ops.mul(m(row, j), inv);
    for (std::size_t j = 0; j < t.cols(); ++j) t(row, j) = ops.mul(t(row, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || ops.is_zero(m(i, c))) continue;
      auto f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!ops.is_zero(m(row, j))) m(i, j) = ops.sub(m(i, j), ops.mul(f, m(row, j)));
      for (std::size_t j = 0; j < t.cols(); ++j)
        if (!ops.is_zero(t(row, j))) t(i, j) = ops.sub(t(i, j), ops.mul(f, t(row, j)));
    }
    pivots.push_back(c);
    ++row;
  }
  return {std::move(m), std::move(t), std::move(pivots)};
}

template <class F>
FieldMatrix<F> to_field_matrix(const F& ops, const SparseIntMatrix& m) {
  FieldMatrix<F> out(ops, m.rows, m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.columns[c]) out(r, c) = ops.add(out(r, c), ops.from(v));
  return out;
}

}  // namespace morse_levels
