#pragma once

#include "morse_levels/chaincore/cell_complex.hpp"
#include "morse_levels/chaincore/coefficients.hpp"
#include "morse_levels/homology/chain_complex.hpp"
#include "morse_levels/homology/field.hpp"
#include "morse_levels/homology/smith.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace morse_levels {

/// Homology in one dimension. Over a field only `betti` is used. Over Z,
/// `torsion` holds the invariant factors > 1. Over Z/k the group is finite:
/// `betti` is 0 and `torsion` is its invariant-factor decomposition.
struct DimHomology {
  std::size_t betti = 0;
  std::vector<Integer> torsion;

  bool trivial() const { return betti == 0 && torsion.empty(); }
  friend bool operator==(const DimHomology&, const DimHomology&) = default;
};

struct HomologySummary {
  CoefficientSpec coeff;
  std::vector<DimHomology> dims;

  std::size_t betti(int d) const {
    return (d < 0 || d >= static_cast<int>(dims.size())) ? 0 : dims[static_cast<std::size_t>(d)].betti;
  }
  std::vector<Integer> torsion(int d) const {
    return (d < 0 || d >= static_cast<int>(dims.size())) ? std::vector<Integer>{} : dims[static_cast<std::size_t>(d)].torsion;
  }
  std::vector<std::size_t> betti_vector() const {
    std::vector<std::size_t> out;
    for (const auto& d : dims) out.push_back(d.betti);
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
  }
  /// Highest dimension with nonzero homology, -1 if none.
  int top() const {
    for (int d = static_cast<int>(dims.size()) - 1; d >= 0; --d)
      if (!dims[static_cast<std::size_t>(d)].trivial()) return d;
    return -1;
  }

  /// Same coefficients and same groups; trailing zero dimensions are ignored.
  friend bool operator==(const HomologySummary& a, const HomologySummary& b) {
    if (!(a.coeff == b.coeff)) return false;
    const int n = std::max(a.top(), b.top());
    for (int d = 0; d <= n; ++d) {
      DimHomology x = d < static_cast<int>(a.dims.size()) ? a.dims[static_cast<std::size_t>(d)] : DimHomology{};
      DimHomology y = d < static_cast<int>(b.dims.size()) ? b.dims[static_cast<std::size_t>(d)] : DimHomology{};
      if (!(x == y)) return false;
    }
    return true;
  }
};

/// "b=(1,1,0) T1=[2]" for Q/F_p/Z; "H1=Z2+Z4 H2=Z2" for Z/k.
inline std::string to_string(const HomologySummary& s) {
  std::ostringstream os;
  if (s.coeff.kind == CoefficientSpec::Kind::IntegersMod) {
    bool any = false;
    for (std::size_t d = 0; d < s.dims.size(); ++d) {
      if (s.dims[d].torsion.empty()) continue;
      os << (any ? " " : "") << "H" << d << "=";
      for (std::size_t i = 0; i < s.dims[d].torsion.size(); ++i) os << (i ? "+" : "") << "Z" << s.dims[d].torsion[i];
      any = true;
    }
    if (!any) os << "0";
    return os.str();
  }
  os << "b=(";
  for (std::size_t d = 0; d < s.dims.size(); ++d) os << (d ? "," : "") << s.dims[d].betti;
  os << ")";
  for (std::size_t d = 0; d < s.dims.size(); ++d) {
    if (s.dims[d].torsion.empty()) continue;
    os << " T" << d << "=[";
    for (std::size_t i = 0; i < s.dims[d].torsion.size(); ++i) os << (i ? "," : "") << s.dims[d].torsion[i];
    os << "]";
  }
  return os.str();
}

/// Invariant factors (ascending, each dividing the next) of the direct sum
/// of cyclic groups of the given orders; orders 1 are dropped.
inline std::vector<Integer> invariant_factor_form(const std::vector<Integer>& orders) {
  std::map<Integer, std::vector<Integer>> powers;  // prime -> prime powers
  for (Integer n : orders) {
    if (n <= 0) throw InvariantViolation("cyclic order must be positive");
    for (Integer p = 2; p * p <= n; ++p) {
      if (n % p != 0) continue;
      Integer q = 1;
      while (n % p == 0) n /= p, q *= p;
      powers[p].push_back(q);
    }
    if (n > 1) powers[n].push_back(n);
  }
  std::size_t count = 0;
  for (auto& [p, list] : powers) {
    std::sort(list.begin(), list.end(), std::greater<>());
    count = std::max(count, list.size());
  }
  std::vector<Integer> out(count, Integer(1));
  for (const auto& [p, list] : powers)
    for (std::size_t i = 0; i < list.size(); ++i) out[count - 1 - i] *= list[i];
  return out;
}

// ---------------------------------------------------------------------------
// Betti numbers and integral homology

namespace detail {

inline InvariantFactors boundary_factors(const SparseIntMatrix& m) {
  if (m.rows == 0 || m.cols() == 0) return {};
  if (auto g = signed_graph_rank(m)) {
    InvariantFactors f;
    f.rank = g->rank_char0;
    f.nontrivial.assign(g->twos, Integer(2));
    return f;
  }
  return invariant_factors(m);
}

}  // namespace detail

inline HomologySummary homology_field(const ChainComplex& cc, const CoefficientSpec& coeff) {
  if (!coeff.is_field()) throw ValidationError("homology_field needs Q or F_p, got " + to_string(coeff));
  const int top = cc.dimension();
  std::vector<std::size_t> rank(static_cast<std::size_t>(top + 2), 0);
  for (int d = 1; d <= top; ++d) rank[static_cast<std::size_t>(d)] = field_rank(cc.boundary[static_cast<std::size_t>(d)], coeff);
  HomologySummary s{coeff, {}};
  for (int d = 0; d <= top; ++d) {
    const auto ud = static_cast<std::size_t>(d);
    s.dims.push_back({cc.counts[ud] - rank[ud] - rank[ud + 1], {}});
  }
  return s;
}

inline HomologySummary homology_integral(const ChainComplex& cc) {
  const int top = cc.dimension();
  std::vector<InvariantFactors> f(static_cast<std::size_t>(top + 2));
  for (int d = 1; d <= top; ++d) f[static_cast<std::size_t>(d)] = detail::boundary_factors(cc.boundary[static_cast<std::size_t>(d)]);
  HomologySummary s{CoefficientSpec::integers(), {}};
  for (int d = 0; d <= top; ++d) {
    const auto ud = static_cast<std::size_t>(d);
    s.dims.push_back({cc.counts[ud] - f[ud].rank - f[ud + 1].rank, f[ud + 1].nontrivial});
  }
  return s;
}

/// Universal coefficients: H_l(X; Z/k) from integral homology.
inline HomologySummary homology_mod_k(const HomologySummary& integral, std::uint64_t k) {
  if (integral.coeff.kind != CoefficientSpec::Kind::Integers)
    throw ValidationError("homology_mod_k needs an integral summary");
  auto coeff = CoefficientSpec::integers_mod(k);
  const Integer kk = k;
  HomologySummary s{coeff, {}};
  for (std::size_t d = 0; d < integral.dims.size(); ++d) {
    std::vector<Integer> orders(integral.dims[d].betti, kk);
    for (const auto& t : integral.dims[d].torsion) orders.push_back(gcd_of(t, kk));
    if (d > 0)
      for (const auto& t : integral.dims[d - 1].torsion) orders.push_back(gcd_of(t, kk));
    s.dims.push_back({0, invariant_factor_form(orders)});
  }
  return s;
}

/// Dimension of H_l(X; F_p) predicted from integral homology.
inline std::size_t predicted_field_betti(const HomologySummary& integral, int d, std::uint64_t p) {
  std::size_t b = integral.betti(d);
  for (const auto& t : integral.torsion(d))
    if (t % p == 0) ++b;
  for (const auto& t : integral.torsion(d - 1))
    if (t % p == 0) ++b;
  return b;
}

/// Homology of a chain complex with any supported coefficients.
inline HomologySummary homology(const ChainComplex& cc, const CoefficientSpec& coeff) {
  switch (coeff.kind) {
    case CoefficientSpec::Kind::Rationals:
    case CoefficientSpec::Kind::PrimeField: return homology_field(cc, coeff);
    case CoefficientSpec::Kind::Integers: return homology_integral(cc);
    case CoefficientSpec::Kind::IntegersMod: return homology_mod_k(homology_integral(cc), coeff.modulus);
  }
  throw InvariantViolation("unknown coefficient kind");
}

inline HomologySummary homology(const CellComplex& c, const CoefficientSpec& coeff) {
  return homology(chain_complex(c), coeff);
}
inline HomologySummary homology_field(const CellComplex& c, const CoefficientSpec& coeff) {
  return homology_field(chain_complex(c), coeff);
}
inline HomologySummary homology_integral(const CellComplex& c) { return homology_integral(chain_complex(c)); }

/// H(X, A) as homology of the quotient chain complex.
inline HomologySummary relative_homology(const CellComplex& c, const Subcomplex& a, const CoefficientSpec& coeff) {
  return homology(chain_complex(c, &a), coeff);
}

// ---------------------------------------------------------------------------
// Homology bases and induced maps

template <class F>
struct FieldHomologyBasis {
  using V = typename F::value_type;
  std::vector<std::vector<V>> reps;  // representative cycles
  std::optional<EchelonForm<F>> solver;
  std::size_t boundary_cols = 0;

  /// Coordinates of the class of cycle z; nullopt if z is not a cycle.
  std::optional<std::vector<V>> coordinates(const std::vector<V>& z) const {
    auto x = solver->solve(z);
    if (!x) return std::nullopt;
    return std::vector<V>(x->begin() + static_cast<std::ptrdiff_t>(boundary_cols), x->end());
  }
};

template <class F>
FieldHomologyBasis<F> field_homology_basis(const ChainComplex& cc, int l, const F& ops) {
  const std::size_t n = cc.count(l);
  auto z = echelon(to_field_matrix(ops, cc.boundary_matrix(l))).kernel_basis();
  auto b = to_field_matrix(ops, cc.boundary_matrix(l + 1));
  FieldHomologyBasis<F> out;
  out.boundary_cols = b.cols();

  FieldMatrix<F> m(ops, n, b.cols() + z.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) m(r, c) = b(r, c);
    for (std::size_t c = 0; c < z.size(); ++c) m(r, b.cols() + c) = z[c][r];
  }
  auto e = echelon(std::move(m));
  for (auto pc : e.pivot_cols)
    if (pc >= b.cols()) out.reps.push_back(z[pc - b.cols()]);

  FieldMatrix<F> m2(ops, n, b.cols() + out.reps.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) m2(r, c) = b(r, c);
    for (std::size_t c = 0; c < out.reps.size(); ++c) m2(r, b.cols() + c) = out.reps[c][r];
  }
  out.solver = echelon(std::move(m2));
  return out;
}

/// Basis of the free part of H_l(C; Z). Coordinates are taken in
/// C_l / sat(B_l) via the Smith form of d_{l+1}.
struct IntegralHomologyBasis {
  std::vector<std::vector<Integer>> reps;
  IntMatrix projection;  // rows r.. of U from U d_{l+1} V = S
  SmithForm lattice;     // Smith form of projection * (cycle basis)

  /// Coordinates of the class of cycle z modulo torsion; nullopt if z is not a cycle.
  std::optional<std::vector<Integer>> coordinates(const std::vector<Integer>& z) const {
    auto x = projection * z;
    if (lattice.U.rows() != x.size()) return std::nullopt;
    auto y = lattice.U * x;
    std::vector<Integer> c(lattice.rank());
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (i < lattice.rank()) {
        if (y[i] % lattice.diagonal[i] != 0) return std::nullopt;
        c[i] = y[i] / lattice.diagonal[i];
      } else if (y[i] != 0) {
        return std::nullopt;
      }
    }
    return c;
  }
};

inline IntegralHomologyBasis integral_homology_basis(const ChainComplex& cc, int l) {
  const std::size_t n = cc.count(l);
  IntegralHomologyBasis out;
  auto snf1 = smith_normal_form(cc.boundary_matrix(l + 1).to_dense(), true);
  out.projection = IntMatrix(n - snf1.rank(), n);
  for (std::size_t i = snf1.rank(); i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.projection(i - snf1.rank(), j) = snf1.U(i, j);

  auto d0 = cc.boundary_matrix(l).to_dense();
  auto snf0 = smith_normal_form(d0, true);
  IntMatrix kernel(n, n - snf0.rank());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = snf0.rank(); j < n; ++j) kernel(i, j - snf0.rank()) = snf0.V(i, j);

  auto pk = out.projection * kernel;
  out.lattice = smith_normal_form(pk, true);
  for (std::size_t i = 0; i < out.lattice.rank(); ++i) {
    std::vector<Integer> coeffs = out.lattice.V.column(i);
    out.reps.push_back(kernel * coeffs);
  }
  return out;
}

/// Matrix of an induced map on homology in the bases chosen above. Entries
/// are field elements (F_p as 0..p-1) or integers on the free part for Z.
struct HomologyMap {
  CoefficientSpec coeff;
  std::size_t rows = 0, cols = 0;
  std::vector<Rational> entries;  // row-major

  const Rational& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

  std::size_t rank() const {
    if (rows == 0 || cols == 0) return 0;
    auto compute = [&](const auto& ops) {
      using Ops = std::decay_t<decltype(ops)>;
      FieldMatrix<Ops> m(ops, rows, cols);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
          if constexpr (std::is_same_v<Ops, PrimeFieldOps>)
            m(r, c) = ops.from(numerator(at(r, c)));
          else
            m(r, c) = at(r, c);
        }
      return echelon(std::move(m)).rank();
    };
    if (coeff.kind == CoefficientSpec::Kind::PrimeField) return compute(PrimeFieldOps{coeff.modulus});
    return compute(RationalOps{});
  }

  bool is_identity() const {
    if (rows != cols) return false;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (at(r, c) != (r == c ? 1 : 0)) return false;
    return true;
  }
};

inline HomologyMap induced_map(const ChainMap& f, const ChainComplex& source, const ChainComplex& target, int l,
                               const CoefficientSpec& coeff) {
  require_chain_map(f, source, target);
  const IntMatrix* fl = f.component(l);
  HomologyMap out{coeff, 0, 0, {}};
  if (coeff.kind == CoefficientSpec::Kind::IntegersMod)
    throw ValidationError("induced maps are computed over Q, F_p or Z (free part), not Z/k");
  if (coeff.kind == CoefficientSpec::Kind::Integers) {
    auto bs = integral_homology_basis(source, l);
    auto bt = integral_homology_basis(target, l);
    out.rows = bt.reps.size();
    out.cols = bs.reps.size();
    out.entries.assign(out.rows * out.cols, Rational(0));
    for (std::size_t j = 0; j < bs.reps.size(); ++j) {
      std::vector<Integer> image = fl ? (*fl) * bs.reps[j] : std::vector<Integer>(target.count(l));
      auto c = bt.coordinates(image);
      if (!c) throw InvariantViolation("image of a cycle is not a cycle");
      for (std::size_t i = 0; i < out.rows; ++i) out.entries[i * out.cols + j] = Rational((*c)[i]);
    }
    return out;
  }
  with_field(coeff, [&](const auto& ops) {
    auto bs = field_homology_basis(source, l, ops);
    auto bt = field_homology_basis(target, l, ops);
    out.rows = bt.reps.size();
    out.cols = bs.reps.size();
    out.entries.assign(out.rows * out.cols, Rational(0));
    for (std::size_t j = 0; j < bs.reps.size(); ++j) {
      std::vector<typename std::decay_t<decltype(ops)>::value_type> image(target.count(l), ops.zero());
      if (fl)
        for (std::size_t r = 0; r < fl->rows(); ++r)
          for (std::size_t c = 0; c < fl->cols(); ++c)
            if ((*fl)(r, c) != 0) image[r] = ops.add(image[r], ops.mul(ops.from((*fl)(r, c)), bs.reps[j][c]));
      auto c = bt.coordinates(image);
      if (!c) throw InvariantViolation("image of a cycle is not a cycle");
      for (std::size_t i = 0; i < out.rows; ++i) out.entries[i * out.cols + j] = ops.to_rational((*c)[i]);
    }
    return 0;
  });
  return out;
}

inline HomologyMap induced_map(const ChainMap& f, const CellComplex& source, const CellComplex& target, int l,
                               const CoefficientSpec& coeff) {
  return induced_map(f, chain_complex(source), chain_complex(target), l, coeff);
}

// ---------------------------------------------------------------------------
// Orders of cycles

/// Integer chain of a fixed dimension, as (cell index, coefficient) pairs.
struct CycleChain {
  int dim = 0;
  std::vector<std::pair<std::size_t, long long>> terms;
};

/// Least n >= 1 with n z a boundary; nullopt stands for infinite order.
inline std::optional<Integer> cycle_class_order(const ChainComplex& cc, const CycleChain& z) {
  const std::size_t n = cc.count(z.dim);
  std::vector<Integer> v(n);
  for (const auto& [i, c] : z.terms) {
    if (i >= n) throw ValidationError("cycle references missing cell " + to_string(CellRef{z.dim, i}));
    v[i] += c;
  }
  auto bd = detail::apply(cc.boundary_matrix(z.dim), v);
  for (std::size_t i = 0; i < bd.size(); ++i)
    if (bd[i] != 0)
      throw ValidationError("chain is not a cycle: boundary has coefficient " + to_string(bd[i]) + " on cell " +
                            to_string(CellRef{z.dim - 1, i}));
  auto snf = smith_normal_form(cc.boundary_matrix(z.dim + 1).to_dense(), true);
  auto y = snf.U * v;
  Integer order = 1;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i >= snf.rank()) {
      if (y[i] != 0) return std::nullopt;
      continue;
    }
    const Integer& s = snf.diagonal[i];
    order = lcm_of(order, s / gcd_of(s, abs_value(y[i])));
  }
  return order;
}

inline std::optional<Integer> cycle_class_order(const CellComplex& c, const CycleChain& z) {
  return cycle_class_order(chain_complex(c), z);
}

}  // namespace morse_levels
