#pragma once

#include "morse_levels/chaincore/constructions.hpp"
#include "morse_levels/homology/homology.hpp"
#include "morse_levels/morserules/conformance.hpp"

#include <string>
#include <vector>

namespace morse_levels {

/// Level sets on both sides of one index-k handle of an m-manifold:
/// before = U + W and after = U + V, glued along S^{k-1} x S^{m-k-1}, with
/// W = S^{k-1} x D^{m-k} and V = D^k x S^{m-k-1}.
struct HandleExample {
  std::string name;
  int k = 0;
  int m = 0;
  CellComplex before;
  CellComplex after;
};

namespace detail {

inline CellComplex handle_w(int k, int m) { return product_complex(cw_sphere(k - 1, "x"), cw_disk(m - k, "y", "W")); }
inline CellComplex handle_v(int k, int m) { return product_complex(cw_disk(k, "x", "V"), cw_sphere(m - k - 1, "y")); }

inline HandleExample make_handle(std::string name, int k, int m, const CellComplex& u) {
  return {std::move(name), k, m, glue_by_label(u, handle_w(k, m)), glue_by_label(u, handle_v(k, m))};
}

}  // namespace detail

/// S^2 in a 3-manifold becomes a torus (k = 1, m = 3): U is a cylinder.
inline HandleExample handle_sphere_to_torus() {
  return detail::make_handle("S2 -> T2 in T3", 1, 3, product_complex(cw_disk(1, "x", "U"), cw_sphere(1, "y")));
}

/// S^3 becomes S^2 x S^1 in a 4-manifold (k = 1, m = 4): U = D^1 x S^2.
inline HandleExample handle_s3_to_s2xs1() {
  return detail::make_handle("S3 -> S2xS1", 1, 4, product_complex(cw_disk(1, "x", "U"), cw_sphere(2, "y")));
}

/// Two 2-spheres joined by a tube (k = 1, m = 3): U = S^0 x D^2.
inline HandleExample handle_two_spheres_to_sphere() {
  return detail::make_handle("S2+S2 -> S2", 1, 3, product_complex(cw_sphere(0, "x"), cw_disk(2, "y", "U")));
}

inline std::vector<HandleExample> handle_examples() {
  return {handle_sphere_to_torus(), handle_s3_to_s2xs1(), handle_two_spheres_to_sphere()};
}

/// j_l over the given field.
inline std::vector<long long> handle_deltas(const HandleExample& h, const CoefficientSpec& coeff) {
  return betti_deltas(homology(h.before, coeff), homology(h.after, coeff));
}

}  // namespace morse_levels
