#pragma once

#include "morse_levels/numbers.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace morse_levels {

/// Coefficient system for homology: Q, F_p, Z or Z/k.
struct CoefficientSpec {
  enum class Kind { Rationals, PrimeField, Integers, IntegersMod };

  Kind kind = Kind::Rationals;
  std::uint64_t modulus = 0;  // p or k; 0 for Q and Z

  static CoefficientSpec rationals() { return {Kind::Rationals, 0}; }
  static CoefficientSpec integers() { return {Kind::Integers, 0}; }
  static CoefficientSpec prime_field(std::uint64_t p);
  static CoefficientSpec integers_mod(std::uint64_t k);

  bool is_field() const { return kind == Kind::Rationals || kind == Kind::PrimeField; }

  friend bool operator==(const CoefficientSpec&, const CoefficientSpec&) = default;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline CoefficientSpec CoefficientSpec::prime_field(std::uint64_t p) {
  if (!is_prime(p)) throw ValidationError("F_p needs a prime p, got " + std::to_string(p));
  if (p >= (1ULL << 31)) throw ValidationError("prime too large for F_p arithmetic");
  return {Kind::PrimeField, p};
}

inline CoefficientSpec CoefficientSpec::integers_mod(std::uint64_t k) {
  if (k < 2) throw ValidationError("Z/k needs k >= 2, got " + std::to_string(k));
  return {Kind::IntegersMod, k};
}

/// Textual form used on the command line and in reports: Q, Fp:3, Z, Zk:4.
inline std::string to_string(const CoefficientSpec& c) {
  switch (c.kind) {
    case CoefficientSpec::Kind::Rationals: return "Q";
    case CoefficientSpec::Kind::PrimeField: return "Fp:" + std::to_string(c.modulus);
    case CoefficientSpec::Kind::Integers: return "Z";
    case CoefficientSpec::Kind::IntegersMod: return "Zk:" + std::to_string(c.modulus);
  }
  return "?";
}

inline CoefficientSpec parse_coefficient(std::string_view text) {
  auto number = [&](std::string_view digits) -> std::uint64_t {
    if (digits.empty() || digits.size() > 18) throw ValidationError("bad coefficient spec '" + std::string(text) + "'");
    std::uint64_t v = 0;
    for (char ch : digits) {
      if (ch < '0' || ch > '9') throw ValidationError("bad coefficient spec '" + std::string(text) + "'");
      v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    return v;
  };
  if (text == "Q" || text == "R") return CoefficientSpec::rationals();
  if (text == "Z") return CoefficientSpec::integers();
  if (text.starts_with("Fp:")) return CoefficientSpec::prime_field(number(text.substr(3)));
  if (text.starts_with("Zk:")) return CoefficientSpec::integers_mod(number(text.substr(3)));
  throw ValidationError("unknown coefficient spec '" + std::string(text) + "' (expected Q, Fp:<p>, Z or Zk:<k>)");
}

}  // namespace morse_levels
