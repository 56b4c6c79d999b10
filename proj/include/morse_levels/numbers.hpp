#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace morse_levels {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Input that violates a documented precondition (bad query, non-face-closed
/// subcomplex, unknown builder name, ...). The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant failed (for example a constructed complex with
/// a nonzero composed boundary). The CLI maps this to exit code 3.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd_of(Integer a, Integer b) {
  a = abs_value(a);
  b = abs_value(b);
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs_value(a / gcd_of(a, b) * b);
}

/// Parses "3", "-7/4", "0.125" or "1e-3" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw ValidationError("not a rational number: '" + std::string(text) + "'");
  };
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) return fail();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) return fail();
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  Integer mantissa = 0;
  long long exponent = 0;
  bool any_digit = false;
  bool after_point = false;
  for (; pos < s.size(); ++pos) {
    char ch = s[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mantissa = mantissa * 10 + (ch - '0');
      if (after_point) --exponent;
      any_digit = true;
    } else if (ch == '.' && !after_point) {
      after_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) return fail();
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') return fail();
    ++pos;
    bool exp_negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) exp_negative = s[pos++] == '-';
    long long e = 0;
    bool exp_digit = false;
    for (; pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); ++pos) {
      e = e * 10 + (s[pos] - '0');
      exp_digit = true;
      if (e > 4000) return fail();
    }
    if (!exp_digit || pos != s.size()) return fail();
    exponent += exp_negative ? -e : e;
  }
  Rational value(mantissa);
  Integer ten_power = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0)
    value /= Rational(ten_power);
  else
    value *= Rational(ten_power);
  return negative ? Rational(-value) : value;
}

/// "p/q" for non-integers, "p" otherwise.
inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string to_string(const Integer& x) { return x.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact rational value of a finite double.
inline Rational from_double(double x) { return Rational(x); }

}  // namespace morse_levels
