#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mpgh {

using Rational = mpq_class;

enum class ArithmeticMode { kExact, kFloat };

inline constexpr double kDefaultTolerance = 1e-9;

/// Thrown for malformed inputs and violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "p/q", an integer, or a decimal ("0.125", "-3.5e-2") into an exact rational.
Rational parse_rational(std::string_view text);

/// Lowest-terms "p/q" ("p" when the denominator is 1).
std::string to_string(const Rational& value);

/// The exact rational value of a finite double.
Rational from_double(double value);

inline double to_double(const Rational& value) { return value.get_d(); }
inline double to_double(double value) { return value; }

/// Comparison policy. Rationals compare exactly and ignore the tolerance;
/// doubles compare with an absolute slack tau.
template <class T>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static constexpr bool kExact = true;
  static bool le(const Rational& a, const Rational& b, double) { return a <= b; }
  static bool lt(const Rational& a, const Rational& b, double) { return a < b; }
  static bool eq(const Rational& a, const Rational& b, double) { return a == b; }
  static bool is_zero(const Rational& a, double) { return sgn(a) == 0; }
  static bool positive(const Rational& a, double) { return sgn(a) > 0; }
  static Rational abs(const Rational& a) { return ::abs(a); }
  static Rational half(const Rational& a) { return a / 2; }
  static Rational from_int(long v) { return Rational(v); }
  static std::string str(const Rational& a) { return to_string(a); }
};

template <>
struct ScalarOps<double> {
  static constexpr bool kExact = false;
  static bool le(double a, double b, double tau) { return a <= b + tau; }
  static bool lt(double a, double b, double tau) { return a < b - tau; }
  static bool eq(double a, double b, double tau) { return std::fabs(a - b) <= tau; }
  static bool is_zero(double a, double tau) { return std::fabs(a) <= tau; }
  static bool positive(double a, double tau) { return a > tau; }
  static double abs(double a) { return std::fabs(a); }
  static double half(double a) { return a / 2; }
  static double from_int(long v) { return static_cast<double>(v); }
  static std::string str(double a);
};

}  // namespace mpgh
