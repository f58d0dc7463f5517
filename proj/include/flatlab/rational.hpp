#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

#include "flatlab/errors.hpp"

namespace flatlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "num", "-num" or "num/den" with integer parts; den must be positive
// after normalization. Throws InputError otherwise.
Rational parse_rational(const std::string& text);

// Inverse of parse_rational: "num" when the denominator is 1, else "num/den".
std::string format_rational(const Rational& q);

double to_double(const Rational& q);

// Overload set for code generic over the two scalar backends.
inline double to_double_scalar(double x) { return x; }
double to_double_scalar(const Rational& q);

// q is the square of a rational.
bool is_perfect_square(const Rational& q);

// Exact square root; requires is_perfect_square(q).
Rational exact_sqrt(const Rational& q);

// Uniform access to the two arithmetic backends used by the templated
// spectrum/diagnostics code: exact big rationals and double precision.
template <class Scalar>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;
  static double from_rational(const Rational& q) { return to_double(q); }
  static double abs(double x) { return std::abs(x); }
  static double sqrt_product(const Rational& a, const Rational& b) {
    return std::sqrt(to_double(a) * to_double(b));
  }
  static std::string str(double x);
  static constexpr const char* mode_name() { return "float"; }
};

template <>
struct ScalarOps<Rational> {
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& q) { return q; }
  static Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
  static Rational sqrt_product(const Rational& a, const Rational& b) {
    return exact_sqrt(a * b);
  }
  static std::string str(const Rational& q) { return format_rational(q); }
  static constexpr const char* mode_name() { return "exact"; }
};

}  // namespace flatlab
