#pragma once

#include <cstdint>
#include <vector>

#include "flatlab/mode.hpp"
#include "flatlab/rational.hpp"

namespace flatlab {

// Default cap on the positive spectrum size N of anything we diagnose. The
// covariance scan is O(N^2), so constructors reject polynomials whose N bound
// min(degree, m(m-1)/2) exceeds this.
inline constexpr std::int64_t kDefaultWorkBudget = 20000;

// Analytic trigonometric polynomial with non-negative coefficients and unit
// L2 norm on the circle:
//
//   P(z) = sum_i sqrt(weights[i]) * z^exponents[i]
//
// exponents are strictly increasing with exponents[0] == 0; weights is a
// probability vector of exact rationals. class_b marks uniform weights 1/m.
struct AnalyticPolynomial {
  std::vector<std::int64_t> exponents;
  std::vector<Rational> weights;
  bool class_b = false;

  std::int64_t term_count() const {
    return static_cast<std::int64_t>(exponents.size());
  }
  std::int64_t degree() const { return exponents.back(); }

  // Validates all invariants; throws InputError on violation and BudgetError
  // when the spectrum bound exceeds work_budget.
  static AnalyticPolynomial make(std::vector<std::int64_t> exponents,
                                 std::vector<Rational> weights,
                                 std::int64_t work_budget = kDefaultWorkBudget);

  // Uniform weights 1/m over the given exponents.
  static AnalyticPolynomial uniform(
      std::vector<std::int64_t> exponents,
      std::int64_t work_budget = kDefaultWorkBudget);
};

// P(z^l): multiplies every exponent by l >= 1. The weight vector (and hence
// the whole autocorrelation structure) is unchanged.
AnalyticPolynomial substitute(const AnalyticPolynomial& p, std::int64_t l);

// True when every autocorrelation coefficient is exactly rational: uniform
// weights, or more generally all pairwise products weights[i]*weights[j]
// perfect rational squares.
bool exact_eligible(const AnalyticPolynomial& p);

// Downgrades a requested exact mode to float when exact_eligible fails.
ArithmeticMode resolve_mode(const AnalyticPolynomial& p,
                            ArithmeticMode requested);

// (sum of coefficients, largest coefficient) = (P(1), max_i sqrt(weights[i])).
struct CoefficientStats {
  double sum = 0.0;
  double max = 0.0;
};
CoefficientStats coefficient_stats(const AnalyticPolynomial& p);

}  // namespace flatlab
