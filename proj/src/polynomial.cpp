#include "flatlab/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "flatlab/errors.hpp"

namespace flatlab {

namespace {

void check_work_budget(std::int64_t degree, std::int64_t m,
                       std::int64_t work_budget) {
  // N is bounded by both the degree and the number of exponent pairs.
  if (degree <= work_budget) return;
  const __int128 pairs = static_cast<__int128>(m) * (m - 1) / 2;
  if (pairs <= work_budget) return;
  throw BudgetError(
      "spectrum bound min(degree, m(m-1)/2) = " +
      std::to_string(static_cast<long long>(
          std::min<__int128>(degree, pairs))) +
      " exceeds work budget " + std::to_string(work_budget));
}

}  // namespace

AnalyticPolynomial AnalyticPolynomial::make(
    std::vector<std::int64_t> exponents, std::vector<Rational> weights,
    std::int64_t work_budget) {
  if (exponents.empty()) throw InputError("polynomial needs at least one term");
  if (exponents.size() != weights.size()) {
    throw InputError("exponent count " + std::to_string(exponents.size()) +
                     " does not match weight count " +
                     std::to_string(weights.size()));
  }
  if (exponents.front() != 0) {
    throw InputError("exponents must start at 0 (got " +
                     std::to_string(exponents.front()) + ")");
  }
  for (std::size_t i = 1; i < exponents.size(); ++i) {
    if (exponents[i] <= exponents[i - 1]) {
      throw InputError("exponents must be strictly increasing (position " +
                       std::to_string(i) + ")");
    }
  }
  Rational sum(0);
  bool uniform = true;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0)) {
      throw InputError("weight at position " + std::to_string(i) +
                       " must be positive");
    }
    if (weights[i] != weights[0]) uniform = false;
    sum += weights[i];
  }
  if (sum != 1) {
    throw InputError("weights must sum to 1 (got " + format_rational(sum) +
                     ")");
  }
  check_work_budget(exponents.back(),
                    static_cast<std::int64_t>(exponents.size()), work_budget);
  AnalyticPolynomial p;
  p.exponents = std::move(exponents);
  p.weights = std::move(weights);
  p.class_b = uniform;
  return p;
}

AnalyticPolynomial AnalyticPolynomial::uniform(
    std::vector<std::int64_t> exponents, std::int64_t work_budget) {
  const auto m = static_cast<std::int64_t>(exponents.size());
  if (m == 0) throw InputError("polynomial needs at least one term");
  return make(std::move(exponents), std::vector<Rational>(m, Rational(1, m)),
              work_budget);
}

AnalyticPolynomial substitute(const AnalyticPolynomial& p, std::int64_t l) {
  if (l < 1) throw InputError("substitution exponent must be >= 1");
  std::vector<std::int64_t> exps;
  exps.reserve(p.exponents.size());
  for (const std::int64_t e : p.exponents) {
    std::int64_t scaled = 0;
    if (__builtin_mul_overflow(e, l, &scaled)) {
      throw InputError("exponent overflow in substitution z -> z^" +
                       std::to_string(l));
    }
    exps.push_back(scaled);
  }
  // The spectrum size is unchanged by substitution, so the original budget
  // stays honored; only the degree scales.
  const std::int64_t m = p.term_count();
  const std::int64_t budget =
      std::max(kDefaultWorkBudget, m * (m - 1) / 2);
  return AnalyticPolynomial::make(std::move(exps), p.weights, budget);
}

bool exact_eligible(const AnalyticPolynomial& p) {
  if (p.class_b) return true;
  const auto m = p.term_count();
  for (std::int64_t i = 1; i < m; ++i) {
    for (std::int64_t j = 0; j < i; ++j) {
      if (!is_perfect_square(p.weights[i] * p.weights[j])) return false;
    }
  }
  return true;
}

ArithmeticMode resolve_mode(const AnalyticPolynomial& p,
                            ArithmeticMode requested) {
  if (requested.kind == ModeKind::kExact && !exact_eligible(p)) {
    return ArithmeticMode::floating();
  }
  return requested;
}

CoefficientStats coefficient_stats(const AnalyticPolynomial& p) {
  CoefficientStats stats;
  for (const Rational& w : p.weights) {
    const double c = std::sqrt(to_double(w));
    stats.sum += c;
    stats.max = std::max(stats.max, c);
  }
  return stats;
}

}  // namespace flatlab
