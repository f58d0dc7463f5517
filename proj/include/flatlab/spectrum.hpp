#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "flatlab/errors.hpp"
#include "flatlab/polynomial.hpp"

namespace flatlab {

// Positive half of the autocorrelation spectrum of |P|^2:
//
//   |P(z)|^2 = 1 + sum_k a_k (z^{n_k} + z^{-n_k}),   0 < n_1 < ... < n_N,
//
// with every a_k > 0 because the coefficients of P are non-negative. N always
// satisfies m-1 <= N <= m(m-1)/2 and n_N equals the degree of P.
template <class Scalar>
struct SpectralData {
  std::vector<std::int64_t> freqs;
  Eigen::Vector<Scalar, Eigen::Dynamic> coeffs;

  std::int64_t size() const { return static_cast<std::int64_t>(freqs.size()); }
};

// a_{n} of |P|^2 for the positive frequency n = R_i - R_j collects
// sqrt(weights[i] * weights[j]) over all exponent pairs at that difference.
// The Rational instantiation requires exact_eligible(p).
template <class Scalar>
SpectralData<Scalar> autocorrelate(const AnalyticPolynomial& p) {
  if constexpr (ScalarOps<Scalar>::exact) {
    if (!exact_eligible(p)) {
      throw InputError(
          "exact autocorrelation requires uniform weights or pairwise weight "
          "products that are perfect squares; use float mode");
    }
  }
  const auto m = p.term_count();
  std::map<std::int64_t, Scalar> sums;
  for (std::int64_t i = 1; i < m; ++i) {
    for (std::int64_t j = 0; j < i; ++j) {
      const std::int64_t n = p.exponents[i] - p.exponents[j];
      Scalar term;
      if (p.class_b) {
        term = ScalarOps<Scalar>::from_rational(p.weights[0]);
      } else {
        term = ScalarOps<Scalar>::sqrt_product(p.weights[i], p.weights[j]);
      }
      auto it = sums.find(n);
      if (it == sums.end()) {
        sums.emplace(n, term);
      } else {
        it->second += term;
      }
    }
  }
  SpectralData<Scalar> s;
  s.freqs.reserve(sums.size());
  s.coeffs.resize(static_cast<Eigen::Index>(sums.size()));
  Eigen::Index k = 0;
  for (auto& [n, a] : sums) {
    s.freqs.push_back(n);
    s.coeffs[k++] = a;
  }
  return s;
}

// Coefficient of z^n in |P|^2; symmetric in n, 1 at n = 0, 0 off support.
template <class Scalar>
Scalar fourier_coefficient(const SpectralData<Scalar>& s, std::int64_t n) {
  if (n == 0) return Scalar(1);
  if (n < 0) n = -n;
  auto it = std::lower_bound(s.freqs.begin(), s.freqs.end(), n);
  if (it == s.freqs.end() || *it != n) return Scalar(0);
  return s.coeffs[it - s.freqs.begin()];
}

}  // namespace flatlab
