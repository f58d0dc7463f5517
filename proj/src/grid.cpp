#include "flatlab/grid.hpp"

#include <unsupported/Eigen/FFT>
#include <cmath>

#include "flatlab/errors.hpp"

namespace flatlab {

std::int64_t minimal_grid_size(std::int64_t degree, std::int64_t factor) {
  return factor * (degree + 1);
}

Eigen::VectorXcd evaluate_on_grid(const AnalyticPolynomial& p,
                                  std::int64_t grid_size) {
  const std::int64_t minimum = minimal_grid_size(p.degree());
  if (grid_size < minimum) {
    throw InputError("grid size " + std::to_string(grid_size) +
                     " too small for degree " + std::to_string(p.degree()) +
                     "; minimum is " + std::to_string(minimum));
  }
  Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(grid_size);
  for (std::int64_t i = 0; i < p.term_count(); ++i) {
    coeffs[p.exponents[i]] = std::sqrt(to_double(p.weights[i]));
  }
  // The forward transform computes sum_n c_n e^{-2 pi i n t / G}; conjugating
  // (real input) gives the values at e^{+2 pi i t / G}. The FFT object caches
  // plans per size, hence the thread_local reuse.
  thread_local Eigen::FFT<double> fft;
  Eigen::VectorXcd out(grid_size);
  fft.fwd(out.data(), coeffs.data(), static_cast<int>(grid_size));
  return out.conjugate();
}

Eigen::ArrayXd modulus_on_grid(const AnalyticPolynomial& p,
                               std::int64_t grid_size) {
  return evaluate_on_grid(p, grid_size).array().abs();
}

Eigen::ArrayXd density_on_grid(const AnalyticPolynomial& p,
                               std::int64_t grid_size) {
  return evaluate_on_grid(p, grid_size).array().abs2();
}

}  // namespace flatlab
