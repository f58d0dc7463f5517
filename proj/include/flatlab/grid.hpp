#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "flatlab/polynomial.hpp"

namespace flatlab {

// Smallest admissible grid for a degree-d polynomial: factor-times
// oversampling of d+1 Fourier modes. The default factor 4 is required by
// evaluate_on_grid.
std::int64_t minimal_grid_size(std::int64_t degree, std::int64_t factor = 4);

// P at the grid_size-th roots of unity e^{2 pi i t / grid_size}, t = 0..G-1.
// Requires grid_size >= minimal_grid_size(p.degree()); the error message
// names the minimum.
Eigen::VectorXcd evaluate_on_grid(const AnalyticPolynomial& p,
                                  std::int64_t grid_size);

// |P| on the same grid.
Eigen::ArrayXd modulus_on_grid(const AnalyticPolynomial& p,
                               std::int64_t grid_size);

// |P|^2 on the same grid; the density of the measure |P|^2 dz.
Eigen::ArrayXd density_on_grid(const AnalyticPolynomial& p,
                               std::int64_t grid_size);

}  // namespace flatlab
