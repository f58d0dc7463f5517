#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "flatlab/grid.hpp"
#include "flatlab/polynomial.hpp"

namespace flatlab {

// Substitution exponents l[k] making the factors of the generalized product
// prod_k |P_k(z^{l_k})|^2 dissociated: each new factor's frequencies are
// scaled past twice the total degree of everything before it, so no two
// distinct formal expansions collide.
struct DissociationSchedule {
  std::vector<AnalyticPolynomial> factors;
  std::vector<std::int64_t> l;        // l[0] = 1, strictly increasing
  std::vector<std::int64_t> degrees;  // degree of the prefix product of
                                      // |P_k(z^{l_k})|^2, k <= index
};

// l[k+1] = max(2 * degrees[k] + 1, l[k] + 1). Throws InputError when a degree
// or exponent overflows 64 bits, naming the offending factor index.
DissociationSchedule schedule(std::vector<AnalyticPolynomial> factors);

// Formally expands the first `prefix` factors of prod |P_k(z^{l_k})|^2 and
// checks that distinct frequency selections never collide. The expansion size
// (product of per-factor spectrum sizes) is capped by term_budget.
bool verify_dissociated(const DissociationSchedule& s, std::int64_t prefix,
                        std::int64_t term_budget = 1'000'000);

// Density of the partial product prod_{k < prefix} |P_k(z^{l_k})|^2 on the
// grid of grid_size-th roots of unity. prefix 0 gives the constant 1.
// Requires grid_size >= minimal_grid_size(degrees[prefix - 1]).
Eigen::ArrayXd partial_density(const DissociationSchedule& s,
                               std::int64_t prefix, std::int64_t grid_size);

// Grid metrics of |P| against the flat target 1:
//   l1_abs   mean | |P| - 1 |
//   l1_sq    mean | |P|^2 - 1 |
//   sup_dev  max  | |P| - 1 |
//   near_one_fraction  share of grid points with | |P| - 1 | < 0.1
struct FlatnessReport {
  std::int64_t grid_size = 0;
  double l1_abs = 0.0;
  double l1_sq = 0.0;
  double sup_dev = 0.0;
  double near_one_fraction = 0.0;
};

inline constexpr double kNearOneBand = 0.1;

FlatnessReport flatness(const AnalyticPolynomial& p, std::int64_t grid_size);

// Per-prefix summary of the running modulus sqrt(partial density): geometric
// mean, extremes, and the fraction of grid points inside [1/T, T] for T = 10.
struct ConvergenceRow {
  std::int64_t prefix = 0;
  double geo_mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double frac_in_band = 0.0;
};

inline constexpr double kConvergenceBand = 10.0;

std::vector<ConvergenceRow> convergence_track(const DissociationSchedule& s,
                                              std::int64_t grid_size);

}  // namespace flatlab
