#include "flatlab/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "flatlab/errors.hpp"
#include "flatlab/families.hpp"

namespace flatlab {

DissociationSchedule schedule(std::vector<AnalyticPolynomial> factors) {
  if (factors.empty()) throw InputError("schedule needs at least one factor");
  DissociationSchedule s;
  s.factors = std::move(factors);
  s.l.resize(s.factors.size());
  s.degrees.resize(s.factors.size());
  std::int64_t total = 0;  // degree of the prefix product of |P_k(z^{l_k})|^2
  for (std::size_t k = 0; k < s.factors.size(); ++k) {
    std::int64_t lk;
    if (k == 0) {
      lk = 1;
    } else {
      // Past twice the accumulated degree no cancellation between the new
      // factor's frequencies and anything already present is possible.
      if (__builtin_mul_overflow(total, std::int64_t{2}, &lk) ||
          __builtin_add_overflow(lk, std::int64_t{1}, &lk)) {
        throw InputError("substitution exponent overflows 64 bits at factor " +
                         std::to_string(k));
      }
      lk = std::max(lk, s.l[k - 1] + 1);
    }
    std::int64_t scaled;
    if (__builtin_mul_overflow(lk, s.factors[k].degree(), &scaled) ||
        __builtin_add_overflow(total, scaled, &total)) {
      throw InputError("schedule degree overflows 64 bits at factor " +
                       std::to_string(k));
    }
    s.l[k] = lk;
    s.degrees[k] = total;
  }
  return s;
}

bool verify_dissociated(const DissociationSchedule& s, std::int64_t prefix,
                        std::int64_t term_budget) {
  if (prefix < 0 || prefix > static_cast<std::int64_t>(s.factors.size())) {
    throw InputError("prefix out of range");
  }
  if (prefix <= 1) return true;
  // Signed frequency lists of each |P_k|^2 before substitution.
  std::vector<std::vector<std::int64_t>> freq_lists;
  std::int64_t expansion = 1;
  for (std::int64_t k = 0; k < prefix; ++k) {
    const auto profile = difference_profile(s.factors[k].exponents);
    std::vector<std::int64_t> freqs{0};
    for (const auto& [d, cnt] : profile.counts) {
      freqs.push_back(d);
      freqs.push_back(-d);
    }
    if (expansion > term_budget / static_cast<std::int64_t>(freqs.size())) {
      throw BudgetError("formal expansion exceeds term budget " +
                        std::to_string(term_budget));
    }
    expansion *= static_cast<std::int64_t>(freqs.size());
    freq_lists.push_back(std::move(freqs));
  }
  // Odometer over one frequency choice per factor; dissociated means every
  // selection yields a distinct total frequency sum_k l_k * f_k.
  std::unordered_set<std::int64_t> seen;
  seen.reserve(static_cast<std::size_t>(expansion) * 2);
  std::vector<std::size_t> pick(prefix, 0);
  while (true) {
    std::int64_t total = 0;
    for (std::int64_t k = 0; k < prefix; ++k) {
      total += s.l[k] * freq_lists[k][pick[k]];
    }
    if (!seen.insert(total).second) return false;
    std::int64_t k = 0;
    while (k < prefix && ++pick[k] == freq_lists[k].size()) {
      pick[k] = 0;
      ++k;
    }
    if (k == prefix) break;
  }
  return true;
}

Eigen::ArrayXd partial_density(const DissociationSchedule& s,
                               std::int64_t prefix, std::int64_t grid_size) {
  if (prefix < 0 || prefix > static_cast<std::int64_t>(s.factors.size())) {
    throw InputError("prefix out of range");
  }
  if (prefix == 0) {
    if (grid_size < 1) throw InputError("grid size must be >= 1");
    return Eigen::ArrayXd::Ones(grid_size);
  }
  const std::int64_t minimum = minimal_grid_size(s.degrees[prefix - 1]);
  if (grid_size < minimum) {
    throw InputError("grid size " + std::to_string(grid_size) +
                     " too small for schedule degree " +
                     std::to_string(s.degrees[prefix - 1]) + "; minimum is " +
                     std::to_string(minimum));
  }
  Eigen::ArrayXd density = Eigen::ArrayXd::Ones(grid_size);
  for (std::int64_t k = 0; k < prefix; ++k) {
    const Eigen::ArrayXd factor = density_on_grid(s.factors[k], grid_size);
    // P_k(z^{l_k}) at grid point t is P_k at grid point l_k * t mod G.
    const std::int64_t lmod = s.l[k] % grid_size;
    for (std::int64_t t = 0; t < grid_size; ++t) {
      density[t] *= factor[(lmod * t) % grid_size];
    }
  }
  return density;
}

FlatnessReport flatness(const AnalyticPolynomial& p, std::int64_t grid_size) {
  const Eigen::ArrayXd mod = modulus_on_grid(p, grid_size);
  FlatnessReport rep;
  rep.grid_size = grid_size;
  const Eigen::ArrayXd dev = (mod - 1.0).abs();
  rep.l1_abs = dev.mean();
  rep.l1_sq = (mod.square() - 1.0).abs().mean();
  rep.sup_dev = dev.maxCoeff();
  rep.near_one_fraction =
      static_cast<double>((dev < kNearOneBand).count()) / grid_size;
  return rep;
}

std::vector<ConvergenceRow> convergence_track(const DissociationSchedule& s,
                                              std::int64_t grid_size) {
  const std::int64_t count = static_cast<std::int64_t>(s.factors.size());
  const std::int64_t minimum = minimal_grid_size(s.degrees[count - 1]);
  if (grid_size < minimum) {
    throw InputError("grid size " + std::to_string(grid_size) +
                     " too small for schedule degree " +
                     std::to_string(s.degrees[count - 1]) + "; minimum is " +
                     std::to_string(minimum));
  }
  std::vector<ConvergenceRow> rows;
  Eigen::ArrayXd density = Eigen::ArrayXd::Ones(grid_size);
  for (std::int64_t k = 0; k < count; ++k) {
    const Eigen::ArrayXd factor = density_on_grid(s.factors[k], grid_size);
    const std::int64_t lmod = s.l[k] % grid_size;
    for (std::int64_t t = 0; t < grid_size; ++t) {
      density[t] *= factor[(lmod * t) % grid_size];
    }
    const Eigen::ArrayXd mod = density.sqrt();
    ConvergenceRow row;
    row.prefix = k + 1;
    // Geometric mean via log; zeros clamp to the smallest positive double.
    row.geo_mean =
        std::exp(mod.max(std::numeric_limits<double>::min()).log().mean());
    row.min = mod.minCoeff();
    row.max = mod.maxCoeff();
    row.frac_in_band = static_cast<double>(
                           ((mod >= 1.0 / kConvergenceBand) &&
                            (mod <= kConvergenceBand))
                               .count()) /
                       grid_size;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace flatlab
