#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatlab/polynomial.hpp"

namespace flatlab {

// splitmix64: additive stream over the golden-ratio increment with the
// murmur-style finalizer (constants 0x9e3779b97f4a7c15, 0xbf58476d1ce4e5b9,
// 0x94d049bb133111eb). Small, seedable, and platform-independent.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Unbiased draw from [0, n) by rejection; n >= 1.
  std::uint64_t uniform_below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

// Deterministic per-index seed derivation, so results do not depend on
// evaluation order or worker count: splitmix finalizer applied to
// seed + (index + 1) * golden ratio.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

// One Monte Carlo cell: estimate E(epsilon, R), the probability that a
// uniformly drawn admissible support S gives || |P_S|^2 - 1 ||_1 > epsilon.
// The sample space has size binom(R^2 - 1, 2R - 2): sets of size 2R inside
// [0, R^2] containing 0 and R^2 (or 0 and R when fix_r_literal is set).
struct ExperimentConfig {
  std::int64_t R = 4;
  double epsilon = 0.5;
  std::int64_t samples = 1000;
  std::uint64_t seed = 0;
  std::int64_t grid_factor = 4;  // grid = grid_factor * (R^2 + 1)
  double confidence = 0.95;
  bool wilson = false;          // Wilson interval instead of Hoeffding
  bool fix_r_literal = false;   // pin {0, R} instead of {0, R^2}
};

struct ExperimentResult {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double mean_l1 = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

// Uniform draw from the sample space above via Floyd's distinct-subset
// sampling; returns the sorted support.
std::vector<std::int64_t> sample_omega(std::int64_t R, SplitMix64& rng,
                                       bool fix_r_literal = false);

// || |P_S|^2 - 1 ||_1 by grid quadrature, grid = grid_factor * (R^2 + 1).
double l1_statistic(const std::vector<std::int64_t>& s, std::int64_t R,
                    std::int64_t grid_factor = 4);

// Per-sample seeds are derived from cfg.seed by index, and per-sample values
// are reduced in index order, so the result is bit-identical for any worker
// count. threads <= 0 means worker_count().
ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads = 0);

struct SweepCell {
  std::int64_t R = 0;
  double epsilon = 0.0;
  std::uint64_t cell_seed = 0;
  std::optional<ExperimentResult> result;
  std::string error;  // non-empty when the cell failed
};

// Grid of experiments over r_values x epsilons. Each cell runs with seed
// mix_seed(mix_seed(seed, r_index), epsilon_index), so cells are independent
// of evaluation order; per-cell failures are recorded, not propagated.
std::vector<SweepCell> sweep(const std::vector<std::int64_t>& r_values,
                             const std::vector<double>& epsilons,
                             std::int64_t samples, std::uint64_t seed,
                             const ExperimentConfig& base = {});

}  // namespace flatlab
