#include "flatlab/montecarlo.hpp"

#include <boost/math/distributions/normal.hpp>
#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "flatlab/errors.hpp"
#include "flatlab/grid.hpp"
#include "flatlab/parallel.hpp"

namespace flatlab {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t finalize(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return finalize(state_);
}

std::uint64_t SplitMix64::uniform_below(std::uint64_t n) {
  if (n == 0) throw InputError("uniform_below needs n >= 1");
  // Rejection below the largest multiple of n keeps the draw unbiased.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % n;
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  return finalize(seed + (index + 1) * kGolden);
}

std::vector<std::int64_t> sample_omega(std::int64_t R, SplitMix64& rng,
                                       bool fix_r_literal) {
  if (R < 2) throw InputError("sample space needs R >= 2");
  const std::int64_t r2 = R * R;
  const std::int64_t pool = r2 - 1;  // free slots
  const std::int64_t k = 2 * R - 2;  // draws
  // Floyd's method: k distinct values from [1, pool], uniform over subsets.
  std::unordered_set<std::int64_t> picks;
  picks.reserve(k * 2);
  for (std::int64_t j = pool - k + 1; j <= pool; ++j) {
    const std::int64_t t =
        1 + static_cast<std::int64_t>(rng.uniform_below(j));
    if (!picks.insert(t).second) picks.insert(j);
  }
  std::vector<std::int64_t> s;
  s.reserve(2 * R);
  if (fix_r_literal) {
    // Pinned {0, R}; the pool [1, pool] maps onto [1, R^2] minus {R}.
    s.push_back(0);
    s.push_back(R);
    for (const std::int64_t t : picks) s.push_back(t < R ? t : t + 1);
  } else {
    // Pinned {0, R^2}; the pool is [1, R^2 - 1] directly.
    s.push_back(0);
    s.push_back(r2);
    for (const std::int64_t t : picks) s.push_back(t);
  }
  std::sort(s.begin(), s.end());
  return s;
}

double l1_statistic(const std::vector<std::int64_t>& s, std::int64_t R,
                    std::int64_t grid_factor) {
  const std::int64_t grid = grid_factor * (R * R + 1);
  const auto p = AnalyticPolynomial::uniform(
      s, std::max(kDefaultWorkBudget, R * R));
  const Eigen::ArrayXd density = density_on_grid(p, grid);
  return (density - 1.0).abs().mean();
}

namespace {

void validate(const ExperimentConfig& cfg) {
  if (cfg.R < 2) throw InputError("experiment field R must be >= 2");
  if (!(cfg.epsilon > 0.0)) {
    throw InputError("experiment field epsilon must be > 0");
  }
  if (cfg.samples < 1) {
    throw InputError("experiment field samples must be >= 1");
  }
  if (cfg.grid_factor < 4) {
    throw InputError("experiment field grid_factor must be >= 4");
  }
  if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0)) {
    throw InputError("experiment field confidence must be in (0, 1)");
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads) {
  validate(cfg);
  const std::int64_t n = cfg.samples;
  std::vector<double> values(n);
  parallel_for_index(n, threads, [&](std::int64_t i) {
    SplitMix64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    const auto s = sample_omega(cfg.R, rng, cfg.fix_r_literal);
    values[i] = l1_statistic(s, cfg.R, cfg.grid_factor);
  });
  // Index-order reduction: identical results for any worker count.
  std::int64_t exceed = 0;
  double sum = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (values[i] > cfg.epsilon) ++exceed;
    sum += values[i];
  }
  ExperimentResult res;
  res.samples = n;
  res.seed = cfg.seed;
  res.mean_l1 = sum / static_cast<double>(n);
  res.estimate = static_cast<double>(exceed) / static_cast<double>(n);
  if (cfg.wilson) {
    const boost::math::normal_distribution<double> normal;
    const double z =
        boost::math::quantile(normal, 0.5 + 0.5 * cfg.confidence);
    const double z2 = z * z;
    const double nn = static_cast<double>(n);
    const double center = (res.estimate + z2 / (2.0 * nn)) / (1.0 + z2 / nn);
    const double spread =
        z / (1.0 + z2 / nn) *
        std::sqrt(res.estimate * (1.0 - res.estimate) / nn +
                  z2 / (4.0 * nn * nn));
    res.ci_low = std::max(0.0, center - spread);
    res.ci_high = std::min(1.0, center + spread);
  } else {
    const double half =
        std::sqrt(std::log(2.0 / (1.0 - cfg.confidence)) / (2.0 * n));
    res.ci_low = std::max(0.0, res.estimate - half);
    res.ci_high = std::min(1.0, res.estimate + half);
  }
  return res;
}

std::vector<SweepCell> sweep(const std::vector<std::int64_t>& r_values,
                             const std::vector<double>& epsilons,
                             std::int64_t samples, std::uint64_t seed,
                             const ExperimentConfig& base) {
  std::vector<SweepCell> cells;
  for (std::size_t ri = 0; ri < r_values.size(); ++ri) {
    for (std::size_t ei = 0; ei < epsilons.size(); ++ei) {
      SweepCell cell;
      cell.R = r_values[ri];
      cell.epsilon = epsilons[ei];
      cell.cell_seed = mix_seed(mix_seed(seed, ri), ei);
      ExperimentConfig cfg = base;
      cfg.R = cell.R;
      cfg.epsilon = cell.epsilon;
      cfg.samples = samples;
      cfg.seed = cell.cell_seed;
      try {
        cell.result = run_experiment(cfg);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace flatlab
