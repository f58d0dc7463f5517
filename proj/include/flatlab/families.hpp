#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "flatlab/polynomial.hpp"

namespace flatlab {

// One-sided difference multiset of an integer set S:
// counts[j] = #{ (a, b) in S x S : b - a = j }, j > 0.
struct DifferenceProfile {
  std::int64_t max_element = 0;
  std::map<std::int64_t, std::int64_t> counts;

  // (S - S)^+ in increasing order.
  std::vector<std::int64_t> support() const;
  std::int64_t count(std::int64_t j) const;
  std::int64_t max_count() const;
};

DifferenceProfile difference_profile(const std::vector<std::int64_t>& s);

// All positive differences distinct (equivalently max_count() <= 1).
bool is_sidon(const std::vector<std::int64_t>& s);

// Greedy Sidon construction (Mian-Chowla when start = 1): repeatedly append
// the smallest integer keeping the set Sidon.
std::vector<std::int64_t> sidon_greedy(std::int64_t count,
                                       std::int64_t start = 1);

// Whether (S - S)^+ covers [1, range] exactly; on failure lists the missing
// differences.
struct CoverCertificate {
  std::int64_t range = 0;
  std::vector<std::int64_t> elements;
  bool is_cover = false;
  std::vector<std::int64_t> missing;
};

CoverCertificate cover_certificate(const std::vector<std::int64_t>& s,
                                   std::int64_t range);

// Uniform-weight polynomial on {0, 1, ..., m-1}; |P|^2 is the Fejer-averaged
// Dirichlet shape with a_j = (m - j)/m.
AnalyticPolynomial dirichlet(std::int64_t m,
                             std::int64_t work_budget = kDefaultWorkBudget);

// Uniform-weight polynomial on {0..j-1} union {j, 2j, ..., j^2}: 2j terms
// whose difference set covers [1, j^2] entirely.
AnalyticPolynomial two_block(std::int64_t j,
                             std::int64_t work_budget = kDefaultWorkBudget);

// Same exponent set viewed as a difference cover of [1, R^2] of size 2R.
AnalyticPolynomial lambda_cover(std::int64_t R,
                                std::int64_t work_budget = kDefaultWorkBudget);

// Minimal size of a set S containing {0, range} with (S - S)^+ = [1, range],
// by exhaustive branch-and-bound (iterative deepening on the size). The
// witness returned is the lexicographically smallest optimal set. With a node
// budget the search may stop early: complete = false and [lower, upper]
// brackets the optimum (upper comes from a greedy cover).
struct LambdaResult {
  std::int64_t lambda = 0;
  std::vector<std::int64_t> witness;
  bool complete = false;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  std::uint64_t nodes = 0;
};

// Ranges above this require an explicit node budget.
inline constexpr std::int64_t kLambdaExhaustiveMax = 120;

using LambdaProgress =
    std::function<void(std::int64_t target_size, std::uint64_t nodes)>;

LambdaResult lambda_exact(std::int64_t range, std::uint64_t node_budget = 0,
                          const LambdaProgress& progress = {});

// Minimum of the Dirichlet kernel sin((degree + 1/2)v) / sin(v/2) over a
// uniform grid of [0, 2 pi) plus the analytic candidate 3 pi / (2 degree + 1),
// where the kernel is close to its global minimum. Requires
// grid_size >= 8 * degree.
struct KernelMin {
  double min_value = 0.0;
  double argmin = 0.0;
};

KernelMin dirichlet_kernel_min(std::int64_t degree, std::int64_t grid_size);

}  // namespace flatlab
