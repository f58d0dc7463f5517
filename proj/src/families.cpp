#include "flatlab/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

#include "flatlab/errors.hpp"

namespace flatlab {

std::vector<std::int64_t> DifferenceProfile::support() const {
  std::vector<std::int64_t> out;
  out.reserve(counts.size());
  for (const auto& [j, d] : counts) out.push_back(j);
  return out;
}

std::int64_t DifferenceProfile::count(std::int64_t j) const {
  const auto it = counts.find(j);
  return it == counts.end() ? 0 : it->second;
}

std::int64_t DifferenceProfile::max_count() const {
  std::int64_t best = 0;
  for (const auto& [j, d] : counts) best = std::max(best, d);
  return best;
}

namespace {

std::vector<std::int64_t> sorted_distinct(std::vector<std::int64_t> s,
                                          const char* what) {
  if (s.empty()) throw InputError(std::string(what) + " must be non-empty");
  std::sort(s.begin(), s.end());
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == s[i - 1]) {
      throw InputError(std::string(what) + " has duplicate element " +
                       std::to_string(s[i]));
    }
  }
  return s;
}

}  // namespace

DifferenceProfile difference_profile(const std::vector<std::int64_t>& s) {
  const auto set = sorted_distinct(s, "difference profile input");
  DifferenceProfile profile;
  profile.max_element = set.back();
  for (std::size_t i = 1; i < set.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      ++profile.counts[set[i] - set[j]];
    }
  }
  return profile;
}

bool is_sidon(const std::vector<std::int64_t>& s) {
  if (s.size() <= 1) return true;
  return difference_profile(s).max_count() <= 1;
}

std::vector<std::int64_t> sidon_greedy(std::int64_t count, std::int64_t start) {
  if (count < 1) throw InputError("greedy Sidon set needs count >= 1");
  if (count > 200) {
    throw InputError("greedy Sidon construction capped at count 200");
  }
  std::vector<std::int64_t> set{start};
  std::unordered_set<std::int64_t> diffs;
  while (static_cast<std::int64_t>(set.size()) < count) {
    for (std::int64_t x = set.back() + 1;; ++x) {
      bool ok = true;
      for (const std::int64_t y : set) {
        if (diffs.count(x - y)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      // The new differences x - y are pairwise distinct, so checking against
      // the existing ones is the whole Sidon condition.
      for (const std::int64_t y : set) diffs.insert(x - y);
      set.push_back(x);
      break;
    }
  }
  return set;
}

CoverCertificate cover_certificate(const std::vector<std::int64_t>& s,
                                   std::int64_t range) {
  if (range < 1) throw InputError("cover range must be >= 1");
  CoverCertificate cert;
  cert.range = range;
  cert.elements = sorted_distinct(s, "cover candidate");
  if (cert.elements.front() < 0 || cert.elements.back() > range) {
    throw InputError("cover elements must lie in [0, " +
                     std::to_string(range) + "]");
  }
  std::vector<char> covered(range + 1, 0);
  for (std::size_t i = 1; i < cert.elements.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      covered[cert.elements[i] - cert.elements[j]] = 1;
    }
  }
  for (std::int64_t d = 1; d <= range; ++d) {
    if (!covered[d]) cert.missing.push_back(d);
  }
  cert.is_cover = cert.missing.empty();
  return cert;
}

AnalyticPolynomial dirichlet(std::int64_t m, std::int64_t work_budget) {
  if (m < 1) throw InputError("dirichlet family needs m >= 1");
  std::vector<std::int64_t> exps(m);
  for (std::int64_t i = 0; i < m; ++i) exps[i] = i;
  return AnalyticPolynomial::uniform(std::move(exps), work_budget);
}

namespace {

// {0, ..., k-1} union {k, 2k, ..., k^2}: 2k elements whose one-sided
// difference set is exactly [1, k^2] (every d <= k^2 is a multiple of k minus
// a remainder below k).
std::vector<std::int64_t> block_and_multiples(std::int64_t k) {
  std::vector<std::int64_t> exps;
  exps.reserve(2 * k);
  for (std::int64_t i = 0; i < k; ++i) exps.push_back(i);
  for (std::int64_t i = 1; i <= k; ++i) exps.push_back(i * k);
  return exps;
}

}  // namespace

AnalyticPolynomial two_block(std::int64_t j, std::int64_t work_budget) {
  if (j < 2) throw InputError("two-block family needs j >= 2");
  return AnalyticPolynomial::uniform(block_and_multiples(j), work_budget);
}

AnalyticPolynomial lambda_cover(std::int64_t R, std::int64_t work_budget) {
  if (R < 2) throw InputError("lambda cover family needs R >= 2");
  return AnalyticPolynomial::uniform(block_and_multiples(R), work_budget);
}

namespace {

// Depth-first search for a difference cover of [1, R] of a fixed total size.
// Elements 0 and R are pre-placed; middles are chosen in increasing order, so
// the first complete set found is the lexicographically smallest one.
class LambdaSearch {
 public:
  LambdaSearch(std::int64_t range, std::uint64_t node_budget)
      : range_(range),
        node_budget_(node_budget),
        cover_count_(range + 1, 0),
        uncovered_(range) {
    chosen_.reserve(16);
    chosen_.push_back(0);
    add_element(range);
  }

  bool run(std::int64_t target_size, std::vector<std::int64_t>* witness) {
    target_ = target_size;
    const bool found = dfs(0, target_size - 2);
    if (found) {
      *witness = chosen_;
      std::sort(witness->begin(), witness->end());
    }
    return found;
  }

  std::uint64_t nodes() const { return nodes_; }
  bool budget_hit() const { return budget_hit_; }

 private:
  void add_element(std::int64_t x) {
    for (const std::int64_t y : chosen_) {
      const std::int64_t d = x > y ? x - y : y - x;
      if (++cover_count_[d] == 1) --uncovered_;
    }
    chosen_.push_back(x);
  }

  void remove_element() {
    const std::int64_t x = chosen_.back();
    chosen_.pop_back();
    for (const std::int64_t y : chosen_) {
      const std::int64_t d = x > y ? x - y : y - x;
      if (--cover_count_[d] == 0) ++uncovered_;
    }
  }

  bool dfs(std::int64_t last, std::int64_t remaining) {
    ++nodes_;
    if (node_budget_ != 0 && nodes_ > node_budget_) {
      budget_hit_ = true;
      return false;
    }
    if (uncovered_ == 0) return true;
    if (remaining == 0) return false;
    // Each new element contributes one pair per existing element plus the
    // pairs among the new elements themselves; not enough pairs, no cover.
    const std::int64_t have = static_cast<std::int64_t>(chosen_.size());
    if (remaining * have + remaining * (remaining - 1) / 2 < uncovered_) {
      return false;
    }
    const bool first_middle = (have == 2);
    for (std::int64_t x = last + 1; x <= range_ - remaining; ++x) {
      // Mirror symmetry: the reflected set R - S covers the same differences,
      // so the first middle element can be pinned to the lower half.
      if (first_middle && 2 * x > range_) break;
      add_element(x);
      if (dfs(x, remaining - 1)) return true;
      remove_element();
      if (budget_hit_) return false;
    }
    return false;
  }

  std::int64_t range_;
  std::int64_t target_ = 0;
  std::uint64_t node_budget_;
  std::uint64_t nodes_ = 0;
  bool budget_hit_ = false;
  std::vector<std::int64_t> chosen_;
  std::vector<std::int32_t> cover_count_;
  std::int64_t uncovered_;
};

// Greedy upper bound: repeatedly add the element covering the most new
// differences (ties to the smallest element). Always terminates in a cover.
std::vector<std::int64_t> greedy_cover(std::int64_t range) {
  std::vector<std::int64_t> chosen{0, range};
  std::vector<std::int32_t> count(range + 1, 0);
  std::int64_t uncovered = range - 1;
  count[range] = 1;
  std::vector<std::int64_t> diffs;
  const auto new_diffs = [&](std::int64_t x) {
    // Distinct uncovered differences contributed by x; x - y1 and y2 - x can
    // coincide, so duplicates must be removed before counting.
    diffs.clear();
    for (const std::int64_t y : chosen) {
      const std::int64_t d = x > y ? x - y : y - x;
      if (count[d] == 0) diffs.push_back(d);
    }
    std::sort(diffs.begin(), diffs.end());
    diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());
    return static_cast<std::int64_t>(diffs.size());
  };
  while (uncovered > 0) {
    std::int64_t best_x = -1, best_gain = 0;
    for (std::int64_t x = 1; x < range; ++x) {
      if (std::find(chosen.begin(), chosen.end(), x) != chosen.end()) continue;
      const std::int64_t gain = new_diffs(x);
      if (gain > best_gain) {
        best_gain = gain;
        best_x = x;
      }
    }
    for (const std::int64_t y : chosen) {
      const std::int64_t d = best_x > y ? best_x - y : y - best_x;
      ++count[d];
    }
    uncovered -= best_gain;
    chosen.push_back(best_x);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

LambdaResult lambda_exact(std::int64_t range, std::uint64_t node_budget,
                          const LambdaProgress& progress) {
  if (range < 1) throw InputError("lambda needs range >= 1");
  if (range > kLambdaExhaustiveMax && node_budget == 0) {
    throw InputError("range " + std::to_string(range) +
                     " above exhaustive threshold " +
                     std::to_string(kLambdaExhaustiveMax) +
                     "; pass an explicit node budget");
  }
  LambdaResult result;
  const auto greedy = greedy_cover(range);
  std::int64_t lower = 2;
  while (lower * (lower - 1) / 2 < range) ++lower;
  std::uint64_t total_nodes = 0;
  for (std::int64_t target = lower;
       target <= static_cast<std::int64_t>(greedy.size()); ++target) {
    LambdaSearch search(range,
                        node_budget == 0 ? 0 : node_budget - total_nodes);
    std::vector<std::int64_t> witness;
    const bool found = search.run(target, &witness);
    total_nodes += search.nodes();
    if (progress) progress(target, total_nodes);
    if (found) {
      result.lambda = target;
      result.witness = std::move(witness);
      result.complete = true;
      result.lower = target;
      result.upper = target;
      result.nodes = total_nodes;
      return result;
    }
    const bool exhausted =
        node_budget != 0 && !search.budget_hit() && total_nodes >= node_budget;
    if (search.budget_hit() || exhausted) {
      // budget_hit: sizes below `target` are refuted, `target` itself is not.
      // exhausted: the round refuted `target` but nothing is left for the
      // next size. Either way the greedy witness caps the optimum above.
      result.lambda = static_cast<std::int64_t>(greedy.size());
      result.witness = greedy;
      result.complete = false;
      result.lower = exhausted ? target + 1 : target;
      result.upper = static_cast<std::int64_t>(greedy.size());
      result.nodes = total_nodes;
      return result;
    }
  }
  // Unreachable: the greedy witness guarantees success at its own size.
  throw std::logic_error("difference cover search failed to terminate");
}

KernelMin dirichlet_kernel_min(std::int64_t degree, std::int64_t grid_size) {
  if (degree < 0) throw InputError("kernel degree must be >= 0");
  const std::int64_t minimum = std::max<std::int64_t>(1, 8 * degree);
  if (grid_size < minimum) {
    throw InputError("kernel grid size " + std::to_string(grid_size) +
                     " too small; minimum is " + std::to_string(minimum));
  }
  const double half = degree + 0.5;
  const auto kernel = [&](double v) {
    if (v == 0.0) return 2.0 * degree + 1.0;
    return std::sin(half * v) / std::sin(0.5 * v);
  };
  KernelMin km{kernel(0.0), 0.0};
  const double step = 2.0 * std::numbers::pi / grid_size;
  for (std::int64_t t = 1; t < grid_size; ++t) {
    const double v = step * t;
    const double val = kernel(v);
    if (val < km.min_value) {
      km.min_value = val;
      km.argmin = v;
    }
  }
  // Analytic candidate: sin(half * v) = -1 at v = 3 pi / (2 half), near the
  // global minimum for large degree.
  if (degree >= 1) {
    const double v = 3.0 * std::numbers::pi / (2.0 * half);
    const double val = kernel(v);
    if (val < km.min_value) {
      km.min_value = val;
      km.argmin = v;
    }
  }
  return km;
}

}  // namespace flatlab
