#include "flatlab/diagnostics.hpp"

namespace flatlab {

std::vector<std::int64_t> signed_difference_counts(
    const std::vector<std::int64_t>& freqs) {
  const std::int64_t n = static_cast<std::int64_t>(freqs.size());
  std::vector<std::int64_t> signed_freqs(2 * n);
  for (std::int64_t i = 0; i < n; ++i) {
    signed_freqs[n - 1 - i] = -freqs[i];
    signed_freqs[n + i] = freqs[i];
  }
  std::vector<std::int64_t> counts(n, 0);
  // For fixed k the shifted values signed_freqs[i] + n_k are ascending in i,
  // so membership tests ride a single forward merge pointer per k.
  for (std::int64_t k = 0; k < n; ++k) {
    const std::int64_t nk = freqs[k];
    std::int64_t count = 0;
    std::int64_t ptr = 0;
    for (std::int64_t i = 0; i < 2 * n; ++i) {
      const std::int64_t target = signed_freqs[i] + nk;
      while (ptr < 2 * n && signed_freqs[ptr] < target) ++ptr;
      if (ptr < 2 * n && signed_freqs[ptr] == target) ++count;
    }
    counts[k] = count;
  }
  return counts;
}

}  // namespace flatlab
