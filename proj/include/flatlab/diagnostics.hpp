#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "flatlab/parallel.hpp"
#include "flatlab/spectrum.hpp"

namespace flatlab {

// Scalar statistics of the covariance matrix M of the measure |P|^2 dz. M is
// indexed by the signed frequencies (-n_N .. -n_1, n_1 .. n_N) and has
// entries m(k,l) = fc(n_k - n_l) - a_k a_l, diagonal 1 - a_k^2, where fc is
// the Fourier coefficient of |P|^2 and a_{-k} = a_k.
//
//   m  number of terms of P
//   N  positive spectrum size
//   L  total off-zero coefficient mass, = P(1)^2 - 1
//   A  sum over signed k of a_k D_k (D_k below)
//   B  L^2
//   r  sum of all entries of M; equals A + 2N - L^2 as an identity
//   C  sum of absolute values of all entries of M
//
// r is accumulated entry-by-entry rather than through the identity, so the
// identity stays an independent cross-check in exact mode.
template <class Scalar>
struct DiagnosticsReport {
  std::int64_t m = 0;
  std::int64_t N = 0;
  Scalar L{};
  Scalar A{};
  Scalar B{};
  Scalar r{};
  Scalar C{};
  Scalar c_over_m2{};
  Scalar l2_over_c{};
  bool degenerate = false;  // m == 1: empty spectrum, matrix quantities zero
  ModeKind mode = ModeKind::kFloat;
};

// D_k = #{ ordered signed pairs (i, j) : n_j - n_i = n_k } for k = 1..N,
// counting over the 2N signed frequencies. D_{-k} = D_k by symmetry, and
// D_k <= 2N - k - 1: each side contributes at most N - k same-sign pairs and
// cross pairs n_a + n_b = n_k contribute at most k - 1. The contiguous block
// {0..m-1} attains equality for every k.
std::vector<std::int64_t> signed_difference_counts(
    const std::vector<std::int64_t>& freqs);

template <class Scalar>
std::vector<std::int64_t> signed_difference_counts(const SpectralData<Scalar>& s) {
  return signed_difference_counts(s.freqs);
}

namespace detail {

// Signed expansion of a positive-half spectrum: frequencies ascending
// (-n_N .. -n_1, n_1 .. n_N) with mirrored coefficients.
template <class Scalar>
struct SignedSpectrum {
  std::vector<std::int64_t> freq;
  std::vector<Scalar> coeff;

  explicit SignedSpectrum(const SpectralData<Scalar>& s) {
    const std::int64_t n = s.size();
    freq.resize(2 * n);
    coeff.resize(2 * n);
    for (std::int64_t i = 0; i < n; ++i) {
      freq[n - 1 - i] = -s.freqs[i];
      coeff[n - 1 - i] = s.coeffs[i];
      freq[n + i] = s.freqs[i];
      coeff[n + i] = s.coeffs[i];
    }
  }
};

// One row of M reduced to (sum, sum of absolute values). The lookup of
// fc(freq[row] - freq[l]) rides a descending merge pointer: the difference is
// monotone in l, so the whole row costs O(side) instead of O(side log side).
template <class Scalar>
std::pair<Scalar, Scalar> covariance_row_scan(const SignedSpectrum<Scalar>& sp,
                                              std::int64_t row) {
  const std::int64_t side = static_cast<std::int64_t>(sp.freq.size());
  const std::int64_t fk = sp.freq[row];
  const Scalar& ak = sp.coeff[row];
  Scalar sum(0), abs_sum(0);
  std::int64_t ptr = side - 1;
  for (std::int64_t l = 0; l < side; ++l) {
    const std::int64_t d = fk - sp.freq[l];
    while (ptr >= 0 && sp.freq[ptr] > d) --ptr;
    Scalar entry = -(ak * sp.coeff[l]);
    if (d == 0) {
      entry += Scalar(1);
    } else if (ptr >= 0 && sp.freq[ptr] == d) {
      entry += sp.coeff[ptr];
    }
    sum += entry;
    abs_sum += ScalarOps<Scalar>::abs(entry);
  }
  return {sum, abs_sum};
}

// (r, C): all rows reduced in index order, so the result is independent of
// the worker count even in float mode.
template <class Scalar>
std::pair<Scalar, Scalar> covariance_entry_scan(const SignedSpectrum<Scalar>& sp,
                                                int threads) {
  const std::int64_t side = static_cast<std::int64_t>(sp.freq.size());
  std::vector<Scalar> row_sum(side, Scalar(0));
  std::vector<Scalar> row_abs(side, Scalar(0));
  parallel_for_index(side, threads, [&](std::int64_t row) {
    auto [s, a] = covariance_row_scan(sp, row);
    row_sum[row] = s;
    row_abs[row] = a;
  });
  Scalar r(0), c(0);
  for (std::int64_t i = 0; i < side; ++i) {
    r += row_sum[i];
    c += row_abs[i];
  }
  return {r, c};
}

}  // namespace detail

template <class Scalar>
DiagnosticsReport<Scalar> compute_report(const SpectralData<Scalar>& s,
                                         std::int64_t m, int threads = 0) {
  DiagnosticsReport<Scalar> rep;
  rep.mode = ScalarOps<Scalar>::exact ? ModeKind::kExact : ModeKind::kFloat;
  rep.m = m;
  rep.N = s.size();
  if (rep.N == 0) {
    rep.degenerate = true;
    return rep;
  }
  rep.L = Scalar(2) * s.coeffs.sum();
  const auto d_counts = signed_difference_counts(s.freqs);
  Scalar a_sum(0);
  for (std::int64_t k = 0; k < rep.N; ++k) {
    a_sum += s.coeffs[k] * Scalar(d_counts[k]);
  }
  rep.A = Scalar(2) * a_sum;
  rep.B = rep.L * rep.L;
  detail::SignedSpectrum<Scalar> sp(s);
  auto [r, c] = detail::covariance_entry_scan(sp, threads);
  rep.r = r;
  rep.C = c;
  rep.c_over_m2 = rep.C / Scalar(m * m);
  rep.l2_over_c = rep.C > Scalar(0) ? Scalar(rep.B / rep.C) : Scalar(0);
  return rep;
}

template <class Scalar>
DiagnosticsReport<Scalar> compute_report(const AnalyticPolynomial& p,
                                         int threads = 0) {
  if (p.term_count() == 1) {
    DiagnosticsReport<Scalar> rep;
    rep.mode = ScalarOps<Scalar>::exact ? ModeKind::kExact : ModeKind::kFloat;
    rep.m = 1;
    rep.degenerate = true;
    return rep;
  }
  const auto s = autocorrelate<Scalar>(p);
  return compute_report(s, p.term_count(), threads);
}

// Materialized M, side 2N. Guarded by a side cap because callers wanting only
// the scalar statistics should use compute_report, which never materializes.
inline constexpr std::int64_t kDefaultMatrixCap = 4096;

template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> covariance_matrix(
    const SpectralData<Scalar>& s, std::int64_t side_cap = kDefaultMatrixCap) {
  const std::int64_t side = 2 * s.size();
  if (side > side_cap) {
    throw BudgetError("covariance matrix side " + std::to_string(side) +
                      " exceeds cap " + std::to_string(side_cap) +
                      "; use compute_report for scalar statistics");
  }
  detail::SignedSpectrum<Scalar> sp(s);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> mat(side, side);
  for (std::int64_t k = 0; k < side; ++k) {
    const std::int64_t fk = sp.freq[k];
    std::int64_t ptr = side - 1;
    for (std::int64_t l = 0; l < side; ++l) {
      const std::int64_t d = fk - sp.freq[l];
      while (ptr >= 0 && sp.freq[ptr] > d) --ptr;
      Scalar entry = -(sp.coeff[k] * sp.coeff[l]);
      if (d == 0) {
        entry += Scalar(1);
      } else if (ptr >= 0 && sp.freq[ptr] == d) {
        entry += sp.coeff[ptr];
      }
      mat(k, l) = entry;
    }
  }
  return mat;
}

template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> covariance_matrix(
    const AnalyticPolynomial& p, std::int64_t side_cap = kDefaultMatrixCap) {
  return covariance_matrix(autocorrelate<Scalar>(p), side_cap);
}

enum class NecessaryConditionFlag { kCannotBeFlat, kInconclusive };

inline const char* flag_name(NecessaryConditionFlag f) {
  return f == NecessaryConditionFlag::kCannotBeFlat ? "CANNOT_BE_FLAT"
                                                    : "INCONCLUSIVE";
}

// Outcome of the necessary-condition test over a family of reports: if L_j
// stays bounded away from 0 along a sequence that is flat a.e., then
// C_j / m_j^2 must diverge. Contrapositive: bounded ratios with L_j >= l_floor
// rule flatness out.
struct NecessaryConditionVerdict {
  double l_floor = 0.0;
  double min_L = 0.0;
  bool l_bounded_away = false;
  std::vector<double> c_over_m2;
  // Divergence heuristic: last ratio above the first, and the last ratio at
  // least kDivergenceGrowth times the ratio observed near half the final m.
  bool last_above_first = false;
  double growth_factor = 0.0;
  bool diverging = false;
  NecessaryConditionFlag flag = NecessaryConditionFlag::kInconclusive;
};

inline constexpr double kDivergenceGrowth = 1.25;
inline constexpr double kDefaultLFloor = 1.0;

template <class Scalar>
NecessaryConditionVerdict verdict(
    const std::vector<DiagnosticsReport<Scalar>>& family,
    double l_floor = kDefaultLFloor) {
  if (family.empty()) throw InputError("verdict requires a non-empty family");
  NecessaryConditionVerdict v;
  v.l_floor = l_floor;
  v.min_L = std::numeric_limits<double>::infinity();
  for (const auto& rep : family) {
    v.min_L = std::min(v.min_L, to_double_scalar(rep.L));
    v.c_over_m2.push_back(to_double_scalar(rep.c_over_m2));
  }
  v.l_bounded_away = v.min_L >= l_floor;
  const std::size_t n = v.c_over_m2.size();
  if (n < 2) {
    v.flag = NecessaryConditionFlag::kInconclusive;
    return v;
  }
  v.last_above_first = v.c_over_m2.back() > v.c_over_m2.front();
  // Reference point: the family member whose m is closest to half the final m.
  const double half_m = 0.5 * static_cast<double>(family.back().m);
  std::size_t href = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double gap = std::abs(static_cast<double>(family[i].m) - half_m);
    if (gap < best) {
      best = gap;
      href = i;
    }
  }
  const double v_half = v.c_over_m2[href];
  const double v_last = v.c_over_m2.back();
  if (v_half > 0.0) {
    v.growth_factor = v_last / v_half;
  } else {
    v.growth_factor = v_last > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  v.diverging = v.last_above_first && v.growth_factor >= kDivergenceGrowth;
  v.flag = (v.l_bounded_away && !v.diverging)
               ? NecessaryConditionFlag::kCannotBeFlat
               : NecessaryConditionFlag::kInconclusive;
  return v;
}

// Running partial sums of sum_j L_j^2 / C_j; divergence of the full series is
// what a flat sequence with L bounded away from zero forces. Requires every
// C_j > 0 (no degenerate members).
template <class Scalar>
std::vector<Scalar> singularity_series(
    const std::vector<DiagnosticsReport<Scalar>>& family) {
  std::vector<Scalar> partial;
  Scalar acc(0);
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (!(family[j].C > Scalar(0))) {
      throw InputError("singularity series requires C > 0 at family index " +
                       std::to_string(j));
    }
    acc += family[j].l2_over_c;
    partial.push_back(acc);
  }
  return partial;
}

}  // namespace flatlab
