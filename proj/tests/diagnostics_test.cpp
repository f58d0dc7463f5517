#include <doctest.h>

#include <random>

#include "flatlab/diagnostics.hpp"
#include "flatlab/families.hpp"
#include "oracles.hpp"

using namespace flatlab;

TEST_SUITE("diagnostics") {

TEST_CASE("pair polynomial: every scalar statistic by hand") {
  const auto p = AnalyticPolynomial::uniform({0, 1});
  const auto rep = compute_report<Rational>(p);
  CHECK(rep.m == 2);
  CHECK(rep.N == 1);
  CHECK(rep.L == Rational(1));
  CHECK(rep.A == Rational(0));
  CHECK(rep.B == Rational(1));
  CHECK(rep.r == Rational(1));
  CHECK(rep.C == Rational(2));
  CHECK(rep.c_over_m2 == Rational(1, 2));
  CHECK(rep.l2_over_c == Rational(1, 2));
  CHECK_FALSE(rep.degenerate);
  CHECK(rep.mode == ModeKind::kExact);

  // Covariance matrix is [[3/4, -1/4], [-1/4, 3/4]].
  const auto mat = covariance_matrix<Rational>(p);
  REQUIRE(mat.rows() == 2);
  CHECK(mat(0, 0) == Rational(3, 4));
  CHECK(mat(1, 1) == Rational(3, 4));
  CHECK(mat(0, 1) == Rational(-1, 4));
  CHECK(mat(1, 0) == Rational(-1, 4));
}

TEST_CASE("signed pair counts for the contiguous block") {
  // {0..m-1}: same-sign runs give 2(m-1-k) pairs, cross pairs add k-1.
  CHECK(signed_difference_counts({1}) == std::vector<std::int64_t>{0});
  CHECK(signed_difference_counts({1, 2}) == std::vector<std::int64_t>{2, 1});
  CHECK(signed_difference_counts({1, 2, 3}) ==
        std::vector<std::int64_t>{4, 3, 2});
  CHECK(signed_difference_counts({1, 2, 3, 4}) ==
        std::vector<std::int64_t>{6, 5, 4, 3});
}

TEST_CASE("signed pair counts match the histogram oracle") {
  std::mt19937_64 rng(1123);
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = oracle::random_class_b(rng);
    const auto s = autocorrelate<double>(p);
    CHECK(signed_difference_counts(s.freqs) ==
          oracle::naive_signed_difference_counts(s.freqs));
  }
}

TEST_CASE("entry scan matches the naive materialization oracle") {
  std::mt19937_64 rng(3301);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = trial % 2 == 0 ? oracle::random_class_b(rng)
                                  : oracle::random_weighted(rng);
    const auto s = autocorrelate<double>(p);
    const auto rep = compute_report(s, p.term_count());
    const auto expected = oracle::naive_entry_sums(s);
    CHECK(rep.r == doctest::Approx(expected.r).epsilon(1e-10));
    CHECK(rep.C == doctest::Approx(expected.c).epsilon(1e-10));
  }
}

TEST_CASE("exact identity r = A + 2N - L^2 with zero error") {
  std::mt19937_64 rng(40961);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = trial % 3 == 0 ? oracle::random_exact_weighted(rng)
                                  : oracle::random_class_b(rng);
    const auto rep = compute_report<Rational>(p);
    CHECK(rep.r == rep.A + Rational(2 * rep.N) - rep.B);
  }
}

TEST_CASE("exact bounds on random class-B polynomials") {
  std::mt19937_64 rng(7130);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = oracle::random_class_b(rng);
    const auto m = p.term_count();
    const auto s = autocorrelate<Rational>(p);
    const auto rep = compute_report(s, m);
    CHECK(rep.L > Rational(0));
    CHECK(rep.L <= Rational(m - 1));
    CHECK(rep.N >= m - 1);
    CHECK(rep.N <= m * (m - 1) / 2);
    // Sharp pair-count bound: at most N - k same-sign pairs per side plus
    // k - 1 cross pairs, so D_k <= 2N - k - 1; the contiguous block attains
    // it. (The looser printed form 2N - 2k + 2 fails for k >= 4.)
    const auto d = signed_difference_counts(s.freqs);
    for (std::int64_t k = 1; k <= rep.N; ++k) {
      CHECK(d[k - 1] <= 2 * rep.N - k - 1);
      CHECK(d[k - 1] <= m * (m - 1));
    }
    const auto abs_a = ScalarOps<Rational>::abs(rep.A);
    CHECK(abs_a <= Rational(m * (m - 1)) * rep.L);
    CHECK(abs_a < Rational(m * m * m));
    // C dominates |r| and the diagonal mass 2N - sum a_i^2.
    CHECK(rep.C >= ScalarOps<Rational>::abs(rep.r));
    Rational diag_mass(0);
    for (std::int64_t k = 0; k < rep.N; ++k) {
      diag_mass += Rational(2) * (Rational(1) - s.coeffs[k] * s.coeffs[k]);
    }
    CHECK(rep.C >= diag_mass);
  }
}

TEST_CASE("L equals P(1)^2 - 1") {
  std::mt19937_64 rng(90210);
  for (int trial = 0; trial < 25; ++trial) {
    const auto p = oracle::random_weighted(rng);
    const auto rep = compute_report<double>(p);
    const auto stats = coefficient_stats(p);
    CHECK(rep.L ==
          doctest::Approx(stats.sum * stats.sum - 1.0).epsilon(1e-9));
  }
}

TEST_CASE("class-B polynomials attain L = m - 1 exactly") {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = oracle::random_class_b(rng);
    const auto rep = compute_report<Rational>(p);
    CHECK(rep.L == Rational(p.term_count() - 1));
  }
}

TEST_CASE("covariance matrix is symmetric with diagonal 1 - a_k^2") {
  std::mt19937_64 rng(555);
  const auto p = oracle::random_class_b(rng, 8, 24);
  const auto s = autocorrelate<Rational>(p);
  const auto mat = covariance_matrix(s);
  const auto side = 2 * s.size();
  REQUIRE(mat.rows() == side);
  for (std::int64_t k = 0; k < side; ++k) {
    const auto a = k < s.size() ? s.coeffs[s.size() - 1 - k]
                                : s.coeffs[k - s.size()];
    CHECK(mat(k, k) == Rational(1) - a * a);
    CHECK(mat(k, k) > Rational(0));
    CHECK(mat(k, k) <= Rational(1));
    for (std::int64_t l = 0; l < k; ++l) {
      CHECK(mat(k, l) == mat(l, k));
    }
  }
}

TEST_CASE("matrix route and streaming route give identical r and C") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 12; ++trial) {
    const auto p = oracle::random_class_b(rng);
    const auto s = autocorrelate<Rational>(p);
    const auto rep = compute_report(s, p.term_count());
    const auto mat = covariance_matrix(s);
    Rational sum(0), abs_sum(0);
    for (std::int64_t k = 0; k < mat.rows(); ++k) {
      for (std::int64_t l = 0; l < mat.cols(); ++l) {
        sum += mat(k, l);
        abs_sum += ScalarOps<Rational>::abs(mat(k, l));
      }
    }
    CHECK(rep.r == sum);
    CHECK(rep.C == abs_sum);
  }
}

TEST_CASE("covariance matrix equals the quadrature Gram oracle") {
  std::mt19937_64 rng(741);
  for (int trial = 0; trial < 8; ++trial) {
    const auto p = trial % 2 == 0 ? oracle::random_class_b(rng, 8, 32)
                                  : oracle::random_weighted(rng, 8, 32);
    const auto s = autocorrelate<double>(p);
    const auto mat = covariance_matrix(s);
    const auto gram = oracle::gram_quadrature(p, s);
    REQUIRE(gram.rows() == mat.rows());
    for (std::int64_t k = 0; k < mat.rows(); ++k) {
      for (std::int64_t l = 0; l < mat.cols(); ++l) {
        CHECK(std::abs(gram(k, l).imag()) < 1e-9);
        CHECK(std::abs(gram(k, l).real() - mat(k, l)) < 1e-9);
      }
    }
  }
}

TEST_CASE("matrix cap directs large spectra to compute_report") {
  const auto p = dirichlet(40);
  CHECK_THROWS_AS(covariance_matrix<Rational>(autocorrelate<Rational>(p), 64),
                  BudgetError);
  CHECK_NOTHROW(compute_report<Rational>(p));
}

TEST_CASE("float and exact reports agree to 1e-9") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 25; ++trial) {
    const auto p = trial % 3 == 0 ? oracle::random_exact_weighted(rng)
                                  : oracle::random_class_b(rng);
    const auto exact = oracle::lowered(compute_report<Rational>(p));
    const auto fl = compute_report<double>(p);
    CHECK(std::abs(exact.L - fl.L) <= 1e-9);
    CHECK(std::abs(exact.A - fl.A) <= 1e-9);
    CHECK(std::abs(exact.B - fl.B) <= 1e-9);
    CHECK(std::abs(exact.r - fl.r) <= 1e-9);
    CHECK(std::abs(exact.C - fl.C) <= 1e-9);
    CHECK(std::abs(exact.c_over_m2 - fl.c_over_m2) <= 1e-9);
    CHECK(std::abs(exact.l2_over_c - fl.l2_over_c) <= 1e-9);
  }
}

TEST_CASE("worker count does not change the scan result") {
  std::mt19937_64 rng(919);
  const auto p = oracle::random_class_b(rng, 12, 64);
  const auto s = autocorrelate<double>(p);
  const auto one = compute_report(s, p.term_count(), 1);
  const auto two = compute_report(s, p.term_count(), 2);
  const auto eight = compute_report(s, p.term_count(), 8);
  CHECK(one.r == two.r);
  CHECK(one.r == eight.r);
  CHECK(one.C == two.C);
  CHECK(one.C == eight.C);
}

TEST_CASE("single-term polynomial reports degenerate zeros") {
  const auto p = AnalyticPolynomial::make({0}, {Rational(1)});
  const auto rep = compute_report<Rational>(p);
  CHECK(rep.degenerate);
  CHECK(rep.m == 1);
  CHECK(rep.N == 0);
  CHECK(rep.L == Rational(0));
  CHECK(rep.C == Rational(0));
  CHECK(rep.c_over_m2 == Rational(0));
  CHECK(rep.l2_over_c == Rational(0));
}

TEST_CASE("diagnostics are invariant under z -> z^l") {
  std::mt19937_64 rng(17);
  for (const std::int64_t l : {2, 3, 5}) {
    const auto p = oracle::random_class_b(rng, 8, 32);
    const auto base = compute_report<Rational>(p);
    const auto scaled = compute_report<Rational>(substitute(p, l));
    CHECK(base.N == scaled.N);
    CHECK(base.L == scaled.L);
    CHECK(base.A == scaled.A);
    CHECK(base.r == scaled.r);
    CHECK(base.C == scaled.C);
  }
}

TEST_CASE("verdict requires at least two reports") {
  CHECK_THROWS_AS(verdict(std::vector<DiagnosticsReport<double>>{}),
                  InputError);
  std::vector<DiagnosticsReport<double>> one{compute_report<double>(dirichlet(6))};
  CHECK(verdict(one, 1.0).flag == NecessaryConditionFlag::kInconclusive);
}

TEST_CASE("bounded ratios with L above the floor rule flatness out") {
  std::vector<DiagnosticsReport<double>> family;
  for (const std::int64_t m : {4, 8, 16, 32}) {
    family.push_back(compute_report<double>(dirichlet(m)));
  }
  const auto v = verdict(family, 3.0);
  CHECK(v.l_bounded_away);
  CHECK(v.min_L == doctest::Approx(3.0));
  CHECK_FALSE(v.diverging);
  CHECK(v.flag == NecessaryConditionFlag::kCannotBeFlat);
}

TEST_CASE("diverging ratios leave the verdict inconclusive") {
  std::vector<DiagnosticsReport<double>> family;
  for (const std::int64_t j : {4, 8, 16, 32}) {
    family.push_back(compute_report<double>(two_block(j)));
  }
  const auto v = verdict(family, 3.0);
  CHECK(v.l_bounded_away);
  CHECK(v.last_above_first);
  CHECK(v.growth_factor >= kDivergenceGrowth);
  CHECK(v.diverging);
  CHECK(v.flag == NecessaryConditionFlag::kInconclusive);
}

TEST_CASE("singularity series partial sums") {
  // n copies of the pair polynomial: each term contributes 1/2.
  std::vector<DiagnosticsReport<Rational>> family(
      4, compute_report<Rational>(AnalyticPolynomial::uniform({0, 1})));
  const auto sums = singularity_series(family);
  REQUIRE(sums.size() == 4);
  for (std::size_t i = 0; i < sums.size(); ++i) {
    CHECK(sums[i] == Rational(i + 1, 2));
  }
  // Degenerate members (C = 0) are rejected.
  family.push_back(
      compute_report<Rational>(AnalyticPolynomial::make({0}, {Rational(1)})));
  CHECK_THROWS_AS(singularity_series(family), InputError);
}

}  // TEST_SUITE
