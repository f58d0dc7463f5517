#include <doctest.h>

#include <cmath>
#include <numbers>

#include "flatlab/families.hpp"
#include "flatlab/riesz.hpp"

using namespace flatlab;

namespace {

std::vector<AnalyticPolynomial> pair_copies(int n) {
  return std::vector<AnalyticPolynomial>(n, AnalyticPolynomial::uniform({0, 1}));
}

}  // namespace

TEST_SUITE("riesz") {

TEST_CASE("schedule for repeated pair factors is the power-of-three ladder") {
  const auto s1 = schedule(pair_copies(1));
  CHECK(s1.l == std::vector<std::int64_t>{1});
  CHECK(s1.degrees == std::vector<std::int64_t>{1});

  const auto s3 = schedule(pair_copies(3));
  CHECK(s3.l == std::vector<std::int64_t>{1, 3, 9});
  CHECK(s3.degrees == std::vector<std::int64_t>{1, 4, 13});

  const auto s4 = schedule(pair_copies(4));
  CHECK(s4.l == std::vector<std::int64_t>{1, 3, 9, 27});
  CHECK(s4.degrees.back() == 40);
}

TEST_CASE("schedule keeps exponents strictly increasing for mixed factors") {
  const auto s = schedule({dirichlet(4), AnalyticPolynomial::uniform({0, 1}),
                           two_block(2)});
  REQUIRE(s.l.size() == 3);
  CHECK(s.l[0] == 1);
  for (std::size_t k = 1; k < s.l.size(); ++k) {
    CHECK(s.l[k] > s.l[k - 1]);
    CHECK(s.l[k] >= 2 * s.degrees[k - 1] + 1);
  }
  CHECK(verify_dissociated(s, 3));
}

TEST_CASE("schedule rejects factor lists whose degree overflows") {
  // Prefix degrees follow (3^k - 1)/2, so 40 pair factors still fit in 64
  // bits and the 41st substitution exponent does not.
  CHECK_NOTHROW(schedule(pair_copies(40)));
  CHECK_THROWS_AS(schedule(pair_copies(41)), InputError);
  CHECK_THROWS_AS(schedule({}), InputError);
}

TEST_CASE("dissociation verification accepts scheduled factors") {
  const auto s = schedule(pair_copies(8));
  for (std::int64_t prefix = 0; prefix <= 8; ++prefix) {
    CHECK(verify_dissociated(s, prefix));
  }
  CHECK_THROWS_AS(verify_dissociated(s, 9), InputError);
  CHECK_THROWS_AS(verify_dissociated(s, -1), InputError);
}

TEST_CASE("dissociation verification rejects colliding exponents") {
  // Two identical un-scaled pair factors: (+1) + (-1) collides with 0 + 0.
  DissociationSchedule s;
  s.factors = pair_copies(2);
  s.l = {1, 1};
  s.degrees = {1, 2};
  CHECK_FALSE(verify_dissociated(s, 2));

  // {0,1,2} factors with l = (1, 2): +2 from the first factor collides with
  // 2 * (+1) from the second.
  DissociationSchedule t;
  t.factors = {dirichlet(3), dirichlet(3)};
  t.l = {1, 2};
  t.degrees = {2, 6};
  CHECK_FALSE(verify_dissociated(t, 2));
}

TEST_CASE("verification stays within its term budget") {
  const auto s = schedule(std::vector<AnalyticPolynomial>(9, dirichlet(3)));
  // Each |P_k|^2 has 5 signed frequencies; 5^8 fits in the default budget,
  // 5^9 does not.
  CHECK(verify_dissociated(s, 8));
  CHECK_THROWS_AS(verify_dissociated(s, 9), BudgetError);
  CHECK(verify_dissociated(s, 9, 5 * 1000 * 1000));
}

TEST_CASE("partial density: prefix zero is flat, all prefixes have mean one") {
  const auto s = schedule(pair_copies(3));
  const std::int64_t grid = 64;
  const auto flat = partial_density(s, 0, grid);
  CHECK(flat.size() == grid);
  CHECK(flat.minCoeff() == 1.0);
  CHECK(flat.maxCoeff() == 1.0);
  for (std::int64_t prefix = 1; prefix <= 3; ++prefix) {
    const auto d = partial_density(s, prefix, grid);
    CHECK(d.minCoeff() >= 0.0);
    CHECK(std::abs(d.mean() - 1.0) <= 1e-9);
    // Max of prod (1 + cos) is 2^prefix at t = 0.
    CHECK(d[0] == doctest::Approx(std::pow(2.0, prefix)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(partial_density(s, 3, 55), InputError);
  CHECK_THROWS_AS(partial_density(s, 4, 64), InputError);
}

TEST_CASE("pair flatness metrics match closed forms") {
  // |P|^2 = 1 + cos(2 pi t): mean | |P|^2 - 1 | = 2/pi,
  // mean | |P| - 1 | = 2(2 - sqrt(2))/pi, sup | |P| - 1 | = 1 at the zero.
  const auto rep = flatness(AnalyticPolynomial::uniform({0, 1}), 4096);
  CHECK(rep.grid_size == 4096);
  CHECK(rep.l1_sq == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-6));
  CHECK(rep.l1_abs ==
        doctest::Approx(2.0 * (2.0 - std::sqrt(2.0)) / std::numbers::pi)
            .epsilon(1e-6));
  CHECK(rep.sup_dev == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.near_one_fraction == doctest::Approx(0.1184).epsilon(0.05));
}

TEST_CASE("flatness is invariant under the substitution z -> z^l") {
  const auto p = dirichlet(3);
  const auto q = substitute(p, 3);
  // Same grid, gcd(3, 64) = 1: the substituted values are a permutation.
  const auto a = flatness(p, 64);
  const auto b = flatness(q, 64);
  CHECK(a.l1_abs == doctest::Approx(b.l1_abs).epsilon(1e-12));
  CHECK(a.l1_sq == doctest::Approx(b.l1_sq).epsilon(1e-12));
  CHECK(a.sup_dev == doctest::Approx(b.sup_dev).epsilon(1e-12));
  CHECK(a.near_one_fraction == doctest::Approx(b.near_one_fraction));
}

TEST_CASE("convergence track of the pair ladder") {
  const auto s = schedule(pair_copies(3));
  const auto rows = convergence_track(s, 64);
  REQUIRE(rows.size() == 3);
  for (std::int64_t k = 0; k < 3; ++k) {
    CHECK(rows[k].prefix == k + 1);
    // Running modulus maxes at 2^(prefix/2) at t = 0, hits 0 at t = 1/2.
    CHECK(rows[k].max ==
          doctest::Approx(std::pow(2.0, 0.5 * (k + 1))).epsilon(1e-9));
    CHECK(rows[k].min == doctest::Approx(0.0));
    CHECK(rows[k].geo_mean > 0.0);
    CHECK(rows[k].geo_mean < 1.0);
    CHECK(rows[k].frac_in_band > 0.0);
    CHECK(rows[k].frac_in_band < 1.0);
    if (k > 0) CHECK(rows[k].geo_mean < rows[k - 1].geo_mean);
  }
  CHECK_THROWS_AS(convergence_track(s, 32), InputError);
}

}  // TEST_SUITE
