/*
 * Copyright 2026 The clickgbs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "clickgbs/errors.hpp"
#include "clickgbs/gaussian.hpp"
#include "clickgbs/matrixfn.hpp"
#include "oracles.hpp"

using namespace clickgbs;

namespace {

RealSymMatrix all_ones(std::size_t dim) { return RealSymMatrix(Matrix(dim, dim, 1.0)); }

// Swap-symmetric A = [[P, Q], [Q, P]] with P, Q symmetric, scaled to spectral radius < 0.5.
RealSymMatrix swap_symmetric(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix p(n, n), q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      p(i, j) = p(j, i) = u(rng);
      q(i, j) = q(j, i) = u(rng);
    }
  Matrix a(2 * n, 2 * n);
  double row_max = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = a(i + n, j + n) = p(i, j);
      a(i, j + n) = a(i + n, j) = q(i, j);
    }
  for (std::size_t i = 0; i < 2 * n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < 2 * n; ++j) s += std::abs(a(i, j));
    row_max = std::max(row_max, s);
  }
  return (0.45 / row_max) * RealSymMatrix(a);
}

std::vector<ClickPattern> all_patterns(std::size_t m, int n) {
  std::vector<ClickPattern> out;
  std::vector<int> k(m, 0);
  while (true) {
    out.emplace_back(k);
    std::size_t i = m;
    while (i > 0 && k[i - 1] == n) k[--i] = 0;
    if (i == 0) return out;
    ++k[i - 1];
  }
}

}  // namespace

TEST(ClickPattern, Classification) {
  const ClickPattern k{1, 0, 2};
  EXPECT_EQ(k.total(), 3);
  EXPECT_FALSE(k.is_binary());
  EXPECT_TRUE(k.is_collision());
  EXPECT_EQ(k.silent_modes().modes(), (std::vector<int>{2}));
  EXPECT_TRUE((ClickPattern{1, 0, 1}.is_binary()));
}

TEST(CheckPattern, Errors) {
  EXPECT_THROW(check_pattern(ClickPattern{3}, 2, 1), PatternOutOfRange);
  EXPECT_THROW(check_pattern(ClickPattern{-1}, 2, 1), PatternOutOfRange);
  EXPECT_THROW(check_pattern(ClickPattern{1, 1}, 2, 1), PatternOutOfRange);
  try {
    check_pattern(ClickPattern{3}, 2, 1);
  } catch (const PatternOutOfRange& e) {
    EXPECT_NE(std::string(e.what()).find("pattern exceeds N"), std::string::npos);
  }
}

TEST(Multinomial, Values) {
  EXPECT_EQ(multinomial(4, 2, 1, 1), 12.0);
  EXPECT_EQ(multinomial(20, 10, 10, 0), 184756.0);
  EXPECT_NEAR(multinomial(30, 15, 15, 0), 155117520.0, 1e-6);
  EXPECT_THROW(multinomial(3, 1, 1, 0), OutOfRange);
}

TEST(Hafnian, SmallCases) {
  EXPECT_EQ(hafnian(RealSymMatrix(2, {0, 1, 1, 0})), 1.0);
  EXPECT_EQ(hafnian(all_ones(4)), 3.0);
  EXPECT_EQ(hafnian(RealSymMatrix::identity(0)), 1.0);
  double dfact = 1.0;
  for (std::size_t n = 1; n <= 6; ++n) {
    dfact *= static_cast<double>(2 * n - 1);
    EXPECT_EQ(hafnian(all_ones(2 * n)), dfact) << "n = " << n;
  }
  EXPECT_THROW(hafnian(all_ones(18)), TooLarge);
}

TEST(Hafnian, MatchesPermutationSum) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const RealSymMatrix a = swap_symmetric(3, seed);
    EXPECT_NEAR(hafnian(a), oracle::brute_hafnian(a.matrix()), 1e-12);
  }
}

TEST(Torontonian, ZeroAndThermal) {
  EXPECT_NEAR(torontonian(0.0 * RealSymMatrix::identity(4)), 0.0, 1e-15);
  EXPECT_NEAR(torontonian(0.5 * RealSymMatrix::identity(2)), 1.0, 1e-15);
  EXPECT_EQ(torontonian(RealSymMatrix::identity(0)), 1.0);
}

TEST(Torontonian, CountsTerms) {
  TermStats stats;
  torontonian(kernel_O(random_instance({3, 1.0, 0.0, 1.0, 4})), &stats);
  EXPECT_EQ(stats.terms, 8u);
  EXPECT_EQ(stats.determinants, 8u);
}

TEST(Torontonian, MatchesLuOracle) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RealSymMatrix o = kernel_O(random_instance({3, 1.0, 0.0, 0.7, seed}));
    EXPECT_NEAR(torontonian(o), oracle::brute_torontonian(o.matrix()), 1e-10);
  }
}

TEST(WeightedVacuumOverlap, Boundaries) {
  const RealSymMatrix sinv = spd_inverse(husimi_sigma(random_instance({2, 0.8, 0.0, 1.0, 5})));
  EXPECT_EQ(weighted_vacuum_overlap(sinv, LambdaVector::uniform(2, 1.0)), 1.0);
  EXPECT_NEAR(weighted_vacuum_overlap(sinv, LambdaVector::uniform(2, 0.0)),
              1.0 / std::sqrt(oracle::lu_det(sinv.matrix())), 1e-12);
}

TEST(WeightedVacuumOverlap, SingleModeHandValue) {
  const double s = 0.7;
  for (double lam : {0.0, 0.25, 0.5, 0.9}) {
    const double expected = 1.0 / ((1.0 - lam) * (s + lam / (1.0 - lam)));
    EXPECT_NEAR(weighted_vacuum_overlap(s * RealSymMatrix::identity(2), LambdaVector::uniform(1, lam)), expected, 1e-14);
  }
}

TEST(WeightedVacuumOverlap, Errors) {
  const RealSymMatrix sinv = RealSymMatrix::identity(2);
  EXPECT_THROW(weighted_vacuum_overlap(sinv, LambdaVector::uniform(2, 0.5)), DimensionMismatch);
  EXPECT_THROW(weighted_vacuum_overlap(sinv, LambdaVector::uniform(1, 1.5)), OutOfRange);
}

TEST(Kensingtonian, VacuumPatternIsOne) {
  const RealSymMatrix o = kernel_O(random_instance({3, 1.0, 0.0, 1.0, 2}));
  EXPECT_NEAR(kensingtonian(o, ClickPattern{0, 0, 0}, 4), 1.0, 1e-15);
  const std::vector<double> alpha(6, 0.3);
  EXPECT_NEAR(loop_kensingtonian(o, alpha, ClickPattern{0, 0, 0}, 4), 1.0, 1e-15);
}

TEST(Kensingtonian, ThermalHandValue) {
  // thermal nbar = 1, N = 2: Ken = p(k) sqrt(det Sigma) = 2 p(k)
  const RealSymMatrix o = 0.5 * RealSymMatrix::identity(2);
  EXPECT_NEAR(kensingtonian(o, ClickPattern{1}, 2), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(kensingtonian(o, ClickPattern{2}, 2), 1.0 / 3.0, 1e-14);
}

TEST(Kensingtonian, ReducesToTorontonianAtNOne) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RealSymMatrix o = kernel_O(random_instance({3, 1.0, 0.0, 0.8, seed}));
    for (const auto& k : all_patterns(3, 1)) {
      const double tor = oracle::brute_torontonian(delete_modes(o, k.silent_modes()).matrix());
      EXPECT_NEAR(kensingtonian(o, k, 1), tor, 1e-10 * std::max(std::abs(tor), 1.0));
    }
  }
}

TEST(Kensingtonian, TermStatisticsMatchProductFormula) {
  const RealSymMatrix o = kernel_O(random_instance({3, 1.0, 0.0, 1.0, 7}));
  TermStats stats;
  kensingtonian(o, ClickPattern{1, 2, 0}, 3, {TermOrder::Forward, &stats});
  EXPECT_EQ(stats.terms, 6u);
  EXPECT_EQ(stats.determinants, 6u);
}

TEST(Kensingtonian, TermOrderDoesNotMatter) {
  const RealSymMatrix o = kernel_O(random_instance({3, 1.0, 0.0, 1.0, 8}));
  const ClickPattern k{2, 1, 3};
  const double fwd = kensingtonian(o, k, 4, {TermOrder::Forward, nullptr});
  const double rev = kensingtonian(o, k, 4, {TermOrder::Reverse, nullptr});
  EXPECT_NEAR(fwd, rev, 1e-12 * std::max(1.0, std::abs(fwd)));
}

TEST(Kensingtonian, PatternOutOfRange) {
  EXPECT_THROW(kensingtonian(0.0 * RealSymMatrix::identity(2), ClickPattern{3}, 2), PatternOutOfRange);
}

TEST(LoopKensingtonian, ZeroAlphaMatchesPlain) {
  const RealSymMatrix o = kernel_O(random_instance({2, 1.0, 0.0, 1.0, 3}));
  const std::vector<double> zero(4, 0.0);
  for (const auto& k : all_patterns(2, 3))
    EXPECT_NEAR(loop_kensingtonian(o, zero, k, 3), kensingtonian(o, k, 3), 1e-13);
}

TEST(NoisyKensingtonian, IdealLimitMatchesLoop) {
  const GaussianState st = random_instance({2, 1.0, 1.0, 1.0, 11});
  const RealSymMatrix o = kernel_O(st);
  for (const auto& k : all_patterns(2, 2))
    EXPECT_NEAR(kensingtonian_noisy(o, st.mean(), k, 2, 1.0, 0.0), loop_kensingtonian(o, st.mean(), k, 2), 1e-12);
}

TEST(NoisyKensingtonian, NoEfficiencyNeverClicks) {
  const GaussianState st = random_instance({2, 1.0, 0.5, 1.0, 12});
  const RealSymMatrix o = kernel_O(st);
  // p(0) = p0 * value must equal 1, so the value is 1/p0.
  const double p0 = std::exp(-Cholesky(husimi_sigma(st)).inverse_quadratic_form(st.mean())) /
                    std::sqrt(oracle::lu_det(husimi_sigma(st).matrix()));
  EXPECT_NEAR(p0 * kensingtonian_noisy(o, st.mean(), ClickPattern{0, 0}, 3, 0.0, 0.0), 1.0, 1e-12);
}

TEST(HafTorCoefficient, OneModeHandValue) {
  const double a = 0.3;
  const double b = 0.1;
  const RealSymMatrix m(2, {a, b, b, a});
  EXPECT_NEAR(haf_tor_coefficient(m), a, 1e-14);
  EXPECT_NEAR(hafnian(half_swap_product(m)), a, 1e-15);
}

TEST(HafTorCoefficient, ZeroMatrix) {
  EXPECT_NEAR(haf_tor_coefficient(0.0 * RealSymMatrix::identity(4)), 0.0, 1e-15);
}

TEST(HafTorCoefficient, MatchesBruteForceHafnian) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const RealSymMatrix a = swap_symmetric(n, seed);
      EXPECT_NEAR(haf_tor_coefficient(a), oracle::brute_hafnian(half_swap_product(a).matrix()), 1e-9)
          << "n = " << n << " seed " << seed;
    }
}

TEST(HafTorCoefficient, RejectsNonSwapSymmetric) {
  EXPECT_THROW(haf_tor_coefficient(RealSymMatrix::diagonal(std::vector<double>{0.1, 0.2})), NotSwapSymmetric);
}
