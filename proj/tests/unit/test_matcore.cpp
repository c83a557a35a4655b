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
#include "clickgbs/matcore.hpp"
#include "oracles.hpp"

using namespace clickgbs;

namespace {

RealSymMatrix random_spd(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix b(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) b(i, j) = g(rng);
  return RealSymMatrix(b * b.transpose() + 0.5 * Matrix::identity(dim));
}

RealSymMatrix sequential(std::size_t dim) {
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = static_cast<double>(std::min(i, j) * 10 + std::max(i, j));
  return RealSymMatrix(m);
}

}  // namespace

TEST(RealSymMatrix, RejectsAsymmetricInput) {
  Matrix m = Matrix::identity(2);
  m(0, 1) = 1e-3;
  EXPECT_THROW(RealSymMatrix{m}, NotSymmetric);
}

TEST(RealSymMatrix, RejectsOddDimension) {
  EXPECT_THROW(RealSymMatrix(Matrix::identity(3)), DimensionMismatch);
}

TEST(RealSymMatrix, SymmetrizesWithinTolerance) {
  Matrix m = Matrix::identity(2);
  m(0, 1) = 1e-13;
  const RealSymMatrix s(m);
  EXPECT_EQ(s(0, 1), s(1, 0));
}

TEST(CholeskyLogdet, IdentityIsZero) {
  EXPECT_DOUBLE_EQ(cholesky_logdet(RealSymMatrix::identity(4)), 0.0);
}

TEST(CholeskyLogdet, Diagonal) {
  const std::vector<double> d{2.0, 2.0};
  EXPECT_NEAR(cholesky_logdet(RealSymMatrix::diagonal(d)), std::log(4.0), 1e-15);
}

TEST(CholeskyLogdet, EmptyMatrixHasUnitDeterminant) {
  EXPECT_EQ(cholesky_logdet(RealSymMatrix::identity(0)), 0.0);
}

TEST(CholeskyLogdet, MatchesLuDeterminant) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const RealSymMatrix a = random_spd(6, seed);
    EXPECT_NEAR(cholesky_logdet(a), std::log(oracle::lu_det(a.matrix())), 1e-10) << "seed " << seed;
  }
}

TEST(CholeskyLogdet, RejectsIndefinite) {
  const std::vector<double> d{1.0, -1.0};
  EXPECT_THROW(cholesky_logdet(RealSymMatrix::diagonal(d)), NotPositiveDefinite);
  EXPECT_THROW(cholesky_logdet(RealSymMatrix(2, {1.0, 1.0, 1.0, 1.0})), NotPositiveDefinite);
}

TEST(SpdInverse, Identity) {
  EXPECT_EQ(spd_inverse(RealSymMatrix::identity(4)).matrix().max_abs_diff(Matrix::identity(4)), 0.0);
}

TEST(SpdInverse, Diagonal) {
  const std::vector<double> d{2.0, 0.5};
  const std::vector<double> e{0.5, 2.0};
  EXPECT_LT(spd_inverse(RealSymMatrix::diagonal(d)).matrix().max_abs_diff(RealSymMatrix::diagonal(e).matrix()), 1e-15);
}

TEST(SpdInverse, ProductIsIdentity) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RealSymMatrix a = random_spd(8, seed);
    const Matrix prod = a.matrix() * spd_inverse(a).matrix();
    EXPECT_LT(prod.max_abs_diff(Matrix::identity(8)), 1e-9);
    EXPECT_LT(spd_inverse(a).matrix().max_abs_diff(oracle::gj_inverse(a.matrix())), 1e-9);
  }
}

TEST(CholeskySolve, QuadraticForm) {
  const RealSymMatrix a = random_spd(4, 3);
  const std::vector<double> v{0.3, -1.0, 2.0, 0.5};
  const Cholesky chol(a);
  const std::vector<double> w = oracle::gj_inverse(a.matrix()).apply(v);
  double expected = 0.0;
  for (std::size_t i = 0; i < 4; ++i) expected += v[i] * w[i];
  EXPECT_NEAR(chol.inverse_quadratic_form(v), expected, 1e-12);
}

TEST(ModeSet, RejectsBadIndices) {
  EXPECT_THROW(ModeSet({0}), IndexOutOfRange);
  EXPECT_THROW(ModeSet({2, 2}), IndexOutOfRange);
  EXPECT_THROW(ModeSet({3}).check_within(2), IndexOutOfRange);
}

TEST(ModeSet, SortsAndComplements) {
  const ModeSet z({3, 1});
  EXPECT_EQ(z.modes(), (std::vector<int>{1, 3}));
  EXPECT_EQ(z.complement(4).modes(), (std::vector<int>{2, 4}));
  EXPECT_TRUE(z.contains(3));
  EXPECT_FALSE(z.contains(2));
}

TEST(DeleteModes, FirstModeLeavesBottomRightBlock) {
  const RealSymMatrix a = sequential(4);
  const RealSymMatrix b = delete_modes(a, ModeSet{1});
  ASSERT_EQ(b.dim(), 2u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(b(i, j), a(i + 2, j + 2));
}

TEST(DeleteModes, EmptySetIsIdentityMap) {
  const RealSymMatrix a = sequential(6);
  EXPECT_EQ(delete_modes(a, ModeSet{}).matrix().max_abs_diff(a.matrix()), 0.0);
}

TEST(DeleteModes, AllModesGivesEmptyWithUnitDeterminant) {
  const RealSymMatrix b = delete_modes(random_spd(4, 1), ModeSet{1, 2});
  EXPECT_EQ(b.dim(), 0u);
  EXPECT_EQ(std::exp(cholesky_logdet(b)), 1.0);
}

TEST(DeleteModes, OutOfRange) {
  EXPECT_THROW(delete_modes(sequential(4), ModeSet{3}), IndexOutOfRange);
}

TEST(DeleteModes, VectorOverload) {
  const std::vector<double> v{1, 2, 3, 4, 5, 6};
  EXPECT_EQ(delete_modes(v, ModeSet{2}), (std::vector<double>{1, 2, 5, 6}));
}

TEST(DeleteBlocks, BlockIndexing) {
  const RealSymMatrix a4 = sequential(4);
  const RealSymMatrix b4 = delete_blocks(a4, ModeSet{1});
  // rows/cols {2, 4} in 1-based terms
  EXPECT_EQ(b4(0, 0), a4(1, 1));
  EXPECT_EQ(b4(0, 1), a4(1, 3));
  EXPECT_EQ(b4(1, 1), a4(3, 3));

  const RealSymMatrix a6 = sequential(6);
  const RealSymMatrix b6 = delete_blocks(a6, ModeSet{1, 3});
  // rows/cols {2, 5}
  EXPECT_EQ(b6(0, 0), a6(1, 1));
  EXPECT_EQ(b6(0, 1), a6(1, 4));
  EXPECT_EQ(b6(1, 1), a6(4, 4));

  EXPECT_EQ(delete_blocks(a6, ModeSet{}).matrix().max_abs_diff(a6.matrix()), 0.0);
}

TEST(KeepModes, ComplementOfDelete) {
  const RealSymMatrix a = sequential(6);
  EXPECT_EQ(keep_modes(a, ModeSet{1, 3}).matrix().max_abs_diff(delete_modes(a, ModeSet{2}).matrix()), 0.0);
}
