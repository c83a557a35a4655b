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

#include "clickgbs/errors.hpp"
#include "clickgbs/series.hpp"

using namespace clickgbs;

TEST(TruncatedSeries, ProductTruncates) {
  const auto a = TruncatedSeries::linear(2, 1.0, 1.0);
  const auto sq = a * a;
  EXPECT_EQ(sq.coeffs(), (std::vector<double>{1.0, 2.0, 1.0}));
  const auto cube = sq * a;
  EXPECT_EQ(cube.coeffs(), (std::vector<double>{1.0, 3.0, 3.0}));
}

TEST(TruncatedSeries, ReciprocalOfOneMinusT) {
  const auto r = TruncatedSeries::linear(5, 1.0, -1.0).reciprocal();
  for (double c : r.coeffs()) EXPECT_NEAR(c, 1.0, 1e-15);
}

TEST(TruncatedSeries, RsqrtBinomialSeries) {
  const auto r = TruncatedSeries::linear(4, 1.0, 1.0).rsqrt();
  const std::vector<double> expected{1.0, -0.5, 3.0 / 8.0, -5.0 / 16.0, 35.0 / 128.0};
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(r[i], expected[i], 1e-15);
}

TEST(TruncatedSeries, RsqrtScalesWithConstant) {
  const auto r = TruncatedSeries::linear(3, 4.0, 4.0).rsqrt();
  EXPECT_NEAR(r[0], 0.5, 1e-15);
  EXPECT_NEAR(r[1], -0.25, 1e-15);
}

TEST(TruncatedSeries, RsqrtRejectsBadConstant) {
  EXPECT_THROW(TruncatedSeries::linear(2, 0.0, 1.0).rsqrt(), SingularConstantTerm);
  EXPECT_THROW(TruncatedSeries::linear(2, -1.0, 1.0).rsqrt(), NotPositiveDefinite);
}

TEST(SeriesDet, IdentityMatrix) {
  SeriesMatrix s(3, 3);
  for (std::size_t i = 0; i < 3; ++i) s(i, i) = TruncatedSeries::constant(3, 1.0);
  const auto r = series_det_invsqrt(s, 3);
  EXPECT_EQ(r.coeffs(), (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
}

TEST(SeriesDet, OneByOne) {
  SeriesMatrix s(1, 3);
  s(0, 0) = TruncatedSeries::linear(3, 1.0, 1.0);
  const auto r = series_det_invsqrt(s, 3);
  EXPECT_NEAR(r[1], -0.5, 1e-15);
  EXPECT_NEAR(r[2], 0.375, 1e-15);
}

TEST(SeriesDet, GeometricFromDiagonal) {
  SeriesMatrix s(2, 4);
  s(0, 0) = TruncatedSeries::linear(4, 1.0, -1.0);
  s(1, 1) = TruncatedSeries::linear(4, 1.0, -1.0);
  const auto r = series_det_invsqrt(s, 4);
  for (double c : r.coeffs()) EXPECT_NEAR(c, 1.0, 1e-14);
}

TEST(SeriesDet, MatchesPolynomialDeterminant) {
  // det([[1, t], [t, 1]]) = 1 - t^2, needs a pivot-free path through Bareiss.
  SeriesMatrix s(2, 4);
  s(0, 0) = TruncatedSeries::constant(4, 1.0);
  s(1, 1) = TruncatedSeries::constant(4, 1.0);
  s(0, 1) = TruncatedSeries::linear(4, 0.0, 1.0);
  s(1, 0) = TruncatedSeries::linear(4, 0.0, 1.0);
  const auto d = series_det(s, 4);
  EXPECT_EQ(d.coeffs(), (std::vector<double>{1.0, 0.0, -1.0, 0.0, 0.0}));
}

TEST(SeriesDet, SingularConstantTerm) {
  SeriesMatrix s(2, 2);
  s(0, 0) = TruncatedSeries::linear(2, 0.0, 1.0);
  s(1, 1) = TruncatedSeries::constant(2, 1.0);
  EXPECT_THROW(series_det_invsqrt(s, 2), SingularConstantTerm);
}
