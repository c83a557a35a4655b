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

#include "clickgbs/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clickgbs/errors.hpp"

namespace clickgbs {

namespace {
constexpr double kSeriesPivotFloor = 1e-14;
}

TruncatedSeries::TruncatedSeries(std::size_t order) : coeffs_(order + 1, 0.0) {}

TruncatedSeries::TruncatedSeries(std::size_t order, std::vector<double> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != order + 1) {
    throw DimensionMismatch("series of order " + std::to_string(order) + " needs " +
                            std::to_string(order + 1) + " coefficients");
  }
}

TruncatedSeries TruncatedSeries::constant(std::size_t order, double c) {
  TruncatedSeries s(order);
  s.coeffs_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::linear(std::size_t order, double c0, double c1) {
  TruncatedSeries s(order);
  s.coeffs_[0] = c0;
  if (order >= 1) s.coeffs_[1] = c1;
  return s;
}

TruncatedSeries TruncatedSeries::truncated(std::size_t order) const {
  TruncatedSeries s(order);
  for (std::size_t i = 0; i <= std::min(order, this->order()); ++i) s.coeffs_[i] = coeffs_[i];
  return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  if (o.order() != order()) throw DimensionMismatch("series order mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  if (o.order() != order()) throw DimensionMismatch("series order mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.order() != b.order()) throw DimensionMismatch("series order mismatch");
  const std::size_t n = a.order();
  TruncatedSeries c(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a.coeffs_[i] == 0.0) continue;
    for (std::size_t j = 0; i + j <= n; ++j) c.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return c;
}

TruncatedSeries operator*(double s, TruncatedSeries a) {
  for (double& x : a.coeffs_) x *= s;
  return a;
}

TruncatedSeries TruncatedSeries::reciprocal() const {
  const double c0 = coeffs_[0];
  if (std::abs(c0) <= kSeriesPivotFloor) throw SingularConstantTerm("reciprocal of a series with zero constant term");
  const std::size_t n = order();
  TruncatedSeries r(n);
  r.coeffs_[0] = 1.0 / c0;
  for (std::size_t m = 1; m <= n; ++m) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= m; ++j) acc += coeffs_[j] * r.coeffs_[m - j];
    r.coeffs_[m] = -acc / c0;
  }
  return r;
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a * b.reciprocal();
}

TruncatedSeries TruncatedSeries::rsqrt() const {
  const double c0 = coeffs_[0];
  if (std::abs(c0) <= kSeriesPivotFloor) throw SingularConstantTerm("rsqrt of a series with zero constant term");
  if (c0 < 0.0) throw NotPositiveDefinite("rsqrt of a series with negative constant term");
  const std::size_t n = order();

  // s = c0 (1 + u), u(0) = 0, so (1 + u)^(-1/2) = sum_j binom(-1/2, j) u^j
  // needs j <= n only.
  TruncatedSeries u = (1.0 / c0) * *this;
  u.coeffs_[0] = 0.0;

  TruncatedSeries result = TruncatedSeries::constant(n, 1.0);
  TruncatedSeries power = TruncatedSeries::constant(n, 1.0);
  double binom = 1.0;
  for (std::size_t j = 1; j <= n; ++j) {
    binom *= (-0.5 - static_cast<double>(j - 1)) / static_cast<double>(j);
    power = power * u;
    result += binom * power;
  }
  return (1.0 / std::sqrt(c0)) * result;
}

// ---------------------------------------------------------------------------

SeriesMatrix::SeriesMatrix(std::size_t n, std::size_t order)
    : n_(n), order_(order), entries_(n * n, TruncatedSeries(order)) {}

TruncatedSeries series_det(const SeriesMatrix& s, std::size_t order) {
  const std::size_t n = s.size();
  if (n == 0) return TruncatedSeries::constant(order, 1.0);

  std::vector<TruncatedSeries> m;
  m.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.push_back(s(i, j).truncated(order));
  auto at = [&](std::size_t i, std::size_t j) -> TruncatedSeries& { return m[i * n + j]; };

  // Bareiss: after step k, entry (i, j) holds a (k+1)-order minor, and each
  // division by the previous pivot is exact.
  TruncatedSeries previous = TruncatedSeries::constant(order, 1.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const TruncatedSeries& pivot = at(k, k);
    if (std::abs(pivot.constant_term()) <= kSeriesPivotFloor) {
      throw SingularConstantTerm("leading minor " + std::to_string(k + 1) + " of the constant term vanishes");
    }
    const TruncatedSeries inv_prev = previous.reciprocal();
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (pivot * at(i, j) - at(i, k) * at(k, j)) * inv_prev;
      }
    }
    previous = pivot;
  }
  return at(n - 1, n - 1);
}

TruncatedSeries series_det_invsqrt(const SeriesMatrix& s, std::size_t order) {
  const TruncatedSeries det = series_det(s, order);
  if (std::abs(det.constant_term()) <= kSeriesPivotFloor) {
    throw SingularConstantTerm("determinant of the constant term vanishes");
  }
  return det.rsqrt();
}

}  // namespace clickgbs
