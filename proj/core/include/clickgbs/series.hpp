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

#pragma once

#include <cstddef>
#include <vector>

namespace clickgbs {

/// Polynomial in a formal variable t truncated after t^order.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t order = 0);
  TruncatedSeries(std::size_t order, std::vector<double> coeffs);

  static TruncatedSeries constant(std::size_t order, double c);
  /// c0 + c1 t.
  static TruncatedSeries linear(std::size_t order, double c0, double c1);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t i) const { return coeffs_[i]; }
  double constant_term() const noexcept { return coeffs_[0]; }

  TruncatedSeries truncated(std::size_t order) const;

  TruncatedSeries reciprocal() const;
  /// s^(-1/2) by the binomial series around the constant term, which must be > 0.
  TruncatedSeries rsqrt() const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(double s, TruncatedSeries a);
  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  std::vector<double> coeffs_;
};

/// Square matrix whose entries are truncated series.
class SeriesMatrix {
 public:
  SeriesMatrix(std::size_t n, std::size_t order);

  std::size_t size() const noexcept { return n_; }
  std::size_t order() const noexcept { return order_; }

  TruncatedSeries& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const TruncatedSeries& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::size_t order_;
  std::vector<TruncatedSeries> entries_;
};

/// det S by fraction-free (Bareiss) elimination over the series ring.
TruncatedSeries series_det(const SeriesMatrix& s, std::size_t order);

/// det(S)^(-1/2) to the given order. The t^0 part of S must be positive
/// definite; a vanishing pivot throws SingularConstantTerm.
TruncatedSeries series_det_invsqrt(const SeriesMatrix& s, std::size_t order);

}  // namespace clickgbs
