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

#include "clickgbs/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clickgbs/errors.hpp"

namespace clickgbs {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("expected " + std::to_string(rows * cols) + " entries, got " +
                            std::to_string(data_.size()));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

double Matrix::max_abs_diff(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionMismatch("shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i)
    worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  return worst;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c = a;
  for (double& x : c.data_) x *= s;
  return c;
}

// ---------------------------------------------------------------------------

RealSymMatrix::RealSymMatrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("symmetric matrix must be square");
  if (m.rows() % 2 != 0) throw DimensionMismatch("symmetric matrix dimension must be even");
  const std::size_t n = m.rows();
  Matrix sym(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double a = m(i, j);
      const double b = m(j, i);
      if (!std::isfinite(a) || !std::isfinite(b)) throw NotSymmetric("non-finite entry");
      if (std::abs(a - b) > kSymmetryTolerance) {
        throw NotSymmetric("entries (" + std::to_string(i) + "," + std::to_string(j) +
                           ") differ by " + std::to_string(std::abs(a - b)));
      }
      sym(i, j) = sym(j, i) = 0.5 * (a + b);
    }
  }
  m_ = std::move(sym);
}

RealSymMatrix::RealSymMatrix(std::size_t dim, std::vector<double> row_major)
    : RealSymMatrix(Matrix(dim, dim, std::move(row_major))) {}

RealSymMatrix RealSymMatrix::identity(std::size_t dim) { return RealSymMatrix(Matrix::identity(dim)); }

RealSymMatrix RealSymMatrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return RealSymMatrix(m);
}

RealSymMatrix operator+(const RealSymMatrix& a, const RealSymMatrix& b) {
  return RealSymMatrix(RealSymMatrix::Trusted{}, a.m_ + b.m_);
}

RealSymMatrix operator-(const RealSymMatrix& a, const RealSymMatrix& b) {
  return RealSymMatrix(RealSymMatrix::Trusted{}, a.m_ - b.m_);
}

RealSymMatrix operator*(double s, const RealSymMatrix& a) {
  return RealSymMatrix(RealSymMatrix::Trusted{}, s * a.m_);
}

// ---------------------------------------------------------------------------

ModeSet::ModeSet(std::initializer_list<int> modes) : ModeSet(std::vector<int>(modes)) {}

ModeSet::ModeSet(std::vector<int> modes) : modes_(std::move(modes)) {
  std::sort(modes_.begin(), modes_.end());
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i] < 1) throw IndexOutOfRange("mode index " + std::to_string(modes_[i]) + " < 1");
    if (i > 0 && modes_[i] == modes_[i - 1])
      throw IndexOutOfRange("duplicate mode index " + std::to_string(modes_[i]));
  }
}

ModeSet ModeSet::range(int first, int last) {
  std::vector<int> m;
  for (int a = first; a <= last; ++a) m.push_back(a);
  return ModeSet(std::move(m));
}

bool ModeSet::contains(int mode) const {
  return std::binary_search(modes_.begin(), modes_.end(), mode);
}

void ModeSet::check_within(std::size_t mode_count) const {
  if (!modes_.empty() && static_cast<std::size_t>(modes_.back()) > mode_count) {
    throw IndexOutOfRange("mode index " + std::to_string(modes_.back()) + " exceeds " +
                          std::to_string(mode_count) + " modes");
  }
}

ModeSet ModeSet::complement(std::size_t mode_count) const {
  std::vector<int> rest;
  for (int a = 1; a <= static_cast<int>(mode_count); ++a)
    if (!contains(a)) rest.push_back(a);
  return ModeSet(std::move(rest));
}

// ---------------------------------------------------------------------------

Cholesky::Cholesky(const Matrix& a) : n_(a.rows()), lower_(n_ * n_, 0.0) {
  if (a.rows() != a.cols()) throw DimensionMismatch("Cholesky of a non-square matrix");
  for (std::size_t j = 0; j < n_; ++j) {
    double pivot = a(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= lower_[j * n_ + k] * lower_[j * n_ + k];
    if (!(pivot > kPivotFloor)) {
      throw NotPositiveDefinite("Cholesky pivot " + std::to_string(pivot) + " at row " +
                                std::to_string(j));
    }
    const double ljj = std::sqrt(pivot);
    lower_[j * n_ + j] = ljj;
    for (std::size_t i = j + 1; i < n_; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower_[i * n_ + k] * lower_[j * n_ + k];
      lower_[i * n_ + j] = s / ljj;
    }
  }
}

double Cholesky::log_det() const noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < n_; ++i) acc += std::log(lower_[i * n_ + i]);
  return 2.0 * acc;
}

std::vector<double> Cholesky::solve(std::span<const double> b) const {
  if (b.size() != n_) throw DimensionMismatch("right-hand side size mismatch");
  std::vector<double> y(b.begin(), b.end());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= lower_[i * n_ + k] * y[k];
    y[i] /= lower_[i * n_ + i];
  }
  for (std::size_t i = n_; i-- > 0;) {
    for (std::size_t k = i + 1; k < n_; ++k) y[i] -= lower_[k * n_ + i] * y[k];
    y[i] /= lower_[i * n_ + i];
  }
  return y;
}

double Cholesky::inverse_quadratic_form(std::span<const double> v) const {
  if (v.size() != n_) throw DimensionMismatch("vector size mismatch");
  // |L^{-1} v|^2
  std::vector<double> y(v.begin(), v.end());
  double acc = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= lower_[i * n_ + k] * y[k];
    y[i] /= lower_[i * n_ + i];
    acc += y[i] * y[i];
  }
  return acc;
}

RealSymMatrix Cholesky::inverse() const {
  Matrix inv(n_, n_);
  std::vector<double> e(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    const auto col = solve(e);
    for (std::size_t i = 0; i < n_; ++i) inv(i, j) = col[i];
  }
  Matrix sym(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) sym(i, j) = 0.5 * (inv(i, j) + inv(j, i));
  return RealSymMatrix(sym);
}

double cholesky_logdet(const RealSymMatrix& a) { return Cholesky(a).log_det(); }

RealSymMatrix spd_inverse(const RealSymMatrix& a) { return Cholesky(a).inverse(); }

namespace {

RealSymMatrix select_indices(const RealSymMatrix& a, const std::vector<std::size_t>& idx) {
  Matrix out(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = a(idx[i], idx[j]);
  return RealSymMatrix(out);
}

std::vector<std::size_t> interleaved_survivors(std::size_t modes, const ModeSet& z) {
  std::vector<std::size_t> keep;
  keep.reserve(2 * modes);
  for (std::size_t m = 0; m < modes; ++m) {
    if (z.contains(static_cast<int>(m) + 1)) continue;
    keep.push_back(2 * m);
    keep.push_back(2 * m + 1);
  }
  return keep;
}

}  // namespace

RealSymMatrix delete_modes(const RealSymMatrix& a, const ModeSet& z) {
  z.check_within(a.modes());
  if (z.empty()) return a;
  return select_indices(a, interleaved_survivors(a.modes(), z));
}

std::vector<double> delete_modes(std::span<const double> v, const ModeSet& z) {
  if (v.size() % 2 != 0) throw DimensionMismatch("quadrature vector length must be even");
  z.check_within(v.size() / 2);
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i : interleaved_survivors(v.size() / 2, z)) out.push_back(v[i]);
  return out;
}

RealSymMatrix delete_blocks(const RealSymMatrix& a, const ModeSet& z) {
  const std::size_t n = a.modes();
  z.check_within(n);
  if (z.empty()) return a;
  std::vector<std::size_t> keep;
  for (std::size_t half = 0; half < 2; ++half)
    for (std::size_t m = 0; m < n; ++m)
      if (!z.contains(static_cast<int>(m) + 1)) keep.push_back(half * n + m);
  return select_indices(a, keep);
}

RealSymMatrix keep_modes(const RealSymMatrix& a, const ModeSet& keep) {
  keep.check_within(a.modes());
  std::vector<std::size_t> idx;
  for (int m : keep) {
    idx.push_back(2 * static_cast<std::size_t>(m - 1));
    idx.push_back(2 * static_cast<std::size_t>(m - 1) + 1);
  }
  return select_indices(a, idx);
}

}  // namespace clickgbs
