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
#include <initializer_list>
#include <span>
#include <vector>

namespace clickgbs {

/// Dense row-major real matrix. Sizes here are a few dozen at most.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;
  std::vector<double> apply(std::span<const double> x) const;

  /// Largest |a_ij - b_ij|; shapes must agree.
  double max_abs_diff(const Matrix& other) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(double s, const Matrix& a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Symmetric matrix of even dimension 2M, one 2x2 block per mode.
///
/// Construction averages the input with its transpose after rejecting
/// asymmetry above 1e-9, so every stored matrix is exactly symmetric.
/// The 0x0 matrix is allowed and stands for "all modes deleted".
class RealSymMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-9;

  RealSymMatrix() = default;
  explicit RealSymMatrix(const Matrix& m);
  RealSymMatrix(std::size_t dim, std::vector<double> row_major);

  static RealSymMatrix identity(std::size_t dim);
  static RealSymMatrix diagonal(std::span<const double> diag);

  std::size_t dim() const noexcept { return m_.rows(); }
  std::size_t modes() const noexcept { return m_.rows() / 2; }
  bool empty() const noexcept { return m_.empty(); }

  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

  friend RealSymMatrix operator+(const RealSymMatrix& a, const RealSymMatrix& b);
  friend RealSymMatrix operator-(const RealSymMatrix& a, const RealSymMatrix& b);
  friend RealSymMatrix operator*(double s, const RealSymMatrix& a);

 private:
  struct Trusted {};
  RealSymMatrix(Trusted, Matrix m) : m_(std::move(m)) {}

  Matrix m_;
};

/// Strictly increasing set of 1-based mode indices.
class ModeSet {
 public:
  ModeSet() = default;
  ModeSet(std::initializer_list<int> modes);
  explicit ModeSet(std::vector<int> modes);

  /// {first, first+1, ..., last}; empty when last < first.
  static ModeSet range(int first, int last);

  const std::vector<int>& modes() const noexcept { return modes_; }
  std::size_t size() const noexcept { return modes_.size(); }
  bool empty() const noexcept { return modes_.empty(); }
  bool contains(int mode) const;

  auto begin() const noexcept { return modes_.begin(); }
  auto end() const noexcept { return modes_.end(); }

  /// Throws IndexOutOfRange unless every index lies in [1, mode_count].
  void check_within(std::size_t mode_count) const;

  /// Modes of [1, mode_count] that are not in this set.
  ModeSet complement(std::size_t mode_count) const;

 private:
  std::vector<int> modes_;
};

/// Cholesky factor A = L L^T of a symmetric positive definite matrix.
class Cholesky {
 public:
  /// Pivots at or below this value are rejected as NotPositiveDefinite.
  static constexpr double kPivotFloor = 1e-14;

  explicit Cholesky(const Matrix& a);
  explicit Cholesky(const RealSymMatrix& a) : Cholesky(a.matrix()) {}

  std::size_t dim() const noexcept { return n_; }

  /// log det A; the empty matrix gives 0.
  double log_det() const noexcept;

  std::vector<double> solve(std::span<const double> b) const;

  /// v^T A^{-1} v.
  double inverse_quadratic_form(std::span<const double> v) const;

  RealSymMatrix inverse() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> lower_;
};

double cholesky_logdet(const RealSymMatrix& a);
RealSymMatrix spd_inverse(const RealSymMatrix& a);

/// Removes rows/columns 2a-1 and 2a (1-based) for every mode a in z.
RealSymMatrix delete_modes(const RealSymMatrix& a, const ModeSet& z);

/// Removes vector entries 2a-1 and 2a for every mode a in z.
std::vector<double> delete_modes(std::span<const double> v, const ModeSet& z);

/// Block-ordered deletion: for a 2n x 2n matrix removes rows/columns a and
/// n+a (1-based) for every a in z.
RealSymMatrix delete_blocks(const RealSymMatrix& a, const ModeSet& z);

/// Keeps rows/columns of the listed modes, in their given order.
RealSymMatrix keep_modes(const RealSymMatrix& a, const ModeSet& keep);

}  // namespace clickgbs
