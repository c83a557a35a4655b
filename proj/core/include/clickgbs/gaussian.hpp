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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "clickgbs/matcore.hpp"

namespace clickgbs {

using Complex = std::complex<double>;

/// M x M unitary describing a passive linear optical network.
class UnitaryMatrix {
 public:
  static constexpr double kTolerance = 1e-9;

  /// Throws DimensionMismatch on a size mismatch and SchemaError when
  /// U U^dagger deviates from the identity by more than kTolerance.
  UnitaryMatrix(std::size_t dim, std::vector<Complex> row_major);

  static UnitaryMatrix identity(std::size_t dim);
  static UnitaryMatrix phase(double theta);
  /// Balanced two-mode beamsplitter.
  static UnitaryMatrix balanced_beamsplitter();
  /// Discrete Fourier matrix, entries w^{jk}/sqrt(n) with w = exp(2 pi i / n).
  static UnitaryMatrix dft(std::size_t n);

  std::size_t dim() const noexcept { return dim_; }
  Complex operator()(std::size_t j, std::size_t k) const { return u_[j * dim_ + k]; }

  /// max |(U U^dagger - I)_jk|.
  double unitarity_error() const;

  /// Real 2M x 2M symplectic image in interleaved (q, p) ordering.
  Matrix symplectic() const;

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

 private:
  std::size_t dim_;
  std::vector<Complex> u_;
};

/// M-mode Gaussian state: quadrature covariance sigma in the ordering
/// (q1, p1, ..., qM, pM) with vacuum sigma = I, and the displacement vector.
/// A coherent state |gamma> has mean (Re gamma, Im gamma).
class GaussianState {
 public:
  static constexpr double kPhysicalityTolerance = 1e-9;

  /// Validates dimensions and cov + i Omega >= -kPhysicalityTolerance.
  GaussianState(RealSymMatrix cov, std::vector<double> mean);

  std::size_t modes() const noexcept { return cov_.modes(); }
  const RealSymMatrix& cov() const noexcept { return cov_; }
  const std::vector<double>& mean() const noexcept { return mean_; }
  bool displaced() const noexcept;

  /// tr(sigma - I)/4 + |mean|^2.
  double mean_photon_number() const;

 private:
  RealSymMatrix cov_;
  std::vector<double> mean_;
};

/// Interleaved symplectic form, block diag of [[0, 1], [-1, 0]].
Matrix symplectic_form(std::size_t modes);

/// Smallest eigenvalue of the Hermitian matrix cov + i Omega.
double min_physicality_eigenvalue(const RealSymMatrix& cov);

GaussianState vacuum(std::size_t modes);
GaussianState thermal(double nbar);
/// Single-mode squeezed vacuum, cov = diag(e^{-2r}, e^{2r}).
GaussianState squeezed(double r);
GaussianState coherent(Complex gamma);

GaussianState tensor(const GaussianState& a, const GaussianState& b);
GaussianState apply_unitary(const GaussianState& state, const UnitaryMatrix& u);
GaussianState displace(const GaussianState& state, std::span<const double> shift);

/// Haar-random unitary from the QR decomposition of a complex Ginibre
/// matrix, with R's diagonal made positive. Deterministic in the seed.
UnitaryMatrix haar_unitary(std::size_t dim, std::uint64_t seed);

/// Pure loss of transmissivity eta on every mode.
GaussianState loss_channel(const GaussianState& state, double eta);

/// Partial trace keeping the listed modes (1-based, increasing order).
GaussianState reduce(const GaussianState& state, const ModeSet& keep);

/// Sends each mode into port 0 of an n-port DFT interferometer with vacuum
/// on the other ports. Input mode i lands on output modes (i-1)n+1 .. i n.
GaussianState multiplex_expand(const GaussianState& state, std::size_t n);

/// Sigma = (sigma + I)/2, the Husimi Q-function matrix.
RealSymMatrix husimi_sigma(const GaussianState& state);
/// O = I - Sigma^{-1}.
RealSymMatrix kernel_O(const GaussianState& state);

/// Per-mode operator orderings; s = -1 is Husimi Q, 0 Wigner, +1 Glauber P.
struct OrderingVector {
  std::vector<double> s;

  static OrderingVector uniform(std::size_t modes, double s);
};

/// s-ordered quasi-probability density at beta. Throws InvalidOrdering
/// unless sigma - s~ is positive definite.
double s_pqd_eval(const GaussianState& state, const OrderingVector& ordering,
                  std::span<const double> beta);

/// Seeded random physical instance: single-mode squeezers through a Haar
/// network, with optional displacement and loss.
struct InstanceSpec {
  std::size_t modes = 2;
  double max_squeezing = 1.0;
  double max_displacement = 0.0;  // |gamma| bound per mode; 0 keeps zero mean
  double min_loss_eta = 1.0;      // loss transmissivity drawn from [min, 1]
  std::uint64_t seed = 1;
};

GaussianState random_instance(const InstanceSpec& spec);

}  // namespace clickgbs
