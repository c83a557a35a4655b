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

#include "clickgbs/gaussian.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "clickgbs/errors.hpp"

namespace clickgbs {

UnitaryMatrix::UnitaryMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), u_(std::move(row_major)) {
  if (u_.size() != dim * dim) throw DimensionMismatch("unitary needs dim^2 entries");
  const double err = unitarity_error();
  if (!(err <= kTolerance)) {
    throw SchemaError("matrix is not unitary (max |UU^dagger - I| = " + std::to_string(err) + ")");
  }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  std::vector<Complex> u(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) u[i * dim + i] = 1.0;
  return UnitaryMatrix(dim, std::move(u));
}

UnitaryMatrix UnitaryMatrix::phase(double theta) {
  return UnitaryMatrix(1, {std::polar(1.0, theta)});
}

UnitaryMatrix UnitaryMatrix::balanced_beamsplitter() {
  const double h = std::numbers::sqrt2 / 2.0;
  return UnitaryMatrix(2, {h, h, h, -h});
}

UnitaryMatrix UnitaryMatrix::dft(std::size_t n) {
  std::vector<Complex> u(n * n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      u[j * n + k] = std::polar(norm, angle);
    }
  return UnitaryMatrix(n, std::move(u));
}

double UnitaryMatrix::unitarity_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) acc += u_[i * dim_ + k] * std::conj(u_[j * dim_ + k]);
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  return worst;
}

Matrix UnitaryMatrix::symplectic() const {
  Matrix s(2 * dim_, 2 * dim_);
  for (std::size_t j = 0; j < dim_; ++j)
    for (std::size_t k = 0; k < dim_; ++k) {
      const Complex z = u_[j * dim_ + k];
      s(2 * j, 2 * k) = z.real();
      s(2 * j, 2 * k + 1) = -z.imag();
      s(2 * j + 1, 2 * k) = z.imag();
      s(2 * j + 1, 2 * k + 1) = z.real();
    }
  return s;
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("unitary product dimension mismatch");
  const std::size_t n = a.dim_;
  std::vector<Complex> c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a.u_[i * n + k] * b.u_[k * n + j];
  return UnitaryMatrix(n, std::move(c));
}

// ---------------------------------------------------------------------------

Matrix symplectic_form(std::size_t modes) {
  Matrix omega(2 * modes, 2 * modes);
  for (std::size_t m = 0; m < modes; ++m) {
    omega(2 * m, 2 * m + 1) = 1.0;
    omega(2 * m + 1, 2 * m) = -1.0;
  }
  return omega;
}

double min_physicality_eigenvalue(const RealSymMatrix& cov) {
  const std::size_t n = cov.dim();
  if (n == 0) return 0.0;
  const Matrix omega = symplectic_form(cov.modes());
  Eigen::MatrixXcd h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = Complex(cov(i, j), omega(i, j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

GaussianState::GaussianState(RealSymMatrix cov, std::vector<double> mean)
    : cov_(std::move(cov)), mean_(std::move(mean)) {
  if (cov_.dim() == 0) throw DimensionMismatch("a Gaussian state needs at least one mode");
  if (mean_.size() != cov_.dim()) {
    throw DimensionMismatch("mean has " + std::to_string(mean_.size()) + " entries, expected " +
                            std::to_string(cov_.dim()));
  }
  for (double x : mean_)
    if (!std::isfinite(x)) throw SchemaError("non-finite mean entry");
  const double lowest = min_physicality_eigenvalue(cov_);
  if (lowest < -kPhysicalityTolerance) {
    throw Unphysical("cov + i Omega has eigenvalue " + std::to_string(lowest));
  }
}

bool GaussianState::displaced() const noexcept {
  return std::any_of(mean_.begin(), mean_.end(), [](double x) { return x != 0.0; });
}

double GaussianState::mean_photon_number() const {
  double trace = 0.0;
  for (std::size_t i = 0; i < cov_.dim(); ++i) trace += cov_(i, i) - 1.0;
  double norm2 = 0.0;
  for (double x : mean_) norm2 += x * x;
  return trace / 4.0 + norm2;
}

GaussianState vacuum(std::size_t modes) {
  return GaussianState(RealSymMatrix::identity(2 * modes), std::vector<double>(2 * modes, 0.0));
}

GaussianState thermal(double nbar) {
  if (!(nbar >= 0.0)) throw NegativeMeanPhotons("nbar = " + std::to_string(nbar));
  const double v = 2.0 * nbar + 1.0;
  const double diag[] = {v, v};
  return GaussianState(RealSymMatrix::diagonal(diag), {0.0, 0.0});
}

GaussianState squeezed(double r) {
  const double diag[] = {std::exp(-2.0 * r), std::exp(2.0 * r)};
  return GaussianState(RealSymMatrix::diagonal(diag), {0.0, 0.0});
}

GaussianState coherent(Complex gamma) {
  return GaussianState(RealSymMatrix::identity(2), {gamma.real(), gamma.imag()});
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const std::size_t na = a.cov().dim();
  const std::size_t nb = b.cov().dim();
  Matrix cov(na + nb, na + nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) cov(i, j) = a.cov()(i, j);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) cov(na + i, na + j) = b.cov()(i, j);
  std::vector<double> mean = a.mean();
  mean.insert(mean.end(), b.mean().begin(), b.mean().end());
  return GaussianState(RealSymMatrix(cov), std::move(mean));
}

GaussianState apply_unitary(const GaussianState& state, const UnitaryMatrix& u) {
  if (u.dim() != state.modes()) {
    throw DimensionMismatch("unitary acts on " + std::to_string(u.dim()) + " modes, state has " +
                            std::to_string(state.modes()));
  }
  const Matrix s = u.symplectic();
  const Matrix cov = s * state.cov().matrix() * s.transpose();
  return GaussianState(RealSymMatrix(cov), s.apply(state.mean()));
}

GaussianState displace(const GaussianState& state, std::span<const double> shift) {
  if (shift.size() != state.mean().size()) throw DimensionMismatch("displacement length mismatch");
  std::vector<double> mean = state.mean();
  for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += shift[i];
  return GaussianState(state.cov(), std::move(mean));
}

UnitaryMatrix haar_unitary(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
  Eigen::MatrixXcd z(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Q diag(r_ii / |r_ii|) makes the distribution exactly Haar.
  for (std::size_t j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  std::vector<Complex> u(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) u[i * dim + j] = q(i, j);
  return UnitaryMatrix(dim, std::move(u));
}

GaussianState loss_channel(const GaussianState& state, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw OutOfRange("loss transmissivity must lie in [0, 1]");
  const RealSymMatrix& cov = state.cov();
  const RealSymMatrix out = eta * cov + (1.0 - eta) * RealSymMatrix::identity(cov.dim());
  std::vector<double> mean = state.mean();
  const double scale = std::sqrt(eta);
  for (double& x : mean) x *= scale;
  return GaussianState(out, std::move(mean));
}

GaussianState reduce(const GaussianState& state, const ModeSet& keep) {
  if (keep.empty()) throw IndexOutOfRange("reduce needs at least one mode to keep");
  RealSymMatrix cov = keep_modes(state.cov(), keep);
  std::vector<double> mean;
  for (int m : keep) {
    mean.push_back(state.mean()[2 * static_cast<std::size_t>(m - 1)]);
    mean.push_back(state.mean()[2 * static_cast<std::size_t>(m - 1) + 1]);
  }
  return GaussianState(std::move(cov), std::move(mean));
}

GaussianState multiplex_expand(const GaussianState& state, std::size_t n) {
  if (n == 0) throw OutOfRange("multiplexing needs at least one port");
  if (n == 1) return state;
  const std::size_t m = state.modes();
  const std::size_t total = m * n;

  // Input mode i sits on port 0 of block i; every other port is vacuum.
  Matrix cov = Matrix::identity(2 * total);
  std::vector<double> mean(2 * total, 0.0);
  auto slot = [n](std::size_t mode) { return 2 * mode * n; };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) cov(slot(i) + a, slot(j) + b) = state.cov()(2 * i + a, 2 * j + b);
    mean[slot(i)] = state.mean()[2 * i];
    mean[slot(i) + 1] = state.mean()[2 * i + 1];
  }

  const UnitaryMatrix block = UnitaryMatrix::dft(n);
  std::vector<Complex> u(total * total, 0.0);
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) u[(b * n + j) * total + b * n + k] = block(j, k);
  return apply_unitary(GaussianState(RealSymMatrix(cov), std::move(mean)),
                       UnitaryMatrix(total, std::move(u)));
}

RealSymMatrix husimi_sigma(const GaussianState& state) {
  return 0.5 * (state.cov() + RealSymMatrix::identity(state.cov().dim()));
}

RealSymMatrix kernel_O(const GaussianState& state) {
  const RealSymMatrix sigma = husimi_sigma(state);
  return RealSymMatrix::identity(sigma.dim()) - spd_inverse(sigma);
}

OrderingVector OrderingVector::uniform(std::size_t modes, double s) {
  return OrderingVector{std::vector<double>(modes, s)};
}

double s_pqd_eval(const GaussianState& state, const OrderingVector& ordering,
                  std::span<const double> beta) {
  const std::size_t m = state.modes();
  if (ordering.s.size() != m) throw DimensionMismatch("ordering vector length must equal the mode count");
  if (beta.size() != 2 * m) throw DimensionMismatch("beta must have 2M entries");
  Matrix shifted = state.cov().matrix();
  for (std::size_t i = 0; i < m; ++i) {
    shifted(2 * i, 2 * i) -= ordering.s[i];
    shifted(2 * i + 1, 2 * i + 1) -= ordering.s[i];
  }
  std::optional<Cholesky> chol;
  try {
    chol.emplace(shifted);
  } catch (const NotPositiveDefinite& e) {
    throw InvalidOrdering(std::string("sigma - s~ is not positive definite: ") + e.what());
  }
  std::vector<double> diff(2 * m);
  for (std::size_t i = 0; i < 2 * m; ++i) diff[i] = beta[i] - state.mean()[i];
  const double md = static_cast<double>(m);
  const double log_norm = md * std::log(2.0 / std::numbers::pi) - 0.5 * chol->log_det();
  return std::exp(log_norm - 2.0 * chol->inverse_quadratic_form(diff));
}

GaussianState random_instance(const InstanceSpec& spec) {
  if (spec.modes == 0) throw OutOfRange("instance needs at least one mode");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  GaussianState state = squeezed(spec.max_squeezing * unit(rng));
  for (std::size_t i = 1; i < spec.modes; ++i) state = tensor(state, squeezed(spec.max_squeezing * unit(rng)));

  state = apply_unitary(state, haar_unitary(spec.modes, rng()));

  if (spec.max_displacement > 0.0) {
    std::vector<double> shift(2 * spec.modes);
    for (std::size_t i = 0; i < spec.modes; ++i) {
      const double radius = spec.max_displacement * unit(rng);
      const double angle = 2.0 * std::numbers::pi * unit(rng);
      shift[2 * i] = radius * std::cos(angle);
      shift[2 * i + 1] = radius * std::sin(angle);
    }
    state = displace(state, shift);
  }
  if (spec.min_loss_eta < 1.0) {
    const double eta = spec.min_loss_eta + (1.0 - spec.min_loss_eta) * unit(rng);
    state = loss_channel(state, eta);
  }
  return state;
}

}  // namespace clickgbs
