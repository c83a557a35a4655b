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

#include "clickgbs/matrixfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "clickgbs/errors.hpp"
#include "clickgbs/series.hpp"
#include "extended.hpp"
#include "summation.hpp"

namespace clickgbs {

int ClickPattern::total() const {
  int n = 0;
  for (int c : counts_) n += c;
  return n;
}

bool ClickPattern::is_binary() const {
  return std::all_of(counts_.begin(), counts_.end(), [](int c) { return c == 0 || c == 1; });
}

bool ClickPattern::is_collision() const {
  return std::any_of(counts_.begin(), counts_.end(), [](int c) { return c > 1; });
}

ModeSet ClickPattern::silent_modes() const {
  std::vector<int> silent;
  for (std::size_t i = 0; i < counts_.size(); ++i)
    if (counts_[i] == 0) silent.push_back(static_cast<int>(i) + 1);
  return ModeSet(std::move(silent));
}

void check_pattern(const ClickPattern& k, int n, std::size_t modes) {
  if (k.size() != modes) {
    throw PatternOutOfRange("pattern has " + std::to_string(k.size()) + " entries for " +
                            std::to_string(modes) + " modes");
  }
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < 0) throw PatternOutOfRange("negative click count at mode " + std::to_string(i + 1));
    if (k[i] > n) throw PatternOutOfRange("pattern exceeds N at mode " + std::to_string(i + 1));
  }
}

LambdaVector LambdaVector::uniform(std::size_t modes, double lambda) {
  return LambdaVector{std::vector<double>(modes, lambda), {}};
}

double multinomial(int n, int a, int b, int c) {
  if (n < 0 || a < 0 || b < 0 || c < 0 || a + b + c != n) {
    throw OutOfRange("multinomial arguments must be non-negative and sum to N");
  }
  if (n > kMaxDetectorSize) throw OutOfRange("N = " + std::to_string(n) + " exceeds 64");
  if (n <= 20) {
    std::uint64_t fact[21];
    fact[0] = 1;
    for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * static_cast<std::uint64_t>(i);
    return static_cast<double>(fact[n] / fact[a] / fact[b] / fact[c]);
  }
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(a + 1.0) - std::lgamma(b + 1.0) -
                             std::lgamma(c + 1.0)));
}

// ---------------------------------------------------------------------------

namespace {

double hafnian_recursive(const RealSymMatrix& a, std::vector<std::size_t>& free_idx) {
  if (free_idx.empty()) return 1.0;
  const std::size_t first = free_idx.front();
  double total = 0.0;
  for (std::size_t pos = 1; pos < free_idx.size(); ++pos) {
    const std::size_t partner = free_idx[pos];
    const double w = a(first, partner);
    if (w == 0.0) continue;
    std::vector<std::size_t> rest;
    rest.reserve(free_idx.size() - 2);
    for (std::size_t q = 1; q < free_idx.size(); ++q)
      if (q != pos) rest.push_back(free_idx[q]);
    total += w * hafnian_recursive(a, rest);
  }
  return total;
}

}  // namespace

double hafnian(const RealSymMatrix& a) {
  if (a.modes() > kMaxHafnianHalfDim) {
    throw TooLarge("hafnian enumeration is capped at 2n = " + std::to_string(2 * kMaxHafnianHalfDim));
  }
  std::vector<std::size_t> idx(a.dim());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return hafnian_recursive(a, idx);
}

double torontonian(const RealSymMatrix& a, TermStats* stats) {
  const std::size_t n = a.modes();
  if (n > 30) throw TooLarge("torontonian subset enumeration is capped at 30 modes");
  const RealSymMatrix b = RealSymMatrix::identity(a.dim()) - a;
  detail::BasicCompensatedSum<detail::Extended> sum;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::vector<int> z;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) z.push_back(static_cast<int>(i) + 1);
    const detail::Extended sign = (z.size() % 2 == 0) ? 1 : -1;
    const auto chol = detail::ExtendedCholesky::of(delete_modes(b, ModeSet(std::move(z))));
    sum.add(sign * std::exp(-chol.log_det() / 2));
    if (stats) {
      ++stats->terms;
      ++stats->determinants;
    }
  }
  return static_cast<double>(sum.value());
}

namespace {

using detail::Extended;

// lambdas and weights are validated by the callers; an empty weight list means ones.
Extended overlap(const RealSymMatrix& sigma_inv, const std::vector<Extended>& lambdas,
                 const std::vector<Extended>& weights, std::span<const double> v, TermStats* stats) {
  const std::size_t m = sigma_inv.modes();
  Extended scalar = 1;
  std::vector<std::size_t> kept;  // quadrature rows outside Z
  std::vector<Extended> kept_lambda;
  for (std::size_t i = 0; i < m; ++i) {
    const Extended l = lambdas[i];
    if (!weights.empty()) scalar *= weights[i];
    if (l != 1) {
      kept.push_back(2 * i);
      kept.push_back(2 * i + 1);
      kept_lambda.push_back(l);
    }
  }
  if (stats) ++stats->determinants;
  if (kept.empty()) return scalar;

  // prod 1/(1 - l) / sqrt(det B) = 1/sqrt(det S B S) with S = (+) sqrt(1 - l) I_2,
  // and S B S = S SigmaInv_(Z) S + (+) l I_2 stays well scaled as l -> 1.
  const std::size_t dim = kept.size();
  std::vector<detail::Extended> scale(dim);
  for (std::size_t i = 0; i < dim; ++i) scale[i] = std::sqrt(1 - kept_lambda[i / 2]);
  std::vector<detail::Extended> b(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) b[i * dim + j] = scale[i] * sigma_inv(kept[i], kept[j]) * scale[j];
    b[i * dim + i] += kept_lambda[i / 2];
  }
  const detail::ExtendedCholesky chol(std::move(b), dim);
  detail::Extended exponent = -chol.log_det() / 2;
  if (!v.empty()) {
    std::vector<detail::Extended> sv(dim);
    for (std::size_t i = 0; i < dim; ++i) sv[i] = scale[i] * v[kept[i]];
    exponent += chol.inverse_quadratic_form(sv);
  }
  return scalar * std::exp(exponent);
}

}  // namespace

double weighted_vacuum_overlap(const RealSymMatrix& sigma_inv, const LambdaVector& lam,
                               std::span<const double> v, TermStats* stats) {
  const std::size_t m = sigma_inv.modes();
  if (lam.lambdas.size() != m) throw DimensionMismatch("one lambda per mode required");
  if (!lam.weights.empty() && lam.weights.size() != m) throw DimensionMismatch("one weight per mode required");
  if (!v.empty() && v.size() != 2 * m) throw DimensionMismatch("linear term must have 2M entries");
  for (double l : lam.lambdas)
    if (!(l >= 0.0 && l <= 1.0)) throw OutOfRange("lambda must lie in [0, 1]");
  for (double w : lam.weights)
    if (!(w > 0.0)) throw OutOfRange("weights must be positive");
  const std::vector<Extended> lambdas(lam.lambdas.begin(), lam.lambdas.end());
  const std::vector<Extended> weights(lam.weights.begin(), lam.weights.end());
  return static_cast<double>(overlap(sigma_inv, lambdas, weights, v, stats));
}

// ---------------------------------------------------------------------------

namespace {

// Shared engine for the Kensingtonian family. Each term d (0 <= d_i <= k_i)
// maps to a vacuum overlap with lambda_i = eta (N - d_i)/N and weight
// exp(-nu (N - d_i)); eta = 1 makes d_i = 0 an exact delta (lambda_i = 1).
double kensingtonian_engine(const RealSymMatrix& a, std::span<const double> alpha,
                            const ClickPattern& k, int n, double eta, double nu,
                            const KenOptions& options) {
  const std::size_t m = a.modes();
  if (n < 1 || n > kMaxDetectorSize) throw OutOfRange("N must lie in [1, 64]");
  check_pattern(k, n, m);
  if (!(eta >= 0.0 && eta <= 1.0)) throw OutOfRange("eta must lie in [0, 1]");
  if (!(nu >= 0.0)) throw OutOfRange("nu must be non-negative");
  if (!alpha.empty() && alpha.size() != 2 * m) throw DimensionMismatch("alpha must have 2M entries");

  const RealSymMatrix sigma_inv = RealSymMatrix::identity(a.dim()) - a;
  std::vector<double> linear;
  if (!alpha.empty()) linear = sigma_inv.matrix().apply(alpha);

  // Per-mode signed multinomial prefactors indexed by d_i.
  std::vector<std::vector<double>> prefactor(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (int d = 0; d <= k[i]; ++d) {
      const double sign = ((k[i] - d) % 2 == 0) ? 1.0 : -1.0;
      prefactor[i].push_back(sign * multinomial(n, n - k[i], k[i] - d, d));
    }
  }

  std::uint64_t terms = 1;
  for (std::size_t i = 0; i < m; ++i) terms *= static_cast<std::uint64_t>(k[i] + 1);

  const bool noisy = nu > 0.0;
  std::vector<Extended> lambdas(m);
  std::vector<Extended> weights(noisy ? m : 0);
  std::vector<int> d(m);
  detail::BasicCompensatedSum<Extended> sum;
  for (std::uint64_t step = 0; step < terms; ++step) {
    // Mixed-radix decode, mode 1 most significant.
    std::uint64_t rest = options.order == TermOrder::Forward ? step : terms - 1 - step;
    for (std::size_t i = m; i-- > 0;) {
      const auto radix = static_cast<std::uint64_t>(k[i] + 1);
      d[i] = static_cast<int>(rest % radix);
      rest /= radix;
    }
    Extended coef = 1;
    for (std::size_t i = 0; i < m; ++i) {
      coef *= prefactor[i][static_cast<std::size_t>(d[i])];
      const Extended fill = static_cast<Extended>(n - d[i]) / n;
      lambdas[i] = eta == 1.0 ? fill : eta * fill;
      if (noisy) weights[i] = std::exp(-static_cast<Extended>(nu) * (n - d[i]));
    }
    sum.add(coef * overlap(sigma_inv, lambdas, weights, linear, options.stats));
    if (options.stats) ++options.stats->terms;
  }
  return static_cast<double>(sum.value());
}

}  // namespace

double kensingtonian(const RealSymMatrix& a, const ClickPattern& k, int n, const KenOptions& options) {
  return kensingtonian_engine(a, {}, k, n, 1.0, 0.0, options);
}

double loop_kensingtonian(const RealSymMatrix& a, std::span<const double> alpha,
                          const ClickPattern& k, int n, const KenOptions& options) {
  return kensingtonian_engine(a, alpha, k, n, 1.0, 0.0, options);
}

double kensingtonian_noisy(const RealSymMatrix& a, std::span<const double> alpha,
                           const ClickPattern& k, int n, double eta, double nu,
                           const KenOptions& options) {
  return kensingtonian_engine(a, alpha, k, n, eta, nu, options);
}

// ---------------------------------------------------------------------------

RealSymMatrix half_swap_product(const RealSymMatrix& a) {
  const std::size_t dim = a.dim();
  const std::size_t half = dim / 2;
  Matrix xa(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) xa(i, j) = a((i + half) % dim, j);
  return RealSymMatrix(xa);
}

double haf_tor_coefficient(const RealSymMatrix& a) {
  const std::size_t n = a.modes();
  if (n > 4) throw TooLarge("series Torontonian is limited to 2n <= 8");
  const std::size_t dim = a.dim();
  double asym = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      asym = std::max(asym, std::abs(a((i + n) % dim, (j + n) % dim) - a(i, j)));
  if (asym > 1e-9) throw NotSwapSymmetric("max |XAX - A| = " + std::to_string(asym));
  if (n == 0) return 1.0;

  detail::CompensatedSum coefficient;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<int> z;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) z.push_back(static_cast<int>(i) + 1);
    const double sign = (z.size() % 2 == 0) ? 1.0 : -1.0;
    const RealSymMatrix sub = delete_blocks(a, ModeSet(std::move(z)));
    SeriesMatrix s(sub.dim(), n);
    for (std::size_t i = 0; i < sub.dim(); ++i)
      for (std::size_t j = 0; j < sub.dim(); ++j) s(i, j) = TruncatedSeries::linear(n, i == j ? 1.0 : 0.0, -sub(i, j));
    coefficient.add(sign * series_det_invsqrt(s, n)[n]);
  }
  return coefficient.value();
}

}  // namespace clickgbs
