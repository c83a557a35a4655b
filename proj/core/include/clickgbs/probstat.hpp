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
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clickgbs/detection.hpp"
#include "clickgbs/gaussian.hpp"
#include "clickgbs/matrixfn.hpp"

namespace clickgbs {

/// Complete click distribution over {0..N}^M, stored densely in
/// lexicographic pattern order (mode 1 most significant).
class Distribution {
 public:
  Distribution(std::size_t modes, int n);

  std::size_t modes() const noexcept { return modes_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return probs_.size(); }

  ClickPattern pattern(std::size_t index) const;
  std::size_t index(const ClickPattern& k) const;

  double operator[](const ClickPattern& k) const { return probs_[index(k)]; }
  double& at(std::size_t index) { return probs_[index]; }
  double at(std::size_t index) const { return probs_[index]; }
  const std::vector<double>& probs() const noexcept { return probs_; }

  double total() const;

 private:
  std::size_t modes_;
  int n_;
  std::vector<double> probs_;
};

/// Cap on (N+1)^M for full enumeration.
inline constexpr std::size_t kMaxDistributionSize = 200000;
/// Cap on the number of expanded threshold patterns per click pattern.
inline constexpr std::size_t kMaxExpansionPatterns = 1000000;

/// Cancellation below zero down to this value is clamped and counted.
inline constexpr double kNegativeClampFloor = -1e-9;

/// Number of probabilities clamped from small negative values to zero, process wide.
std::size_t negative_clamp_count() noexcept;

/// p(k) = Ken[O]/sqrt(det Sigma), using the loop form for displaced states and
/// the noisy form when the model is not ideal.
double click_prob(const GaussianState& state, const ClickPattern& k, const DetectorModel& model);

/// Ideal threshold detection of a binary pattern. Zero-mean states go through
/// Tor[O_(K)]/sqrt(det Sigma), K the silent modes; displaced states through
/// inclusion-exclusion over vacuum probabilities of marginals.
double threshold_prob(const GaussianState& state, const ClickPattern& k);

Distribution full_distribution(const GaussianState& state, const DetectorModel& model);

/// Threshold-detector distribution p~ over {0,1}^M for the same detector
/// hardware: ideal detectors use threshold_prob, noisy ones use a single
/// threshold detector with efficiency eta and dark-count rate N nu.
Distribution threshold_distribution(const GaussianState& state, const DetectorModel& model);

struct PatternResidual {
  ClickPattern pattern;
  double residual;
};

struct CollisionReport {
  double epsilon = 0.0;           // collision probability
  double tvd_to_threshold = 0.0;  // TVD(p, p~)
  double tvd_epsilon_gap = 0.0;   // |TVD - epsilon|
  double max_compatibility_residual = 0.0;
  double max_marginal_residual = 0.0;
  std::vector<PatternResidual> compatibility_residuals;  // collision-free k
  std::vector<double> marginal_residuals;                // per mode
  bool identities_hold = false;
};

inline constexpr double kIdentityTolerance = 1e-9;

CollisionReport collision_analysis(const GaussianState& state, const DetectorModel& model);

/// Click probability from threshold detection on the MN-mode multiplexed
/// state, summing every binary pattern with k_i clicks inside block i.
double expansion_oracle_prob(const GaussianState& state, const ClickPattern& k, int n);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Monte Carlo over the Glauber P-function; valid only for sigma >= I.
McEstimate mc_classical_oracle(const GaussianState& state, const ClickPattern& k,
                               const DetectorModel& model, std::size_t samples,
                               std::uint64_t seed);

/// F(k) = prod (k_i + 1), the number of determinants in Ken.
std::uint64_t term_count(const ClickPattern& k);

struct TermBounds {
  double lower = 0.0;
  double mean = 0.0;
  double upper = 0.0;
  double epsilon_tilde = 0.0;  // collision probability conditioned on n clicks
  double mass = 0.0;           // P(total clicks = n)
};

/// <F>_n under the state's own distribution conditioned on n total clicks,
/// with (1-e)2^n + e(n+1) <= <F>_n <= (1-e)2^n + e e^n.
TermBounds mean_term_bounds(const GaussianState& state, const DetectorModel& model, int total);

struct TvdPoint {
  double nbar;
  double tvd;
};

std::vector<TvdPoint> tvd_curve(std::span<const double> nbar_grid, int n);

/// Inverse-CDF sampling from the full distribution.
std::vector<ClickPattern> sample_exact(const GaussianState& state, const DetectorModel& model,
                                       std::size_t count, std::uint64_t seed);

/// Mode-by-mode chain rule over reduced-state marginals.
std::vector<ClickPattern> sample_chain(const GaussianState& state, const DetectorModel& model,
                                       std::size_t count, std::uint64_t seed);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

/// Two-sample chi-square homogeneity test on pattern counts.
ChiSquareResult chi_square_two_sample(std::span<const ClickPattern> a,
                                      std::span<const ClickPattern> b);

/// TVD between the empirical law of `samples` and `dist`.
double empirical_tvd(std::span<const ClickPattern> samples, const Distribution& dist);

/// Header `k_1,...,k_M,probability`, lexicographic rows, 17 significant digits.
std::string distribution_csv(const Distribution& dist);

/// %.17g.
std::string format_double(double x);

}  // namespace clickgbs
