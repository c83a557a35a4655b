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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace clickgbs {

/// A click detector built from n threshold detectors, each with efficiency
/// eta and dark-count rate nu.
struct DetectorModel {
  int n = 1;
  double eta = 1.0;
  double nu = 0.0;

  /// Throws OutOfRange when a parameter is outside its physical range.
  void validate() const;
  bool ideal() const noexcept { return eta == 1.0 && nu == 0.0; }
};

/// Photon-number distribution truncated at a cutoff, with the missing mass.
struct PnrDistribution {
  std::vector<double> probs;  // n = 0 .. cutoff
  double tail = 0.0;

  std::size_t cutoff() const noexcept { return probs.empty() ? 0 : probs.size() - 1; }
};

inline constexpr int kMaxStirlingN = 64;

/// Stirling number of the second kind, exact; OutOfRange for n > 64.
boost::multiprecision::cpp_int stirling2(int n, int k);

/// Weight c_k(n) of |n><n| in the k-click element for an n_det-detector click
/// detector: C(n_det, k) k! S2(n, k) / n_det^n.
///
/// Evaluated in exact rational arithmetic while n <= 64. Past that the
/// occupancy recurrence c_k(n+1) = c_k(n) k/N + c_{k-1}(n) (N-k+1)/N carries
/// the exact n = 64 row forward; every term there is non-negative.
double click_coeff(int n_det, int k, int n);

/// p(k) = sum_n c_k(n) pnr(n) for k = 0 .. n_det. The input tail must be
/// below 1e-10 (TailTooHeavy otherwise).
std::vector<double> click_from_pnr(const PnrDistribution& pnr, int n_det);

/// Click statistics of a thermal state with mean photon number nbar.
double thermal_click_closed(double nbar, const DetectorModel& model, int k);

/// Click statistics of a coherent state with |gamma|^2 = intensity.
double coherent_click_closed(double intensity, const DetectorModel& model, int k);

/// Geometric law nbar^n / (1 + nbar)^(n+1), cut at `cutoff`.
PnrDistribution thermal_pnr(double nbar, std::size_t cutoff);

/// Smallest cutoff whose geometric tail is below `tail`.
std::size_t thermal_cutoff_for_tail(double nbar, double tail);

/// Total variation distance between a click law on 0..N and a PNR law on
/// 0..inf, compared index by index; PNR tail counts as unmatched mass.
double click_pnr_tvd(std::span<const double> click, const PnrDistribution& pnr);

/// TVD between click_from_pnr(thermal_pnr(nbar), n_det) and the thermal PNR law.
double povm_convergence_gap(double nbar, int n_det);

}  // namespace clickgbs
