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

#include "clickgbs/detection.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "clickgbs/errors.hpp"
#include "clickgbs/matrixfn.hpp"

namespace clickgbs {

namespace mp = boost::multiprecision;

void DetectorModel::validate() const {
  if (n < 1 || n > kMaxDetectorSize) throw OutOfRange("N must lie in [1, 64], got " + std::to_string(n));
  if (!(eta >= 0.0 && eta <= 1.0)) throw OutOfRange("eta must lie in [0, 1]");
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw OutOfRange("nu must be finite and non-negative");
}

namespace {

const std::vector<std::vector<mp::cpp_int>>& stirling_table() {
  static const auto table = [] {
    std::vector<std::vector<mp::cpp_int>> s(kMaxStirlingN + 1, std::vector<mp::cpp_int>(kMaxStirlingN + 1));
    s[0][0] = 1;
    for (int n = 1; n <= kMaxStirlingN; ++n)
      for (int k = 1; k <= n; ++k) s[n][k] = k * s[n - 1][k] + s[n - 1][k - 1];
    return s;
  }();
  return table;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return multinomial(n, n - k, k, 0);
}

void check_detector(int n_det, int k) {
  if (n_det < 1 || n_det > kMaxDetectorSize) throw OutOfRange("N must lie in [1, 64]");
  if (k < 0 || k > n_det) throw OutOfRange("k = " + std::to_string(k) + " outside [0, N]");
}

// c_k(n) for k = 0..N at fixed n, exact while n <= 64.
std::vector<double> exact_row(int n_det, int n) {
  std::vector<double> row(static_cast<std::size_t>(n_det) + 1, 0.0);
  const mp::cpp_int denom = mp::pow(mp::cpp_int(n_det), static_cast<unsigned>(n));
  mp::cpp_int falling = 1;  // N (N-1) ... (N-k+1) = C(N, k) k!
  for (int k = 0; k <= std::min(n, n_det); ++k) {
    if (k > 0) falling *= (n_det - k + 1);
    const mp::cpp_int num = falling * stirling_table()[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    row[static_cast<std::size_t>(k)] = mp::cpp_rational(num, denom).convert_to<double>();
  }
  return row;
}

std::vector<double> next_row(const std::vector<double>& row, int n_det) {
  std::vector<double> out(row.size(), 0.0);
  const double nd = static_cast<double>(n_det);
  for (int k = 0; k <= n_det; ++k) {
    double v = row[static_cast<std::size_t>(k)] * (k / nd);
    if (k > 0) v += row[static_cast<std::size_t>(k - 1)] * ((n_det - k + 1) / nd);
    out[static_cast<std::size_t>(k)] = v;
  }
  return out;
}

// Rows n = 0..cutoff of c_k(n).
std::vector<std::vector<double>> coefficient_table(int n_det, std::size_t cutoff) {
  std::vector<std::vector<double>> rows;
  rows.reserve(cutoff + 1);
  for (std::size_t n = 0; n <= cutoff; ++n) {
    if (n <= static_cast<std::size_t>(kMaxStirlingN)) {
      rows.push_back(exact_row(n_det, static_cast<int>(n)));
    } else {
      rows.push_back(next_row(rows.back(), n_det));
    }
  }
  return rows;
}

}  // namespace

mp::cpp_int stirling2(int n, int k) {
  if (n < 0 || n > kMaxStirlingN || k < 0 || k > n) {
    throw OutOfRange("stirling2 needs 0 <= k <= n <= 64, got n = " + std::to_string(n) +
                     ", k = " + std::to_string(k));
  }
  return stirling_table()[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

double click_coeff(int n_det, int k, int n) {
  check_detector(n_det, k);
  if (n < 0) throw OutOfRange("photon number must be non-negative");
  if (n < k) return 0.0;
  if (n <= kMaxStirlingN) return exact_row(n_det, n)[static_cast<std::size_t>(k)];
  return coefficient_table(n_det, static_cast<std::size_t>(n)).back()[static_cast<std::size_t>(k)];
}

std::vector<double> click_from_pnr(const PnrDistribution& pnr, int n_det) {
  check_detector(n_det, 0);
  if (!(pnr.tail < 1e-10)) {
    throw TailTooHeavy("PNR tail mass " + std::to_string(pnr.tail) + " is not below 1e-10");
  }
  const auto table = coefficient_table(n_det, pnr.cutoff());
  std::vector<double> click(static_cast<std::size_t>(n_det) + 1, 0.0);
  for (std::size_t n = 0; n < pnr.probs.size(); ++n) {
    const double p = pnr.probs[n];
    if (p == 0.0) continue;
    for (std::size_t k = 0; k < click.size(); ++k) click[k] += table[n][k] * p;
  }
  return click;
}

double thermal_click_closed(double nbar, const DetectorModel& model, int k) {
  model.validate();
  check_detector(model.n, k);
  if (!(nbar >= 0.0)) throw NegativeMeanPhotons("nbar = " + std::to_string(nbar));
  const int n = model.n;
  double acc = 0.0;
  for (int l = 0; l <= k; ++l) {
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    const double fill = static_cast<double>(n - k + l);
    acc += sign * binomial(k, l) * std::exp(-model.nu * fill) /
           (1.0 + model.eta * nbar * fill / static_cast<double>(n));
  }
  return binomial(n, k) * acc;
}

double coherent_click_closed(double intensity, const DetectorModel& model, int k) {
  model.validate();
  check_detector(model.n, k);
  if (!(intensity >= 0.0)) throw NegativeMeanPhotons("intensity = " + std::to_string(intensity));
  const int n = model.n;
  // Per threshold detector no-click probability.
  const double rate = model.eta * intensity / static_cast<double>(n) + model.nu;
  const double silent = std::exp(-rate);
  const double fires = -std::expm1(-rate);
  return binomial(n, k) * std::pow(silent, n - k) * std::pow(fires, k);
}

PnrDistribution thermal_pnr(double nbar, std::size_t cutoff) {
  if (!(nbar >= 0.0)) throw NegativeMeanPhotons("nbar = " + std::to_string(nbar));
  PnrDistribution out;
  out.probs.resize(cutoff + 1, 0.0);
  const double ratio = nbar / (1.0 + nbar);
  double p = 1.0 / (1.0 + nbar);
  for (std::size_t n = 0; n <= cutoff; ++n) {
    out.probs[n] = p;
    p *= ratio;
  }
  out.tail = std::pow(ratio, static_cast<double>(cutoff + 1));
  return out;
}

std::size_t thermal_cutoff_for_tail(double nbar, double tail) {
  if (!(nbar >= 0.0)) throw NegativeMeanPhotons("nbar = " + std::to_string(nbar));
  if (!(tail > 0.0 && tail < 1.0)) throw OutOfRange("tail tolerance must lie in (0, 1)");
  if (nbar == 0.0) return 0;
  const double ratio = nbar / (1.0 + nbar);
  auto cutoff = static_cast<std::size_t>(std::max(0.0, std::ceil(std::log(tail) / std::log(ratio)) - 1.0));
  while (std::pow(ratio, static_cast<double>(cutoff + 1)) >= tail) ++cutoff;
  return cutoff;
}

double click_pnr_tvd(std::span<const double> click, const PnrDistribution& pnr) {
  const std::size_t len = std::max(click.size(), pnr.probs.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < len; ++j) {
    const double c = j < click.size() ? click[j] : 0.0;
    const double p = j < pnr.probs.size() ? pnr.probs[j] : 0.0;
    acc += std::abs(c - p);
  }
  return 0.5 * (acc + pnr.tail);
}

double povm_convergence_gap(double nbar, int n_det) {
  check_detector(n_det, 0);
  const std::size_t cutoff = std::max(thermal_cutoff_for_tail(nbar, 1e-15), static_cast<std::size_t>(n_det));
  const PnrDistribution pnr = thermal_pnr(nbar, cutoff);
  return click_pnr_tvd(click_from_pnr(pnr, n_det), pnr);
}

}  // namespace clickgbs
