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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "clickgbs/matcore.hpp"

namespace clickgbs {

/// Per-mode click counts k = (k_1, ..., k_M).
class ClickPattern {
 public:
  ClickPattern() = default;
  ClickPattern(std::initializer_list<int> counts) : counts_(counts) {}
  explicit ClickPattern(std::vector<int> counts) : counts_(std::move(counts)) {}

  std::size_t size() const noexcept { return counts_.size(); }
  int operator[](std::size_t i) const { return counts_[i]; }
  int& operator[](std::size_t i) { return counts_[i]; }
  const std::vector<int>& counts() const noexcept { return counts_; }

  int total() const;
  bool is_binary() const;
  /// Some mode registered two or more clicks.
  bool is_collision() const;
  /// 1-based modes with zero clicks.
  ModeSet silent_modes() const;

  auto operator<=>(const ClickPattern&) const = default;

 private:
  std::vector<int> counts_;
};

/// Throws PatternOutOfRange unless k has `modes` entries in [0, n].
void check_pattern(const ClickPattern& k, int n, std::size_t modes);

/// Per-mode vacuum-projector inefficiencies and scalar weights.
struct LambdaVector {
  std::vector<double> lambdas;
  std::vector<double> weights;  // empty means all ones

  static LambdaVector uniform(std::size_t modes, double lambda);
};

/// Largest accepted click-detector size.
inline constexpr int kMaxDetectorSize = 64;
/// Largest n for which hafnian() enumerates (2n-1)!! matchings.
inline constexpr std::size_t kMaxHafnianHalfDim = 8;

/// N! / (a! b! c!) with a + b + c = N; exact integer arithmetic up to N = 20,
/// log-gamma beyond, OutOfRange above kMaxDetectorSize.
double multinomial(int n, int a, int b, int c);

/// Sum over perfect matchings of prod A_{i j}.
double hafnian(const RealSymMatrix& a);

struct TermStats {
  std::size_t terms = 0;
  std::size_t determinants = 0;
};

/// sum_Z (-1)^|Z| / sqrt(det(I - A_(Z))) over subsets Z of modes, interleaved deletion.
double torontonian(const RealSymMatrix& a, TermStats* stats = nullptr);

/// Gaussian integral of the Q-function against a product of normally ordered
/// vacuum projectors :exp(-lambda_i n_i):. With Z = {i : lambda_i = 1}:
///
///   prod_i w_i * prod_{i not in Z} 1/(1 - lambda_i)
///     * exp(v_(Z)^T B^{-1} v_(Z)) / sqrt(det B),
///   B = SigmaInv_(Z) + (+)_{i not in Z} lambda_i/(1 - lambda_i) I_2.
///
/// An empty v means zero. Z covering every mode returns prod_i w_i.
double weighted_vacuum_overlap(const RealSymMatrix& sigma_inv, const LambdaVector& lam,
                               std::span<const double> v = {}, TermStats* stats = nullptr);

enum class TermOrder { Forward, Reverse };

struct KenOptions {
  TermOrder order = TermOrder::Forward;
  TermStats* stats = nullptr;
};

/// Kensingtonian of a 2M x 2M matrix for pattern k and N threshold detectors
/// per click detector. For A = I - Sigma^{-1} of a zero-mean state,
/// p(k) = Ken[A] / sqrt(det Sigma).
double kensingtonian(const RealSymMatrix& a, const ClickPattern& k, int n,
                     const KenOptions& options = {});

/// Loop Kensingtonian for displacement alpha; p(k) = p(0) lken[A, alpha] with
/// p(0) = exp(-alpha^T Sigma^{-1} alpha) / sqrt(det Sigma).
double loop_kensingtonian(const RealSymMatrix& a, std::span<const double> alpha,
                          const ClickPattern& k, int n, const KenOptions& options = {});

/// Loop Kensingtonian for detectors with efficiency eta and per-threshold
/// dark-count rate nu (n -> eta n + N nu on each click detector).
double kensingtonian_noisy(const RealSymMatrix& a, std::span<const double> alpha,
                           const ClickPattern& k, int n, double eta, double nu,
                           const KenOptions& options = {});

/// Coefficient of t^n in Tor[t A] for a 2n x 2n matrix, with block-ordered
/// deletion (rows a and n+a). Requires X A X = A, X the half swap; equals
/// Haf[X A]. Limited to n <= 4.
double haf_tor_coefficient(const RealSymMatrix& a);

/// X A with X = [[0, I], [I, 0]].
RealSymMatrix half_swap_product(const RealSymMatrix& a);

}  // namespace clickgbs
