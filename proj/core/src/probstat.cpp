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

#include "clickgbs/probstat.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "clickgbs/errors.hpp"
#include "extended.hpp"
#include "summation.hpp"

namespace clickgbs {

namespace {

std::atomic<std::size_t> g_negative_clamps{0};

double clamp_probability(double p) {
  if (p >= 0.0) return p;
  if (p < kNegativeClampFloor) {
    throw NegativeProbability("probability " + format_double(p) + " is below " +
                              format_double(kNegativeClampFloor));
  }
  g_negative_clamps.fetch_add(1, std::memory_order_relaxed);
  return 0.0;
}

// Sigma-dependent quantities shared by every pattern of one state.
class PreparedState {
 public:
  explicit PreparedState(const GaussianState& state) : modes_(state.modes()), mean_(state.mean()) {
    sigma_ = husimi_sigma(state);
    const Cholesky chol(sigma_);
    const RealSymMatrix sigma_inv = chol.inverse();
    kernel_ = RealSymMatrix::identity(sigma_inv.dim()) - sigma_inv;
    log_sqrt_det_ = 0.5 * chol.log_det();
    displaced_ = state.displaced();
    vacuum_exponent_ = displaced_ ? chol.inverse_quadratic_form(mean_) : 0.0;
  }

  std::size_t modes() const noexcept { return modes_; }

  double click(const ClickPattern& k, const DetectorModel& model) const {
    check_pattern(k, model.n, modes_);
    if (model.ideal() && !displaced_) {
      return clamp_probability(std::exp(-log_sqrt_det_) * kensingtonian(kernel_, k, model.n));
    }
    const double p0 = std::exp(-vacuum_exponent_ - log_sqrt_det_);
    const std::span<const double> alpha = displaced_ ? std::span<const double>(mean_) : std::span<const double>{};
    const double value = model.ideal() ? loop_kensingtonian(kernel_, alpha, k, model.n)
                                       : kensingtonian_noisy(kernel_, alpha, k, model.n, model.eta, model.nu);
    return clamp_probability(p0 * value);
  }

  double threshold(const ClickPattern& k) const {
    check_pattern(k, 1, modes_);
    if (displaced_) return clamp_probability(displaced_threshold(k));
    const RealSymMatrix reduced = delete_modes(kernel_, k.silent_modes());
    return clamp_probability(std::exp(-log_sqrt_det_) * torontonian(reduced));
  }

 private:
  // Inclusion-exclusion over the clicked modes: each term is the vacuum
  // probability exp(-a^T Sigma_T^{-1} a)/sqrt(det Sigma_T) of the marginal on
  // the silent modes plus a subset of the clicked ones.
  double displaced_threshold(const ClickPattern& k) const {
    std::vector<int> clicked;
    for (std::size_t i = 0; i < modes_; ++i)
      if (k[i] == 1) clicked.push_back(static_cast<int>(i) + 1);
    const std::vector<int> silent = k.silent_modes().modes();
    detail::BasicCompensatedSum<detail::Extended> sum;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << clicked.size()); ++mask) {
      std::vector<int> vacant = silent;
      for (std::size_t b = 0; b < clicked.size(); ++b)
        if (mask & (std::uint64_t{1} << b)) vacant.push_back(clicked[b]);
      const detail::Extended sign = (std::popcount(mask) % 2 == 0) ? 1 : -1;
      if (vacant.empty()) {
        sum.add(sign);
        continue;
      }
      const ModeSet keep(std::move(vacant));
      const auto chol = detail::ExtendedCholesky::of(keep_modes(sigma_, keep));
      const std::vector<double> a = delete_modes(mean_, keep.complement(modes_));
      sum.add(sign * std::exp(-chol.inverse_quadratic_form({a.begin(), a.end()}) - chol.log_det() / 2));
    }
    return static_cast<double>(sum.value());
  }

  std::size_t modes_;
  std::vector<double> mean_;
  RealSymMatrix sigma_;
  RealSymMatrix kernel_;
  double log_sqrt_det_ = 0.0;
  double vacuum_exponent_ = 0.0;
  bool displaced_ = false;
};

std::size_t checked_distribution_size(std::size_t modes, int n) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < modes; ++i) {
    size *= static_cast<std::size_t>(n + 1);
    if (size > kMaxDistributionSize) {
      throw TooLarge("(N+1)^M exceeds " + std::to_string(kMaxDistributionSize) + " patterns");
    }
  }
  return size;
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t draw_index(std::span<const double> cumulative, std::mt19937_64& rng) {
  const double u = uniform01(rng) * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  const auto idx = static_cast<std::size_t>(it - cumulative.begin());
  return std::min(idx, cumulative.size() - 1);
}

std::vector<double> cumulative_of(std::span<const double> weights) {
  std::vector<double> cdf(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    cdf[i] = acc;
  }
  return cdf;
}

}  // namespace

// ---------------------------------------------------------------------------

Distribution::Distribution(std::size_t modes, int n)
    : modes_(modes), n_(n), probs_(checked_distribution_size(modes, n), 0.0) {
  if (n < 1) throw OutOfRange("N must be at least 1");
}

ClickPattern Distribution::pattern(std::size_t index) const {
  std::vector<int> k(modes_);
  const auto radix = static_cast<std::size_t>(n_ + 1);
  for (std::size_t i = modes_; i-- > 0;) {
    k[i] = static_cast<int>(index % radix);
    index /= radix;
  }
  return ClickPattern(std::move(k));
}

std::size_t Distribution::index(const ClickPattern& k) const {
  check_pattern(k, n_, modes_);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < modes_; ++i) idx = idx * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(k[i]);
  return idx;
}

double Distribution::total() const {
  detail::CompensatedSum sum;
  for (double p : probs_) sum.add(p);
  return sum.value();
}

std::size_t negative_clamp_count() noexcept { return g_negative_clamps.load(); }

double click_prob(const GaussianState& state, const ClickPattern& k, const DetectorModel& model) {
  model.validate();
  return PreparedState(state).click(k, model);
}

double threshold_prob(const GaussianState& state, const ClickPattern& k) {
  return PreparedState(state).threshold(k);
}

Distribution full_distribution(const GaussianState& state, const DetectorModel& model) {
  model.validate();
  Distribution dist(state.modes(), model.n);
  const PreparedState prepared(state);
  for (std::size_t i = 0; i < dist.size(); ++i) dist.at(i) = prepared.click(dist.pattern(i), model);
  return dist;
}

Distribution threshold_distribution(const GaussianState& state, const DetectorModel& model) {
  model.validate();
  Distribution dist(state.modes(), 1);
  const PreparedState prepared(state);
  const DetectorModel single{1, model.eta, model.nu * model.n};
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const ClickPattern k = dist.pattern(i);
    dist.at(i) = model.ideal() ? prepared.threshold(k) : prepared.click(k, single);
  }
  return dist;
}

CollisionReport collision_analysis(const GaussianState& state, const DetectorModel& model) {
  const Distribution p = full_distribution(state, model);
  const Distribution tilde = threshold_distribution(state, model);
  const std::size_t m = state.modes();

  CollisionReport report;
  detail::CompensatedSum epsilon;
  detail::CompensatedSum l1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const ClickPattern k = p.pattern(i);
    if (k.is_collision()) {
      epsilon.add(p.at(i));
      l1.add(p.at(i));  // p~ vanishes on collisions
    } else {
      l1.add(std::abs(p.at(i) - tilde[k]));
    }
  }
  report.epsilon = epsilon.value();
  report.tvd_to_threshold = 0.5 * l1.value();
  report.tvd_epsilon_gap = std::abs(report.tvd_to_threshold - report.epsilon);

  // p~(k) = p(k) + sum of collision events k' with the same silent modes as k.
  for (std::size_t t = 0; t < tilde.size(); ++t) {
    const ClickPattern k = tilde.pattern(t);
    detail::CompensatedSum compatible;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const ClickPattern kp = p.pattern(i);
      if (!kp.is_collision()) continue;
      bool same_support = true;
      for (std::size_t j = 0; j < m && same_support; ++j) same_support = (k[j] == 0) == (kp[j] == 0);
      if (same_support) compatible.add(p.at(i));
    }
    const double residual = std::abs(tilde.at(t) - p[k] - compatible.value());
    report.compatibility_residuals.push_back({k, residual});
    report.max_compatibility_residual = std::max(report.max_compatibility_residual, residual);
  }

  // Any number of clicks on a click detector has the threshold click probability.
  for (std::size_t j = 0; j < m; ++j) {
    detail::CompensatedSum click_any;
    detail::CompensatedSum click_one;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p.pattern(i)[j] >= 1) click_any.add(p.at(i));
    for (std::size_t i = 0; i < tilde.size(); ++i)
      if (tilde.pattern(i)[j] == 1) click_one.add(tilde.at(i));
    const double residual = std::abs(click_any.value() - click_one.value());
    report.marginal_residuals.push_back(residual);
    report.max_marginal_residual = std::max(report.max_marginal_residual, residual);
  }

  report.identities_hold = report.tvd_epsilon_gap <= kIdentityTolerance &&
                           report.max_compatibility_residual <= kIdentityTolerance &&
                           report.max_marginal_residual <= kIdentityTolerance;
  return report;
}

double expansion_oracle_prob(const GaussianState& state, const ClickPattern& k, int n) {
  const std::size_t m = state.modes();
  DetectorModel{n, 1.0, 0.0}.validate();
  check_pattern(k, n, m);
  if (n > 16) throw TooLarge("expansion oracle supports N <= 16");

  // All N-bit masks with k_i bits set, per block.
  std::vector<std::vector<std::uint32_t>> choices(m);
  double combos = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
      if (std::popcount(mask) == k[i]) choices[i].push_back(mask);
    combos *= static_cast<double>(choices[i].size());
  }
  if (combos > static_cast<double>(kMaxExpansionPatterns)) {
    throw TooLarge("expansion needs more than " + std::to_string(kMaxExpansionPatterns) + " threshold patterns");
  }

  const PreparedState expanded(multiplex_expand(state, static_cast<std::size_t>(n)));
  std::vector<std::size_t> pick(m, 0);
  ClickPattern binary(std::vector<int>(m * static_cast<std::size_t>(n), 0));
  detail::CompensatedSum sum;
  while (true) {
    for (std::size_t i = 0; i < m; ++i)
      for (int b = 0; b < n; ++b)
        binary[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)] = (choices[i][pick[i]] >> b) & 1u;
    sum.add(expanded.threshold(binary));

    std::size_t i = m;
    while (i > 0) {
      --i;
      if (++pick[i] < choices[i].size()) break;
      pick[i] = 0;
      if (i == 0) return sum.value();
    }
    if (m == 0) return sum.value();
  }
}

McEstimate mc_classical_oracle(const GaussianState& state, const ClickPattern& k,
                               const DetectorModel& model, std::size_t samples,
                               std::uint64_t seed) {
  model.validate();
  const std::size_t m = state.modes();
  check_pattern(k, model.n, m);
  if (samples == 0) throw OutOfRange("need at least one sample");

  // The Glauber P-function is a Gaussian with covariance (sigma - I)/4.
  const std::size_t dim = 2 * m;
  Eigen::MatrixXd spread(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) spread(i, j) = (state.cov()(i, j) - (i == j ? 1.0 : 0.0)) / 4.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(spread);
  if (eig.eigenvalues().minCoeff() < -1e-9 / 4.0) {
    throw NotClassical("sigma - I has eigenvalue " + format_double(4.0 * eig.eigenvalues().minCoeff()));
  }
  const Eigen::MatrixXd factor =
      eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(dim);
  Eigen::VectorXd mean(dim);
  for (std::size_t i = 0; i < dim; ++i) mean(i) = state.mean()[i];

  double running_mean = 0.0;
  double running_m2 = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < dim; ++i) z(i) = normal(rng);
    const Eigen::VectorXd beta = mean + factor * z;
    double value = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double intensity = beta(2 * i) * beta(2 * i) + beta(2 * i + 1) * beta(2 * i + 1);
      value *= coherent_click_closed(intensity, model, k[i]);
    }
    const double delta = value - running_mean;
    running_mean += delta / static_cast<double>(s + 1);
    running_m2 += delta * (value - running_mean);
  }
  McEstimate est;
  est.mean = running_mean;
  est.samples = samples;
  est.std_error = samples > 1 ? std::sqrt(running_m2 / static_cast<double>(samples - 1) / static_cast<double>(samples)) : 0.0;
  return est;
}

std::uint64_t term_count(const ClickPattern& k) {
  std::uint64_t f = 1;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < 0) throw PatternOutOfRange("negative click count");
    f *= static_cast<std::uint64_t>(k[i]) + 1;
  }
  return f;
}

TermBounds mean_term_bounds(const GaussianState& state, const DetectorModel& model, int total) {
  if (total < 0) throw OutOfRange("total clicks must be non-negative");
  const Distribution p = full_distribution(state, model);
  detail::CompensatedSum mass;
  detail::CompensatedSum weighted;
  detail::CompensatedSum collisions;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const ClickPattern k = p.pattern(i);
    if (k.total() != total) continue;
    mass.add(p.at(i));
    weighted.add(p.at(i) * static_cast<double>(term_count(k)));
    if (k.is_collision()) collisions.add(p.at(i));
  }
  TermBounds b;
  b.mass = mass.value();
  if (!(b.mass > 0.0)) {
    throw ZeroConditional("no probability mass at " + std::to_string(total) + " total clicks");
  }
  b.mean = weighted.value() / b.mass;
  b.epsilon_tilde = collisions.value() / b.mass;
  const double n = static_cast<double>(total);
  const double e = b.epsilon_tilde;
  b.lower = (1.0 - e) * std::exp2(n) + e * (n + 1.0);
  b.upper = (1.0 - e) * std::exp2(n) + e * std::exp(n);
  return b;
}

std::vector<TvdPoint> tvd_curve(std::span<const double> nbar_grid, int n) {
  std::vector<TvdPoint> out;
  out.reserve(nbar_grid.size());
  for (double nbar : nbar_grid) out.push_back({nbar, povm_convergence_gap(nbar, n)});
  return out;
}

std::vector<ClickPattern> sample_exact(const GaussianState& state, const DetectorModel& model,
                                       std::size_t count, std::uint64_t seed) {
  const Distribution dist = full_distribution(state, model);
  const std::vector<double> cdf = cumulative_of(dist.probs());
  if (!(cdf.back() > 0.0)) throw ZeroConditional("distribution has no mass");
  std::mt19937_64 rng(seed);
  std::vector<ClickPattern> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) out.push_back(dist.pattern(draw_index(cdf, rng)));
  return out;
}

std::vector<ClickPattern> sample_chain(const GaussianState& state, const DetectorModel& model,
                                       std::size_t count, std::uint64_t seed) {
  model.validate();
  const std::size_t m = state.modes();
  std::vector<PreparedState> marginals;
  marginals.reserve(m);
  for (std::size_t j = 1; j <= m; ++j)
    marginals.emplace_back(reduce(state, ModeSet::range(1, static_cast<int>(j))));

  // prefix -> cumulative joint weights p_{1..j}(prefix, x), x = 0..N
  std::map<std::vector<int>, std::vector<double>> conditionals;
  auto conditional_cdf = [&](const std::vector<int>& prefix) -> const std::vector<double>& {
    auto it = conditionals.find(prefix);
    if (it != conditionals.end()) return it->second;
    std::vector<double> weights;
    std::vector<int> k = prefix;
    k.push_back(0);
    for (int x = 0; x <= model.n; ++x) {
      k.back() = x;
      weights.push_back(marginals[prefix.size()].click(ClickPattern(k), model));
    }
    std::vector<double> cdf = cumulative_of(weights);
    if (!(cdf.back() > 0.0)) {
      throw ZeroConditional("every continuation of a sampled prefix has zero probability");
    }
    return conditionals.emplace(prefix, std::move(cdf)).first->second;
  };

  std::mt19937_64 rng(seed);
  std::vector<ClickPattern> out;
  out.reserve(count);
  std::vector<int> prefix;
  for (std::size_t s = 0; s < count; ++s) {
    prefix.clear();
    for (std::size_t j = 0; j < m; ++j) {
      const auto& cdf = conditional_cdf(prefix);
      prefix.push_back(static_cast<int>(draw_index(cdf, rng)));
    }
    out.emplace_back(prefix);
  }
  return out;
}

ChiSquareResult chi_square_two_sample(std::span<const ClickPattern> a, std::span<const ClickPattern> b) {
  if (a.empty() || b.empty()) throw OutOfRange("chi-square test needs two non-empty samples");
  std::map<ClickPattern, std::pair<double, double>> counts;
  for (const auto& k : a) counts[k].first += 1.0;
  for (const auto& k : b) counts[k].second += 1.0;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ka = std::sqrt(nb / na);
  const double kb = std::sqrt(na / nb);
  ChiSquareResult result;
  for (const auto& [pattern, c] : counts) {
    const double diff = ka * c.first - kb * c.second;
    result.statistic += diff * diff / (c.first + c.second);
  }
  result.dof = counts.size() - 1;
  if (result.dof == 0) {
    result.p_value = 1.0;
    return result;
  }
  const boost::math::chi_squared_distribution<double> chi(static_cast<double>(result.dof));
  result.p_value = boost::math::cdf(boost::math::complement(chi, result.statistic));
  return result;
}

double empirical_tvd(std::span<const ClickPattern> samples, const Distribution& dist) {
  if (samples.empty()) throw OutOfRange("empirical TVD needs samples");
  std::vector<double> freq(dist.size(), 0.0);
  const double weight = 1.0 / static_cast<double>(samples.size());
  for (const auto& k : samples) freq[dist.index(k)] += weight;
  double acc = 0.0;
  for (std::size_t i = 0; i < freq.size(); ++i) acc += std::abs(freq[i] - dist.at(i));
  return 0.5 * acc;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string distribution_csv(const Distribution& dist) {
  std::ostringstream out;
  for (std::size_t i = 1; i <= dist.modes(); ++i) out << "k_" << i << ',';
  out << "probability\n";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const ClickPattern k = dist.pattern(i);
    for (std::size_t j = 0; j < k.size(); ++j) out << k[j] << ',';
    out << format_double(dist.at(i)) << '\n';
  }
  return out.str();
}

}  // namespace clickgbs
