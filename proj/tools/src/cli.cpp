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

#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "clickgbs/errors.hpp"
#include "clickgbs/matrixfn.hpp"
#include "clickgbs/probstat.hpp"
#include "clickgbs/state_io.hpp"

namespace clickgbs::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const RunConfig& config, std::ostream& out, const std::string& contents) {
  if (config.out.empty()) {
    out << contents;
  } else {
    write_atomic(config.out, contents);
  }
}

ClickPattern pattern_of(const RunConfig& config, std::size_t modes) {
  if (config.pattern.empty()) throw SchemaError("--pattern is required");
  ClickPattern k(config.pattern);
  check_pattern(k, config.model.n, modes);
  return k;
}

std::string pattern_text(const ClickPattern& k, char sep) {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(k[i]);
  }
  return s;
}

int exit_code_for(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Input:
      return kExitInput;
    case ErrorCategory::Numerical:
      return kExitNumerical;
    case ErrorCategory::Resource:
      return kExitResource;
  }
  return kExitFailure;
}

// ---------------------------------------------------------------------------
// validate

struct Check {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;

  bool pass() const { return max_residual <= tolerance; }
};

std::vector<ClickPattern> binary_patterns(std::size_t m) {
  const Distribution grid(m, 1);
  std::vector<ClickPattern> out;
  for (std::size_t i = 0; i < grid.size(); ++i) out.push_back(grid.pattern(i));
  return out;
}

double relative(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-30);
}

RealSymMatrix swap_symmetric(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double p = u(rng);
      const double q = u(rng);
      a(i, j) = a(j, i) = a(i + n, j + n) = a(j + n, i + n) = p;
      a(i, j + n) = a(j, i + n) = a(i + n, j) = a(j + n, i) = q;
    }
  double norm = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < 2 * n; ++j) row += std::abs(a(i, j));
    norm = std::max(norm, row);
  }
  return (0.45 / norm) * RealSymMatrix(a);
}

// Permutation-sum Hafnian, independent of the recursive one in the library.
double permutation_hafnian(const RealSymMatrix& a) {
  std::vector<std::size_t> perm(a.dim());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  double sum = 0.0;
  do {
    double prod = 1.0;
    for (std::size_t i = 0; i < perm.size(); i += 2) prod *= a(perm[i], perm[i + 1]);
    sum += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  double norm = 1.0;
  for (std::size_t i = 1; i <= a.modes(); ++i) norm *= 2.0 * static_cast<double>(i);
  return sum / norm;
}

struct Case {
  GaussianState state;
  int n;
};

std::vector<Check> run_checks(const std::vector<Case>& cases, bool with_series) {
  Check ken_tor{"Ken(N=1)=Tor", 0.0, 1e-10};
  Check norm{"normalization", 0.0, 1e-9};
  Check tvd{"TVD(p,p~)=epsilon", 0.0, 1e-9};
  Check compat{"p~(k)=p(k)+compatible collisions", 0.0, 1e-9};
  Check marginal{"per-mode click marginal", 0.0, 1e-9};
  Check expansion{"click_prob=expansion oracle (relative)", 0.0, 1e-8};
  Check bounds{"mean term-count bounds (relative violation)", 0.0, 1e-12};

  for (const auto& c : cases) {
    const DetectorModel model{c.n, 1.0, 0.0};
    const RealSymMatrix o = kernel_O(c.state);
    if (!c.state.displaced()) {
      for (const auto& k : binary_patterns(c.state.modes()))
        ken_tor.max_residual = std::max(
            ken_tor.max_residual, relative(kensingtonian(o, k, 1), torontonian(delete_modes(o, k.silent_modes()))));
    }
    const Distribution dist = full_distribution(c.state, model);
    norm.max_residual = std::max(norm.max_residual, std::abs(dist.total() - 1.0));

    const CollisionReport report = collision_analysis(c.state, model);
    tvd.max_residual = std::max(tvd.max_residual, report.tvd_epsilon_gap);
    compat.max_residual = std::max(compat.max_residual, report.max_compatibility_residual);
    marginal.max_residual = std::max(marginal.max_residual, report.max_marginal_residual);

    for (std::size_t i = 0; i < dist.size(); ++i)
      expansion.max_residual =
          std::max(expansion.max_residual, relative(dist.at(i), expansion_oracle_prob(c.state, dist.pattern(i), c.n)));

    for (int total = 0; total <= static_cast<int>(c.state.modes()) * c.n; ++total) {
      TermBounds b;
      try {
        b = mean_term_bounds(c.state, model, total);
      } catch (const ZeroConditional&) {
        continue;
      }
      const double violation = std::max({0.0, (b.lower - b.mean) / b.mean, (b.mean - b.upper) / b.upper});
      bounds.max_residual = std::max(bounds.max_residual, violation);
    }
  }

  std::vector<Check> checks{ken_tor, norm, tvd, compat, marginal, expansion, bounds};
  if (with_series) {
    Check series{"series Torontonian coefficient=Haf(XA)", 0.0, 1e-9};
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const RealSymMatrix a = swap_symmetric(n, 100 * n + seed);
        series.max_residual =
            std::max(series.max_residual, std::abs(haf_tor_coefficient(a) - permutation_hafnian(half_swap_product(a))));
      }
    checks.push_back(series);
  }
  return checks;
}

// ---------------------------------------------------------------------------

void add_input_options(CLI::App& sub, RunConfig& c) {
  sub.add_option("--state", c.state_path, "Gaussian state JSON file");
  sub.add_option("--prep", c.prep, "Inline preparation: vacuum, thermal, squeezed, coherent");
  sub.add_option("--param", c.params, "Preparation parameters")->expected(1, -1);
  sub.add_option("--lon-seed", c.lon_seed, "Apply a Haar-random interferometer with this seed");
}

void add_model_options(CLI::App& sub, RunConfig& c) {
  sub.add_option("--N", c.model.n, "Threshold detectors per click detector");
  sub.add_option("--eta", c.model.eta, "Detector efficiency");
  sub.add_option("--nu", c.model.nu, "Dark-count rate per threshold detector");
}

}  // namespace

// ---------------------------------------------------------------------------

void write_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw SchemaError("cannot write " + tmp.string());
    f << contents;
    if (!f.flush()) throw SchemaError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw SchemaError("cannot move output into place: " + ec.message());
  }
}

GaussianState load_state(const RunConfig& c) {
  const bool has_file = !c.state_path.empty();
  const bool has_prep = !c.prep.empty();
  if (has_file == has_prep) throw SchemaError("give exactly one of --state and --prep");

  GaussianState state = vacuum(1);
  if (has_file) {
    state = state_from_json(read_file(c.state_path));
  } else {
    const auto& p = c.params;
    if (p.empty()) throw SchemaError("--prep needs --param values");
    std::optional<GaussianState> built;
    auto append = [&](const GaussianState& s) { built = built ? tensor(*built, s) : s; };
    if (c.prep == "vacuum") {
      if (p.size() != 1 || p[0] < 1 || p[0] != std::floor(p[0])) throw SchemaError("vacuum takes one mode count");
      append(vacuum(static_cast<std::size_t>(p[0])));
    } else if (c.prep == "thermal") {
      for (double nbar : p) append(thermal(nbar));
    } else if (c.prep == "squeezed") {
      for (double r : p) append(squeezed(r));
    } else if (c.prep == "coherent") {
      if (p.size() % 2 != 0) throw SchemaError("coherent takes (re, im) pairs");
      for (std::size_t i = 0; i < p.size(); i += 2) append(coherent({p[i], p[i + 1]}));
    } else {
      throw SchemaError("unknown preparation \"" + c.prep + "\"");
    }
    state = *built;
  }
  if (c.lon_seed) state = apply_unitary(state, haar_unitary(state.modes(), *c.lon_seed));
  return state;
}

int cmd_state(const RunConfig& config, std::ostream& out) {
  emit(config, out, state_to_json(load_state(config)));
  return kExitOk;
}

int cmd_prob(const RunConfig& config, std::ostream& out) {
  config.model.validate();
  const GaussianState state = load_state(config);
  const ClickPattern k = pattern_of(config, state.modes());

  const auto start = Clock::now();
  const double p = click_prob(state, k, config.model);
  const RealSymMatrix o = kernel_O(state);
  double ken = 0.0;
  if (!config.model.ideal()) {
    ken = kensingtonian_noisy(o, state.mean(), k, config.model.n, config.model.eta, config.model.nu);
  } else if (state.displaced()) {
    ken = loop_kensingtonian(o, state.mean(), k, config.model.n);
  } else {
    ken = kensingtonian(o, k, config.model.n);
  }
  const double wall = seconds_since(start);

  out << format_double(p) << '\n';
  if (!config.out.empty()) {
    ordered_json rec;
    rec["pattern"] = config.pattern;
    rec["N"] = config.model.n;
    rec["eta"] = config.model.eta;
    rec["nu"] = config.model.nu;
    rec["probability"] = p;
    rec["probability_text"] = format_double(p);
    rec["det_sigma"] = std::exp(cholesky_logdet(husimi_sigma(state)));
    rec["ken"] = ken;
    rec["ken_kind"] = !config.model.ideal() ? "noisy" : state.displaced() ? "loop" : "plain";
    rec["term_count"] = term_count(k);
    rec["wall_time_s"] = wall;
    write_atomic(config.out, rec.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_dist(const RunConfig& config, std::ostream& out) {
  config.model.validate();
  const Distribution dist = full_distribution(load_state(config), config.model);
  const std::string text = distribution_csv(dist) +
                           "# normalization_residual=" + format_double(std::abs(dist.total() - 1.0)) + "\n";
  emit(config, out, text);
  return kExitOk;
}

int cmd_tvd_curve(const RunConfig& config, std::ostream& out) {
  config.model.validate();
  if (!(config.nbar_step > 0.0) || config.nbar_max < config.nbar_min || config.nbar_min < 0.0) {
    throw OutOfRange("grid needs 0 <= nbar-min <= nbar-max and a positive step");
  }
  const auto points = static_cast<std::size_t>(std::floor((config.nbar_max - config.nbar_min) / config.nbar_step + 1e-9));
  std::vector<double> grid;
  for (std::size_t i = 0; i <= points; ++i) grid.push_back(config.nbar_min + static_cast<double>(i) * config.nbar_step);

  std::string text = "nbar,tvd\n";
  for (const auto& pt : tvd_curve(grid, config.model.n)) text += format_double(pt.nbar) + "," + format_double(pt.tvd) + "\n";
  emit(config, out, text);
  return kExitOk;
}

int cmd_validate(const RunConfig& config, std::ostream& out) {
  std::vector<Case> cases;
  const bool custom = !config.state_path.empty() || !config.prep.empty();
  if (custom) {
    config.model.validate();
    cases.push_back({load_state(config), config.model.n});
  } else {
    std::uint64_t seed = config.seed * 1000;
    for (std::size_t m = 1; m <= 2; ++m)
      for (double disp : {0.0, 0.8})
        for (double loss : {1.0, 0.6}) cases.push_back({random_instance({m, 1.0, disp, loss, ++seed}), 3});
    cases.push_back({random_instance({3, 1.0, 0.0, 1.0, ++seed}), 2});
    cases.push_back({random_instance({4, 1.0, 0.0, 0.8, ++seed}), 1});
  }

  const std::vector<Check> checks = run_checks(cases, !custom);
  bool all = true;
  ordered_json report = ordered_json::array();
  std::ostringstream human;
  for (const auto& c : checks) {
    all = all && c.pass();
    human << (c.pass() ? "PASS  " : "FAIL  ") << c.name << "  max_residual=" << format_double(c.max_residual)
          << "  tolerance=" << format_double(c.tolerance) << '\n';
    report.push_back({{"check", c.name}, {"max_residual", c.max_residual}, {"tolerance", c.tolerance}, {"pass", c.pass()}});
  }
  human << cases.size() << (cases.size() == 1 ? " state, " : " states, ") << (all ? "all checks passed" : "FAILURES")
        << '\n'
        << "term-count averages condition the state's own click distribution on the total click number\n";

  out << human.str();
  if (config.out.empty()) {
    out << report.dump(2) << '\n';
  } else {
    write_atomic(config.out, report.dump(2) + "\n");
  }
  return all ? kExitOk : kExitFailure;
}

int cmd_bench(const RunConfig& config, std::ostream& out) {
  config.model.validate();
  const bool custom = !config.state_path.empty() || !config.prep.empty();
  const GaussianState state =
      custom ? load_state(config) : random_instance({config.bench_modes, 1.0, 0.0, 1.0, config.seed});
  const std::size_t m = state.modes();

  std::vector<ClickPattern> ladder;
  if (!config.pattern.empty()) {
    ladder.push_back(pattern_of(config, m));
  } else {
    const int top = std::min(config.bench_max_clicks, static_cast<int>(m));
    for (int n = 1; n <= top; ++n) {
      std::vector<int> k(m, 0);
      for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)] = 1;
      ladder.emplace_back(k);
    }
  }

  const RealSymMatrix o = kernel_O(state);
  std::ostringstream text;
  text << "pattern,F,determinants,wall_time_s\n";
  for (const auto& k : ladder) {
    TermStats stats;
    const auto start = Clock::now();
    if (state.displaced()) {
      loop_kensingtonian(o, state.mean(), k, config.model.n, {TermOrder::Forward, &stats});
    } else {
      kensingtonian(o, k, config.model.n, {TermOrder::Forward, &stats});
    }
    const double wall = seconds_since(start);
    text << pattern_text(k, ' ') << ',' << term_count(k) << ',' << stats.determinants << ',' << format_double(wall)
         << '\n';
  }
  emit(config, out, text.str());
  return kExitOk;
}

int cmd_sample(const RunConfig& config, std::ostream& out) {
  config.model.validate();
  const GaussianState state = load_state(config);
  std::vector<ClickPattern> samples;
  if (config.method == "exact") {
    samples = sample_exact(state, config.model, config.count, config.seed);
  } else if (config.method == "chain") {
    samples = sample_chain(state, config.model, config.count, config.seed);
  } else {
    throw SchemaError("--method must be exact or chain");
  }
  std::ostringstream text;
  text << "# seed=" << config.seed << "\n# method=" << config.method << '\n';
  for (std::size_t i = 1; i <= state.modes(); ++i) text << (i > 1 ? "," : "") << "k_" << i;
  text << '\n';
  for (const auto& k : samples) text << pattern_text(k, ',') << '\n';
  emit(config, out, text.str());
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Click-counting Gaussian boson sampling toolkit", "clickgbs"};
  app.require_subcommand(1);

  std::function<int(const RunConfig&, std::ostream&)> action;
  auto sub = [&](const char* name, const char* help, auto fn) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&config, &action, s, fn] {
      config.command = s->get_name();
      action = fn;
    });
    return s;
  };

  CLI::App* state = sub("state", "Write a Gaussian state as JSON", cmd_state);
  add_input_options(*state, config);
  state->add_option("--out", config.out, "Output path (stdout if omitted)");

  CLI::App* prob = sub("prob", "Probability of one click pattern", cmd_prob);
  add_input_options(*prob, config);
  add_model_options(*prob, config);
  prob->add_option("--pattern", config.pattern, "Click counts, comma separated")->delimiter(',');
  prob->add_option("--out", config.out, "JSON record path");

  CLI::App* dist = sub("dist", "Full click distribution as CSV", cmd_dist);
  add_input_options(*dist, config);
  add_model_options(*dist, config);
  dist->add_option("--out", config.out, "Output path (stdout if omitted)");

  CLI::App* curve = sub("tvd-curve", "Thermal click/PNR TVD against mean photon number", cmd_tvd_curve);
  add_model_options(*curve, config);
  curve->add_option("--nbar-min", config.nbar_min);
  curve->add_option("--nbar-max", config.nbar_max);
  curve->add_option("--nbar-step", config.nbar_step);
  curve->add_option("--out", config.out, "Output path (stdout if omitted)");

  CLI::App* validate = sub("validate", "Run the identity suites", cmd_validate);
  add_input_options(*validate, config);
  add_model_options(*validate, config);
  validate->add_option("--seed", config.seed, "Base seed for the instance set");
  validate->add_option("--out", config.out, "JSON report path (stdout if omitted)");

  CLI::App* bench = sub("bench", "Kensingtonian cost on a pattern ladder", cmd_bench);
  add_input_options(*bench, config);
  add_model_options(*bench, config);
  bench->add_option("--pattern", config.pattern, "Single pattern instead of the ladder")->delimiter(',');
  bench->add_option("--modes", config.bench_modes, "Modes of the seeded instance");
  bench->add_option("--max-clicks", config.bench_max_clicks, "Longest rung of the ladder");
  bench->add_option("--seed", config.seed, "Instance seed");
  bench->add_option("--out", config.out, "Output path (stdout if omitted)");

  CLI::App* sample = sub("sample", "Draw click patterns", cmd_sample);
  add_input_options(*sample, config);
  add_model_options(*sample, config);
  sample->add_option("--count", config.count, "Number of samples");
  sample->add_option("--seed", config.seed, "Sampler seed");
  sample->add_option("--method", config.method, "exact or chain");
  sample->add_option("--out", config.out, "Output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    return action(config, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace clickgbs::cli
