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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "clickgbs/detection.hpp"
#include "clickgbs/gaussian.hpp"

namespace clickgbs::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // validation suite reported a failing identity
  kExitInput = 2,
  kExitNumerical = 3,
  kExitResource = 4,
};

struct RunConfig {
  std::string command;

  // Input: exactly one of state_path and prep.
  std::string state_path;
  std::string prep;
  std::vector<double> params;
  std::optional<std::uint64_t> lon_seed;

  DetectorModel model;
  std::vector<int> pattern;
  std::string out;
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  std::string method = "exact";

  // tvd-curve grid
  double nbar_min = 0.0;
  double nbar_max = 1.0;
  double nbar_step = 0.05;

  // bench ladder
  std::size_t bench_modes = 10;
  int bench_max_clicks = 10;
};

/// Parses argv and dispatches. Never throws; library errors become exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Builds the input state from --state or --prep.
GaussianState load_state(const RunConfig& config);

int cmd_state(const RunConfig& config, std::ostream& out);
int cmd_prob(const RunConfig& config, std::ostream& out);
int cmd_dist(const RunConfig& config, std::ostream& out);
int cmd_tvd_curve(const RunConfig& config, std::ostream& out);
int cmd_validate(const RunConfig& config, std::ostream& out);
int cmd_bench(const RunConfig& config, std::ostream& out);
int cmd_sample(const RunConfig& config, std::ostream& out);

/// Writes via a temporary file and rename so readers never see partial output.
void write_atomic(const std::string& path, const std::string& contents);

}  // namespace clickgbs::cli
