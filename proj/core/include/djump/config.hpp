// Copyright 2026 The djump Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DJUMP_CONFIG_HPP
#define DJUMP_CONFIG_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "djump/dynamics.hpp"

// Plain key=value configuration with CLI overrides. Unknown keys are
// rejected; every resolved field is echoed into output headers so any result
// file is self-describing.
namespace djump::config {

enum class RunMode { coupling_scan, trajectory, validate, sweep, fit };

const char* to_string(RunMode m);

struct RunConfig {
  RunMode mode = RunMode::coupling_scan;

  dynamics::SimulationParams params{};

  // coupling-scan
  coupling::TransitionId transition = coupling::TransitionId::t12;
  int scan_points = 30;

  // sweep grid (log-spaced, both endpoints included)
  double r_min = 0.1;
  double r_max = 3.0;
  int r_points = 12;

  int trajectories = 1;
  double bin_width = 50.0;
  std::uint64_t threshold = 3;
  std::uint64_t sample_every = 0;  // steps between population samples, 0 = off
  bool resets = true;
  dynamics::StepperKind stepper = dynamics::StepperKind::first_order;

  // validate
  double checkpoint_interval = 0.5;
  double dt_ode = 2e-4;

  int workers = 0;  // 0 = hardware concurrency
  std::string out_dir = ".";
  std::string input;  // fit: path of an existing sweep CSV

  // Complete resolved configuration in a fixed order, for output headers.
  std::vector<std::pair<std::string, std::string>> echo() const;

  std::vector<double> sweep_r_values() const;
};

struct KeyValue {
  std::string key;
  std::string value;
  std::string context;  // e.g. "--rabi" or "config line 3"
};

// Parses file text (possibly empty) then applies overrides in order, then
// validates. Throws ConfigError with line/flag context.
RunConfig parse_config(RunMode mode, const std::string& file_text,
                       std::span<const KeyValue> overrides);

// Exposed for reuse: throws ConfigError if any invariant is violated.
void validate(const RunConfig& config);

}  // namespace djump::config

#endif  // DJUMP_CONFIG_HPP
