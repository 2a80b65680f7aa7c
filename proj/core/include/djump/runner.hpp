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

#ifndef DJUMP_RUNNER_HPP
#define DJUMP_RUNNER_HPP

#include <array>
#include <string>
#include <vector>

#include "djump/config.hpp"
#include "djump/jumpstats.hpp"
#include "djump/oracle.hpp"

// Mode orchestration: runs experiments and emits the data files. Workers
// share nothing; the runner is the only component that touches the
// filesystem, and no output byte depends on the worker count.
namespace djump::runner {

struct ValidationRow {
  double t = 0.0;
  std::array<double, hilbert::kDim> ensemble_mean{};
  std::array<double, hilbert::kDim> ensemble_se{};
  std::array<double, hilbert::kDim> oracle{};
  double max_abs_diff = 0.0;
  double bound = 0.0;  // max(4 * largest SE at this checkpoint, 0.02)
  bool pass = true;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  double max_abs_diff = 0.0;
  bool pass = true;
};

// Trajectory ensemble vs RK4 oracle over [0, t_max] at every checkpoint:
// per population, |ensemble - oracle| < max(4 SE, 0.02).
ValidationReport run_validation(const config::RunConfig& config);

// In-memory renderings of the output files (also used by determinism tests).
std::string coupling_scan_csv(const config::RunConfig& config);
std::string sweep_csv(const config::RunConfig& config,
                      std::span<const jumpstats::SweepPoint> points);
std::string fit_json(const config::RunConfig& config,
                     const jumpstats::FitResult& fit);

// Reads a sweep CSV (as written by sweep mode) back into points.
std::vector<jumpstats::SweepPoint> read_sweep_csv(const std::string& path);

// Executes the configured mode, writing files under config.out_dir.
// Returns 0, or 4 when a validate run completes but fails its bound.
// Throws ConfigError / NumericalError for exit codes 2 / 3.
int run(const config::RunConfig& config);

}  // namespace djump::runner

#endif  // DJUMP_RUNNER_HPP
