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

#ifndef DJUMP_JUMPSTATS_HPP
#define DJUMP_JUMPSTATS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "djump/dynamics.hpp"

// Detector event streams -> observables: binned counts, bright/dark
// classification, flip detection with the re-preparation protocol, flip rate
// versus separation, and the least-squares scaling factor.
namespace djump::jumpstats {

struct BinRecord {
  std::uint64_t index = 0;
  double t_start = 0.0;
  std::uint64_t counts1 = 0;  // det1_13 events in the bin
  std::uint64_t counts2 = 0;  // det2_13 events
};

enum class BinClass {
  bright1_dark2,
  dark1_bright2,
  both_bright,
  both_dark,
};

const char* to_string(BinClass c);

// Left-closed bins of the given width; ceil(t_total / bin_width) of them.
// Only detector events are counted; every other channel is an undetected
// emission. Events at exactly t_total land in the last bin.
std::vector<BinRecord> bin_events(std::span<const dynamics::TrajectoryEvent> events,
                                  double bin_width, double t_total);

// Detector i is bright iff counts_i >= threshold.
BinClass classify_bin(const BinRecord& bin, std::uint64_t threshold);

enum class FlipDirection { one_to_two, two_to_one };

struct FlipEvent {
  double t;  // boundary between the two bins
  FlipDirection direction;
};

struct FlipCounts {
  std::vector<FlipEvent> flips;
  std::uint64_t live_bins = 0;  // bins inside single-bright segments
  std::uint64_t resets = 0;     // both-bright / both-dark bins
};

// Adjacent single-bright bins with opposite classes record a flip; any
// ambiguous bin ends the segment, so flips never straddle a reset.
FlipCounts count_flips(std::span<const BinClass> classes, double bin_width = 1.0);

struct FlipExperimentOptions {
  bool record_events = false;
  std::uint64_t sample_every = 0;  // steps between population samples, 0 = off
  dynamics::StepperKind stepper = dynamics::StepperKind::first_order;
  // Re-prepare |1,2> at the next bin boundary after a both-bright or
  // both-dark bin; the clock keeps running.
  bool resets = true;
};

struct FlipExperimentResult {
  std::vector<BinRecord> bins;
  std::vector<BinClass> classes;
  std::vector<dynamics::TrajectoryEvent> events;     // only if record_events
  std::vector<dynamics::PopulationSample> samples;   // only if sample_every
  hilbert::StateVector final_state;
  std::uint64_t resets_applied = 0;
};

// Bin-synchronous trajectory run implementing the re-preparation protocol.
// t_max must be a whole number of bins and bin_width a whole number of steps.
FlipExperimentResult run_flip_experiment(const dynamics::SimulationParams& params,
                                         std::span<const dynamics::JumpChannel> channels,
                                         const dynamics::ConditionalGenerator& gen,
                                         rng::PhiloxStream& stream,
                                         double bin_width, std::uint64_t threshold,
                                         const FlipExperimentOptions& options = {});

struct SweepPoint {
  double r = 0.0;
  std::uint64_t flips = 0;
  double live_time = 0.0;
  double flip_rate = 0.0;            // flips / live_time
  double stderr_ = 0.0;              // sqrt(flips) / live_time (Poisson)
  double abs_gamma12_sq = 0.0;
  double flip_rate_total_time = 0.0; // flips / total simulated time
};

// For each r: rebuild coupling, generator and channels, run the trajectory
// batch with re-preparation, and aggregate flips and live time across
// trajectories. Stream index = r index * trajectories_per_point + trajectory
// index, so output is independent of worker count. r values must lie in
// [0.05, 10] lambda12.
std::vector<SweepPoint> flip_sweep(const dynamics::SimulationParams& base_params,
                                   std::span<const double> r_values,
                                   int trajectories_per_point, double t_max,
                                   double bin_width, std::uint64_t threshold,
                                   int workers = 0,
                                   dynamics::StepperKind stepper =
                                       dynamics::StepperKind::first_order);

struct FitResult {
  double c_s = 0.0;
  double residual = 0.0;        // sum of squared residuals
  std::uint64_t points_used = 0;
};

// One-parameter least squares of flip_rate against |gamma_12^{12}|^2:
// c_s = sum f g / sum g^2. Throws ConfigError on a degenerate sweep
// (fewer than 3 points with abs_gamma12_sq > 0).
FitResult fit_scaling(std::span<const SweepPoint> points);

// Event-level cross-check: a state-oracle flip is the first det2 click after
// >= run_length consecutive det1 clicks with no undetected channel firing in
// between (or the mirrored pattern). Counts both directions.
std::uint64_t count_state_oracle_flips(std::span<const dynamics::TrajectoryEvent> events,
                                       int run_length = 3);

}  // namespace djump::jumpstats

#endif  // DJUMP_JUMPSTATS_HPP
