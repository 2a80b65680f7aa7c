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

#include "djump/jumpstats.hpp"

#include <cmath>
#include <string>

#include "djump/util.hpp"

namespace djump::jumpstats {

using dynamics::ChannelLabel;

const char* to_string(BinClass c) {
  switch (c) {
    case BinClass::bright1_dark2: return "bright1_dark2";
    case BinClass::dark1_bright2: return "dark1_bright2";
    case BinClass::both_bright: return "both_bright";
    case BinClass::both_dark: return "both_dark";
  }
  return "?";
}

namespace {

bool is_single_bright(BinClass c) {
  return c == BinClass::bright1_dark2 || c == BinClass::dark1_bright2;
}

std::uint64_t bin_of(double t, double bin_width, std::uint64_t n_bins) {
  auto idx = static_cast<std::uint64_t>(std::floor(t / bin_width));
  if (idx >= n_bins) idx = n_bins - 1;  // events at exactly t_total
  return idx;
}

}  // namespace

std::vector<BinRecord> bin_events(std::span<const dynamics::TrajectoryEvent> events,
                                  double bin_width, double t_total) {
  if (!(bin_width > 0.0)) throw ConfigError("bin width must be positive");
  const auto n_bins =
      static_cast<std::uint64_t>(std::ceil(t_total / bin_width));

  std::vector<BinRecord> bins(n_bins);
  for (std::uint64_t i = 0; i < n_bins; ++i) {
    bins[i].index = i;
    bins[i].t_start = static_cast<double>(i) * bin_width;
  }
  for (const dynamics::TrajectoryEvent& e : events) {
    if (e.channel != ChannelLabel::det1_13 && e.channel != ChannelLabel::det2_13)
      continue;  // undetected emission
    const std::uint64_t idx = bin_of(e.t, bin_width, n_bins);
    if (e.channel == ChannelLabel::det1_13) {
      ++bins[idx].counts1;
    } else {
      ++bins[idx].counts2;
    }
  }
  return bins;
}

BinClass classify_bin(const BinRecord& bin, std::uint64_t threshold) {
  if (threshold < 1) throw ConfigError("brightness threshold must be >= 1");
  const bool bright1 = bin.counts1 >= threshold;
  const bool bright2 = bin.counts2 >= threshold;
  if (bright1 && bright2) return BinClass::both_bright;
  if (!bright1 && !bright2) return BinClass::both_dark;
  return bright1 ? BinClass::bright1_dark2 : BinClass::dark1_bright2;
}

FlipCounts count_flips(std::span<const BinClass> classes, double bin_width) {
  FlipCounts out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (is_single_bright(classes[i])) {
      ++out.live_bins;
    } else {
      ++out.resets;
    }
    if (i == 0) continue;
    const BinClass prev = classes[i - 1];
    const BinClass cur = classes[i];
    if (!is_single_bright(prev) || !is_single_bright(cur) || prev == cur)
      continue;
    out.flips.push_back({static_cast<double>(i) * bin_width,
                         prev == BinClass::bright1_dark2
                             ? FlipDirection::one_to_two
                             : FlipDirection::two_to_one});
  }
  return out;
}

FlipExperimentResult run_flip_experiment(const dynamics::SimulationParams& params,
                                         std::span<const dynamics::JumpChannel> channels,
                                         const dynamics::ConditionalGenerator& gen,
                                         rng::PhiloxStream& stream,
                                         double bin_width, std::uint64_t threshold,
                                         const FlipExperimentOptions& options) {
  const auto steps_per_bin =
      static_cast<std::uint64_t>(std::llround(bin_width / params.dt));
  if (steps_per_bin == 0 ||
      std::abs(static_cast<double>(steps_per_bin) * params.dt - bin_width) >
          1e-9 * bin_width) {
    throw ConfigError("bin width must be a whole number of steps");
  }
  const auto total_steps =
      static_cast<std::uint64_t>(std::llround(params.t_max / params.dt));
  if (total_steps % steps_per_bin != 0) {
    throw ConfigError("t_max must be a whole number of bins");
  }
  const std::uint64_t n_bins = total_steps / steps_per_bin;

  const hilbert::StateVector reprepared = params.initial_state;
  dynamics::TrajectoryCursor cursor(params, channels, gen, stream,
                                    options.stepper);

  FlipExperimentResult result;
  result.bins.reserve(n_bins);
  result.classes.reserve(n_bins);
  if (options.sample_every > 0) {
    result.samples.push_back({0.0, cursor.state().populations()});
  }

  std::uint64_t bin = 0;
  std::uint64_t counts1 = 0, counts2 = 0;    // current bin
  std::uint64_t carry1 = 0, carry2 = 0;      // boundary events of the next bin

  for (std::uint64_t k = 0; k < total_steps; ++k) {
    const auto fired = cursor.advance();
    if (fired) {
      const dynamics::JumpChannel& ch = channels[*fired];
      const double t_event = static_cast<double>(k + 1) * params.dt;
      if (options.record_events) result.events.push_back({t_event, ch.label});
      if (ch.label == ChannelLabel::det1_13 || ch.label == ChannelLabel::det2_13) {
        // Same bin assignment as bin_events, so engine bins and
        // post-processed bins agree event for event.
        const std::uint64_t idx = bin_of(t_event, bin_width, n_bins);
        std::uint64_t& slot1 = (idx == bin) ? counts1 : carry1;
        std::uint64_t& slot2 = (idx == bin) ? counts2 : carry2;
        if (ch.label == ChannelLabel::det1_13) {
          ++slot1;
        } else {
          ++slot2;
        }
      }
    }

    if ((k + 1) % steps_per_bin == 0) {
      const BinRecord record{bin, static_cast<double>(bin) * bin_width, counts1,
                             counts2};
      const BinClass cls = classify_bin(record, threshold);
      result.bins.push_back(record);
      result.classes.push_back(cls);
      if (options.resets && !is_single_bright(cls)) {
        cursor.set_state(reprepared);
        ++result.resets_applied;
      }
      counts1 = carry1;
      counts2 = carry2;
      carry1 = carry2 = 0;
      ++bin;
    }

    if (options.sample_every > 0 && (k + 1) % options.sample_every == 0) {
      result.samples.push_back({static_cast<double>(k + 1) * params.dt,
                                cursor.state().populations()});
    }
  }
  result.final_state = cursor.state();
  return result;
}

std::vector<SweepPoint> flip_sweep(const dynamics::SimulationParams& base_params,
                                   std::span<const double> r_values,
                                   int trajectories_per_point, double t_max,
                                   double bin_width, std::uint64_t threshold,
                                   int workers, dynamics::StepperKind stepper) {
  for (double r : r_values) {
    if (!(r >= 0.05 && r <= 10.0)) {
      throw ConfigError("sweep separation " + std::to_string(r) +
                        " outside the supported range [0.05, 10] lambda12");
    }
  }
  if (trajectories_per_point < 1) {
    throw ConfigError("sweep needs at least one trajectory per point");
  }

  struct TrajStats {
    std::uint64_t flips = 0;
    std::uint64_t live_bins = 0;
  };
  const std::size_t n_points = r_values.size();
  const auto tpp = static_cast<std::size_t>(trajectories_per_point);
  std::vector<TrajStats> per_traj(n_points * tpp);

  util::parallel_for(per_traj.size(), workers, [&](std::size_t task) {
    const std::size_t point = task / tpp;

    dynamics::SimulationParams params = base_params;
    params.geom.r = r_values[point];
    params.t_max = t_max;
    const coupling::CrossCoupling c12 = coupling::cross_coupling(
        coupling::TransitionId::t12, params.rates, params.geom);
    const dynamics::ConditionalGenerator gen =
        build_conditional_generator(params, c12);
    const std::vector<dynamics::JumpChannel> channels =
        dynamics::jump_channels(params, c12);

    // Stream index = global trajectory index: output cannot depend on how
    // tasks are scheduled across workers.
    rng::PhiloxStream stream(params.seed, static_cast<std::uint64_t>(task));
    FlipExperimentOptions options;
    options.stepper = stepper;
    const FlipExperimentResult res = run_flip_experiment(
        params, channels, gen, stream, bin_width, threshold, options);
    const FlipCounts fc = count_flips(res.classes, bin_width);
    per_traj[task] = {fc.flips.size(), fc.live_bins};
  });

  std::vector<SweepPoint> points(n_points);
  for (std::size_t p = 0; p < n_points; ++p) {
    SweepPoint& sp = points[p];
    sp.r = r_values[p];
    std::uint64_t live_bins = 0;
    for (std::size_t j = 0; j < tpp; ++j) {
      sp.flips += per_traj[p * tpp + j].flips;
      live_bins += per_traj[p * tpp + j].live_bins;
    }
    sp.live_time = static_cast<double>(live_bins) * bin_width;
    const double total_time = static_cast<double>(tpp) * t_max;
    const double flips = static_cast<double>(sp.flips);
    sp.flip_rate = sp.live_time > 0.0 ? flips / sp.live_time : 0.0;
    sp.stderr_ = sp.live_time > 0.0 ? std::sqrt(flips) / sp.live_time : 0.0;
    sp.flip_rate_total_time = total_time > 0.0 ? flips / total_time : 0.0;

    coupling::Geometry geom = base_params.geom;
    geom.r = sp.r;
    sp.abs_gamma12_sq =
        coupling::cross_coupling(coupling::TransitionId::t12, base_params.rates,
                                 geom)
            .abs_sq();
  }
  return points;
}

FitResult fit_scaling(std::span<const SweepPoint> points) {
  std::uint64_t usable = 0;
  double sum_fg = 0.0, sum_gg = 0.0;
  for (const SweepPoint& p : points) {
    if (p.abs_gamma12_sq > 0.0) ++usable;
    sum_fg += p.flip_rate * p.abs_gamma12_sq;
    sum_gg += p.abs_gamma12_sq * p.abs_gamma12_sq;
  }
  if (usable < 3 || sum_gg == 0.0) {
    throw ConfigError("degenerate sweep: need >= 3 points with nonzero "
                      "|gamma_12^{12}|^2 to fit a scaling factor");
  }
  FitResult fit;
  fit.c_s = sum_fg / sum_gg;
  fit.points_used = usable;
  for (const SweepPoint& p : points) {
    const double res = p.flip_rate - fit.c_s * p.abs_gamma12_sq;
    fit.residual += res * res;
  }
  return fit;
}

std::uint64_t count_state_oracle_flips(std::span<const dynamics::TrajectoryEvent> events,
                                       int run_length) {
  std::uint64_t flips = 0;
  int run1 = 0, run2 = 0;
  for (const dynamics::TrajectoryEvent& e : events) {
    if (e.channel == ChannelLabel::det1_13) {
      if (run2 >= run_length) ++flips;
      ++run1;
      run2 = 0;
    } else if (e.channel == ChannelLabel::det2_13) {
      if (run1 >= run_length) ++flips;
      ++run2;
      run1 = 0;
    } else {
      // An undetected emission breaks the pattern.
      run1 = run2 = 0;
    }
  }
  return flips;
}

}  // namespace djump::jumpstats
