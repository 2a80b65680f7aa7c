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

#include "djump/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "djump/stats.hpp"
#include "djump/util.hpp"

namespace djump::runner {

using config::RunConfig;
using config::RunMode;
using dynamics::SimulationParams;
using nlohmann::json;

namespace {

constexpr const char* kSweepHeader =
    "r_over_lambda12,flips,live_time,flip_rate,stderr,abs_gamma12_sq,"
    "flip_rate_total_time";
constexpr const char* kScanHeader =
    "r_over_lambda12,gamma_dd,omega_dd,abs_gamma12_sq";
constexpr const char* kPopulationHeader =
    "t,p11,p12,p13,p21,p22,p23,p31,p32,p33";

std::string fmt(double v) { return util::format_double(v, 12); }

// Every output file starts with the complete resolved configuration.
std::string echo_block(const RunConfig& config) {
  std::string out;
  for (const auto& [key, value] : config.echo()) {
    out += "# " + key + " = " + value + "\n";
  }
  return out;
}

json config_json(const RunConfig& config) {
  json j = json::object();
  for (const auto& [key, value] : config.echo()) j[key] = value;
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw Error("failed writing " + path.string());
}

std::string population_csv(const RunConfig& config,
                           std::span<const std::pair<double, std::array<double, 9>>> rows) {
  std::string out = echo_block(config);
  out += kPopulationHeader;
  out += "\n";
  for (const auto& [t, p] : rows) {
    out += fmt(t);
    for (double v : p) {
      out += ",";
      out += fmt(v);
    }
    out += "\n";
  }
  return out;
}

struct Model {
  coupling::CrossCoupling c12;
  dynamics::ConditionalGenerator gen;
  std::vector<dynamics::JumpChannel> channels;
};

Model build_model(const SimulationParams& params) {
  Model m;
  m.c12 = coupling::cross_coupling(coupling::TransitionId::t12, params.rates,
                                   params.geom);
  m.gen = dynamics::build_conditional_generator(params, m.c12);
  m.channels = dynamics::jump_channels(params, m.c12);
  return m;
}

int run_coupling_scan(const RunConfig& config) {
  const std::filesystem::path dir(config.out_dir);
  write_file(dir / "coupling_scan.csv", coupling_scan_csv(config));
  std::fprintf(stderr, "djump: wrote %s\n",
               (dir / "coupling_scan.csv").string().c_str());
  return 0;
}

int run_trajectory_mode(const RunConfig& config) {
  const SimulationParams& params = config.params;
  const Model model = build_model(params);
  rng::PhiloxStream stream(params.seed, 0);

  const auto sample_every = config.sample_every;
  std::vector<jumpstats::BinRecord> bins;
  std::vector<dynamics::TrajectoryEvent> events;
  std::vector<std::pair<double, std::array<double, 9>>> samples;
  hilbert::StateVector final_state = params.initial_state;

  if (config.resets) {
    jumpstats::FlipExperimentOptions options;
    options.record_events = true;
    options.stepper = config.stepper;
    options.sample_every = sample_every;
    auto res = jumpstats::run_flip_experiment(params, model.channels, model.gen,
                                              stream, config.bin_width,
                                              config.threshold, options);
    bins = std::move(res.bins);
    events = std::move(res.events);
    for (const auto& s : res.samples) samples.emplace_back(s.t, s.populations);
    final_state = res.final_state;
  } else {
    dynamics::TrajectoryOptions options;
    options.record_events = true;
    options.stepper = config.stepper;
    options.sample_every = sample_every;
    auto res = dynamics::run_trajectory(params, model.channels, model.gen,
                                        stream, options);
    events = std::move(res.events);
    for (const auto& s : res.samples) samples.emplace_back(s.t, s.populations);
    bins = jumpstats::bin_events(events, config.bin_width, params.t_max);
    final_state = res.final_state;
  }

  const std::filesystem::path dir(config.out_dir);

  {
    std::string out = json{{"config", config_json(config)}}.dump();
    out += "\n";
    char buf[128];
    for (const dynamics::TrajectoryEvent& e : events) {
      std::snprintf(buf, sizeof(buf), "{\"t\":%.17g,\"channel\":\"%s\"}\n", e.t,
                    dynamics::to_string(e.channel));
      out += buf;
    }
    write_file(dir / "events.jsonl", out);
  }
  {
    // Detector 2 counts carry a negative sign so both records plot on one
    // axis with atom 1 up and atom 2 down.
    std::string out = echo_block(config);
    out += "bin_index,t_start,counts1,minus_counts2\n";
    for (const jumpstats::BinRecord& b : bins) {
      out += std::to_string(b.index) + "," + fmt(b.t_start) + "," +
             std::to_string(b.counts1) + ",-" + std::to_string(b.counts2) +
             "\n";
    }
    write_file(dir / "bins.csv", out);
  }
  if (sample_every > 0) {
    write_file(dir / "samples.csv", population_csv(config, samples));
  }
  write_file(dir / "final_state.txt", hilbert::to_debug_lines(final_state));

  std::fprintf(stderr, "djump: trajectory done, %zu events, %zu bins\n",
               events.size(), bins.size());
  return 0;
}

int run_sweep(const RunConfig& config) {
  const std::vector<double> r_values = config.sweep_r_values();
  std::fprintf(stderr, "djump: sweep over %zu separations, %d trajectories each\n",
               r_values.size(), config.trajectories);
  const auto points = jumpstats::flip_sweep(
      config.params, r_values, config.trajectories, config.params.t_max,
      config.bin_width, config.threshold, config.workers, config.stepper);
  const std::filesystem::path dir(config.out_dir);
  write_file(dir / "sweep.csv", sweep_csv(config, points));
  std::fprintf(stderr, "djump: wrote %s\n", (dir / "sweep.csv").string().c_str());
  return 0;
}

int run_fit(const RunConfig& config) {
  const auto points = read_sweep_csv(config.input);
  const jumpstats::FitResult fit = jumpstats::fit_scaling(points);
  const std::filesystem::path dir(config.out_dir);
  write_file(dir / "fit.json", fit_json(config, fit));
  std::fprintf(stderr, "djump: c_s = %.6g (residual %.6g, %llu points)\n",
               fit.c_s, fit.residual,
               static_cast<unsigned long long>(fit.points_used));
  return 0;
}

int run_validate(const RunConfig& config) {
  const ValidationReport report = run_validation(config);
  const std::filesystem::path dir(config.out_dir);

  std::vector<std::pair<double, std::array<double, 9>>> oracle_rows,
      ensemble_rows;
  json checkpoints = json::array();
  for (const ValidationRow& row : report.rows) {
    oracle_rows.emplace_back(row.t, row.oracle);
    ensemble_rows.emplace_back(row.t, row.ensemble_mean);
    checkpoints.push_back({{"t", row.t},
                           {"max_abs_diff", row.max_abs_diff},
                           {"bound", row.bound},
                           {"pass", row.pass}});
  }
  write_file(dir / "oracle_populations.csv", population_csv(config, oracle_rows));
  write_file(dir / "ensemble_populations.csv",
             population_csv(config, ensemble_rows));

  const json j = {{"pass", report.pass},
                  {"max_abs_diff", report.max_abs_diff},
                  {"bound_floor", 0.02},
                  {"checkpoints", checkpoints},
                  {"config", config_json(config)}};
  write_file(dir / "validate_report.json", j.dump(2) + "\n");

  std::fprintf(stderr, "djump: validate %s (max |dp| = %.4g)\n",
               report.pass ? "PASS" : "FAIL", report.max_abs_diff);
  return report.pass ? 0 : 4;
}

}  // namespace

std::string coupling_scan_csv(const RunConfig& config) {
  const auto rows =
      coupling::coupling_scan(config.transition, config.params.rates,
                              config.params.geom, config.r_min, config.r_max,
                              config.scan_points);
  std::string out = echo_block(config);
  out += kScanHeader;
  out += "\n";
  for (const coupling::ScanRow& r : rows) {
    out += fmt(r.r) + "," + fmt(r.gamma_dd) + "," + fmt(r.omega_dd) + "," +
           fmt(r.abs_gamma12_sq) + "\n";
  }
  return out;
}

std::string sweep_csv(const RunConfig& config,
                      std::span<const jumpstats::SweepPoint> points) {
  std::string out = echo_block(config);
  out += kSweepHeader;
  out += "\n";
  for (const jumpstats::SweepPoint& p : points) {
    out += fmt(p.r) + "," + std::to_string(p.flips) + "," + fmt(p.live_time) +
           "," + fmt(p.flip_rate) + "," + fmt(p.stderr_) + "," +
           fmt(p.abs_gamma12_sq) + "," + fmt(p.flip_rate_total_time) + "\n";
  }
  return out;
}

std::string fit_json(const RunConfig& config, const jumpstats::FitResult& fit) {
  const json j = {{"c_s", fit.c_s},
                  {"residual", fit.residual},
                  {"points_used", fit.points_used},
                  {"config", config_json(config)}};
  return j.dump(2) + "\n";
}

std::vector<jumpstats::SweepPoint> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open sweep csv '" + path + "'");
  std::vector<jumpstats::SweepPoint> points;
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kSweepHeader) {
        throw ConfigError("unexpected sweep csv header at line " +
                          std::to_string(line_no) + " of " + path);
      }
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(row, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw ConfigError("malformed number '" + cell + "' at line " +
                          std::to_string(line_no) + " of " + path);
      }
      cells.push_back(v);
    }
    if (cells.size() != 7) {
      throw ConfigError("expected 7 columns at line " + std::to_string(line_no) +
                        " of " + path);
    }
    jumpstats::SweepPoint p;
    p.r = cells[0];
    p.flips = static_cast<std::uint64_t>(std::llround(cells[1]));
    p.live_time = cells[2];
    p.flip_rate = cells[3];
    p.stderr_ = cells[4];
    p.abs_gamma12_sq = cells[5];
    p.flip_rate_total_time = cells[6];
    points.push_back(p);
  }
  if (!header_seen) {
    throw ConfigError("no header row found in sweep csv '" + path + "'");
  }
  return points;
}

ValidationReport run_validation(const RunConfig& config) {
  const SimulationParams& params = config.params;
  const Model model = build_model(params);

  const auto steps_per_checkpoint = static_cast<std::uint64_t>(
      std::llround(config.checkpoint_interval / params.dt));
  const auto n_checkpoints = static_cast<std::size_t>(std::llround(
                                 params.t_max / config.checkpoint_interval)) +
                             1;
  const auto n_traj = static_cast<std::size_t>(config.trajectories);

  // Per-trajectory checkpoint populations, slotted by trajectory index so the
  // reduction below is independent of scheduling.
  std::vector<std::array<double, 9>> pops(n_traj * n_checkpoints);
  util::parallel_for(n_traj, config.workers, [&](std::size_t i) {
    rng::PhiloxStream stream(params.seed, static_cast<std::uint64_t>(i));
    dynamics::TrajectoryOptions options;
    options.record_events = false;
    options.sample_every = steps_per_checkpoint;
    options.stepper = config.stepper;
    const auto res = dynamics::run_trajectory(params, model.channels, model.gen,
                                              stream, options);
    if (res.samples.size() != n_checkpoints) {
      throw NumericalError("unexpected checkpoint count in trajectory " +
                           std::to_string(i));
    }
    for (std::size_t c = 0; c < n_checkpoints; ++c) {
      pops[i * n_checkpoints + c] = res.samples[c].populations;
    }
  });

  const auto oracle_checkpoints = oracle::integrate(
      oracle::DensityMatrix::from_pure(params.initial_state), model.gen,
      model.channels, params.t_max,
      {config.dt_ode, config.checkpoint_interval, true, 1e-10, 1e-9, 1e-8});
  if (oracle_checkpoints.size() != n_checkpoints) {
    throw NumericalError("oracle checkpoint count mismatch");
  }

  ValidationReport report;
  report.rows.resize(n_checkpoints);
  const double inv_n = 1.0 / static_cast<double>(n_traj);
  for (std::size_t c = 0; c < n_checkpoints; ++c) {
    ValidationRow& row = report.rows[c];
    row.t = static_cast<double>(c) * config.checkpoint_interval;
    row.oracle = oracle_checkpoints[c].rho.populations();
    for (int p = 0; p < 9; ++p) {
      double s = 0.0, s2 = 0.0;
      for (std::size_t i = 0; i < n_traj; ++i) {
        const double v = pops[i * n_checkpoints + c][p];
        s += v;
        s2 += v * v;
      }
      const double m = s * inv_n;
      const double var =
          std::max(0.0, (s2 - s * m) / static_cast<double>(n_traj - 1));
      row.ensemble_mean[p] = m;
      row.ensemble_se[p] = std::sqrt(var * inv_n);
    }
    double worst_margin = -1.0;
    for (int p = 0; p < 9; ++p) {
      const double diff = std::abs(row.ensemble_mean[p] - row.oracle[p]);
      const double bound = std::max(4.0 * row.ensemble_se[p], 0.02);
      row.max_abs_diff = std::max(row.max_abs_diff, diff);
      if (diff - bound > worst_margin) {
        worst_margin = diff - bound;
        row.bound = bound;
      }
      if (diff >= bound) row.pass = false;
    }
    report.max_abs_diff = std::max(report.max_abs_diff, row.max_abs_diff);
    report.pass = report.pass && row.pass;
  }
  return report;
}

int run(const RunConfig& config) {
  std::filesystem::create_directories(config.out_dir);
  switch (config.mode) {
    case RunMode::coupling_scan: return run_coupling_scan(config);
    case RunMode::trajectory: return run_trajectory_mode(config);
    case RunMode::validate: return run_validate(config);
    case RunMode::sweep: return run_sweep(config);
    case RunMode::fit: return run_fit(config);
  }
  throw Error("unreachable mode");
}

}  // namespace djump::runner
