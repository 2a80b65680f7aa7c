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

// djump: quantum-jump statistics of two dipole-dipole coupled three-level
// atoms. Modes: coupling-scan, trajectory, validate, sweep, fit.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "djump/config.hpp"
#include "djump/runner.hpp"

namespace {

using djump::config::KeyValue;
using djump::config::RunMode;

struct ModeCli {
  CLI::App* app = nullptr;
  RunMode mode{};
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> flag_values;  // key, flag
  std::vector<std::string> set_args;
};

// Registers --flag that, when given, overrides the config key.
void add_override(ModeCli& cli, const std::string& flag, const std::string& key,
                  const std::string& help) {
  auto* storage = &cli.flag_values;
  cli.app
      ->add_option_function<std::string>(
          flag,
          [storage, key, flag](const std::string& v) {
            storage->emplace_back(key, v);
          },
          help)
      ->type_name("VALUE");
}

void add_common_options(ModeCli& cli) {
  cli.app->add_option("--config", cli.config_path, "key=value config file");
  add_override(cli, "--seed", "seed", "master seed (also: DJUMP_SEED)");
  add_override(cli, "--workers", "workers", "worker threads, 0 = all cores");
  add_override(cli, "--out", "out", "output directory");
  cli.app->add_option("--set", cli.set_args,
                      "extra key=value override, repeatable");
}

void add_physics_options(ModeCli& cli) {
  add_override(cli, "--rabi", "rabi", "drive strength Omega_R (gamma13 units)");
  add_override(cli, "--gamma13", "gamma13", "1<->3 half-rate (defines the unit)");
  add_override(cli, "--gamma12", "gamma12", "1<->2 half-rate");
  add_override(cli, "--gamma23", "gamma23", "2<->3 half-rate");
  add_override(cli, "--theta", "theta", "dipole angle for all transitions");
  add_override(cli, "--r", "r", "atom separation (lambda12 units)");
  add_override(cli, "--dt", "dt", "timestep (1/gamma13 units)");
  add_override(cli, "--t-max", "t_max", "simulated time per trajectory");
  add_override(cli, "--stepper", "stepper", "first_order | exponential");
  add_override(cli, "--initial-state", "initial_state", "product state n,m");
}

int exit_with_error_json(const char* kind, int code, const std::string& mode,
                         const std::string& message) {
  const nlohmann::json j = {
      {"error", {{"kind", kind}, {"code", code}, {"mode", mode}, {"message", message}}}};
  std::fprintf(stderr, "%s\n", j.dump().c_str());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-jump statistics of two dipole-dipole coupled "
               "three-level atoms"};
  app.require_subcommand(1);

  std::vector<ModeCli> modes(5);
  const std::pair<const char*, RunMode> mode_table[] = {
      {"coupling-scan", RunMode::coupling_scan},
      {"trajectory", RunMode::trajectory},
      {"validate", RunMode::validate},
      {"sweep", RunMode::sweep},
      {"fit", RunMode::fit},
  };
  const char* mode_help[] = {
      "dipole-dipole coefficients over a separation grid (CSV)",
      "one trajectory: event log, binned detector counts, state samples",
      "trajectory ensemble vs master-equation oracle",
      "flip rate vs separation with the re-preparation protocol (CSV)",
      "least-squares scaling factor from an existing sweep CSV",
  };

  for (std::size_t i = 0; i < 5; ++i) {
    ModeCli& cli = modes[i];
    cli.mode = mode_table[i].second;
    cli.app = app.add_subcommand(mode_table[i].first, mode_help[i]);
    add_common_options(cli);

    switch (cli.mode) {
      case RunMode::coupling_scan:
        add_physics_options(cli);
        add_override(cli, "--transition", "transition", "t12 | t13 | t23");
        add_override(cli, "--r-min", "r_min", "grid start (lambda12)");
        add_override(cli, "--r-max", "r_max", "grid end (lambda12)");
        add_override(cli, "--r-points", "scan_points", "grid size");
        break;
      case RunMode::trajectory:
        add_physics_options(cli);
        add_override(cli, "--bin-width", "bin_width", "detector counting bin");
        add_override(cli, "--threshold", "threshold", "bright threshold (clicks/bin)");
        add_override(cli, "--sample-every", "sample_every",
                     "steps between population samples");
        add_override(cli, "--resets", "resets",
                     "true/false: re-prepare |1,2> on ambiguous bins");
        break;
      case RunMode::validate:
        add_physics_options(cli);
        add_override(cli, "--trajectories", "trajectories", "ensemble size");
        add_override(cli, "--checkpoint-interval", "checkpoint_interval",
                     "comparison grid spacing");
        add_override(cli, "--dt-ode", "dt_ode", "oracle RK4 step");
        break;
      case RunMode::sweep:
        add_physics_options(cli);
        add_override(cli, "--r-min", "r_min", "grid start (lambda12)");
        add_override(cli, "--r-max", "r_max", "grid end (lambda12)");
        add_override(cli, "--r-points", "r_points", "log-spaced grid size");
        add_override(cli, "--trajectories", "trajectories",
                     "trajectories per grid point");
        add_override(cli, "--bin-width", "bin_width", "detector counting bin");
        add_override(cli, "--threshold", "threshold", "bright threshold (clicks/bin)");
        break;
      case RunMode::fit:
        add_override(cli, "--in", "input", "sweep CSV to fit");
        break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const ModeCli* active = nullptr;
  for (const ModeCli& cli : modes) {
    if (cli.app->parsed()) active = &cli;
  }
  if (active == nullptr) return 2;
  const std::string mode_name = djump::config::to_string(active->mode);

  try {
    std::string file_text;
    if (!active->config_path.empty()) {
      std::ifstream in(active->config_path);
      if (!in) {
        throw djump::ConfigError("cannot open config file '" +
                                 active->config_path + "'");
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      file_text = ss.str();
    }

    std::vector<KeyValue> overrides;
    // Seed fallback: weaker than both the file and any flag.
    bool seed_flagged = false;
    for (const auto& [key, value] : active->flag_values) {
      if (key == "seed") seed_flagged = true;
    }
    if (const char* env = std::getenv("DJUMP_SEED");
        env != nullptr && !seed_flagged &&
        file_text.find("seed") == std::string::npos) {
      overrides.push_back({"seed", env, "DJUMP_SEED"});
    }
    for (const auto& [key, value] : active->flag_values) {
      overrides.push_back({key, value, "--" + key});
    }
    for (const std::string& kv : active->set_args) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw djump::ConfigError("--set expects key=value, got '" + kv + "'");
      }
      overrides.push_back({kv.substr(0, eq), kv.substr(eq + 1), "--set " + kv});
    }

    const djump::config::RunConfig config =
        djump::config::parse_config(active->mode, file_text, overrides);
    return djump::runner::run(config);
  } catch (const djump::ConfigError& e) {
    return exit_with_error_json("config", 2, mode_name, e.what());
  } catch (const djump::ValidationFailure& e) {
    return exit_with_error_json("validation", 4, mode_name, e.what());
  } catch (const djump::NumericalError& e) {
    return exit_with_error_json("numerical", 3, mode_name, e.what());
  } catch (const std::exception& e) {
    return exit_with_error_json("internal", 3, mode_name, e.what());
  }
}
