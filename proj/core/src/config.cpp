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

#include "djump/config.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>

#include "djump/util.hpp"

namespace djump::config {

using coupling::TransitionId;
using dynamics::StepperKind;
using hilbert::Level;

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::coupling_scan: return "coupling-scan";
    case RunMode::trajectory: return "trajectory";
    case RunMode::validate: return "validate";
    case RunMode::sweep: return "sweep";
    case RunMode::fit: return "fit";
  }
  return "?";
}

namespace {

// Lossless but readable: shortest of %.12g / %.17g that round-trips.
std::string format_exact(double v) {
  std::string s = util::format_double(v, 12);
  if (std::strtod(s.c_str(), nullptr) != v) s = util::format_double(v, 17);
  return s;
}

double parse_double(const std::string& value, const std::string& context) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw ConfigError("malformed number '" + value + "' (" + context + ")");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& value, const std::string& context) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || value.find('-') != std::string::npos) {
    throw ConfigError("malformed integer '" + value + "' (" + context + ")");
  }
  return static_cast<std::uint64_t>(v);
}

int parse_int(const std::string& value, const std::string& context) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0') {
    throw ConfigError("malformed integer '" + value + "' (" + context + ")");
  }
  return static_cast<int>(v);
}

bool parse_bool(const std::string& value, const std::string& context) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("malformed boolean '" + value + "' (" + context +
                    "), expected true/false");
}

TransitionId parse_transition(const std::string& value,
                              const std::string& context) {
  if (value == "t12") return TransitionId::t12;
  if (value == "t13") return TransitionId::t13;
  if (value == "t23") return TransitionId::t23;
  throw ConfigError("unknown transition '" + value + "' (" + context +
                    "), expected t12|t13|t23");
}

StepperKind parse_stepper(const std::string& value, const std::string& context) {
  if (value == "first_order") return StepperKind::first_order;
  if (value == "exponential") return StepperKind::exponential;
  throw ConfigError("unknown stepper '" + value + "' (" + context +
                    "), expected first_order|exponential");
}

hilbert::StateVector parse_initial_state(const std::string& value,
                                         const std::string& context) {
  if (value.size() == 3 && value[1] == ',' && value[0] >= '1' && value[0] <= '3' &&
      value[2] >= '1' && value[2] <= '3') {
    return hilbert::StateVector::basis(static_cast<Level>(value[0] - '0'),
                                       static_cast<Level>(value[2] - '0'));
  }
  throw ConfigError("malformed initial state '" + value + "' (" + context +
                    "), expected n,m with levels in 1..3");
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

struct Setting {
  std::string value;
  std::string context;
};

RunConfig defaults_for(RunMode mode) {
  RunConfig c;
  c.mode = mode;
  switch (mode) {
    case RunMode::trajectory:
      c.params.t_max = 5000.0;
      c.trajectories = 1;
      break;
    case RunMode::validate:
      c.params.t_max = 20.0;
      c.trajectories = 2000;
      c.sample_every = 500;
      break;
    case RunMode::sweep:
      c.params.t_max = 2000.0;
      c.trajectories = 24;
      break;
    case RunMode::coupling_scan:
    case RunMode::fit:
      break;
  }
  return c;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  const auto fmt = [](double v) { return format_exact(v); };
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("mode", to_string(mode));
  kv.emplace_back("seed", std::to_string(params.seed));
  kv.emplace_back("rabi", fmt(params.rabi));
  kv.emplace_back("gamma13", fmt(params.rates.gamma13));
  kv.emplace_back("gamma12", fmt(params.rates.gamma12));
  kv.emplace_back("gamma23", fmt(params.rates.gamma23));
  kv.emplace_back("theta12", fmt(params.geom.theta12));
  kv.emplace_back("theta13", fmt(params.geom.theta13));
  kv.emplace_back("theta23", fmt(params.geom.theta23));
  kv.emplace_back("wavelength_ratio_13", fmt(params.geom.wavelength_ratio_13));
  kv.emplace_back("wavelength_ratio_23", fmt(params.geom.wavelength_ratio_23));
  kv.emplace_back("cross_13_23", params.geom.cross_13_23 ? "true" : "false");
  kv.emplace_back("r", fmt(params.geom.r));
  kv.emplace_back("dt", fmt(params.dt));
  kv.emplace_back("t_max", fmt(params.t_max));
  {
    // initial_state is always a product basis state
    const auto pops = params.initial_state.populations();
    std::string s = "?";
    for (int i = 0; i < hilbert::kDim; ++i) {
      if (pops[i] > 0.5) {
        const auto [n, m] = hilbert::levels_at(i);
        s = std::to_string(static_cast<int>(n)) + "," +
            std::to_string(static_cast<int>(m));
      }
    }
    kv.emplace_back("initial_state", s);
  }
  kv.emplace_back("transition", coupling::to_string(transition));
  kv.emplace_back("scan_points", std::to_string(scan_points));
  kv.emplace_back("r_min", fmt(r_min));
  kv.emplace_back("r_max", fmt(r_max));
  kv.emplace_back("r_points", std::to_string(r_points));
  kv.emplace_back("trajectories", std::to_string(trajectories));
  kv.emplace_back("bin_width", fmt(bin_width));
  kv.emplace_back("threshold", std::to_string(threshold));
  kv.emplace_back("sample_every", std::to_string(sample_every));
  kv.emplace_back("resets", resets ? "true" : "false");
  kv.emplace_back("stepper", dynamics::to_string(stepper));
  kv.emplace_back("checkpoint_interval", fmt(checkpoint_interval));
  kv.emplace_back("dt_ode", fmt(dt_ode));
  // workers and out are execution details with no effect on any result byte;
  // echoing them would break the file-identity-across-worker-counts contract.
  kv.emplace_back("input", input);
  return kv;
}

std::vector<double> RunConfig::sweep_r_values() const {
  std::vector<double> rs;
  rs.reserve(static_cast<std::size_t>(r_points));
  const double ratio = r_max / r_min;
  for (int k = 0; k < r_points; ++k) {
    if (k == r_points - 1) {
      rs.push_back(r_max);
    } else {
      rs.push_back(r_min *
                   std::pow(ratio, static_cast<double>(k) /
                                       static_cast<double>(r_points - 1)));
    }
  }
  return rs;
}

RunConfig parse_config(RunMode mode, const std::string& file_text,
                       std::span<const KeyValue> overrides) {
  std::map<std::string, Setting> settings;

  std::istringstream in(file_text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string context = "config line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key = value (" + context + ")");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key (" + context + ")");
    if (settings.contains(key)) {
      throw ConfigError("duplicate key '" + key + "' (" + context + ")");
    }
    settings[key] = {value, context};
  }
  for (const KeyValue& kv : overrides) {
    settings[kv.key] = {kv.value, kv.context};
  }

  RunConfig config = defaults_for(mode);
  for (const auto& [key, setting] : settings) {
    const std::string& v = setting.value;
    const std::string& cx = setting.context;
    if (key == "rabi") {
      config.params.rabi = parse_double(v, cx);
    } else if (key == "gamma13") {
      config.params.rates.gamma13 = parse_double(v, cx);
    } else if (key == "gamma12") {
      config.params.rates.gamma12 = parse_double(v, cx);
    } else if (key == "gamma23") {
      config.params.rates.gamma23 = parse_double(v, cx);
    } else if (key == "theta") {
      const double t = parse_double(v, cx);
      config.params.geom.theta12 = t;
      config.params.geom.theta13 = t;
      config.params.geom.theta23 = t;
    } else if (key == "theta12") {
      config.params.geom.theta12 = parse_double(v, cx);
    } else if (key == "theta13") {
      config.params.geom.theta13 = parse_double(v, cx);
    } else if (key == "theta23") {
      config.params.geom.theta23 = parse_double(v, cx);
    } else if (key == "wavelength_ratio_13") {
      config.params.geom.wavelength_ratio_13 = parse_double(v, cx);
    } else if (key == "wavelength_ratio_23") {
      config.params.geom.wavelength_ratio_23 = parse_double(v, cx);
    } else if (key == "cross_13_23") {
      config.params.geom.cross_13_23 = parse_bool(v, cx);
    } else if (key == "r") {
      config.params.geom.r = parse_double(v, cx);
    } else if (key == "dt") {
      config.params.dt = parse_double(v, cx);
    } else if (key == "t_max") {
      config.params.t_max = parse_double(v, cx);
    } else if (key == "seed") {
      config.params.seed = parse_u64(v, cx);
    } else if (key == "initial_state") {
      config.params.initial_state = parse_initial_state(v, cx);
    } else if (key == "transition") {
      config.transition = parse_transition(v, cx);
    } else if (key == "scan_points") {
      config.scan_points = parse_int(v, cx);
    } else if (key == "r_min") {
      config.r_min = parse_double(v, cx);
    } else if (key == "r_max") {
      config.r_max = parse_double(v, cx);
    } else if (key == "r_points") {
      config.r_points = parse_int(v, cx);
    } else if (key == "trajectories") {
      config.trajectories = parse_int(v, cx);
    } else if (key == "bin_width") {
      config.bin_width = parse_double(v, cx);
    } else if (key == "threshold") {
      config.threshold = parse_u64(v, cx);
      if (config.threshold < 1) {
        throw ConfigError("threshold must be >= 1 (" + cx + ")");
      }
    } else if (key == "sample_every") {
      config.sample_every = parse_u64(v, cx);
    } else if (key == "resets") {
      config.resets = parse_bool(v, cx);
    } else if (key == "stepper") {
      config.stepper = parse_stepper(v, cx);
    } else if (key == "checkpoint_interval") {
      config.checkpoint_interval = parse_double(v, cx);
    } else if (key == "dt_ode") {
      config.dt_ode = parse_double(v, cx);
    } else if (key == "workers") {
      config.workers = parse_int(v, cx);
    } else if (key == "out") {
      config.out_dir = v;
    } else if (key == "input") {
      config.input = v;
    } else {
      throw ConfigError("unknown key '" + key + "' (" + cx + ")");
    }
  }

  validate(config);
  return config;
}

void validate(const RunConfig& config) {
  const auto& p = config.params;
  const auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };

  require(p.rates.gamma13 > 0.0 && p.rates.gamma12 > 0.0 && p.rates.gamma23 > 0.0,
          "transition rates must be strictly positive");
  require(p.rabi >= 0.0, "rabi must be nonnegative");
  require(p.geom.r >= 0.01, "separation r must be >= 0.01 lambda12");
  for (double th : {p.geom.theta12, p.geom.theta13, p.geom.theta23}) {
    require(th >= 0.0 && th <= std::numbers::pi, "theta must lie in [0, pi]");
  }
  require(p.geom.wavelength_ratio_13 > 0.0 && p.geom.wavelength_ratio_23 > 0.0,
          "wavelength ratios must be positive");
  require(p.dt > 0.0, "dt must be positive");
  require(p.t_max >= 0.0, "t_max must be nonnegative");

  // First-order-step validity: the step must resolve both the drive and the
  // fastest total decay.
  require(p.dt * 2.0 * p.rabi <= 0.05,
          "dt too large: dt * 2*rabi must be <= 0.05");
  const double max_decay =
      std::max(4.0 * (p.rates.gamma13 + p.rates.gamma12), 4.0 * p.rates.gamma23);
  require(p.dt * 2.0 * max_decay <= 0.05,
          "dt too large: dt * 2*(max total decay rate) must be <= 0.05");

  require(config.workers >= 0, "workers must be >= 0");
  require(config.trajectories >= 1, "trajectories must be >= 1");
  require(config.bin_width > 0.0, "bin_width must be positive");
  require(config.threshold >= 1, "threshold must be >= 1");

  const auto is_multiple = [](double whole, double part) {
    const double n = std::round(whole / part);
    return n >= 0.0 && std::abs(n * part - whole) <= 1e-9 * std::max(1.0, whole);
  };

  switch (config.mode) {
    case RunMode::coupling_scan:
      require(config.r_min >= 0.01, "scan r_min must be >= 0.01 lambda12");
      require(config.r_min < config.r_max, "scan requires r_min < r_max");
      require(config.scan_points >= 2, "scan_points must be >= 2");
      break;
    case RunMode::trajectory:
      require(config.trajectories == 1, "trajectory mode runs one trajectory");
      require(is_multiple(config.bin_width, p.dt),
              "bin_width must be a whole number of steps");
      if (config.resets) {
        require(is_multiple(p.t_max, config.bin_width),
                "t_max must be a whole number of bins when resets are on");
      }
      break;
    case RunMode::validate:
      require(config.trajectories >= 2, "validate needs at least 2 trajectories");
      require(config.dt_ode > 0.0, "dt_ode must be positive");
      require(is_multiple(config.checkpoint_interval, p.dt),
              "checkpoint_interval must be a whole number of trajectory steps");
      require(is_multiple(config.checkpoint_interval, config.dt_ode),
              "checkpoint_interval must be a whole number of ODE steps");
      require(is_multiple(p.t_max, config.checkpoint_interval),
              "t_max must be a whole number of checkpoint intervals");
      break;
    case RunMode::sweep:
      require(config.r_points >= 2, "sweep needs r_points >= 2");
      require(config.r_min < config.r_max, "sweep requires r_min < r_max");
      require(config.r_min >= 0.05 && config.r_max <= 10.0,
              "sweep separations must lie in [0.05, 10] lambda12");
      require(is_multiple(config.bin_width, p.dt),
              "bin_width must be a whole number of steps");
      require(is_multiple(p.t_max, config.bin_width),
              "t_max must be a whole number of bins");
      break;
    case RunMode::fit:
      require(!config.input.empty(), "fit mode needs input = <sweep csv path>");
      break;
  }
}

}  // namespace djump::config
