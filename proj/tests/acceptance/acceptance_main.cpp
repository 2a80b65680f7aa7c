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

// Acceptance suite: one criterion per function, one [PASS]/[FAIL] line each.
// Run all: djump_acceptance. Run a subset: djump_acceptance 1 4 8.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "djump/config.hpp"
#include "djump/jumpstats.hpp"
#include "djump/runner.hpp"
#include "djump/stats.hpp"
#include "djump/util.hpp"

using namespace djump;
using dynamics::SimulationParams;
using hilbert::Level;
using hilbert::StateVector;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) {
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

struct Model {
  SimulationParams params;
  coupling::CrossCoupling c12;
  dynamics::ConditionalGenerator gen;
  std::vector<dynamics::JumpChannel> channels;

  explicit Model(const SimulationParams& p) : params(p) {
    c12 = coupling::cross_coupling(coupling::TransitionId::t12, params.rates,
                                   params.geom);
    gen = dynamics::build_conditional_generator(params, c12);
    channels = dynamics::jump_channels(params, c12);
  }
};

coupling::CrossCoupling eval_coupling(double x, double theta) {
  coupling::TransitionRates rates;
  rates.gamma12 = 1.0;
  coupling::Geometry geom;
  geom.r = x / (2.0 * kPi);
  geom.theta12 = theta;
  return coupling::cross_coupling(coupling::TransitionId::t12, rates, geom);
}

std::string fmt(double v, int digits = 4) {
  return util::format_double(v, digits);
}

// -- criterion 1 -------------------------------------------------------------

Outcome criterion1_coupling_limits() {
  Outcome out;

  const double contact = eval_coupling(1e-3, kPi / 2).gamma_dd;
  out.require(std::abs(contact - 1.0) <= 1e-4,
              "gamma_dd(kr=1e-3)/gamma = " + fmt(contact, 8));

  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = 1e-3 * std::pow(1e5, i / 49.0);
    for (int j = 0; j <= 8; ++j) {
      worst = std::max(worst, std::abs(eval_coupling(x, kPi * j / 8.0).gamma_dd));
    }
  }
  out.require(worst <= 1.0 + 1e-9, "max |gamma_dd|/gamma = " + fmt(worst, 10));

  for (double theta : {0.0, kPi / 2}) {
    const double x = 1e-3;
    const double b = 1.0 - 3.0 * std::cos(theta) * std::cos(theta);
    const double ratio = eval_coupling(x, theta).omega_dd * x * x * x / (1.5 * b);
    out.require(std::abs(std::abs(ratio) - 1.0) <= 1e-2,
                "near-field ratio(theta=" + fmt(theta) + ") = " + fmt(ratio, 6));
  }

  const double magic = std::acos(1.0 / std::sqrt(3.0));
  double worst_magic = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double x = 0.05 * std::pow(1e3, k / 19.0);
    const double val = std::sqrt(eval_coupling(x, magic).abs_sq()) * x;
    worst_magic = std::max(worst_magic, std::abs(val - 1.0));
  }
  out.require(worst_magic <= 1e-12,
              "magic-angle deviation " + fmt(worst_magic, 3));
  return out;
}

// -- criterion 2 -------------------------------------------------------------

Outcome criterion2_exchange_growth() {
  Outcome out;
  const SimulationParams base;  // r = 0.5 lambda12 defaults
  const coupling::CrossCoupling c12 = coupling::cross_coupling(
      coupling::TransitionId::t12, base.rates, base.geom);
  const double g2 = c12.abs_sq();

  for (double t : {1e-2, 1e-3, 1e-4}) {
    SimulationParams p = base;
    p.dt = t / 100.0;
    const dynamics::ConditionalGenerator gen =
        dynamics::build_conditional_generator(p, c12);
    StateVector psi = StateVector::basis(Level::upper, Level::metastable);
    for (int k = 0; k < 100; ++k) psi = dynamics::step_no_jump(psi, gen, p.dt);
    const double p21 = std::norm(
        psi[hilbert::basis_index(Level::metastable, Level::upper)]);
    const double ratio = p21 / (g2 * t * t);
    out.require(std::abs(ratio - 1.0) <= 0.05,
                "ratio(t=" + fmt(t) + ") = " + fmt(ratio, 6));
    if (std::abs(ratio - 1.0) <= 0.05 && t == 1e-4) {
      out.note("ratio(t=1e-4) = " + fmt(ratio, 6));
    }
  }
  return out;
}

// -- criterion 3 -------------------------------------------------------------

Outcome criterion3_unraveling_equivalence() {
  Outcome out;
  const config::RunConfig cfg = config::parse_config(
      config::RunMode::validate, "", std::vector<config::KeyValue>{});
  const runner::ValidationReport report = runner::run_validation(cfg);
  double worst = 0.0;
  double worst_t = 0.0;
  for (const auto& row : report.rows) {
    for (int p = 0; p < hilbert::kDim; ++p) {
      const double d = std::abs(row.ensemble_mean[p] - row.oracle[p]);
      const double b = std::max(4.0 * row.ensemble_se[p], 0.02);
      if (d / b > worst) {
        worst = d / b;
        worst_t = row.t;
      }
    }
  }
  out.require(report.pass, "population deviation exceeded max(4 SE, 0.02)");
  out.note("2000 trajectories, 41 checkpoints, worst |dp|/bound = " +
           fmt(worst, 3) + " at t=" + fmt(worst_t, 3));
  return out;
}

// -- criterion 4 -------------------------------------------------------------

Outcome criterion4_waiting_time() {
  Outcome out;
  SimulationParams p;
  p.rabi = 0.0;
  p.t_max = 20.0;
  p.initial_state = StateVector::basis(Level::upper, Level::ground);
  const Model m(p);

  const int n = 10000;
  std::vector<double> first_jump(n, -1.0);
  util::parallel_for(n, 0, [&](std::size_t i) {
    rng::PhiloxStream stream(p.seed, i);
    dynamics::TrajectoryCursor cursor(p, m.channels, m.gen, stream);
    const auto total = static_cast<std::uint64_t>(std::llround(p.t_max / p.dt));
    for (std::uint64_t k = 0; k < total; ++k) {
      if (cursor.advance()) {
        first_jump[i] = static_cast<double>(k + 1) * p.dt;
        return;
      }
    }
  });
  for (double t : first_jump) {
    if (t < 0.0) {
      out.require(false, "a trajectory produced no jump within t_max");
      return out;
    }
  }

  const double rate = 2.0 * (p.rates.gamma13 + p.rates.gamma12);
  double d = 0.0;
  const double pval = stats::ks_test_exponential(first_jump, rate, &d);
  const double rate_est = 1.0 / stats::mean(first_jump);
  out.require(pval > 0.01, "KS p = " + fmt(pval, 4));
  out.require(std::abs(rate_est / rate - 1.0) <= 0.03,
              "rate estimate off by " + fmt(100.0 * (rate_est / rate - 1.0), 3) + "%");
  out.note("KS p = " + fmt(pval, 3) + ", rate " + fmt(rate_est, 5) + " vs " +
           fmt(rate, 5));
  return out;
}

// -- criterion 5 -------------------------------------------------------------

Outcome criterion5_complementarity() {
  Outcome out;
  SimulationParams p;  // defaults, r = 0.5
  p.t_max = 50000.0;
  const Model m(p);
  const int n_traj = 4;

  std::vector<std::uint64_t> bb(n_traj), total(n_traj);
  util::parallel_for(n_traj, 0, [&](std::size_t i) {
    rng::PhiloxStream stream(p.seed, i);
    const auto res =
        jumpstats::run_flip_experiment(p, m.channels, m.gen, stream, 50.0, 3, {});
    for (const jumpstats::BinClass c : res.classes) {
      if (c == jumpstats::BinClass::both_bright) ++bb[i];
    }
    total[i] = res.classes.size();
  });
  std::uint64_t bb_sum = 0, total_sum = 0;
  for (int i = 0; i < n_traj; ++i) {
    bb_sum += bb[i];
    total_sum += total[i];
  }
  const double fraction = double(bb_sum) / double(total_sum);
  out.require(fraction < 0.05,
              "both-bright fraction = " + fmt(fraction, 4));
  out.note(fmt(100.0 * fraction, 3) + "% of " + std::to_string(total_sum) +
           " bins both-bright");
  return out;
}

// -- criterion 6 -------------------------------------------------------------

Outcome criterion6_flip_rate_shape() {
  Outcome out;
  SimulationParams p;  // gamma12/gamma13 = 2e-2, Omega_R = 8
  const config::RunConfig cfg = config::parse_config(
      config::RunMode::sweep, "", std::vector<config::KeyValue>{});
  const std::vector<double> rs = cfg.sweep_r_values();  // 12 log pts [0.1, 3]

  const auto points =
      jumpstats::flip_sweep(p, rs, 36, 50000.0, 50.0, 3, 0);

  std::vector<double> f, g;
  for (const auto& sp : points) {
    f.push_back(sp.flip_rate);
    g.push_back(sp.abs_gamma12_sq);
  }
  for (int i = 0; i < 3; ++i) {
    out.require(points[i].flips >= 20,
                "only " + std::to_string(points[i].flips) + " flips at r = " +
                    fmt(points[i].r, 3));
  }
  const double corr = stats::pearson(f, g);
  out.require(corr >= 0.9, "Pearson correlation = " + fmt(corr, 4));
  out.note("corr = " + fmt(corr, 4) + ", flips at 3 smallest r: " +
           std::to_string(points[0].flips) + "/" + std::to_string(points[1].flips) +
           "/" + std::to_string(points[2].flips));
  return out;
}

// -- criterion 7 -------------------------------------------------------------

Outcome criterion7_scaling_stability() {
  Outcome out;
  // Fit grid concentrated where the exchange signal lives; trajectory budget
  // scaled by roughly 1/gamma12^2 so each ratio accumulates comparable flip
  // counts (a few hundred, so the spread verdict is not noise-limited).
  //
  // Known systematic: the fitted c_s falls as gamma12 grows. Two effects
  // compound: at gamma12 = 2e-2 a bright segment lasts ~1 bin, so the
  // pre/post-bin conditions of the bin-level flip classifier are met less
  // often than at 5e-3 (~4-bin segments), and at r = 0.1 the exchange
  // amplitude |gamma_12| ~ 0.1 gamma13 starts to saturate against the
  // detector projection rate. Both are properties of the counting protocol
  // (50/gamma13 bins, threshold classifier, re-preparation), not estimator
  // noise, and together they have measured just above the factor-2 gate.
  const std::vector<double> rs = {0.1, 0.1414, 0.2, 0.2828, 0.4};
  struct RatioRun {
    double ratio;
    int trajectories;
  };
  const RatioRun runs[] = {{5e-3, 96}, {1e-2, 32}, {2e-2, 12}};

  std::vector<double> cs;
  std::string detail;
  for (const RatioRun& rr : runs) {
    SimulationParams p;
    p.rates.gamma12 = rr.ratio;
    const auto points =
        jumpstats::flip_sweep(p, rs, rr.trajectories, 50000.0, 50.0, 3, 0);
    std::uint64_t flips = 0;
    for (const auto& sp : points) flips += sp.flips;
    const jumpstats::FitResult fit = jumpstats::fit_scaling(points);
    cs.push_back(fit.c_s);
    detail += (detail.empty() ? "" : ", ") + std::string("c_s(") +
              fmt(rr.ratio, 3) + ") = " + fmt(fit.c_s, 4) + " [" +
              std::to_string(flips) + " flips]";
  }

  const double lo = *std::min_element(cs.begin(), cs.end());
  const double hi = *std::max_element(cs.begin(), cs.end());
  out.require(lo > 0.0 && hi / lo <= 2.0,
              "c_s spread factor = " + fmt(lo > 0 ? hi / lo : -1.0, 4));
  // c_s = 2 is the reference value for this geometry; the flip-rate
  // normalization behind it is convention-dependent, so the magnitude is
  // reported alongside but not gated.
  out.note(detail + "; spread factor " + fmt(lo > 0 ? hi / lo : -1.0, 3) +
           "; reference c_s = 2, |c_s - 2| = " + fmt(std::abs(cs.back() - 2.0), 3));
  return out;
}

// -- criterion 8 -------------------------------------------------------------

Outcome criterion8_determinism_and_threshold() {
  Outcome out;
  namespace fs = std::filesystem;

  // (a) byte-identical sweep CSV across worker counts.
  std::vector<std::string> texts;
  for (int workers : {1, 4, 8}) {
    const fs::path dir =
        fs::temp_directory_path() / ("djump_acc8_" + std::to_string(workers));
    fs::create_directories(dir);
    const std::vector<config::KeyValue> overrides = {
        {"r_points", "3", "acc"},      {"trajectories", "4", "acc"},
        {"t_max", "500", "acc"},       {"workers", std::to_string(workers), "acc"},
        {"out", dir.string(), "acc"},
    };
    const config::RunConfig cfg =
        config::parse_config(config::RunMode::sweep, "", overrides);
    runner::run(cfg);
    std::ifstream in(dir / "sweep.csv", std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    texts.push_back(ss.str());
    fs::remove_all(dir);
  }
  out.require(texts[0] == texts[1] && texts[1] == texts[2],
              "sweep CSV differs across worker counts");

  // (b) flip-count stability across brightness thresholds at r = 0.3.
  //
  // Known systematic: an exchange flip lands at a uniform position inside a
  // bin, and with ~50 clicks per bright bin the transition bin reads
  // both-bright (vetoing the flip and re-preparing) unless the flip falls
  // within ~threshold clicks of a boundary. Detection therefore grows with
  // the threshold; the measured spread across {2,3,5,8} is ~40%, not <10%.
  // The four runs share seed and streams, so the spread is systematic
  // reclassification, not Poisson noise.
  SimulationParams p;
  std::vector<std::uint64_t> flips;
  std::string counts;
  for (std::uint64_t thr : {2ull, 3ull, 5ull, 8ull}) {
    const auto points = jumpstats::flip_sweep(p, std::vector<double>{0.3}, 48,
                                              50000.0, 50.0, thr, 0);
    flips.push_back(points[0].flips);
    counts += (counts.empty() ? "" : "/") + std::to_string(points[0].flips);
  }
  const auto lo = *std::min_element(flips.begin(), flips.end());
  const auto hi = *std::max_element(flips.begin(), flips.end());
  const double spread = lo > 0 ? double(hi) / double(lo) - 1.0 : 1e9;
  out.require(spread <= 0.10, "flip counts across thresholds {2,3,5,8}: " +
                                  counts + " (spread " +
                                  fmt(100.0 * spread, 3) + "%)");
  if (spread <= 0.10) {
    out.note("flips " + counts + ", spread " + fmt(100.0 * spread, 3) + "%");
  }
  return out;
}

struct Criterion {
  int number;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "coupling limits", criterion1_coupling_limits},
    {2, "exchange-term generation", criterion2_exchange_growth},
    {3, "unraveling equivalence", criterion3_unraveling_equivalence},
    {4, "waiting-time law", criterion4_waiting_time},
    {5, "complementarity", criterion5_complementarity},
    {6, "flip-rate shape", criterion6_flip_rate_shape},
    {7, "scaling-factor stability", criterion7_scaling_stability},
    {8, "determinism and threshold robustness", criterion8_determinism_and_threshold},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (!selected.empty() && !selected.contains(c.number)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] criterion %d: %s (%.1fs%s%s)\n",
                outcome.pass ? "PASS" : "FAIL", c.number, c.name, secs,
                outcome.detail.empty() ? "" : "; ", outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures;
}
