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

#include <doctest.h>

#include <cmath>

#include "djump/oracle.hpp"
#include "djump/rng.hpp"

using namespace djump;
using namespace djump::oracle;
using dynamics::ConditionalGenerator;
using dynamics::JumpChannel;
using dynamics::SimulationParams;
using hilbert::basis_index;
using hilbert::Complex;
using hilbert::kDim;
using hilbert::Level;
using hilbert::StateVector;

namespace {

struct Model {
  SimulationParams params;
  coupling::CrossCoupling c12;
  ConditionalGenerator gen;
  std::vector<JumpChannel> channels;
};

Model make_model(const SimulationParams& params) {
  Model m;
  m.params = params;
  m.c12 = coupling::cross_coupling(coupling::TransitionId::t12, params.rates,
                                   params.geom);
  m.gen = dynamics::build_conditional_generator(params, m.c12);
  m.channels = dynamics::jump_channels(params, m.c12);
  return m;
}

DensityMatrix random_density(rng::PhiloxStream& s) {
  // A A^dag normalized to unit trace: Hermitian, positive, trace one.
  hilbert::OperatorMatrix a;
  for (auto& x : a.e) x = Complex(s.uniform() - 0.5, s.uniform() - 0.5);
  hilbert::OperatorMatrix m = a * a.adjoint();
  Complex tr = 0.0;
  for (int i = 0; i < kDim; ++i) tr += m.at(i, i);
  m *= Complex(1.0) / tr;
  DensityMatrix rho;
  rho.m = m;
  return rho;
}

// Population of atom 1 in the upper level.
double atom1_upper(const DensityMatrix& rho) {
  const auto p = rho.populations();
  return p[0] + p[1] + p[2];
}

}  // namespace

TEST_CASE("dark state is stationary with the drive off") {
  SimulationParams p;
  p.rabi = 0.0;
  const Model m = make_model(p);
  const DensityMatrix rho =
      DensityMatrix::from_pure(StateVector::basis(Level::ground, Level::ground));
  const DensityMatrix rhs = lindblad_rhs(rho, m.gen, m.channels);
  CHECK(hilbert::max_abs_entry(rhs.m) < 1e-15);
}

TEST_CASE("lindblad rhs is trace-free on random density matrices") {
  const Model m = make_model(SimulationParams{});
  rng::PhiloxStream s(5, 0);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = random_density(s);
    CHECK(std::abs(lindblad_rhs(rho, m.gen, m.channels).trace()) < 1e-12);
  }
}

TEST_CASE("population of |1,2> drains at 2(gamma13 + gamma12)") {
  SimulationParams p;
  p.rabi = 0.0;
  p.rates.gamma23 = 0.0;  // bare level-1 leak only
  const Model m = make_model(p);
  const DensityMatrix rho = DensityMatrix::from_pure(
      StateVector::basis(Level::upper, Level::metastable));
  const DensityMatrix rhs = lindblad_rhs(rho, m.gen, m.channels);
  const int idx = basis_index(Level::upper, Level::metastable);
  const double expected = -2.0 * (p.rates.gamma13 + p.rates.gamma12);
  CHECK(rhs.m.at(idx, idx).real() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("integrate with t_end = 0 returns the initial checkpoint") {
  const Model m = make_model(SimulationParams{});
  const DensityMatrix rho0 = DensityMatrix::from_pure(m.params.initial_state);
  const auto cps = integrate(rho0, m.gen, m.channels, 0.0, {});
  REQUIRE(cps.size() == 1);
  CHECK(cps[0].t == 0.0);
  CHECK(hilbert::max_abs_entry(cps[0].rho.m - rho0.m) == 0.0);
}

TEST_CASE("pure driving reproduces the closed-form Rabi flopping") {
  // No decay: each atom flops as sin^2(Omega_R t), full inversion period
  // 2 pi / (2 Omega_R).
  SimulationParams p;
  p.rates = {0.0, 0.0, 0.0};
  p.rabi = 8.0;
  const ConditionalGenerator gen = dynamics::build_conditional_generator(p, {});
  const std::vector<JumpChannel> no_channels;
  const DensityMatrix rho0 =
      DensityMatrix::from_pure(StateVector::basis(Level::ground, Level::ground));

  IntegrateOptions opt;
  opt.dt = 1e-4;
  opt.checkpoint_interval = 0.01;
  const auto cps = integrate(rho0, gen, no_channels, 0.8, opt);
  for (const OracleCheckpoint& cp : cps) {
    const double expected = std::pow(std::sin(p.rabi * cp.t), 2);
    CHECK(atom1_upper(cp.rho) == doctest::Approx(expected).epsilon(1e-6));
  }

  // Full inversion happens inside the window: some checkpoint sits within
  // 1e-4 of the sin^2 maximum.
  double peak = 0.0;
  for (const OracleCheckpoint& cp : cps) peak = std::max(peak, atom1_upper(cp.rho));
  CHECK(peak == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("driven two-level steady state matches the optical Bloch value") {
  // Drive on, 1->2 and 2->3 leaks off: each atom saturates at
  // Omega_R^2 / (2 Omega_R^2 + gamma13^2).
  SimulationParams p;
  p.rates.gamma12 = 0.0;
  p.rates.gamma23 = 0.0;
  const Model m = make_model(p);
  const DensityMatrix rho0 =
      DensityMatrix::from_pure(StateVector::basis(Level::ground, Level::ground));
  IntegrateOptions opt;
  opt.dt = 2e-4;
  opt.checkpoint_interval = 1.0;
  const auto cps = integrate(rho0, m.gen, m.channels, 30.0, opt);

  const double rabi2 = p.rabi * p.rabi;
  const double expected = rabi2 / (2.0 * rabi2 + p.rates.gamma13 * p.rates.gamma13);
  CHECK(atom1_upper(cps.back().rho) == doctest::Approx(expected).epsilon(1e-4));
  // Detector click rate prediction: 2 gamma13 p1.
  CHECK(2.0 * p.rates.gamma13 * atom1_upper(cps.back().rho) ==
        doctest::Approx(2.0 * expected).epsilon(1e-4));
}

TEST_CASE("checkpoints preserve trace, hermiticity and positivity") {
  const Model m = make_model(SimulationParams{});
  const DensityMatrix rho0 = DensityMatrix::from_pure(m.params.initial_state);
  const auto cps = integrate(rho0, m.gen, m.channels, 5.0, {});
  REQUIRE(cps.size() == 11);
  for (const OracleCheckpoint& cp : cps) {
    CHECK(std::abs(cp.rho.trace() - Complex(1.0)) < 1e-9);
    CHECK(cp.rho.hermiticity_error() < 1e-10);
    CHECK(cp.rho.min_eigenvalue() > -1e-8);
  }
}

TEST_CASE("integrate aborts on an invariant violation with the offending time") {
  const Model m = make_model(SimulationParams{});
  DensityMatrix bad = DensityMatrix::from_pure(m.params.initial_state);
  bad.m.at(0, 3) = Complex(0.2, 0.0);  // breaks hermiticity
  try {
    integrate(bad, m.gen, m.channels, 1.0, {});
    FAIL("expected a NumericalError");
  } catch (const NumericalError& e) {
    const std::string what = e.what();
    CHECK(what.find("hermiticity") != std::string::npos);
    CHECK(what.find("t=0.0") != std::string::npos);
  }
}

TEST_CASE("step halving moves the default-parameter endpoint by < 1e-8") {
  const Model m = make_model(SimulationParams{});
  const DensityMatrix rho0 = DensityMatrix::from_pure(m.params.initial_state);

  IntegrateOptions coarse;
  coarse.checkpoint_interval = 20.0;
  IntegrateOptions fine = coarse;
  fine.dt = coarse.dt / 2.0;

  const auto a = integrate(rho0, m.gen, m.channels, 20.0, coarse);
  const auto b = integrate(rho0, m.gen, m.channels, 20.0, fine);
  const auto pa = a.back().rho.populations();
  const auto pb = b.back().rho.populations();
  double max_diff = 0.0;
  for (int i = 0; i < kDim; ++i)
    max_diff = std::max(max_diff, std::abs(pa[i] - pb[i]));
  CHECK(max_diff < 1e-8);
}

TEST_CASE("trajectory ensemble tracks the oracle (small-N smoke)") {
  SimulationParams p;
  p.t_max = 5.0;
  const Model m = make_model(p);

  const int n = 300;
  const std::uint64_t sample_every = 500;  // 0.5 time units
  std::vector<std::array<double, kDim>> sums(11);
  for (auto& s : sums) s.fill(0.0);
  for (int i = 0; i < n; ++i) {
    rng::PhiloxStream stream(p.seed, static_cast<std::uint64_t>(i));
    dynamics::TrajectoryOptions options;
    options.sample_every = sample_every;
    options.record_events = false;
    const auto res = dynamics::run_trajectory(p, m.channels, m.gen, stream, options);
    REQUIRE(res.samples.size() == sums.size());
    for (std::size_t c = 0; c < sums.size(); ++c)
      for (int q = 0; q < kDim; ++q)
        sums[c][q] += res.samples[c].populations[q];
  }

  const auto cps = integrate(DensityMatrix::from_pure(p.initial_state), m.gen,
                             m.channels, p.t_max, {});
  REQUIRE(cps.size() == sums.size());
  for (std::size_t c = 0; c < sums.size(); ++c) {
    const auto oracle_p = cps[c].rho.populations();
    for (int q = 0; q < kDim; ++q) {
      const double mean = sums[c][q] / n;
      // 4 sigma of a [0,1] observable at n = 300 is at most ~0.12; use the
      // generous binomial bound rather than per-population variance here.
      const double bound = std::max(4.0 * 0.5 / std::sqrt(double(n)), 0.02);
      CHECK(std::abs(mean - oracle_p[q]) < bound);
    }
  }
}
