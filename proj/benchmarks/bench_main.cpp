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

#include <benchmark/benchmark.h>

#include "djump/dynamics.hpp"
#include "djump/jumpstats.hpp"
#include "djump/oracle.hpp"

using namespace djump;

namespace {

struct Model {
  dynamics::SimulationParams params;
  coupling::CrossCoupling c12;
  dynamics::ConditionalGenerator gen;
  std::vector<dynamics::JumpChannel> channels;

  explicit Model(double r = 0.5) {
    params.geom.r = r;
    c12 = coupling::cross_coupling(coupling::TransitionId::t12, params.rates,
                                   params.geom);
    gen = dynamics::build_conditional_generator(params, c12);
    channels = dynamics::jump_channels(params, c12);
  }
};

void BM_CrossCoupling(benchmark::State& state) {
  const coupling::TransitionRates rates;
  coupling::Geometry geom;
  double r = 0.1;
  for (auto _ : state) {
    geom.r = r;
    benchmark::DoNotOptimize(
        coupling::cross_coupling(coupling::TransitionId::t12, rates, geom));
    r = r < 3.0 ? r + 1e-3 : 0.1;
  }
}
BENCHMARK(BM_CrossCoupling);

void BM_TrajectoryStep(benchmark::State& state) {
  const Model m;
  rng::PhiloxStream stream(1, 0);
  dynamics::TrajectoryCursor cursor(m.params, m.channels, m.gen, stream);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cursor.advance());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TrajectoryStep);

void BM_TrajectoryStepExponential(benchmark::State& state) {
  const Model m;
  rng::PhiloxStream stream(1, 0);
  dynamics::TrajectoryCursor cursor(m.params, m.channels, m.gen, stream,
                                    dynamics::StepperKind::exponential);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cursor.advance());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TrajectoryStepExponential);

void BM_LindbladRhs(benchmark::State& state) {
  const Model m;
  const oracle::DensityMatrix rho =
      oracle::DensityMatrix::from_pure(m.params.initial_state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::lindblad_rhs(rho, m.gen, m.channels));
  }
}
BENCHMARK(BM_LindbladRhs);

void BM_FlipExperimentBin(benchmark::State& state) {
  // One 50/gamma13 bin of the flip experiment per iteration.
  Model m(0.15);
  m.params.t_max = 50.0;
  for (auto _ : state) {
    rng::PhiloxStream stream(1, 0);
    benchmark::DoNotOptimize(jumpstats::run_flip_experiment(
        m.params, m.channels, m.gen, stream, 50.0, 3, {}));
  }
}
BENCHMARK(BM_FlipExperimentBin);

}  // namespace

BENCHMARK_MAIN();
