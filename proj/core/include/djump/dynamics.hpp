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

#ifndef DJUMP_DYNAMICS_HPP
#define DJUMP_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "djump/coupling.hpp"
#include "djump/hilbert.hpp"
#include "djump/rng.hpp"

// The conditional (no-emission) generator, the jump-channel alphabet, and the
// single-trajectory Monte-Carlo wavefunction engine.
namespace djump::dynamics {

using hilbert::AtomId;
using hilbert::Complex;
using hilbert::Level;
using hilbert::OperatorMatrix;
using hilbert::StateVector;

struct SimulationParams {
  coupling::TransitionRates rates{};
  coupling::Geometry geom{};
  // Half the Rabi frequency of the resonant drive on |1> <-> |3>.
  double rabi = 8.0;
  double dt = 1e-3;           // units of 1/gamma13
  double t_max = 2000.0;
  std::uint64_t seed = 1;
  StateVector initial_state =
      StateVector::basis(Level::upper, Level::metastable);
};

// The operator K with one no-jump step psi <- (1 - K dt) psi. Its Hermitian
// positive part carries total decay plus collective damping; -i K restricted
// to the anti-Hermitian part reproduces the drive and exchange Hamiltonian.
struct ConditionalGenerator {
  OperatorMatrix matrix;
};

// K = sum_{n<m} sum_{ij} gamma_ij^{nm} sigma_i^{nm} sigma_j^{mn}
//     - i Omega_R sum_i (sigma_i^{13} + sigma_i^{31}),
// with gamma_ii^{nm} the per-atom half-rates and the i != j cross term
// gamma_dd + i omega_dd on the 1<->2 transition only. Resonant drive, no
// detuning terms.
ConditionalGenerator build_conditional_generator(const SimulationParams& params,
                                                 const coupling::CrossCoupling& c12);

// Fixed sampler order: det1_13, det2_13, a1_23, a2_23, coll12_sym,
// coll12_asym. a1_12/a2_12 only appear in the alternate per-atom
// decomposition used to test channel-representation invariance.
enum class ChannelLabel {
  det1_13,
  det2_13,
  a1_23,
  a2_23,
  coll12_sym,
  coll12_asym,
  a1_12,
  a2_12,
};

const char* to_string(ChannelLabel label);

// Sparse Hermitian quadratic form psi -> <psi|M|psi> for M = rate * L^dag L.
// Every channel operator maps basis states to basis states, so M has a
// handful of nonzeros; this is the per-step hot path of the sampler.
struct QuadForm {
  struct DiagTerm {
    int i;
    double w;
  };
  struct CrossTerm {
    int i;
    int j;
    Complex w;  // contributes 2 Re(w * conj(a_i) * a_j)
  };
  std::vector<DiagTerm> diag;
  std::vector<CrossTerm> cross;

  double eval(const StateVector& psi) const;
};

QuadForm make_weighted_quad(const OperatorMatrix& op, double rate);

struct JumpChannel {
  ChannelLabel label;
  OperatorMatrix op;    // collapse operator L
  double rate;          // units of gamma13
  std::optional<AtomId> detector;  // set only for the 13 detector channels
  QuadForm weighted_quad;          // rate * L^dag L
};

JumpChannel make_channel(ChannelLabel label, const OperatorMatrix& op,
                         double rate, std::optional<AtomId> detector);

// The six channels completing the conditional generator's dissipator:
// detector channels D_i = |3>_i<1| at rate 2*gamma13, undetected per-atom
// |3>_i<2| at 2*gamma23, and the symmetric/antisymmetric collective 1->2
// channels (sigma_1^{21} +- sigma_2^{21})/sqrt(2) at rates
// 2*(gamma12 +- gamma_dd). Throws NumericalError if a collective rate is
// negative (coupling-module violation).
std::vector<JumpChannel> jump_channels(const SimulationParams& params,
                                       const coupling::CrossCoupling& c12);

// Alternate representation for gamma_dd = 0: independent per-atom 1->2
// channels |2>_i<1| at rate 2*gamma12. The unraveling is basis-invariant, so
// ensembles built from either set must agree; tests enforce this.
std::vector<JumpChannel> jump_channels_independent_12(
    const SimulationParams& params);

// One first-order no-jump step (1 - K dt) psi, unnormalized.
StateVector step_no_jump(const StateVector& psi, const ConditionalGenerator& gen,
                         double dt);

enum class StepperKind { first_order, exponential };

const char* to_string(StepperKind k);

// Dense matrix exponential by scaling and squaring with a Taylor kernel.
OperatorMatrix expm(const OperatorMatrix& m);

// The per-step propagator: 1 - K dt for the first-order stepper of the
// update rule above, exp(-K dt) for the exponential one.
OperatorMatrix make_step_matrix(const ConditionalGenerator& gen, double dt,
                                StepperKind kind);

// Partition [0,1) into consecutive channel intervals of width
// p_c = rate_c dt <L_c^dag L_c> / <psi|psi> in channel order; the remainder
// is "no jump". Returns the index of the channel whose interval contains u.
// Throws NumericalError if sum p_c >= 1 (timestep too large for this state).
std::optional<std::size_t> sample_jump(const StateVector& psi,
                                       std::span<const JumpChannel> channels,
                                       double dt, double u);

// normalize(L psi). A zero-amplitude collapse throws NumericalError: the
// sampler never selects a channel the state cannot fire.
StateVector collapse(const StateVector& psi, const JumpChannel& channel);

struct TrajectoryEvent {
  double t;
  ChannelLabel channel;
};

struct PopulationSample {
  double t;
  std::array<double, hilbert::kDim> populations;
};

struct TrajectoryResult {
  std::vector<TrajectoryEvent> events;
  std::vector<PopulationSample> samples;
  StateVector final_state;
  std::uint64_t steps = 0;
};

// Structurally-sparse matrix-vector product. The first-order step matrix
// 1 - K dt has ~29 of 81 entries populated; skipping the structural zeros at
// build time keeps the per-step cost down without changing a single flop on
// the populated entries.
struct SparseMatrix {
  struct Entry {
    int col;
    Complex w;
  };
  std::array<std::uint8_t, hilbert::kDim + 1> row_start{};
  std::vector<Entry> entries;

  static SparseMatrix from_dense(const OperatorMatrix& m);
  StateVector apply(const StateVector& psi) const;
};

// Incremental engine: one dt step per advance() (sample, then collapse or
// no-jump + renormalize). The caller owns bin bookkeeping and any state
// re-preparation between steps.
class TrajectoryCursor {
 public:
  TrajectoryCursor(const SimulationParams& params,
                   std::span<const JumpChannel> channels,
                   const ConditionalGenerator& gen, rng::PhiloxStream& stream,
                   StepperKind stepper = StepperKind::first_order);

  // Advances by dt; returns the index of the fired channel, if any.
  std::optional<std::size_t> advance();

  const StateVector& state() const { return psi_; }
  void set_state(const StateVector& psi) { psi_ = psi; }

  std::uint64_t step_count() const { return step_; }
  double time() const { return static_cast<double>(step_) * dt_; }
  double dt() const { return dt_; }
  std::span<const JumpChannel> channels() const { return channels_; }

 private:
  std::span<const JumpChannel> channels_;
  SparseMatrix step_matrix_;
  StateVector psi_;
  rng::PhiloxStream* stream_;
  double dt_;
  std::uint64_t step_ = 0;
};

struct TrajectoryOptions {
  std::uint64_t sample_every = 0;  // steps between population samples; 0 = off
  StepperKind stepper = StepperKind::first_order;
  bool record_events = true;
};

// Full single-trajectory run from params.initial_state to t_max. Renormalizes
// every step, records every jump event, and is bit-reproducible given the
// stream. Step/sampler errors are rethrown with the step index attached.
TrajectoryResult run_trajectory(const SimulationParams& params,
                                std::span<const JumpChannel> channels,
                                const ConditionalGenerator& gen,
                                rng::PhiloxStream& stream,
                                const TrajectoryOptions& options = {});

}  // namespace djump::dynamics

#endif  // DJUMP_DYNAMICS_HPP
