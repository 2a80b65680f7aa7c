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

#include "djump/dynamics.hpp"

#include <cmath>
#include <string>

namespace djump::dynamics {

using hilbert::apply;
using hilbert::basis_index;
using hilbert::kDim;
using hilbert::sigma;

const char* to_string(ChannelLabel label) {
  switch (label) {
    case ChannelLabel::det1_13: return "det1_13";
    case ChannelLabel::det2_13: return "det2_13";
    case ChannelLabel::a1_23: return "a1_23";
    case ChannelLabel::a2_23: return "a2_23";
    case ChannelLabel::coll12_sym: return "coll12_sym";
    case ChannelLabel::coll12_asym: return "coll12_asym";
    case ChannelLabel::a1_12: return "a1_12";
    case ChannelLabel::a2_12: return "a2_12";
  }
  return "?";
}

const char* to_string(StepperKind k) {
  return k == StepperKind::first_order ? "first_order" : "exponential";
}

ConditionalGenerator build_conditional_generator(
    const SimulationParams& params, const coupling::CrossCoupling& c12) {
  const double g13 = params.rates.gamma13;
  const double g12 = params.rates.gamma12;
  const double g23 = params.rates.gamma23;

  OperatorMatrix k;
  for (AtomId atom : {AtomId::atom1, AtomId::atom2}) {
    // sigma^{nm} sigma^{mn} = |n><n|: per-atom decay projectors. Level 1
    // bleeds on both 1->3 and 1->2, level 2 on 2->3.
    k += Complex(g13 + g12) * sigma(atom, Level::upper, Level::upper);
    k += Complex(g23) * sigma(atom, Level::metastable, Level::metastable);
    // Resonant drive on |1> <-> |3>.
    k += Complex(0.0, -params.rabi) *
         (sigma(atom, Level::upper, Level::ground) +
          sigma(atom, Level::ground, Level::upper));
  }

  // Cross term gamma_12^{12} = gamma_dd + i omega_dd on the 1<->2 transition:
  // sigma_1^{12} sigma_2^{21} + sigma_2^{12} sigma_1^{21}.
  const Complex gc(c12.gamma_dd, c12.omega_dd);
  if (gc != 0.0) {
    const OperatorMatrix exchange =
        sigma(AtomId::atom1, Level::upper, Level::metastable) *
            sigma(AtomId::atom2, Level::metastable, Level::upper) +
        sigma(AtomId::atom2, Level::upper, Level::metastable) *
            sigma(AtomId::atom1, Level::metastable, Level::upper);
    k += gc * exchange;
  }

  return {k};
}

double QuadForm::eval(const StateVector& psi) const {
  double s = 0.0;
  for (const DiagTerm& d : diag) s += d.w * std::norm(psi[d.i]);
  for (const CrossTerm& c : cross) {
    s += 2.0 * (c.w * std::conj(psi[c.i]) * psi[c.j]).real();
  }
  return s;
}

QuadForm make_weighted_quad(const OperatorMatrix& op, double rate) {
  const OperatorMatrix m = Complex(rate) * (op.adjoint() * op);
  QuadForm q;
  for (int i = 0; i < kDim; ++i) {
    if (std::abs(m.at(i, i)) > 0.0) q.diag.push_back({i, m.at(i, i).real()});
    for (int j = i + 1; j < kDim; ++j) {
      if (std::abs(m.at(i, j)) > 0.0) q.cross.push_back({i, j, m.at(i, j)});
    }
  }
  return q;
}

JumpChannel make_channel(ChannelLabel label, const OperatorMatrix& op,
                         double rate, std::optional<AtomId> detector) {
  return {label, op, rate, detector, make_weighted_quad(op, rate)};
}

std::vector<JumpChannel> jump_channels(const SimulationParams& params,
                                       const coupling::CrossCoupling& c12) {
  const double g13 = params.rates.gamma13;
  const double g12 = params.rates.gamma12;
  const double g23 = params.rates.gamma23;

  const double rate_sym = 2.0 * (g12 + c12.gamma_dd);
  const double rate_asym = 2.0 * (g12 - c12.gamma_dd);
  if (rate_sym < 0.0 || rate_asym < 0.0) {
    throw NumericalError(
        "collective 1->2 rate is negative: |gamma_dd| exceeds gamma12 "
        "(coupling-module positive-semidefiniteness violation)");
  }

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const OperatorMatrix low1 = sigma(AtomId::atom1, Level::metastable, Level::upper);
  const OperatorMatrix low2 = sigma(AtomId::atom2, Level::metastable, Level::upper);

  std::vector<JumpChannel> channels;
  channels.reserve(6);
  channels.push_back(make_channel(
      ChannelLabel::det1_13, sigma(AtomId::atom1, Level::ground, Level::upper),
      2.0 * g13, AtomId::atom1));
  channels.push_back(make_channel(
      ChannelLabel::det2_13, sigma(AtomId::atom2, Level::ground, Level::upper),
      2.0 * g13, AtomId::atom2));
  channels.push_back(make_channel(
      ChannelLabel::a1_23, sigma(AtomId::atom1, Level::ground, Level::metastable),
      2.0 * g23, std::nullopt));
  channels.push_back(make_channel(
      ChannelLabel::a2_23, sigma(AtomId::atom2, Level::ground, Level::metastable),
      2.0 * g23, std::nullopt));
  channels.push_back(make_channel(ChannelLabel::coll12_sym,
                                  Complex(inv_sqrt2) * (low1 + low2), rate_sym,
                                  std::nullopt));
  channels.push_back(make_channel(ChannelLabel::coll12_asym,
                                  Complex(inv_sqrt2) * (low1 - low2), rate_asym,
                                  std::nullopt));
  return channels;
}

std::vector<JumpChannel> jump_channels_independent_12(
    const SimulationParams& params) {
  const double g13 = params.rates.gamma13;
  const double g12 = params.rates.gamma12;
  const double g23 = params.rates.gamma23;

  std::vector<JumpChannel> channels;
  channels.reserve(6);
  channels.push_back(make_channel(
      ChannelLabel::det1_13, sigma(AtomId::atom1, Level::ground, Level::upper),
      2.0 * g13, AtomId::atom1));
  channels.push_back(make_channel(
      ChannelLabel::det2_13, sigma(AtomId::atom2, Level::ground, Level::upper),
      2.0 * g13, AtomId::atom2));
  channels.push_back(make_channel(
      ChannelLabel::a1_23, sigma(AtomId::atom1, Level::ground, Level::metastable),
      2.0 * g23, std::nullopt));
  channels.push_back(make_channel(
      ChannelLabel::a2_23, sigma(AtomId::atom2, Level::ground, Level::metastable),
      2.0 * g23, std::nullopt));
  channels.push_back(make_channel(
      ChannelLabel::a1_12, sigma(AtomId::atom1, Level::metastable, Level::upper),
      2.0 * g12, std::nullopt));
  channels.push_back(make_channel(
      ChannelLabel::a2_12, sigma(AtomId::atom2, Level::metastable, Level::upper),
      2.0 * g12, std::nullopt));
  return channels;
}

StateVector step_no_jump(const StateVector& psi, const ConditionalGenerator& gen,
                         double dt) {
  StateVector out = psi;
  const StateVector kpsi = apply(gen.matrix, psi);
  for (int i = 0; i < kDim; ++i) out[i] -= dt * kpsi[i];
  return out;
}

OperatorMatrix expm(const OperatorMatrix& m) {
  // Scale until the norm is comfortably inside the Taylor radius, then square
  // back up.
  int squarings = 0;
  double scale = hilbert::frobenius_norm(m);
  while (scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  OperatorMatrix a = m;
  if (squarings > 0) a *= Complex(std::ldexp(1.0, -squarings));

  OperatorMatrix result = OperatorMatrix::identity();
  OperatorMatrix term = OperatorMatrix::identity();
  for (int k = 1; k <= 18; ++k) {
    term = term * a;
    term *= Complex(1.0 / static_cast<double>(k));
    result += term;
    if (hilbert::max_abs_entry(term) < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

OperatorMatrix make_step_matrix(const ConditionalGenerator& gen, double dt,
                                StepperKind kind) {
  if (kind == StepperKind::first_order) {
    return OperatorMatrix::identity() - Complex(dt) * gen.matrix;
  }
  return expm(Complex(-dt) * gen.matrix);
}

std::optional<std::size_t> sample_jump(const StateVector& psi,
                                       std::span<const JumpChannel> channels,
                                       double dt, double u) {
  const double n2 = psi.norm_sq();
  double total = 0.0;
  std::optional<std::size_t> hit;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    const double p = channels[c].weighted_quad.eval(psi) * dt / n2;
    if (!hit && u < total + p) hit = c;
    total += p;
  }
  if (total >= 1.0) {
    throw NumericalError(
        "sum of jump probabilities reached " + std::to_string(total) +
        ": timestep too large for the current state");
  }
  return hit;
}

StateVector collapse(const StateVector& psi, const JumpChannel& channel) {
  return hilbert::normalize(apply(channel.op, psi));
}

SparseMatrix SparseMatrix::from_dense(const OperatorMatrix& m) {
  SparseMatrix out;
  for (int r = 0; r < kDim; ++r) {
    out.row_start[r] = static_cast<std::uint8_t>(out.entries.size());
    for (int c = 0; c < kDim; ++c) {
      if (m.at(r, c) != 0.0) out.entries.push_back({c, m.at(r, c)});
    }
  }
  out.row_start[kDim] = static_cast<std::uint8_t>(out.entries.size());
  return out;
}

StateVector SparseMatrix::apply(const StateVector& psi) const {
  StateVector out;
  for (int r = 0; r < kDim; ++r) {
    Complex s = 0.0;
    for (int k = row_start[r]; k < row_start[r + 1]; ++k) {
      s += entries[k].w * psi[entries[k].col];
    }
    out[r] = s;
  }
  return out;
}

TrajectoryCursor::TrajectoryCursor(const SimulationParams& params,
                                   std::span<const JumpChannel> channels,
                                   const ConditionalGenerator& gen,
                                   rng::PhiloxStream& stream, StepperKind stepper)
    : channels_(channels),
      step_matrix_(
          SparseMatrix::from_dense(make_step_matrix(gen, params.dt, stepper))),
      psi_(params.initial_state),
      stream_(&stream),
      dt_(params.dt) {}

std::optional<std::size_t> TrajectoryCursor::advance() {
  // Exactly one uniform per step, jump or not, so the draw schedule is a
  // fixed function of the step index.
  const double u = stream_->uniform();
  const std::optional<std::size_t> fired = sample_jump(psi_, channels_, dt_, u);
  if (fired) {
    psi_ = collapse(psi_, channels_[*fired]);
  } else {
    psi_ = hilbert::normalize(step_matrix_.apply(psi_));
  }
  ++step_;
  return fired;
}

TrajectoryResult run_trajectory(const SimulationParams& params,
                                std::span<const JumpChannel> channels,
                                const ConditionalGenerator& gen,
                                rng::PhiloxStream& stream,
                                const TrajectoryOptions& options) {
  TrajectoryCursor cursor(params, channels, gen, stream, options.stepper);
  const auto total_steps =
      static_cast<std::uint64_t>(std::llround(params.t_max / params.dt));

  TrajectoryResult result;
  const auto record_sample = [&](double t) {
    result.samples.push_back({t, cursor.state().populations()});
  };
  if (options.sample_every > 0) record_sample(0.0);

  for (std::uint64_t k = 0; k < total_steps; ++k) {
    std::optional<std::size_t> fired;
    try {
      fired = cursor.advance();
    } catch (const NumericalError& err) {
      throw NumericalError("step " + std::to_string(k) +
                           " (t=" + std::to_string(cursor.time()) +
                           "): " + err.what());
    }
    if (fired && options.record_events) {
      result.events.push_back(
          {static_cast<double>(k + 1) * params.dt, channels[*fired].label});
    }
    if (options.sample_every > 0 && (k + 1) % options.sample_every == 0) {
      record_sample(static_cast<double>(k + 1) * params.dt);
    }
  }

  result.final_state = cursor.state();
  result.steps = total_steps;
  return result;
}

}  // namespace djump::dynamics
