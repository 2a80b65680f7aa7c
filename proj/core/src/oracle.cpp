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

#include "djump/oracle.hpp"

#include <cmath>
#include <string>

namespace djump::oracle {

using hilbert::kDim;

DensityMatrix DensityMatrix::from_pure(const hilbert::StateVector& psi) {
  DensityMatrix rho;
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c)
      rho.m.at(r, c) = psi[r] * std::conj(psi[c]);
  return rho;
}

Complex DensityMatrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < kDim; ++i) t += m.at(i, i);
  return t;
}

double DensityMatrix::hermiticity_error() const {
  double err = 0.0;
  for (int r = 0; r < kDim; ++r)
    for (int c = r; c < kDim; ++c)
      err = std::max(err, std::abs(m.at(r, c) - std::conj(m.at(c, r))));
  return err;
}

double DensityMatrix::min_eigenvalue() const {
  return hilbert::hermitian_eigenvalues(m).front();
}

std::array<double, kDim> DensityMatrix::populations() const {
  std::array<double, kDim> p{};
  for (int i = 0; i < kDim; ++i) p[i] = m.at(i, i).real();
  return p;
}

DensityMatrix operator+(const DensityMatrix& a, const DensityMatrix& b) {
  DensityMatrix out = a;
  out.m += b.m;
  return out;
}

DensityMatrix operator*(double c, const DensityMatrix& rho) {
  DensityMatrix out = rho;
  out.m *= Complex(c);
  return out;
}

DensityMatrix lindblad_rhs(const DensityMatrix& rho,
                           const dynamics::ConditionalGenerator& gen,
                           std::span<const dynamics::JumpChannel> channels) {
  OperatorMatrix out;
  out -= gen.matrix * rho.m;
  out -= rho.m * gen.matrix.adjoint();
  for (const dynamics::JumpChannel& ch : channels) {
    if (ch.rate == 0.0) continue;
    out += Complex(ch.rate) * (ch.op * rho.m * ch.op.adjoint());
  }
  DensityMatrix d;
  d.m = out;
  return d;
}

std::vector<OracleCheckpoint> integrate(
    const DensityMatrix& rho0, const dynamics::ConditionalGenerator& gen,
    std::span<const dynamics::JumpChannel> channels, double t_end,
    const IntegrateOptions& options) {
  if (!(options.dt > 0.0)) throw ConfigError("integrator dt must be positive");
  const auto steps_per_checkpoint = static_cast<std::uint64_t>(
      std::llround(options.checkpoint_interval / options.dt));
  if (steps_per_checkpoint == 0 ||
      std::abs(steps_per_checkpoint * options.dt - options.checkpoint_interval) >
          1e-9 * options.checkpoint_interval) {
    throw ConfigError("checkpoint interval must be a whole number of ODE steps");
  }
  const auto total_steps =
      static_cast<std::uint64_t>(std::llround(t_end / options.dt));

  const auto check = [&](const DensityMatrix& rho, double t) {
    if (!options.check_invariants) return;
    const double herr = rho.hermiticity_error();
    if (herr > options.hermiticity_tol) {
      throw NumericalError("density matrix lost hermiticity (err=" +
                           std::to_string(herr) + ") at t=" + std::to_string(t));
    }
    const double terr = std::abs(rho.trace() - Complex(1.0));
    if (terr > options.trace_tol) {
      throw NumericalError("density matrix trace drifted by " +
                           std::to_string(terr) + " at t=" + std::to_string(t));
    }
    const double ev = rho.min_eigenvalue();
    if (ev < -options.positivity_tol) {
      throw NumericalError("density matrix lost positivity (min eig=" +
                           std::to_string(ev) + ") at t=" + std::to_string(t));
    }
  };

  std::vector<OracleCheckpoint> checkpoints;
  checkpoints.reserve(total_steps / steps_per_checkpoint + 2);

  DensityMatrix rho = rho0;
  check(rho, 0.0);
  checkpoints.push_back({0.0, rho});

  const double dt = options.dt;
  for (std::uint64_t k = 0; k < total_steps; ++k) {
    const DensityMatrix k1 = lindblad_rhs(rho, gen, channels);
    const DensityMatrix k2 = lindblad_rhs(rho + (0.5 * dt) * k1, gen, channels);
    const DensityMatrix k3 = lindblad_rhs(rho + (0.5 * dt) * k2, gen, channels);
    const DensityMatrix k4 = lindblad_rhs(rho + dt * k3, gen, channels);
    rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if ((k + 1) % steps_per_checkpoint == 0) {
      const double t = static_cast<double>(k + 1) * dt;
      check(rho, t);
      checkpoints.push_back({t, rho});
    }
  }
  return checkpoints;
}

}  // namespace djump::oracle
