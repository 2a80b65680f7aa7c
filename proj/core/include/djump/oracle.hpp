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

#ifndef DJUMP_ORACLE_HPP
#define DJUMP_ORACLE_HPP

#include <array>
#include <span>
#include <vector>

#include "djump/dynamics.hpp"
#include "djump/hilbert.hpp"

// Deterministic master-equation integrator on the 9-dimensional space;
// independent ground truth for the trajectory unraveling.
namespace djump::oracle {

using hilbert::Complex;
using hilbert::OperatorMatrix;

struct DensityMatrix {
  OperatorMatrix m;

  static DensityMatrix from_pure(const hilbert::StateVector& psi);

  Complex at(int row, int col) const { return m.at(row, col); }
  Complex trace() const;
  double hermiticity_error() const;   // max |rho_ij - conj(rho_ji)|
  double min_eigenvalue() const;
  std::array<double, hilbert::kDim> populations() const;  // Re(diagonal)
};

DensityMatrix operator+(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix operator*(double c, const DensityMatrix& rho);

// d rho / dt = -(K rho + rho K^dag) + sum_c rate_c L_c rho L_c^dag.
// Trace-free for any Hermitian rho when channels complete the generator.
DensityMatrix lindblad_rhs(const DensityMatrix& rho,
                           const dynamics::ConditionalGenerator& gen,
                           std::span<const dynamics::JumpChannel> channels);

struct OracleCheckpoint {
  double t;
  DensityMatrix rho;
};

struct IntegrateOptions {
  double dt = 2e-4;                  // classical fixed-step RK4
  double checkpoint_interval = 0.5;  // must be a multiple of dt
  bool check_invariants = true;

  double hermiticity_tol = 1e-10;
  double trace_tol = 1e-9;
  double positivity_tol = 1e-8;  // min eigenvalue >= -tol
};

// Fixed-step RK4 from rho0 to t_end with checkpoints every
// checkpoint_interval (the first checkpoint is rho0 at t = 0). Invariant
// violations abort with the offending time. Stiffness is a non-issue at this
// dimension and these rate ratios.
std::vector<OracleCheckpoint> integrate(
    const DensityMatrix& rho0, const dynamics::ConditionalGenerator& gen,
    std::span<const dynamics::JumpChannel> channels, double t_end,
    const IntegrateOptions& options = {});

}  // namespace djump::oracle

#endif  // DJUMP_ORACLE_HPP
