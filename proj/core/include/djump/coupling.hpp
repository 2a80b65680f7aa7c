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

#ifndef DJUMP_COUPLING_HPP
#define DJUMP_COUPLING_HPP

#include <numbers>
#include <vector>

#include "djump/errors.hpp"

// Distance- and angle-dependent dipole-dipole coefficients between the two
// atoms. Units: all rates in gamma13 = 1, all lengths in lambda12.
namespace djump::coupling {

enum class TransitionId { t12, t13, t23 };

const char* to_string(TransitionId t);

// Per-atom half-rates gamma^{nm}; 2*gamma^{nm} is the Einstein A-coefficient
// of the |n> <-> |m> transition.
struct TransitionRates {
  double gamma13 = 1.0;
  double gamma12 = 2e-2;
  // The metastable |2> -> |3> decay. Kept far below gamma12 so that shelved
  // periods outlast the 50/gamma13 counting bins and incoherent unshelving
  // stays below the exchange-flip rate; see the defaults table in the README.
  double gamma23 = 1e-5;

  double of(TransitionId t) const;
};

// Atom separation and dipole orientation. Separation r in units of lambda12;
// theta_nm is the angle between the transition dipole d_nm and the
// interatomic axis. Wavelength ratios are lambda_nm / lambda_12.
struct Geometry {
  double r = 0.5;
  double theta12 = std::numbers::pi / 2;
  double theta13 = std::numbers::pi / 2;
  double theta23 = std::numbers::pi / 2;
  double wavelength_ratio_13 = 0.025;
  double wavelength_ratio_23 = 0.025;
  // Off by default: the optical transitions see separations much larger than
  // their wavelengths, so their cross coupling is taken as exactly zero.
  // Enable to evaluate them from the analytic form for sensitivity studies.
  bool cross_13_23 = false;

  double theta(TransitionId t) const;
  double wavelength(TransitionId t) const;  // in lambda12 units
};

// gamma_12^{nm} split into real part (collective damping, gamma_dd) and
// imaginary part (coherent excitation exchange, omega_dd). Absolute units
// (gamma13 = 1): both scale linearly with the transition's gamma^{nm}.
struct CrossCoupling {
  double gamma_dd = 0.0;
  double omega_dd = 0.0;

  double abs_sq() const { return gamma_dd * gamma_dd + omega_dd * omega_dd; }
};

// Canonical far/intermediate/near-field form with x = k_nm * r,
// A = 1 - cos^2(theta), B = 1 - 3 cos^2(theta):
//
//   gamma_dd = (3 gamma / 2) [ (sin x / x) A + (cos x / x^2 - sin x / x^3) B ]
//   omega_dd = (3 gamma / 2) [ -(cos x / x) A + (sin x / x^2 + cos x / x^3) B ]
//
// Sign convention fixed so gamma_dd -> +gamma as x -> 0 and the collective
// damping matrix stays positive semidefinite (|gamma_dd| <= gamma); only
// omega_dd diverges at r -> 0. Throws ConfigError for r <= 0.
CrossCoupling cross_coupling(TransitionId transition,
                             const TransitionRates& rates,
                             const Geometry& geom);

struct ScanRow {
  double r = 0.0;
  double gamma_dd = 0.0;
  double omega_dd = 0.0;
  double abs_gamma12_sq = 0.0;
};

// Uniform r grid inclusive of endpoints, each row a cross_coupling call.
std::vector<ScanRow> coupling_scan(TransitionId transition,
                                   const TransitionRates& rates,
                                   const Geometry& geom, double r_min,
                                   double r_max, int points);

}  // namespace djump::coupling

#endif  // DJUMP_COUPLING_HPP
