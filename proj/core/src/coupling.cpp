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

#include "djump/coupling.hpp"

#include <cmath>

namespace djump::coupling {

const char* to_string(TransitionId t) {
  switch (t) {
    case TransitionId::t12: return "t12";
    case TransitionId::t13: return "t13";
    case TransitionId::t23: return "t23";
  }
  return "?";
}

double TransitionRates::of(TransitionId t) const {
  switch (t) {
    case TransitionId::t12: return gamma12;
    case TransitionId::t13: return gamma13;
    case TransitionId::t23: return gamma23;
  }
  return 0.0;
}

double Geometry::theta(TransitionId t) const {
  switch (t) {
    case TransitionId::t12: return theta12;
    case TransitionId::t13: return theta13;
    case TransitionId::t23: return theta23;
  }
  return 0.0;
}

double Geometry::wavelength(TransitionId t) const {
  switch (t) {
    case TransitionId::t12: return 1.0;
    case TransitionId::t13: return wavelength_ratio_13;
    case TransitionId::t23: return wavelength_ratio_23;
  }
  return 1.0;
}

CrossCoupling cross_coupling(TransitionId transition,
                             const TransitionRates& rates,
                             const Geometry& geom) {
  if (!(geom.r > 0.0)) {
    throw ConfigError("invalid geometry: separation r must be positive");
  }
  if (transition != TransitionId::t12 && !geom.cross_13_23) {
    // Optical-domain transitions: separation far exceeds the wavelength, the
    // interaction is effective on 1<->2 only.
    return {};
  }

  const double gamma = rates.of(transition);
  const double x = 2.0 * std::numbers::pi * geom.r / geom.wavelength(transition);
  const double c = std::cos(geom.theta(transition));
  const double a = 1.0 - c * c;
  const double b = 1.0 - 3.0 * c * c;

  const double sx = std::sin(x);
  const double cx = std::cos(x);
  const double x2 = x * x;
  const double x3 = x2 * x;

  CrossCoupling out;
  out.gamma_dd = 1.5 * gamma * ((sx / x) * a + (cx / x2 - sx / x3) * b);
  out.omega_dd = 1.5 * gamma * (-(cx / x) * a + (sx / x2 + cx / x3) * b);
  return out;
}

std::vector<ScanRow> coupling_scan(TransitionId transition,
                                   const TransitionRates& rates,
                                   const Geometry& geom, double r_min,
                                   double r_max, int points) {
  if (!(r_min > 0.0) || !(r_min < r_max)) {
    throw ConfigError("coupling scan requires 0 < r_min < r_max");
  }
  if (points < 2) {
    throw ConfigError("coupling scan requires at least 2 points");
  }

  std::vector<ScanRow> rows;
  rows.reserve(static_cast<std::size_t>(points));
  const double step = (r_max - r_min) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) {
    Geometry g = geom;
    g.r = (i == points - 1) ? r_max : r_min + step * static_cast<double>(i);
    const CrossCoupling c = cross_coupling(transition, rates, g);
    rows.push_back({g.r, c.gamma_dd, c.omega_dd, c.abs_sq()});
  }
  return rows;
}

}  // namespace djump::coupling
