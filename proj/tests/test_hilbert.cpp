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

#include <algorithm>
#include <cmath>

#include "djump/hilbert.hpp"

using namespace djump;
using namespace djump::hilbert;

namespace {

const Level kLevels[] = {Level::upper, Level::metastable, Level::ground};

bool matrices_equal(const OperatorMatrix& a, const OperatorMatrix& b,
                    double tol = 0.0) {
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c)
      if (std::abs(a.at(r, c) - b.at(r, c)) > tol) return false;
  return true;
}

bool states_equal(const StateVector& a, const StateVector& b,
                  double tol = 1e-15) {
  for (int i = 0; i < kDim; ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("basis_index fixes the atom-1-major order") {
  CHECK(basis_index(Level::upper, Level::upper) == 0);
  CHECK(basis_index(Level::upper, Level::metastable) == 1);
  CHECK(basis_index(Level::metastable, Level::upper) == 3);
  CHECK(basis_index(Level::ground, Level::ground) == 8);
}

TEST_CASE("basis_index is a bijection") {
  bool seen[kDim] = {};
  for (Level n : kLevels) {
    for (Level m : kLevels) {
      const int idx = basis_index(n, m);
      REQUIRE(idx >= 0);
      REQUIRE(idx < kDim);
      CHECK(!seen[idx]);
      seen[idx] = true;
      const auto [back_n, back_m] = levels_at(idx);
      CHECK(back_n == n);
      CHECK(back_m == m);
    }
  }
}

TEST_CASE("sigma has exactly three unit entries") {
  for (AtomId atom : {AtomId::atom1, AtomId::atom2}) {
    for (Level n : kLevels) {
      for (Level m : kLevels) {
        const OperatorMatrix op = sigma(atom, n, m);
        int nonzero = 0;
        for (const Complex& x : op.e) {
          if (x != 0.0) {
            ++nonzero;
            CHECK(x == Complex(1.0));
          }
        }
        CHECK(nonzero == 3);
      }
    }
  }
}

TEST_CASE("sigma acts as |n><m| on its own atom") {
  const StateVector s12 = StateVector::basis(Level::upper, Level::metastable);

  // sigma_1^{31} |1,2> = |3,2>
  CHECK(states_equal(apply(sigma(AtomId::atom1, Level::ground, Level::upper), s12),
                     StateVector::basis(Level::ground, Level::metastable)));
  // sigma_2^{21} |1,2> = 0 since <1|2> = 0
  CHECK(apply(sigma(AtomId::atom2, Level::metastable, Level::upper), s12)
            .norm_sq() == 0.0);
  // projector expectation on the occupied level
  CHECK(expectation(sigma(AtomId::atom1, Level::upper, Level::upper), s12) ==
        Complex(1.0));
}

TEST_CASE("apply: identity, projector composition, exchange on a basis state") {
  const StateVector s22 = StateVector::basis(Level::metastable, Level::metastable);
  CHECK(states_equal(apply(OperatorMatrix::identity(), s22), s22));

  const OperatorMatrix proj =
      sigma(AtomId::atom1, Level::metastable, Level::upper) *
      sigma(AtomId::atom1, Level::upper, Level::metastable);
  CHECK(states_equal(apply(proj, s22), s22));

  const OperatorMatrix exchange =
      sigma(AtomId::atom1, Level::upper, Level::metastable) *
      sigma(AtomId::atom2, Level::metastable, Level::upper);
  CHECK(states_equal(
      apply(exchange, StateVector::basis(Level::metastable, Level::upper)),
      StateVector::basis(Level::upper, Level::metastable)));
}

TEST_CASE("operator algebra: sigma(n,m) sigma(p,q) = delta_mp sigma(n,q)") {
  for (AtomId atom : {AtomId::atom1, AtomId::atom2}) {
    for (Level n : kLevels)
      for (Level m : kLevels)
        for (Level p : kLevels)
          for (Level q : kLevels) {
            const OperatorMatrix lhs = sigma(atom, n, m) * sigma(atom, p, q);
            const OperatorMatrix rhs =
                m == p ? sigma(atom, n, q) : OperatorMatrix::zero();
            CHECK(matrices_equal(lhs, rhs));
          }
  }
}

TEST_CASE("operators on different atoms commute") {
  for (Level n : kLevels)
    for (Level m : kLevels)
      for (Level p : kLevels)
        for (Level q : kLevels) {
          const OperatorMatrix a = sigma(AtomId::atom1, n, m);
          const OperatorMatrix b = sigma(AtomId::atom2, p, q);
          CHECK(matrices_equal(a * b, b * a));
        }
}

TEST_CASE("norm_sq and normalize") {
  CHECK(StateVector::basis(Level::upper, Level::metastable).norm_sq() == 1.0);

  StateVector mix;
  mix[basis_index(Level::upper, Level::metastable)] = 0.6;
  mix[basis_index(Level::metastable, Level::upper)] = Complex(0.0, 0.8);
  CHECK(mix.norm_sq() == doctest::Approx(1.0).epsilon(1e-15));

  const StateVector doubled =
      Complex(2.0) * StateVector::basis(Level::ground, Level::ground);
  const StateVector unit = normalize(doubled);
  CHECK(states_equal(unit, StateVector::basis(Level::ground, Level::ground)));
  CHECK(std::abs(unit.norm_sq() - 1.0) < kNormTol);
}

TEST_CASE("normalize rejects the zero vector") {
  CHECK_THROWS_AS(normalize(StateVector{}), NumericalError);
}

TEST_CASE("hermitian_eigenvalues recovers a known spectrum") {
  // diag(0..8) plus an off-diagonal block mixing indices 0 and 8:
  // [[0, 2i], [-2i, 8]] has eigenvalues 4 -+ sqrt(20).
  OperatorMatrix m;
  for (int i = 0; i < kDim; ++i) m.at(i, i) = static_cast<double>(i);
  m.at(0, 8) = Complex(0.0, 2.0);
  m.at(8, 0) = Complex(0.0, -2.0);
  const auto eig = hermitian_eigenvalues(m);
  CHECK(eig[0] == doctest::Approx(4.0 - std::sqrt(20.0)).epsilon(1e-12));
  CHECK(eig[8] == doctest::Approx(4.0 + std::sqrt(20.0)).epsilon(1e-12));
  for (int i = 1; i < 8; ++i) CHECK(eig[i] == doctest::Approx(i).epsilon(1e-12));
}

TEST_CASE("debug serialization is 9 lines of re,im") {
  const std::string text =
      to_debug_lines(StateVector::basis(Level::upper, Level::metastable));
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);
  CHECK(text.substr(0, 4) == "0,0\n");
  CHECK(text.find("1,0\n") != std::string::npos);
}
