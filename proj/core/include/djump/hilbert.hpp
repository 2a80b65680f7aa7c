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

#ifndef DJUMP_HILBERT_HPP
#define DJUMP_HILBERT_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>

#include "djump/errors.hpp"

// Two three-level atoms: the 9-dimensional product space, the atomic
// transition operators sigma_i^{nm} = |n><m| on atom i, and the small dense
// linear algebra everything else is built from. Matrices are 9x9 row-major;
// at this dimension sparsity bookkeeping costs more than it saves.
namespace djump::hilbert {

using Complex = std::complex<double>;

inline constexpr int kDim = 9;

// Tolerance for "exact" floating-point assertions (norms, unit tests).
inline constexpr double kNormTol = 1e-12;

// Level 1 is the upper state, level 2 the metastable state, level 3 the
// ground state of the driven transition.
enum class Level : int { upper = 1, metastable = 2, ground = 3 };

enum class AtomId : int { atom1 = 0, atom2 = 1 };

constexpr int level_index(Level l) { return static_cast<int>(l) - 1; }

// Basis order is atom-1 major: (1,1),(1,2),(1,3),(2,1),...,(3,3).
constexpr int basis_index(Level atom1_level, Level atom2_level) {
  return 3 * level_index(atom1_level) + level_index(atom2_level);
}

// Inverse of basis_index.
std::pair<Level, Level> levels_at(int index);

struct StateVector {
  std::array<Complex, kDim> amp{};

  // Product state |n,m> = |n>_1 (x) |m>_2.
  static StateVector basis(Level atom1_level, Level atom2_level);

  Complex& operator[](int i) { return amp[static_cast<std::size_t>(i)]; }
  const Complex& operator[](int i) const {
    return amp[static_cast<std::size_t>(i)];
  }
  Complex at(Level n, Level m) const { return amp[basis_index(n, m)]; }

  double norm_sq() const;

  // |amp|^2 per basis state, in basis order.
  std::array<double, kDim> populations() const;
};

StateVector operator+(const StateVector& a, const StateVector& b);
StateVector operator-(const StateVector& a, const StateVector& b);
StateVector operator*(Complex c, const StateVector& psi);

// <a|b>, conjugate-linear in the first argument.
Complex inner(const StateVector& a, const StateVector& b);

double norm_sq(const StateVector& psi);

// psi / sqrt(norm_sq). Throws NumericalError on a (numerically) zero vector:
// a jump was applied to a state with zero channel amplitude.
StateVector normalize(const StateVector& psi);

struct OperatorMatrix {
  std::array<Complex, kDim * kDim> e{};

  static OperatorMatrix identity();
  static OperatorMatrix zero() { return OperatorMatrix{}; }

  Complex& at(int row, int col) {
    return e[static_cast<std::size_t>(row * kDim + col)];
  }
  const Complex& at(int row, int col) const {
    return e[static_cast<std::size_t>(row * kDim + col)];
  }

  OperatorMatrix adjoint() const;

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(Complex c);
};

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex c, OperatorMatrix m);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

// |n>_i <m|_i tensored with identity on the other atom. Exactly three
// nonzero entries, all equal to 1.
OperatorMatrix sigma(AtomId atom, Level n, Level m);

// Exact matrix-vector product; no normalization.
StateVector apply(const OperatorMatrix& op, const StateVector& psi);

// <psi|A|psi> without normalizing psi.
Complex expectation(const OperatorMatrix& op, const StateVector& psi);

double frobenius_norm(const OperatorMatrix& m);
double max_abs_entry(const OperatorMatrix& m);

// Eigenvalues of a Hermitian matrix, ascending (cyclic complex Jacobi).
std::array<double, kDim> hermitian_eigenvalues(const OperatorMatrix& m);

// Debug serialization: 9 lines of "re,im" in basis order.
std::string to_debug_lines(const StateVector& psi);

}  // namespace djump::hilbert

#endif  // DJUMP_HILBERT_HPP
