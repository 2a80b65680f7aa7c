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

#include "djump/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace djump::hilbert {

std::pair<Level, Level> levels_at(int index) {
  const auto level = [](int i) { return static_cast<Level>(i + 1); };
  return {level(index / 3), level(index % 3)};
}

StateVector StateVector::basis(Level atom1_level, Level atom2_level) {
  StateVector psi;
  psi.amp[basis_index(atom1_level, atom2_level)] = 1.0;
  return psi;
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const Complex& a : amp) s += std::norm(a);
  return s;
}

std::array<double, kDim> StateVector::populations() const {
  std::array<double, kDim> p{};
  for (int i = 0; i < kDim; ++i) p[i] = std::norm(amp[i]);
  return p;
}

StateVector operator+(const StateVector& a, const StateVector& b) {
  StateVector out;
  for (int i = 0; i < kDim; ++i) out[i] = a[i] + b[i];
  return out;
}

StateVector operator-(const StateVector& a, const StateVector& b) {
  StateVector out;
  for (int i = 0; i < kDim; ++i) out[i] = a[i] - b[i];
  return out;
}

StateVector operator*(Complex c, const StateVector& psi) {
  StateVector out;
  for (int i = 0; i < kDim; ++i) out[i] = c * psi[i];
  return out;
}

Complex inner(const StateVector& a, const StateVector& b) {
  Complex s = 0.0;
  for (int i = 0; i < kDim; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm_sq(const StateVector& psi) { return psi.norm_sq(); }

StateVector normalize(const StateVector& psi) {
  const double n2 = psi.norm_sq();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw NumericalError(
        "degenerate collapse: cannot normalize a state with zero norm");
  }
  const double inv = 1.0 / std::sqrt(n2);
  StateVector out;
  for (int i = 0; i < kDim; ++i) out[i] = inv * psi[i];
  return out;
}

OperatorMatrix OperatorMatrix::identity() {
  OperatorMatrix m;
  for (int i = 0; i < kDim; ++i) m.at(i, i) = 1.0;
  return m;
}

OperatorMatrix OperatorMatrix::adjoint() const {
  OperatorMatrix out;
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c) out.at(r, c) = std::conj(at(c, r));
  return out;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.e[i];
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= other.e[i];
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Complex c) {
  for (Complex& x : e) x *= c;
  return *this;
}

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) {
  a += b;
  return a;
}

OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) {
  a -= b;
  return a;
}

OperatorMatrix operator*(Complex c, OperatorMatrix m) {
  m *= c;
  return m;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix out;
  for (int r = 0; r < kDim; ++r) {
    for (int k = 0; k < kDim; ++k) {
      const Complex ark = a.at(r, k);
      if (ark == 0.0) continue;
      for (int c = 0; c < kDim; ++c) out.at(r, c) += ark * b.at(k, c);
    }
  }
  return out;
}

OperatorMatrix sigma(AtomId atom, Level n, Level m) {
  OperatorMatrix out;
  const int ni = level_index(n);
  const int mi = level_index(m);
  // |n><m| on the given atom, identity on the other.
  for (int other = 0; other < 3; ++other) {
    if (atom == AtomId::atom1) {
      out.at(3 * ni + other, 3 * mi + other) = 1.0;
    } else {
      out.at(3 * other + ni, 3 * other + mi) = 1.0;
    }
  }
  return out;
}

StateVector apply(const OperatorMatrix& op, const StateVector& psi) {
  StateVector out;
  for (int r = 0; r < kDim; ++r) {
    Complex s = 0.0;
    for (int c = 0; c < kDim; ++c) s += op.at(r, c) * psi[c];
    out[r] = s;
  }
  return out;
}

Complex expectation(const OperatorMatrix& op, const StateVector& psi) {
  return inner(psi, apply(op, psi));
}

double frobenius_norm(const OperatorMatrix& m) {
  double s = 0.0;
  for (const Complex& x : m.e) s += std::norm(x);
  return std::sqrt(s);
}

double max_abs_entry(const OperatorMatrix& m) {
  double s = 0.0;
  for (const Complex& x : m.e) s = std::max(s, std::abs(x));
  return s;
}

// Cyclic complex Jacobi: rotate away the largest off-diagonal element until
// the matrix is numerically diagonal. Plenty for 9x9 validation work.
std::array<double, kDim> hermitian_eigenvalues(const OperatorMatrix& m) {
  OperatorMatrix a = m;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int r = 0; r < kDim; ++r)
      for (int c = r + 1; c < kDim; ++c) off += std::norm(a.at(r, c));
    if (off < 1e-30) break;

    for (int p = 0; p < kDim; ++p) {
      for (int q = p + 1; q < kDim; ++q) {
        const Complex apq = a.at(p, q);
        if (std::abs(apq) < 1e-18) continue;
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        // Diagonalize the 2x2 Hermitian block [[app, apq], [apq*, aqq]].
        const double absq = std::abs(apq);
        const Complex phase = apq / absq;
        const double theta = 0.5 * std::atan2(2.0 * absq, app - aqq);
        const double c = std::cos(theta);
        const Complex s = std::sin(theta) * phase;

        for (int k = 0; k < kDim; ++k) {
          const Complex akp = a.at(k, p);
          const Complex akq = a.at(k, q);
          a.at(k, p) = c * akp + std::conj(s) * akq;
          a.at(k, q) = -s * akp + c * akq;
        }
        for (int k = 0; k < kDim; ++k) {
          const Complex apk = a.at(p, k);
          const Complex aqk = a.at(q, k);
          a.at(p, k) = c * apk + s * aqk;
          a.at(q, k) = -std::conj(s) * apk + c * aqk;
        }
      }
    }
  }
  std::array<double, kDim> eig{};
  for (int i = 0; i < kDim; ++i) eig[i] = a.at(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::string to_debug_lines(const StateVector& psi) {
  std::string out;
  char buf[64];
  for (int i = 0; i < kDim; ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", psi[i].real(),
                  psi[i].imag());
    out += buf;
  }
  return out;
}

}  // namespace djump::hilbert
