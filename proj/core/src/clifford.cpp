// Copyright 2026 The fermigauss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fermigauss/clifford.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>

namespace fermigauss {

namespace {

const Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

inline double sign_of(std::uint32_t bits) {
  return (std::popcount(bits) & 1) ? -1.0 : 1.0;
}

}  // namespace

ModeCount mode_count_from_dim(Eigen::Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw ValidationError("operator dimension " + std::to_string(dim) +
                          " is not a power of two");
  }
  return ModeCount(std::countr_zero(static_cast<std::uint64_t>(dim)));
}

// ---------------------------------------------------------------------------
// PauliString

Complex PauliString::phase_factor() const { return kPhases[phase & 3]; }

Complex PauliString::element(std::uint32_t col) const {
  return phase_factor() * sign_of(z & col);
}

PauliString PauliString::adjoint() const {
  int ph = (4 - phase) & 3;
  if (std::popcount(x & z) & 1) ph = (ph + 2) & 3;
  return {qubits, x, z, ph};
}

bool PauliString::commutes_with(const PauliString& other) const {
  return ((std::popcount(x & other.z) + std::popcount(z & other.x)) & 1) == 0;
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  int ph = a.phase + b.phase + 2 * (std::popcount(a.z & b.x) & 1);
  return {a.qubits, a.x ^ b.x, a.z ^ b.z, ph & 3};
}

PauliString PauliString::tensor(const PauliString& low) const {
  return {qubits + low.qubits, (x << low.qubits) | low.x,
          (z << low.qubits) | low.z, (phase + low.phase) & 3};
}

ComplexMatrix PauliString::dense() const {
  const std::uint32_t n = 1u << qubits;
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::uint32_t c = 0; c < n; ++c) out(c ^ x, c) = element(c);
  return out;
}

ComplexMatrix PauliString::apply_left(const ComplexMatrix& a) const {
  const std::uint32_t n = 1u << qubits;
  ComplexMatrix out(a.rows(), a.cols());
  for (std::uint32_t r = 0; r < n; ++r) {
    const std::uint32_t b = r ^ x;
    out.row(r) = element(b) * a.row(b);
  }
  return out;
}

ComplexMatrix PauliString::apply_right(const ComplexMatrix& a) const {
  const std::uint32_t n = 1u << qubits;
  ComplexMatrix out(a.rows(), a.cols());
  for (std::uint32_t c = 0; c < n; ++c) {
    out.col(c) = element(c) * a.col(c ^ x);
  }
  return out;
}

Complex PauliString::trace_with(const ComplexMatrix& a) const {
  const std::uint32_t n = 1u << qubits;
  Complex acc = 0;
  for (std::uint32_t b = 0; b < n; ++b) acc += sign_of(z & b) * a(b, b ^ x);
  return acc * phase_factor();
}

ComplexVector PauliString::apply(const ComplexVector& v) const {
  const std::uint32_t n = 1u << qubits;
  ComplexVector out(v.size());
  for (std::uint32_t c = 0; c < n; ++c) out(c ^ x) = element(c) * v(c);
  return out;
}

// ---------------------------------------------------------------------------
// CorrelatorIndex

CorrelatorIndex::CorrelatorIndex(std::uint32_t mask) : mask_(mask) {
  if (std::popcount(mask) & 1) {
    throw ValidationError("correlator index must have even cardinality");
  }
}

CorrelatorIndex CorrelatorIndex::from_indices(const std::vector<int>& indices) {
  std::uint32_t mask = 0;
  int prev = 0;
  for (int a : indices) {
    if (a < 1 || a > 32) throw ValidationError("Majorana index out of range");
    if (a <= prev) {
      throw ValidationError("correlator indices must be strictly increasing");
    }
    mask |= 1u << (a - 1);
    prev = a;
  }
  return CorrelatorIndex(mask);
}

int CorrelatorIndex::cardinality() const { return std::popcount(mask_); }

std::vector<int> CorrelatorIndex::indices() const {
  std::vector<int> out;
  for (std::uint32_t bits = mask_; bits; bits &= bits - 1) {
    out.push_back(std::countr_zero(bits) + 1);
  }
  return out;
}

std::vector<std::uint32_t> even_masks(ModeCount m) {
  std::vector<std::uint32_t> out;
  const std::uint32_t limit = 1u << m.majoranas();
  out.reserve(limit / 2);
  for (std::uint32_t s = 0; s < limit; ++s) {
    if ((std::popcount(s) & 1) == 0) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Majorana operators

PauliString majorana_string(int k, ModeCount m) {
  if (k < 1 || k > m.majoranas()) {
    throw ValidationError("Majorana index " + std::to_string(k) +
                          " outside [1, " + std::to_string(m.majoranas()) +
                          "]");
  }
  const int mode = (k + 1) / 2;             // 1-based
  const int bit = m.value() - mode;         // qubit carrying X/Y
  std::uint32_t zstring = 0;
  for (int j = 1; j < mode; ++j) zstring |= 1u << (m.value() - j);
  PauliString p{m.value(), 1u << bit, zstring, 0};
  if (k % 2 == 0) {
    // Y = i X Z
    p.z |= 1u << bit;
    p.phase = 1;
  }
  return p;
}

PauliString correlator_string(std::uint32_t mask, ModeCount m) {
  if (std::popcount(mask) & 1) {
    throw ValidationError("correlator mask must have even cardinality");
  }
  if (mask >> m.majoranas()) {
    throw ValidationError("correlator mask exceeds 2m Majoranas");
  }
  PauliString p = PauliString::identity(m.value());
  for (std::uint32_t bits = mask; bits; bits &= bits - 1) {
    p = p * majorana_string(std::countr_zero(bits) + 1, m);
  }
  p.phase = (p.phase + std::popcount(mask) / 2) & 3;
  return p;
}

ComplexMatrix majorana_matrix(int k, ModeCount m) {
  return majorana_string(k, m).dense();
}

PauliString parity_string(ModeCount m) {
  // i^m c_1 ... c_2m is exactly the correlator over the full index set.
  return correlator_string((1u << m.majoranas()) - 1, m);
}

ComplexMatrix parity_operator(ModeCount m) { return parity_string(m).dense(); }

ComplexMatrix correlator_matrix(std::uint32_t mask, ModeCount m) {
  return correlator_string(mask, m).dense();
}

// ---------------------------------------------------------------------------
// Even operators

double EvenOperator::coefficient(std::uint32_t mask) const {
  auto it = coeffs.find(mask);
  return it == coeffs.end() ? 0.0 : it->second;
}

std::size_t EvenOperator::nonzero_count(double tol) const {
  std::size_t n = 0;
  for (const auto& [mask, v] : coeffs) n += std::abs(v) > tol;
  return n;
}

bool is_hermitian(const ComplexMatrix& x, double tol) {
  if (x.rows() != x.cols()) return false;
  return (x - x.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

EvenOperator expand_even(const ComplexMatrix& x, ModeCount m, double tol) {
  if (x.rows() != m.dim() || x.cols() != m.dim()) {
    throw ValidationError("operator size does not match mode count");
  }
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if (!is_hermitian(x, tol * scale)) {
    throw ValidationError("expand_even: operator is not Hermitian");
  }
  const PauliString parity = parity_string(m);
  const ComplexMatrix odd =
      0.5 * (x - parity.apply_left(parity.apply_right(x)));
  if (odd.cwiseAbs().maxCoeff() > tol * scale) {
    throw ValidationError("expand_even: operator has an odd component");
  }
  EvenOperator op{m, {}};
  const double norm = 1.0 / m.dim();
  for (std::uint32_t mask : even_masks(m)) {
    const Complex t = correlator_string(mask, m).trace_with(x) * norm;
    if (std::abs(t.imag()) > tol * scale) {
      throw NumericalError("expand_even: complex coefficient");
    }
    op.coeffs[mask] = t.real();
  }
  return op;
}

ComplexMatrix assemble_even(const EvenOperator& op) {
  const std::uint32_t n = op.m.dim();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& [mask, value] : op.coeffs) {
    if (value == 0.0) continue;
    const PauliString p = correlator_string(mask, op.m);
    for (std::uint32_t c = 0; c < n; ++c) out(c ^ p.x, c) += value * p.element(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Density operators

const char* to_string(Parity p) {
  switch (p) {
    case Parity::kEven:
      return "even";
    case Parity::kOdd:
      return "odd";
    case Parity::kMixed:
      return "mixed";
  }
  return "mixed";
}

Parity parity_from_string(const std::string& s) {
  if (s == "even") return Parity::kEven;
  if (s == "odd") return Parity::kOdd;
  if (s == "mixed") return Parity::kMixed;
  throw ValidationError("unknown parity tag '" + s + "'");
}

DensityOperator DensityOperator::from_matrix(ComplexMatrix matrix, double tol) {
  if (matrix.rows() != matrix.cols()) {
    throw ValidationError("density operator must be square");
  }
  const ModeCount m = mode_count_from_dim(matrix.rows());
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if (!is_hermitian(matrix, tol * scale)) {
    throw ValidationError("density operator must be Hermitian");
  }
  const PauliString parity = parity_string(m);
  const ComplexMatrix conj = parity.apply_left(parity.apply_right(matrix));
  Parity tag = Parity::kMixed;
  if ((matrix - conj).cwiseAbs().maxCoeff() <= tol * scale) {
    tag = Parity::kEven;
  } else if ((matrix + conj).cwiseAbs().maxCoeff() <= tol * scale) {
    tag = Parity::kOdd;
  }
  return DensityOperator{m, std::move(matrix), tag};
}

void DensityOperator::validate_state(double tol) const {
  if (!is_hermitian(matrix, tol)) {
    throw ValidationError("state is not Hermitian");
  }
  const Complex tr = matrix.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol) {
    throw ValidationError("state trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix,
                                                  Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw ValidationError("state is not positive semidefinite");
  }
}

double DensityOperator::purity() const {
  return (matrix * matrix).trace().real();
}

}  // namespace fermigauss
