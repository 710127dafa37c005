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

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fermigauss/types.hpp"

namespace fermigauss {

/// Phase-tracked Pauli operator i^phase * X^x Z^z on up to 32 qubits.
///
/// Bit q of the masks acts on bit q of the computational basis index. Under
/// the Jordan-Wigner map used throughout the library, mode k (1-based) of an
/// m-mode system lives on bit (m - k), so mode 1 is the most significant
/// tensor factor.
struct PauliString {
  int qubits = 0;
  std::uint32_t x = 0;
  std::uint32_t z = 0;
  int phase = 0;  // power of i, kept in [0, 4)

  static PauliString identity(int qubits) { return {qubits, 0, 0, 0}; }

  Complex phase_factor() const;

  /// Matrix element <row| P |col>; nonzero only when row == col ^ x.
  Complex element(std::uint32_t col) const;

  PauliString adjoint() const;
  bool commutes_with(const PauliString& other) const;

  friend PauliString operator*(const PauliString& a, const PauliString& b);

  /// Tensor product with `*this` as the high-order (first) factor.
  PauliString tensor(const PauliString& low) const;

  ComplexMatrix dense() const;

  /// P * A without forming P.
  ComplexMatrix apply_left(const ComplexMatrix& a) const;
  /// A * P without forming P.
  ComplexMatrix apply_right(const ComplexMatrix& a) const;
  /// Tr(P * A).
  Complex trace_with(const ComplexMatrix& a) const;
  ComplexVector apply(const ComplexVector& v) const;
};

/// Even-cardinality subset of Majorana indices {1..2m}, bit (a-1) set when
/// c_a is present.
class CorrelatorIndex {
 public:
  CorrelatorIndex() = default;
  explicit CorrelatorIndex(std::uint32_t mask);

  /// Builds from 1-based indices; they must be strictly increasing.
  static CorrelatorIndex from_indices(const std::vector<int>& indices);

  std::uint32_t mask() const { return mask_; }
  int cardinality() const;
  /// Ascending 1-based indices.
  std::vector<int> indices() const;

  friend auto operator<=>(CorrelatorIndex, CorrelatorIndex) = default;

 private:
  std::uint32_t mask_ = 0;
};

/// Every even-cardinality mask over 2m Majoranas, ascending.
std::vector<std::uint32_t> even_masks(ModeCount m);

/// Pauli form of the Majorana operator c_k, 1 <= k <= 2m.
PauliString majorana_string(int k, ModeCount m);

/// Hermitian correlator i^(|S|/2) c_{a_1} ... c_{a_2k} for an even mask.
PauliString correlator_string(std::uint32_t mask, ModeCount m);

/// Dense c_k: c_{2j-1} = Z..Z X_j, c_{2j} = Z..Z Y_j.
ComplexMatrix majorana_matrix(int k, ModeCount m);

/// C_all = i^m c_1 c_2 ... c_{2m}.
ComplexMatrix parity_operator(ModeCount m);
PauliString parity_string(ModeCount m);

/// Dense Hermitian correlator for an even mask.
ComplexMatrix correlator_matrix(std::uint32_t mask, ModeCount m);

/// Real coefficients over the Hermitian even correlators:
/// X = sum_S coeffs[S] * i^k c_S. Missing masks are zero.
struct EvenOperator {
  ModeCount m{1};
  std::map<std::uint32_t, double> coeffs;

  double coefficient(std::uint32_t mask) const;
  /// Entries with |value| > tol.
  std::size_t nonzero_count(double tol = kExactTol) const;
};

EvenOperator expand_even(const ComplexMatrix& x, ModeCount m,
                         double tol = kExactTol);
ComplexMatrix assemble_even(const EvenOperator& op);

enum class Parity { kEven, kOdd, kMixed };

const char* to_string(Parity p);
Parity parity_from_string(const std::string& s);

/// Dense 2^m x 2^m operator with its parity support.
struct DensityOperator {
  ModeCount m{1};
  ComplexMatrix matrix;
  Parity parity = Parity::kEven;

  /// Wraps a Hermitian matrix, classifying parity support. Does not demand
  /// positivity or unit trace; see `validate_state`.
  static DensityOperator from_matrix(ComplexMatrix matrix,
                                     double tol = kExactTol);

  /// Throws unless the operator is Hermitian, unit trace and PSD within tol.
  void validate_state(double tol = 1e-9) const;

  double purity() const;
};

/// Hermitian part check: ||X - X^dagger||_max <= tol.
bool is_hermitian(const ComplexMatrix& x, double tol = kExactTol);

}  // namespace fermigauss
