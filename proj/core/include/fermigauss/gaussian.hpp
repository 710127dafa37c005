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
#include <memory>
#include <vector>

#include "fermigauss/antisym.hpp"
#include "fermigauss/clifford.hpp"

namespace fermigauss {

/// M_ab = (i/2) Tr(rho [c_a, c_b]) for a state of m modes. Construction
/// checks that every block-diagonal lambda satisfies |lambda| <= 1 + tol.
class CorrelationMatrix {
 public:
  explicit CorrelationMatrix(const AntisymmetricMatrix& a, double tol = 1e-9);
  explicit CorrelationMatrix(const RealMatrix& a, double tol = 1e-9)
      : CorrelationMatrix(AntisymmetricMatrix(a, 1e-10), tol) {}

  /// All modes empty: lambda_k = +1 in the canonical pairing.
  static CorrelationMatrix vacuum(ModeCount m);
  static CorrelationMatrix zero(ModeCount m);

  ModeCount modes() const { return m_; }
  const RealMatrix& matrix() const { return a_.matrix(); }
  const AntisymmetricMatrix& antisymmetric() const { return a_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return a_(i, j); }

  /// ||M^T M - I||_F; zero exactly for pure Gaussian states.
  double purity_defect() const;

 private:
  CorrelationMatrix(AntisymmetricMatrix a, ModeCount m)
      : a_(std::move(a)), m_(m) {}
  AntisymmetricMatrix a_;
  ModeCount m_;
};

/// Pure Gaussian state with correlation matrix
/// rotation * (+)_j [[0, s_j], [-s_j, 0]] * rotation^T.
struct GaussianPureState {
  RealMatrix rotation;
  std::vector<int> signs;

  ModeCount modes() const;
  /// Throws unless rotation is in SO(2m) and every sign is +-1.
  void validate(double tol = 1e-9) const;
  CorrelationMatrix correlation() const;
  ComplexVector state_vector() const;
  DensityOperator density() const;
};

CorrelationMatrix correlation_matrix(const DensityOperator& rho,
                                     double tol = kExactTol);

DensityOperator gaussian_from_correlation(const CorrelationMatrix& m,
                                          double tol = 1e-9);

/// Tr(rho i^k c_{a_1} ... c_{a_2k}) for the Gaussian state with correlation
/// matrix m, i.e. the Pfaffian of the principal minor.
double wick_expectation(const CorrelationMatrix& m, CorrelatorIndex index);

/// c~_k = sum_i r_ik c_i (1-based k), the Majorana operators of a rotated
/// frame.
ComplexMatrix rotated_majorana(const RealMatrix& r, int k, ModeCount m);

/// Unitary U with U c_j U^dagger = sum_i r_ij c_i, so that U rho U^dagger
/// has correlation matrix r M r^T. Built as the exponential of a quadratic
/// Hamiltonian from the principal real logarithm of r, evaluated in closed
/// form plane by plane.
ComplexMatrix flo_unitary(const RealMatrix& r);

/// Computational basis state with <i c_{2k-1} c_{2k}> = signs[k].
ComplexVector canonical_basis_state(const std::vector<int>& signs);

/// Lambda = sum_i c_i (x) c_i on two copies of m modes. The dense form is
/// built on first use and shared through a process-wide cache.
class LambdaOperator {
 public:
  explicit LambdaOperator(ModeCount m);

  ModeCount modes() const { return m_; }
  const std::vector<PauliString>& terms() const { return terms_; }

  const ComplexMatrix& matrix() const;

  ComplexMatrix apply_left(const ComplexMatrix& x) const;
  ComplexMatrix apply_right(const ComplexMatrix& x) const;
  ComplexVector apply(const ComplexVector& v) const;

  /// sum_j C(2m, j) |2m - 2j|.
  double trace_norm() const;

 private:
  ModeCount m_;
  std::vector<PauliString> terms_;
  mutable std::shared_ptr<const ComplexMatrix> dense_;
};

LambdaOperator lambda_operator(ModeCount m);

struct GaussianityTest {
  bool gaussian = false;
  double residual = 0.0;  // ||[Lambda, rho (x) rho]||_F
};

GaussianityTest is_gaussian(const DensityOperator& rho, double tol = 1e-9);

struct SandwichNorm {
  double lhs = 0.0;  // ||Lambda (rho (x) rho) Lambda||_1, dense
  double rhs = 0.0;  // 2m - Tr M^T M
};

SandwichNorm lambda_sandwich_norm(const DensityOperator& rho);

/// Dephases rho in the eigenbasis of every i c~_{2k-1} c~_{2k}, where c~ is
/// the frame that block-diagonalizes rho's correlation matrix.
DensityOperator dephase(const DensityOperator& rho);

/// Orthonormal basis (columns) of the null space of Lambda.
ComplexMatrix gaussian_symmetric_basis(ModeCount m);

/// Projector onto the null space of Lambda; rank C(2m, m).
ComplexMatrix gaussian_symmetric_projector(ModeCount m);

/// SWAP on two copies of m modes.
ComplexMatrix swap_operator(ModeCount m);

GaussianPureState random_pure_gaussian(ModeCount m, std::uint64_t seed);

/// Normalized complex Gaussian vector restricted to the C_all = +1
/// (even = true) or C_all = -1 sector.
ComplexVector random_parity_state(ModeCount m, std::uint64_t seed,
                                  bool even = true);

/// Random even density operator of the given rank (mixture of fixed-parity
/// pure states from both sectors).
DensityOperator random_even_state(ModeCount m, std::uint64_t seed,
                                  int rank = 0);

DensityOperator density_from_vector(const ComplexVector& psi);

std::uint64_t binomial(int n, int k);

}  // namespace fermigauss
