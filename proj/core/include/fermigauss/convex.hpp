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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fermigauss/flo.hpp"
#include "fermigauss/gaussian.hpp"

namespace fermigauss {

/// Masks of the stabilizers S1 = -c1c2c5c6, S2 = -c2c3c6c7, S3 = -c1c2c3c4
/// and Q = c1...c8 of the 8-Majorana ancilla, in that order. Each equals the
/// Hermitian correlator of its mask.
std::array<std::uint32_t, 4> a8_stabilizer_masks();

/// Expansion of |a8><a8| = (1/16) prod (I + S): sixteen terms of +-1/16.
EvenOperator a8_expansion();

DensityOperator ancilla_a8();

/// (1 - p) |a8><a8| + p I/16.
DensityOperator depolarized_a8(double p);

/// Tr(|a8><a8| rho_a8(p)) = 1 - 15p/16.
double witness_value(double p);

/// Tr(|a8><a8| rho) for a dense 4-mode state.
double a8_overlap(const DensityOperator& rho);

/// |<psi|a8>|^2 for the pure Gaussian state with correlation matrix m,
/// evaluated with Wick's theorem.
double a8_overlap(const CorrelationMatrix& m);

enum class WitnessVerdict { kNotConvexGaussian, kInconclusive };

const char* to_string(WitnessVerdict v);

/// Flags rho when its overlap with |a8> exceeds the Gaussian bound 1/2.
WitnessVerdict witness_verdict(const DensityOperator& rho,
                               double slack = 1e-9);

struct OverlapSearch {
  double best = 0.0;
  GaussianPureState best_state;
  std::uint64_t evaluations = 0;
  /// Evaluations that exceeded 1/2 + 1e-9.
  std::uint64_t violations = 0;
};

/// Samples `samples` Haar-random pure Gaussian states, then refines the
/// `refine` best of them by coordinate ascent over Givens angles.
OverlapSearch max_overlap_search(std::uint64_t samples, std::uint64_t seed,
                                 int refine = 8, int sweeps = 12);

/// phi_t(x) = (|x><x| + |~x><~x|) / 2 in the frame rotated by the type-t
/// pairing. x is a 4-bit string with x_1 as the most significant bit;
/// canonical ids have x_1 = 0.
struct ExtremePointId {
  int type = 1;  // 1, 2 or 3
  int x = 0;     // 0..15

  ExtremePointId canonical() const;
  void validate() const;
};

/// Pairing rotation of each type: I, P12 (+) P12 and P13^T (+) P13^T.
RealMatrix phi_rotation(int type);

/// Two-entry ensemble with weight 1/2 each.
GaussianEnsemble phi_ensemble(ExtremePointId id);
DensityOperator phi_state(ExtremePointId id);

/// The same state built as U_t phi_1(x) U_t^dagger with U_t the FLO lift of
/// the pairing rotation.
DensityOperator phi_state_via_unitary(ExtremePointId id);

/// The 24 canonical extreme points, ordered by type then x.
std::vector<ExtremePointId> canonical_extreme_points();

struct A8Decomposition {
  bool feasible = false;
  double p = 0.0;
  /// One weight per canonical extreme point.
  std::vector<double> gamma;
  /// Least-squares residual ||A gamma - b|| of the nonnegative fit.
  double residual = 0.0;
  /// When infeasible: y = b - A gamma satisfies A^T y <= 0 and
  /// b^T y = margin > 0, so no nonnegative gamma reproduces b.
  RealVector certificate;
  double margin = 0.0;
  GaussianEnsemble ensemble;  // empty unless feasible
  double trace_distance = 0.0;
};

A8Decomposition decompose_a8(double p, double tol = 1e-10);

/// Gaussian state (1/2^m) prod_k (I + i lambda_k c~_{2k-1} c~_{2k}) with
/// c~ = rotation^T c and lambda_k in {-1, 0, 1}.
struct BallTerm {
  double weight = 0.0;
  std::uint32_t mask = 0;
  RealMatrix rotation;
  std::vector<double> lambdas;
};

struct BallDecomposition {
  std::vector<BallTerm> terms;
  double c = 0.0;
  double epsilon = 1.0;
  /// ||rho - (sum w xi - c I/2^m)||_F.
  double reconstruction_error = 0.0;
  /// Pure-state ensemble for eps rho + (1 - eps) I/2^m.
  GaussianEnsemble certified;
};

BallDecomposition ball_decomposition(const DensityOperator& rho);

/// eps rho + (1 - eps) I/2^m.
DensityOperator mix_with_identity(const DensityOperator& rho, double eps);

/// Trace distance between the ensemble's density and rho, and a check that
/// every entry is pure Gaussian.
double ensemble_trace_distance(const GaussianEnsemble& e,
                               const DensityOperator& rho);

}  // namespace fermigauss
