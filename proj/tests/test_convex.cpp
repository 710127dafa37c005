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

#include <catch_amalgamated.hpp>

#include <set>

#include "fermigauss/convex.hpp"
#include "fermigauss/linalg.hpp"

using namespace fermigauss;
using Catch::Matchers::WithinAbs;

TEST_CASE("a8 ancilla", "[convex]") {
  const DensityOperator a8 = ancilla_a8();
  CHECK_THAT(a8.matrix.trace().real(), WithinAbs(1.0, 1e-14));
  CHECK_THAT(a8.purity(), WithinAbs(1.0, 1e-14));
  const ModeCount m(4);
  for (std::uint32_t s : a8_stabilizer_masks()) {
    CHECK_THAT((correlator_matrix(s, m) * a8.matrix).trace().real(),
               WithinAbs(1.0, 1e-14));
  }
  CHECK(correlation_matrix(a8).matrix().cwiseAbs().maxCoeff() < 1e-15);
  CHECK((assemble_even(a8_expansion()) - a8.matrix).norm() < 1e-14);
}

TEST_CASE("depolarized a8", "[convex]") {
  CHECK((depolarized_a8(1.0).matrix - ComplexMatrix::Identity(16, 16) / 16.0)
            .norm() < 1e-15);
  CHECK((depolarized_a8(0.0).matrix - ancilla_a8().matrix).norm() < 1e-15);
  CHECK_FALSE(is_gaussian(depolarized_a8(0.5)).gaussian);
  CHECK_THROWS_AS(depolarized_a8(1.5), ValidationError);
}

TEST_CASE("witness", "[convex]") {
  CHECK_THAT(witness_value(0.0), WithinAbs(1.0, 1e-15));
  CHECK_THAT(witness_value(1.0), WithinAbs(1.0 / 16, 1e-15));
  CHECK_THAT(witness_value(8.0 / 15), WithinAbs(0.5, 1e-15));
  CHECK_THAT(witness_value(0.5), WithinAbs(0.53125, 1e-15));
  CHECK_THAT(witness_value(0.54), WithinAbs(0.49375, 1e-15));
  CHECK_THAT(a8_overlap(depolarized_a8(0.3)), WithinAbs(witness_value(0.3), 1e-14));

  CHECK(witness_verdict(depolarized_a8(0.5)) == WitnessVerdict::kNotConvexGaussian);
  CHECK(witness_verdict(depolarized_a8(0.54)) == WitnessVerdict::kInconclusive);
  CHECK(witness_verdict(depolarized_a8(1.0)) == WitnessVerdict::kInconclusive);
}

TEST_CASE("gaussian overlap with a8 stays below one half", "[convex]") {
  const GaussianPureState basis{RealMatrix::Identity(8, 8), {1, 1, 1, 1}};
  CHECK(a8_overlap(basis.correlation()) <= 0.5 + 1e-12);
  CHECK_THAT(a8_overlap(basis.correlation()),
             WithinAbs(a8_overlap(basis.density()), 1e-12));
  const OverlapSearch s = max_overlap_search(1000, 7);
  CHECK(s.best <= 0.5 + 1e-9);
  CHECK(s.violations == 0);
  CHECK(s.best > 0.45);
}

TEST_CASE("extreme points", "[convex]") {
  const std::vector<ExtremePointId> ids = canonical_extreme_points();
  CHECK(ids.size() == 24);
  for (int t = 1; t <= 3; ++t) CHECK(is_special_orthogonal(phi_rotation(t)));

  std::vector<ComplexMatrix> states;
  for (const ExtremePointId& id : ids) {
    const DensityOperator phi = phi_state(id);
    CHECK(correlation_matrix(phi).matrix().cwiseAbs().maxCoeff() < 1e-12);
    CHECK((phi.matrix - phi_state_via_unitary(id).matrix).norm() < 1e-10);
    const GaussianEnsemble e = phi_ensemble(id);
    CHECK(e.entries.size() == 2);
    for (const auto& entry : e.entries) {
      CHECK(entry.state.correlation().purity_defect() < 1e-10);
    }
    for (const ComplexMatrix& other : states) CHECK((other - phi.matrix).norm() > 1e-6);
    states.push_back(phi.matrix);
  }

  // Type 1, x = 0000: equal mixture of the all-empty and all-full states.
  const DensityOperator phi0 = phi_state({1, 0});
  const ComplexVector empty = canonical_basis_state({1, 1, 1, 1});
  const ComplexVector full = canonical_basis_state({-1, -1, -1, -1});
  const ComplexMatrix expect =
      0.5 * (empty * empty.adjoint() + full * full.adjoint());
  CHECK((phi0.matrix - expect).norm() < 1e-12);
}

TEST_CASE("a8 decomposition", "[convex]") {
  for (double p : {8.0 / 9, 0.92, 0.95, 1.0}) {
    const A8Decomposition d = decompose_a8(p);
    REQUIRE(d.feasible);
    CHECK(d.ensemble.entries.size() <= 48);
    CHECK_NOTHROW(d.ensemble.validate(1e-9));
    CHECK(d.trace_distance < 1e-9);
    for (double g : d.gamma) CHECK(g >= 0.0);
  }
  for (double p : {0.85, 0.5}) {
    const A8Decomposition d = decompose_a8(p);
    CHECK_FALSE(d.feasible);
    CHECK(d.margin > 1e-10);
    CHECK(d.ensemble.entries.empty());
  }
}

TEST_CASE("ball decomposition", "[convex]") {
  const DensityOperator id =
      DensityOperator::from_matrix(ComplexMatrix::Identity(4, 4) / 4.0);
  const BallDecomposition b0 = ball_decomposition(id);
  CHECK(b0.c == 0.0);
  CHECK(b0.epsilon == 1.0);

  const ModeCount m(2);
  const ComplexMatrix q =
      Complex(0, 1) * majorana_matrix(1, m) * majorana_matrix(2, m);
  const DensityOperator single = DensityOperator::from_matrix(
      (ComplexMatrix::Identity(4, 4) + 0.5 * q) / 4.0);
  const BallDecomposition b1 = ball_decomposition(single);
  CHECK(b1.reconstruction_error < 1e-12);
  CHECK(b1.terms.size() == 1);
  CHECK(b1.c < 1e-12);

  const DensityOperator a8 = depolarized_a8(0.0);
  const BallDecomposition b2 = ball_decomposition(a8);
  CHECK(std::isfinite(b2.c));
  CHECK(b2.reconstruction_error < 1e-10);
  CHECK(b2.epsilon > 0.0);
  CHECK(ensemble_trace_distance(b2.certified, mix_with_identity(a8, b2.epsilon)) <
        1e-9);
  // Noise needed by the ball certificate is at least the 8/9 of the
  // dedicated decomposition.
  CHECK(1.0 - b2.epsilon >= 8.0 / 9 - 1e-12);
}
