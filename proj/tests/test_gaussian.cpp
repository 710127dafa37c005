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

#include <cmath>
#include <random>

#include "acceptance/oracles.hpp"
#include "fermigauss/convex.hpp"
#include "fermigauss/gaussian.hpp"
#include "fermigauss/linalg.hpp"

using namespace fermigauss;
using Catch::Matchers::WithinAbs;

namespace {

// Mixed Gaussian: canonical lambdas in a random frame.
CorrelationMatrix random_mixed_correlation(int m, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> lambdas(static_cast<std::size_t>(m));
  for (double& l : lambdas) l = u(gen);
  const RealMatrix r = random_special_orthogonal(2 * m, seed + 1);
  return CorrelationMatrix(RealMatrix(r * canonical_block_matrix(lambdas) *
                                      r.transpose()));
}

}  // namespace

TEST_CASE("correlation matrix of simple states", "[gaussian]") {
  const DensityOperator mixed =
      DensityOperator::from_matrix(ComplexMatrix::Identity(8, 8) / 8.0);
  CHECK(correlation_matrix(mixed).matrix().norm() == 0.0);
  CHECK(correlation_matrix(ancilla_a8()).matrix().cwiseAbs().maxCoeff() < 1e-15);

  const CorrelationMatrix m = random_mixed_correlation(3, 40);
  const DensityOperator rho = gaussian_from_correlation(m);
  CHECK((correlation_matrix(rho).matrix() - m.matrix()).norm() < 1e-10);
}

TEST_CASE("gaussian states from correlation matrices", "[gaussian]") {
  const DensityOperator zero = gaussian_from_correlation(CorrelationMatrix::zero(ModeCount(2)));
  CHECK((zero.matrix - ComplexMatrix::Identity(4, 4) / 4.0).norm() < 1e-15);

  const DensityOperator pure =
      gaussian_from_correlation(CorrelationMatrix(canonical_block_matrix({1, 1})));
  CHECK_THAT(pure.purity(), WithinAbs(1.0, 1e-10));

  const DensityOperator half =
      gaussian_from_correlation(CorrelationMatrix(canonical_block_matrix({1, 0})));
  CHECK_THAT(von_neumann_entropy(half.matrix), WithinAbs(std::log(2.0), 1e-10));

  CHECK_THROWS_AS(CorrelationMatrix(canonical_block_matrix({1.5, 0})),
                  ValidationError);
}

TEST_CASE("wick expectations", "[gaussian]") {
  const CorrelationMatrix m = random_mixed_correlation(3, 41);
  CHECK(wick_expectation(m, CorrelatorIndex()) == 1.0);
  CHECK_THAT(wick_expectation(m, CorrelatorIndex::from_indices({2, 5})),
             WithinAbs(m(1, 4), 1e-15));
  const DensityOperator rho = gaussian_from_correlation(m);
  const CorrelatorIndex idx = CorrelatorIndex::from_indices({1, 2, 3, 4});
  CHECK_THAT(wick_expectation(m, idx),
             WithinAbs(oracle::dense_correlator(rho.matrix, idx.mask(), ModeCount(3)),
                       1e-9));
}

TEST_CASE("lambda operator", "[gaussian]") {
  for (int m = 1; m <= 3; ++m) {
    const LambdaOperator lambda{ModeCount(m)};
    const double expect =
        2.0 * (m + 1) * static_cast<double>(binomial(2 * m, m + 1));
    CHECK_THAT(lambda.trace_norm(), WithinAbs(expect, 1e-9));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(lambda.matrix());
    int null = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      null += std::abs(es.eigenvalues()(i)) < 1e-9;
    }
    CHECK(null == static_cast<int>(binomial(2 * m, m)));
  }
}

TEST_CASE("gaussianity test", "[gaussian]") {
  const GaussianityTest id = is_gaussian(
      DensityOperator::from_matrix(ComplexMatrix::Identity(4, 4) / 4.0));
  CHECK(id.gaussian);
  CHECK(id.residual < 1e-12);
  CHECK_FALSE(is_gaussian(depolarized_a8(0.0)).gaussian);
  const GaussianityTest g =
      is_gaussian(gaussian_from_correlation(random_mixed_correlation(3, 42)));
  CHECK(g.gaussian);
  CHECK(g.residual < 1e-9);
}

TEST_CASE("lambda sandwich norm", "[gaussian]") {
  const SandwichNorm pure =
      lambda_sandwich_norm(random_pure_gaussian(ModeCount(3), 5).density());
  CHECK(pure.lhs < 1e-9);
  CHECK(pure.rhs < 1e-9);
  const SandwichNorm id = lambda_sandwich_norm(
      DensityOperator::from_matrix(ComplexMatrix::Identity(4, 4) / 4.0));
  CHECK_THAT(id.lhs, WithinAbs(4.0, 1e-9));
  CHECK_THAT(id.rhs, WithinAbs(4.0, 1e-12));
  const SandwichNorm a8 = lambda_sandwich_norm(depolarized_a8(0.5));
  CHECK_THAT(a8.lhs, WithinAbs(8.0, 1e-8));
  CHECK_THAT(a8.rhs, WithinAbs(8.0, 1e-12));
}

TEST_CASE("dephasing", "[gaussian]") {
  const DensityOperator g =
      gaussian_from_correlation(CorrelationMatrix(canonical_block_matrix({0.6, -0.2})));
  CHECK((dephase(g).matrix - g.matrix).norm() < 1e-10);

  const DensityOperator id =
      DensityOperator::from_matrix(ComplexMatrix::Identity(4, 4) / 4.0);
  CHECK((dephase(id).matrix - id.matrix).norm() < 1e-12);

  const DensityOperator rho = random_even_state(ModeCount(2), 77);
  const DensityOperator d = dephase(rho);
  CHECK((correlation_matrix(d).matrix() - correlation_matrix(rho).matrix())
            .norm() < 1e-10);
  CHECK_NOTHROW(d.validate_state());
  // Diagonal in the same frame as the Gaussian state with that matrix.
  const ComplexMatrix g2 = gaussian_from_correlation(correlation_matrix(rho)).matrix;
  CHECK((d.matrix * g2 - g2 * d.matrix).norm() < 1e-10);
}

TEST_CASE("gaussian symmetric projector", "[gaussian]") {
  CHECK(gaussian_symmetric_basis(ModeCount(1)).cols() == 2);
  const ModeCount m(2);
  const ComplexMatrix p = gaussian_symmetric_projector(m);
  CHECK(std::lround(p.trace().real()) == 6);
  CHECK(6 < static_cast<int>(binomial(4 + 1, 2)));
  CHECK((p * p - p).norm() < 1e-12);
  CHECK((p * swap_operator(m) - p).norm() < 1e-12);
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ComplexVector v = random_pure_gaussian(m, 300 + s).state_vector();
    const ComplexVector vv = kron(v, v);
    worst = std::max(worst, (p * vv - vv).norm());
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("random pure gaussian states", "[gaussian]") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const GaussianPureState g = random_pure_gaussian(ModeCount(3), s);
    CHECK_NOTHROW(g.validate());
    const DensityOperator rho = g.density();
    CHECK(is_gaussian(rho).gaussian);
    CHECK_THAT(rho.purity(), WithinAbs(1.0, 1e-10));
    CHECK(g.correlation().purity_defect() < 1e-10);
    CHECK((correlation_matrix(rho).matrix() - g.correlation().matrix()).norm() <
          1e-10);
  }
  // One mode: the state is an eigenstate of i c1 c2.
  const GaussianPureState one = random_pure_gaussian(ModeCount(1), 12);
  CHECK_THAT(std::abs(one.correlation()(0, 1)), WithinAbs(1.0, 1e-12));
}

TEST_CASE("flo unitary conjugates majoranas by the rotation", "[gaussian]") {
  const ModeCount m(3);
  const RealMatrix r = random_special_orthogonal(6, 123);
  const ComplexMatrix u = flo_unitary(r);
  for (int j = 1; j <= 6; ++j) {
    const ComplexMatrix lhs = u * majorana_matrix(j, m) * u.adjoint();
    CHECK((lhs - rotated_majorana(r, j, m)).norm() < 1e-10);
  }
}

TEST_CASE("canonical basis states", "[gaussian]") {
  const ModeCount m(2);
  const ComplexVector v = canonical_basis_state({1, -1});
  for (int k = 1; k <= 2; ++k) {
    const ComplexMatrix q =
        Complex(0, 1) * majorana_matrix(2 * k - 1, m) * majorana_matrix(2 * k, m);
    const double e = (v.adjoint() * q * v)(0, 0).real();
    CHECK_THAT(e, WithinAbs(k == 1 ? 1.0 : -1.0, 1e-15));
  }
}
