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

#include <algorithm>
#include <random>

#include "acceptance/oracles.hpp"
#include "fermigauss/antisym.hpp"

using namespace fermigauss;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("pfaffian small cases", "[antisym]") {
  RealMatrix a2(2, 2);
  a2 << 0, 2.5, -2.5, 0;
  CHECK_THAT(pfaffian(AntisymmetricMatrix(a2)), WithinAbs(2.5, 1e-15));

  std::mt19937_64 gen(17);
  const RealMatrix a = oracle::random_antisymmetric(4, gen);
  const double expect =
      a(0, 1) * a(2, 3) - a(0, 2) * a(1, 3) + a(0, 3) * a(1, 2);
  CHECK_THAT(pfaffian(AntisymmetricMatrix(a)), WithinRel(expect, 1e-12));
}

TEST_CASE("pfaffian against the permutation sum", "[antisym]") {
  std::mt19937_64 gen(20260101);
  for (int t = 0; t < 5; ++t) {
    const RealMatrix a = oracle::random_antisymmetric(8, gen);
    CHECK_THAT(pfaffian(AntisymmetricMatrix(a)),
               WithinRel(oracle::permutation_pfaffian(a), 1e-9));
  }
}

TEST_CASE("pfaffian squared is the determinant", "[antisym]") {
  std::mt19937_64 gen(3);
  for (int dim : {2, 6, 10, 16}) {
    const RealMatrix a = oracle::random_antisymmetric(dim, gen);
    const double pf = pfaffian(AntisymmetricMatrix(a));
    CHECK_THAT(pf * pf, WithinRel(a.determinant(), 1e-9));
  }
}

TEST_CASE("pfaffian input checks", "[antisym]") {
  RealMatrix sym(2, 2);
  sym << 0, 1, 1, 0;
  CHECK_THROWS_AS(AntisymmetricMatrix(sym), ValidationError);
  CHECK_THROWS_AS(AntisymmetricMatrix(RealMatrix::Zero(3, 3)), ValidationError);
}

TEST_CASE("pfaffian minors", "[antisym]") {
  std::mt19937_64 gen(5);
  const AntisymmetricMatrix a(oracle::random_antisymmetric(6, gen));
  CHECK(pfaffian_minor(a, {}) == 1.0);
  CHECK_THAT(pfaffian_minor(a, {2, 5}), WithinAbs(a(1, 4), 1e-15));
  CHECK_THAT(pfaffian_minor(a, {1, 2, 3, 4, 5, 6}),
             WithinRel(pfaffian(a), 1e-12));
  CHECK_THROWS_AS(pfaffian_minor(a, {3, 1}), ValidationError);
  CHECK_THROWS_AS(pfaffian_minor(a, {1, 7}), ValidationError);
}

TEST_CASE("block diagonalization", "[antisym]") {
  SECTION("zero matrix") {
    const BlockDiagonalForm f =
        block_diagonalize(AntisymmetricMatrix::zero(4));
    CHECK(f.lambdas == std::vector<double>{0.0, 0.0});
    CHECK(is_special_orthogonal(f.rotation));
  }
  SECTION("already canonical") {
    const RealMatrix c = canonical_block_matrix({0.7, 0.3});
    const BlockDiagonalForm f = block_diagonalize(AntisymmetricMatrix(c));
    CHECK_THAT(f.lambdas[0], WithinAbs(0.7, 1e-12));
    CHECK_THAT(f.lambdas[1], WithinAbs(0.3, 1e-12));
    // A signed permutation: every entry is 0 or +-1.
    for (Eigen::Index i = 0; i < 4; ++i) {
      for (Eigen::Index j = 0; j < 4; ++j) {
        const double v = std::abs(f.rotation(i, j));
        CHECK((v < 1e-12 || std::abs(v - 1.0) < 1e-12));
      }
    }
  }
  SECTION("random 8x8 matches the complex eigenvalues") {
    std::mt19937_64 gen(8);
    const RealMatrix a = oracle::random_antisymmetric(8, gen);
    const BlockDiagonalForm f = block_diagonalize(AntisymmetricMatrix(a));
    CHECK(is_special_orthogonal(f.rotation));
    CHECK((f.reconstruct() - a).norm() < 1e-10);
    Eigen::ComplexEigenSolver<RealMatrix> es(a);
    std::vector<double> im;
    for (Eigen::Index i = 0; i < 8; ++i) {
      if (es.eigenvalues()(i).imag() > 0) im.push_back(es.eigenvalues()(i).imag());
    }
    std::sort(im.rbegin(), im.rend());
    REQUIRE(im.size() == 4);
    for (int j = 0; j < 4; ++j) {
      CHECK_THAT(std::abs(f.lambdas[j]), WithinAbs(im[j], 1e-9));
    }
  }
}

TEST_CASE("special orthogonal constructors", "[antisym]") {
  CHECK((so_from_givens(4, {}) - RealMatrix::Identity(4, 4)).norm() == 0.0);

  const RealMatrix p12 = so_from_permutation({2, 1, 4, 3});
  const RealMatrix r = direct_sum(p12, p12);
  CHECK(is_special_orthogonal(r));
  CHECK_THROWS_AS(so_from_permutation({2, 1, 3, 4}), ValidationError);

  const RealMatrix g = so_from_givens(6, {{1, 2, 0.3}, {2, 5, -1.1}});
  const RealMatrix h = random_special_orthogonal(6, 1);
  CHECK(is_special_orthogonal(g * h, 1e-12));

  RealMatrix expect = RealMatrix::Identity(3, 3);
  expect(0, 0) = std::cos(0.4);
  expect(1, 0) = std::sin(0.4);
  expect(0, 1) = -std::sin(0.4);
  expect(1, 1) = std::cos(0.4);
  CHECK((givens_rotation(3, 1, 2, 0.4) - expect).norm() < 1e-15);
}

TEST_CASE("haar random rotations", "[antisym]") {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const RealMatrix r = random_special_orthogonal(8, seed);
    CHECK((r.transpose() * r - RealMatrix::Identity(8, 8)).norm() < 1e-12);
    CHECK_THAT(r.determinant(), WithinAbs(1.0, 1e-10));
  }
  CHECK((random_special_orthogonal(8, 1) - random_special_orthogonal(8, 2))
            .norm() > 1e-3);
  CHECK((random_special_orthogonal(8, 1) - random_special_orthogonal(8, 1))
            .norm() == 0.0);
}

TEST_CASE("rotation planes reconstruct the rotation", "[antisym]") {
  const RealMatrix r = random_special_orthogonal(6, 31);
  const RotationPlanes planes = rotation_planes(r);
  RealMatrix blocks = RealMatrix::Zero(6, 6);
  for (int j = 0; j < 3; ++j) {
    const double t = planes.thetas[j];
    blocks.block(2 * j, 2 * j, 2, 2) << std::cos(t), std::sin(t),
        -std::sin(t), std::cos(t);
  }
  CHECK((planes.basis * blocks * planes.basis.transpose() - r).norm() < 1e-10);
}
