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
#include <filesystem>
#include <fstream>

#include "fermigauss/convex.hpp"
#include "fermigauss/extension_sdp.hpp"
#include "fermigauss/linalg.hpp"

using namespace fermigauss;
using Catch::Matchers::WithinAbs;

namespace {

struct Mixture {
  DensityOperator rho;
  ComplexMatrix ext;
};

Mixture gaussian_mixture(ModeCount m, std::uint64_t seed, int count) {
  ComplexMatrix rho = ComplexMatrix::Zero(m.dim(), m.dim());
  ComplexMatrix ext = ComplexMatrix::Zero(m.dim() * m.dim(), m.dim() * m.dim());
  for (int i = 0; i < count; ++i) {
    const double w = (i + 1.0) / (count * (count + 1) / 2.0);
    const ComplexMatrix s =
        random_pure_gaussian(m, seed + static_cast<std::uint64_t>(i)).density().matrix;
    rho += w * s;
    ext += w * kron(s, s);
  }
  return {DensityOperator::from_matrix(rho, 1e-12), ext};
}

// Coordinates of a swap-symmetric extension in the instance's variables.
RealVector coordinates(const SdpInstance& inst, const ComplexMatrix& ext) {
  const double scale = static_cast<double>(inst.complex_dim());
  RealVector x(static_cast<Eigen::Index>(inst.variable_count()));
  for (std::size_t k = 0; k < inst.variable_count(); ++k) {
    const auto [i, j] = inst.variables[k];
    const ComplexMatrix mi = correlator_matrix(inst.basis[i], inst.m);
    const ComplexMatrix mj = correlator_matrix(inst.basis[j], inst.m);
    x(static_cast<Eigen::Index>(k)) = (kron(mi, mj) * ext).trace().real() / scale;
  }
  return x;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("operator basis", "[sdp]") {
  CHECK(build_basis(ModeCount(1)) == std::vector<std::uint32_t>{0u, 0b11u});
  CHECK(build_basis(ModeCount(2)).size() == 8);
  const ModeCount m(3);
  const std::vector<std::uint32_t> basis = build_basis(m);
  REQUIRE(basis.size() == 32);
  double worst = 0.0;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const ComplexMatrix a = correlator_matrix(basis[j], m);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Complex t = (a * correlator_matrix(basis[k], m)).trace();
      worst = std::max(worst, std::abs(t - (j == k ? 8.0 : 0.0)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("variable counts", "[sdp]") {
  const DensityOperator one =
      DensityOperator::from_matrix(ComplexMatrix::Identity(2, 2) / 2.0);
  CHECK(build_extension_sdp(one).variable_count() == 1);
  const DensityOperator two = random_even_state(ModeCount(2), 3);
  CHECK(build_extension_sdp(two).variable_count() == 28);
  CHECK(build_extension_sdp(two, true).block_dims() == std::vector<int>{32, 32});
}

TEST_CASE("explicit gaussian extension satisfies the program", "[sdp]") {
  const Mixture mix = gaussian_mixture(ModeCount(2), 600, 2);
  const ExtensionResiduals r = verify_extension(mix.ext, mix.rho, true);
  CHECK(r.worst() < 1e-9);

  const SdpInstance inst = build_extension_sdp(mix.rho, true);
  REQUIRE(inst.consistent);
  const RealVector x = coordinates(inst, mix.ext);
  CHECK((inst.assemble(x) - mix.ext).norm() < 1e-10);
  CHECK(inst.equality_residual(x) < 1e-9);
}

TEST_CASE("extension residuals flag bad candidates", "[sdp]") {
  const DensityOperator a8 = depolarized_a8(0.0);
  const ExtensionResiduals r = verify_extension(kron(a8.matrix, a8.matrix), a8);
  CHECK(r.lambda > 1e-3);
  CHECK(r.partial_trace < 1e-12);

  const DensityOperator rho = random_even_state(ModeCount(2), 12);
  const ExtensionResiduals flat =
      verify_extension(ComplexMatrix::Identity(16, 16) / 16.0, rho);
  CHECK(flat.lambda > 1e-3);
  CHECK(flat.partial_trace > 1e-3);
}

TEST_CASE("reduced equality system matches the literal one", "[sdp]") {
  for (std::uint64_t seed : {1u, 2u}) {
    const DensityOperator rho = random_even_state(ModeCount(2), seed);
    const SdpInstance inst = build_extension_sdp(rho);
    LiteralSystem lit = literal_equality_system(inst);
    double inconsistency = 0.0;
    const std::vector<int> pivots = rref(lit.a, lit.b, 1e-10, &inconsistency);
    CHECK(inconsistency < 1e-10);
    CHECK(pivots == inst.pivots);
    REQUIRE(static_cast<Eigen::Index>(pivots.size()) == inst.eq_a.rows());
    const RealMatrix dense = RealMatrix(inst.eq_a);
    CHECK((lit.a.topRows(dense.rows()) - dense).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((lit.b.head(dense.rows()) - inst.eq_b).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("rref", "[sdp]") {
  RealMatrix a(3, 3);
  a << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  RealVector b(3);
  b << 1, 2, 5;
  double inconsistency = -1.0;
  const std::vector<int> pivots = rref(a, b, 1e-12, &inconsistency);
  CHECK(pivots == std::vector<int>{0, 1});
  CHECK(inconsistency == 0.0);
  RealMatrix a2(3, 3);
  a2 << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  RealVector b2(3);
  b2 << 1, 3, 5;
  rref(a2, b2, 1e-12, &inconsistency);
  CHECK_THAT(inconsistency, WithinAbs(0.5, 1e-12));
}

TEST_CASE("real embedding", "[sdp]") {
  CHECK((real_embed(ComplexMatrix::Identity(2, 2)) - RealMatrix::Identity(4, 4))
            .norm() == 0.0);
  ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  z(0, 0) = 1;
  z(1, 1) = -1;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(real_embed(z));
  CHECK((es.eigenvalues() - Eigen::Vector4d(-1, -1, 1, 1)).norm() < 1e-15);

  const ComplexMatrix r = random_even_state(ModeCount(3), 4).matrix;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> zc(r);
  Eigen::SelfAdjointEigenSolver<RealMatrix> zr(real_embed(r));
  for (Eigen::Index i = 0; i < 8; ++i) {
    CHECK_THAT(zr.eigenvalues()(2 * i), WithinAbs(zc.eigenvalues()(i), 1e-10));
    CHECK_THAT(zr.eigenvalues()(2 * i + 1), WithinAbs(zc.eigenvalues()(i), 1e-10));
  }
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1;
  CHECK_THROWS_AS(real_embed(bad), ValidationError);
}

TEST_CASE("partial transpose", "[sdp]") {
  for (int mv = 1; mv <= 2; ++mv) {
    const ModeCount m(mv);
    const int d = m.dim();
    const ComplexMatrix x = random_even_state(ModeCount(2 * mv), 50 + mv).matrix;
    const ComplexMatrix t = partial_transpose(x, m);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        for (int c = 0; c < d; ++c) {
          for (int e = 0; e < d; ++e) {
            CHECK(t(a * d + c, b * d + e) == x(b * d + c, a * d + e));
          }
        }
      }
    }
  }
}

TEST_CASE("small feasibility problems", "[sdp]") {
  const DensityOperator one =
      DensityOperator::from_matrix(ComplexMatrix::Identity(2, 2) / 2.0);
  const ExtensionCertificate c1 =
      solve_feasibility(build_extension_sdp(one), one);
  CHECK(c1.status == ExtensionStatus::kFeasible);

  const Mixture mix = gaussian_mixture(ModeCount(3), 900, 3);
  const SdpInstance inst = build_extension_sdp(mix.rho);
  const ExtensionCertificate c3 = solve_feasibility(inst, mix.rho);
  CHECK(c3.status == ExtensionStatus::kFeasible);
  CHECK(c3.residuals.worst() < 1e-7);
  CHECK(verify_extension(c3.rho_ext, mix.rho).worst() < 1e-7);
}

TEST_CASE("non-positive input is certified infeasible", "[sdp]") {
  const ModeCount m(2);
  const ComplexMatrix q =
      Complex(0, 1) * majorana_matrix(1, m) * majorana_matrix(2, m);
  const DensityOperator rho =
      DensityOperator::from_matrix((ComplexMatrix::Identity(4, 4) + 1.5 * q) / 4.0);
  const ExtensionCertificate c =
      solve_feasibility(build_extension_sdp(rho), rho);
  CHECK(c.status == ExtensionStatus::kInfeasible);
  CHECK(c.margin > 1e-7);
}

TEST_CASE("sdpa export", "[sdp]") {
  const DensityOperator one =
      DensityOperator::from_matrix(ComplexMatrix::Identity(2, 2) / 2.0);
  const SdpInstance inst = build_extension_sdp(one);
  const std::string path = temp_path("fermigauss_test_m1.dat-s");
  export_sdpa(inst, path);
  const SdpaProblem p = parse_sdpa(path);
  CHECK(p.variables == 1);
  CHECK(p.objective == std::vector<double>{0.0});
  std::vector<SdpaEntry> expect;
  for_each_sdpa_entry(inst, [&](const SdpaEntry& e) { expect.push_back(e); });
  CHECK(p.entries == expect);
  CHECK(check_sdpa_roundtrip(inst, path).ok);
  CHECK(std::filesystem::exists(path + ".json"));

  // A tampered file fails the round trip.
  {
    std::ofstream out(path, std::ios::app);
    out << "1 1 1 1 0.5\n";
  }
  CHECK_FALSE(check_sdpa_roundtrip(inst, path).ok);
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".json");

  const SdpInstance two = build_extension_sdp(random_even_state(ModeCount(2), 8), true);
  const std::string path2 = temp_path("fermigauss_test_m2.dat-s");
  export_sdpa(two, path2);
  const SdpaProblem p2 = parse_sdpa(path2);
  CHECK(p2.variables == 28);
  CHECK(p2.block_struct.size() == 3);
  CHECK(check_sdpa_roundtrip(two, path2).ok);
  std::filesystem::remove(path2);
  std::filesystem::remove(path2 + ".json");
}

TEST_CASE("instance limits", "[sdp]") {
  ComplexMatrix odd = ComplexMatrix::Identity(4, 4) / 4.0;
  odd += 0.1 * majorana_matrix(1, ModeCount(2));
  CHECK_THROWS_AS(build_extension_sdp(DensityOperator::from_matrix(odd)),
                  ValidationError);
  const DensityOperator a8 = depolarized_a8(0.3);
  CHECK_THROWS_AS(solve_feasibility(build_extension_sdp(a8, true), a8),
                  ValidationError);
}
