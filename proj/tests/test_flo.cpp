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

#include "acceptance/oracles.hpp"
#include "fermigauss/convex.hpp"
#include "fermigauss/flo.hpp"
#include "fermigauss/linalg.hpp"

using namespace fermigauss;
using Catch::Matchers::WithinAbs;

namespace {

CircuitStep measure(int mode) {
  CircuitStep s;
  s.op = CircuitStep::Op::kMeasure;
  s.mode = mode;
  return s;
}

CircuitStep braid(int i, int j) {
  CircuitStep s;
  s.op = CircuitStep::Op::kBraid;
  s.i = i;
  s.j = j;
  return s;
}

}  // namespace

TEST_CASE("rotations act on correlation matrices", "[flo]") {
  const CorrelationMatrix m = random_pure_gaussian(ModeCount(3), 8).correlation();
  CHECK((apply_rotation(m, RealMatrix::Identity(6, 6)).matrix() - m.matrix())
            .norm() == 0.0);
  const RealMatrix r = random_special_orthogonal(6, 9);
  CHECK(apply_rotation(CorrelationMatrix::zero(ModeCount(3)), r).matrix().norm() <
        1e-15);

  const DensityOperator rho = gaussian_from_correlation(m);
  const ComplexMatrix u = flo_unitary(r);
  const DensityOperator evolved =
      DensityOperator::from_matrix(u * rho.matrix * u.adjoint(), 1e-10);
  CHECK((correlation_matrix(evolved).matrix() - apply_rotation(m, r).matrix())
            .norm() < 1e-9);
  CHECK_THROWS_AS(apply_rotation(m, RealMatrix::Identity(4, 4)), ValidationError);
}

TEST_CASE("braid rotations", "[flo]") {
  const RealMatrix b = braid_rotation(1, 2, 4);
  CHECK_THAT(b.determinant(), WithinAbs(1.0, 1e-15));
  // Column action: c1 -> c2, c2 -> -c1.
  CHECK(b(1, 0) == 1.0);
  CHECK(b(0, 1) == -1.0);
  RealMatrix pi = RealMatrix::Identity(4, 4);
  pi(0, 0) = pi(1, 1) = -1.0;
  CHECK((b * b - pi).norm() < 1e-15);
  CHECK_THROWS_AS(braid_rotation(1, 1, 4), ValidationError);
  CHECK_THROWS_AS(braid_rotation(1, 5, 4), ValidationError);
}

TEST_CASE("mode measurement", "[flo]") {
  const ModeCount two(2);
  const MeasurementResult vac = measure_mode(CorrelationMatrix::vacuum(two), 1, 0);
  CHECK_THAT(vac.probability, WithinAbs(1.0, 1e-15));
  CHECK((vac.posterior.matrix() - CorrelationMatrix::vacuum(two).matrix()).norm() <
        1e-15);
  CHECK_THAT(empty_probability(CorrelationMatrix::zero(two), 2),
             WithinAbs(0.5, 1e-15));

  // Dense projector oracle.
  const ModeCount m(3);
  const CorrelationMatrix c = random_pure_gaussian(m, 71).correlation();
  const DensityOperator rho = gaussian_from_correlation(c);
  for (int k = 1; k <= 3; ++k) {
    for (int outcome = 0; outcome < 2; ++outcome) {
      const ComplexMatrix q = Complex(0, 1) * majorana_matrix(2 * k - 1, m) *
                              majorana_matrix(2 * k, m);
      const ComplexMatrix id = ComplexMatrix::Identity(8, 8);
      const ComplexMatrix p = 0.5 * (outcome == 0 ? ComplexMatrix(id + q)
                                                  : ComplexMatrix(id - q));
      const ComplexMatrix post = p * rho.matrix * p;
      const double prob = post.trace().real();
      if (prob < 1e-9) {
        CHECK_THROWS_AS(measure_mode(c, k, outcome), NumericalError);
        continue;
      }
      const MeasurementResult r = measure_mode(c, k, outcome);
      CHECK_THAT(r.probability, WithinAbs(prob, 1e-9));
      const DensityOperator dense =
          DensityOperator::from_matrix(post / prob, 1e-10);
      CHECK((correlation_matrix(dense, 1e-10).matrix() - r.posterior.matrix())
                .norm() < 1e-9);
    }
  }
}

TEST_CASE("injection appends the ancilla", "[flo]") {
  const CorrelationMatrix a = random_pure_gaussian(ModeCount(2), 1).correlation();
  const CorrelationMatrix b = random_pure_gaussian(ModeCount(1), 2).correlation();
  const CorrelationMatrix joint = inject_state(a, b);
  CHECK(joint.modes().value() == 3);
  CHECK((joint.matrix().topLeftCorner(4, 4) - a.matrix()).norm() == 0.0);
  CHECK((joint.matrix().bottomRightCorner(2, 2) - b.matrix()).norm() == 0.0);
  CHECK(joint.matrix().topRightCorner(4, 2).norm() == 0.0);
}

TEST_CASE("ensemble sampling frequencies", "[flo]") {
  GaussianEnsemble e;
  const std::vector<double> w{0.5, 0.3, 0.2};
  for (std::size_t i = 0; i < w.size(); ++i) {
    e.entries.push_back({w[i], random_pure_gaussian(ModeCount(1), i)});
  }
  CHECK_NOTHROW(e.validate());
  std::mt19937_64 gen(2024);
  std::vector<double> counts(3, 0.0);
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) counts[e.sample(gen)] += 1.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double sigma = std::sqrt(draws * w[i] * (1 - w[i]));
    CHECK(std::abs(counts[i] - draws * w[i]) < 3.0 * sigma);
  }
  GaussianEnsemble bad = e;
  bad.entries[0].weight = 0.7;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("empty circuit", "[flo]") {
  FloCircuit c;
  c.modes = 2;
  const RunResult r = run(c, 10, 1);
  REQUIRE(r.histogram.size() == 1);
  CHECK(r.histogram.begin()->first.empty());
  CHECK(r.histogram.begin()->second == 10);
}

TEST_CASE("braid then measure matches the dense oracle", "[flo]") {
  FloCircuit c;
  c.modes = 2;
  c.steps = {braid(2, 3), measure(1), measure(2)};
  const auto exact = exact_distribution(c);
  CHECK(oracle::total_variation(exact, oracle::dense_circuit_distribution(c)) <
        1e-12);
  CHECK_THAT(exact.at("00"), WithinAbs(0.5, 1e-12));
  CHECK_THAT(exact.at("11"), WithinAbs(0.5, 1e-12));
}

TEST_CASE("maximally mixed ancilla gives uniform outcomes", "[flo]") {
  const A8Decomposition d = decompose_a8(1.0);
  REQUIRE(d.feasible);
  FloCircuit c;
  c.modes = 1;
  CircuitStep inject;
  inject.op = CircuitStep::Op::kInject;
  inject.ensemble = std::make_shared<GaussianEnsemble>(d.ensemble);
  inject.offset = 1;
  c.steps.push_back(inject);
  for (int k = 2; k <= 5; ++k) c.steps.push_back(measure(k));
  const auto exact = exact_distribution(c);
  CHECK(exact.size() == 16);
  for (const auto& [key, p] : exact) CHECK_THAT(p, WithinAbs(1.0 / 16, 1e-12));
}

TEST_CASE("runs are deterministic in the seed", "[flo]") {
  const FloCircuit c = oracle::random_circuit(31005);
  const RunResult a = run(c, 200, 9);
  const RunResult b = run(c, 200, 9);
  CHECK(a.histogram == b.histogram);
  REQUIRE(a.records.size() == 200);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].outcomes == b.records[i].outcomes);
    CHECK(a.records[i].step_hashes == b.records[i].step_hashes);
  }
  const SimulationRecord single = run_shot(c, 9, 17);
  CHECK(single.outcomes == a.records[17].outcomes);
}

TEST_CASE("simulation past the dense mode cap", "[flo]") {
  FloCircuit c;
  c.modes = 12;
  CircuitStep rot;
  rot.op = CircuitStep::Op::kRotate;
  rot.rotation = random_special_orthogonal(24, 5);
  c.steps = {rot, measure(1), measure(7), measure(12)};
  const auto exact = exact_distribution(c);
  double total = 0.0;
  for (const auto& [key, p] : exact) total += p;
  CHECK_THAT(total, WithinAbs(1.0, 1e-12));
  const RunResult r = run(c, 1000, 3, false);
  CHECK(r.histogram.size() <= exact.size());
  // Dense constructions still refuse.
  CHECK_THROWS_AS(flo_unitary(rot.rotation), ValidationError);
}

TEST_CASE("circuit validation", "[flo]") {
  FloCircuit c;
  c.modes = 2;
  c.steps = {measure(3)};
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c.steps = {braid(1, 5)};
  CHECK_THROWS_AS(c.validate(), ValidationError);
  CircuitStep inject;
  inject.op = CircuitStep::Op::kInject;
  GaussianEnsemble e;
  e.entries.push_back({1.0, random_pure_gaussian(ModeCount(1), 3)});
  inject.ensemble = std::make_shared<GaussianEnsemble>(e);
  inject.offset = 1;
  c.steps = {inject};
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c.steps[0].offset = 2;
  CHECK(c.validate() == 3);
}
