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
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fermigauss/gaussian.hpp"

namespace fermigauss {

/// Weighted list of pure Gaussian states.
struct GaussianEnsemble {
  struct Entry {
    double weight = 0.0;
    GaussianPureState state;
  };
  std::vector<Entry> entries;

  ModeCount modes() const;
  /// Weights nonnegative and summing to 1 within tol, states valid and of a
  /// common size.
  void validate(double tol = 1e-12) const;
  DensityOperator density() const;
  /// Index drawn with probability proportional to weight.
  std::size_t sample(std::mt19937_64& gen) const;
};

/// M -> R M R^T.
CorrelationMatrix apply_rotation(const CorrelationMatrix& m,
                                 const RealMatrix& r);

/// c_i -> c_j, c_j -> -c_i (columns act on Majoranas), identity elsewhere.
RealMatrix braid_rotation(int i, int j, int dim);

struct MeasurementResult {
  int outcome = 0;  // 0 when i c_{2k-1} c_{2k} = +1, i.e. mode k empty
  double probability = 0.0;
  CorrelationMatrix posterior;
};

/// Probability that mode k (1-based) is found empty: (1 + M_{2k-1,2k}) / 2.
double empty_probability(const CorrelationMatrix& m, int k);

/// Conditions on a forced outcome; throws NumericalError when its
/// probability is below 1e-12.
MeasurementResult measure_mode(const CorrelationMatrix& m, int k, int outcome);
MeasurementResult measure_mode(const CorrelationMatrix& m, int k,
                               std::mt19937_64& gen);

/// Appends the modes of `ancilla` after the existing ones.
CorrelationMatrix inject_state(const CorrelationMatrix& m,
                               const CorrelationMatrix& ancilla);

struct CircuitStep {
  enum class Op { kRotate, kBraid, kMeasure, kInject };
  Op op = Op::kRotate;
  RealMatrix rotation;  // kRotate
  int i = 0;            // kBraid
  int j = 0;            // kBraid
  int mode = 0;         // kMeasure
  std::shared_ptr<const GaussianEnsemble> ensemble;  // kInject
  int offset = 0;                                    // kInject
};

/// Circuit acting on an initially empty (vacuum) register of `modes` modes.
struct FloCircuit {
  int modes = 0;
  std::vector<CircuitStep> steps;

  /// Checks every index against the mode count in force at that step and
  /// returns the final mode count. Injections must append (offset equal to
  /// the current mode count).
  int validate() const;
  int measurement_count() const;
};

struct SimulationRecord {
  std::uint64_t seed = 0;
  std::uint64_t shot = 0;
  std::vector<int> outcomes;
  std::vector<std::size_t> injected;  // sampled ensemble entry per injection
  std::vector<std::uint64_t> step_hashes;
  RealMatrix final_correlation;
};

struct RunResult {
  std::map<std::string, std::uint64_t> histogram;
  std::vector<SimulationRecord> records;
};

/// Per-shot simulation; shot s draws from mt19937_64 seeded with
/// seed_seq{seed, s}, so results do not depend on execution order.
RunResult run(const FloCircuit& circuit, std::uint64_t shots,
              std::uint64_t seed, bool keep_records = true);

SimulationRecord run_shot(const FloCircuit& circuit, std::uint64_t seed,
                          std::uint64_t shot);

/// Exact outcome distribution by enumerating every measurement branch and
/// every ensemble entry. Keys are outcome bitstrings in measurement order.
std::map<std::string, double> exact_distribution(const FloCircuit& circuit);

std::string outcome_key(const std::vector<int>& outcomes);

/// FNV-1a over the matrix entries.
std::uint64_t hash_matrix(const RealMatrix& m);

}  // namespace fermigauss
