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

// Brute-force reference implementations. Each one takes a route that shares
// as little code as possible with the library function it checks.

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "fermigauss/flo.hpp"

namespace fermigauss::oracle {

/// Pf(A) = 1/(2^n n!) sum over all permutations of 2n indices of
/// sgn(s) prod_i A[s(2i-1), s(2i)].
double permutation_pfaffian(const RealMatrix& a);

/// Tr(rho B_S) for B_S = i^(|S|/2) c_s1 ... c_sk, by dense products.
double dense_correlator(const ComplexMatrix& rho, std::uint32_t mask,
                        ModeCount m);

/// Random real antisymmetric matrix with standard normal entries.
RealMatrix random_antisymmetric(int dim, std::mt19937_64& gen);

/// Exact outcome distribution of a circuit by evolving the dense density
/// matrix along every measurement branch.
std::map<std::string, double> dense_circuit_distribution(
    const FloCircuit& circuit);

/// Random circuit on at most `max_modes` modes with 1..max_gates gates
/// (rotations, braids, injections of small pure-Gaussian ensembles) and
/// 1..max_measurements measurements.
FloCircuit random_circuit(std::uint64_t seed, int max_modes = 4,
                          int max_gates = 6, int max_measurements = 3);

/// Total-variation distance between two distributions over bitstrings.
double total_variation(const std::map<std::string, double>& p,
                       const std::map<std::string, double>& q);

}  // namespace fermigauss::oracle
