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

#include <nlohmann/json_fwd.hpp>
#include <iosfwd>
#include <map>
#include <string>

#include "fermigauss/flo.hpp"

namespace fermigauss {

using Json = nlohmann::json;

// Matrices are row-major nested arrays.
Json matrix_to_json(const RealMatrix& m);
RealMatrix matrix_from_json(const Json& j);

Json to_json(const EvenOperator& op);
EvenOperator even_operator_from_json(const Json& j);

/// {"m", "parity", "data"}: data is the row-major matrix with real and
/// imaginary parts interleaved.
Json to_json(const DensityOperator& rho);
DensityOperator density_from_json(const Json& j);

Json to_json(const GaussianPureState& s);
GaussianPureState pure_state_from_json(const Json& j);

Json to_json(const GaussianEnsemble& e);
GaussianEnsemble ensemble_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Antisymmetric matrix from a JSON nested array or whitespace-separated
/// rows of numbers.
AntisymmetricMatrix read_antisymmetric_file(const std::string& path,
                                            double tol = 1e-12);

/// Steps:
///   {"op": "rotate", "rotation": [[...]]} or
///   {"op": "rotate", "givens": [{"i", "j", "theta"}, ...]}
///   {"op": "braid", "i", "j"}
///   {"op": "measure", "mode"}
///   {"op": "inject", "ensemble": "path.json" | {...}, "offset"}
/// Ensemble paths are resolved against `base_dir`.
FloCircuit circuit_from_json(const Json& j, const std::string& base_dir = ".");
FloCircuit read_circuit_file(const std::string& path);

/// "bitstring,count,probability" with a header row.
void write_histogram_csv(std::ostream& out,
                         const std::map<std::string, std::uint64_t>& hist);

}  // namespace fermigauss
