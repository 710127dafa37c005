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

#include "fermigauss/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace fermigauss {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("field \"") + key + "\": " + ex.what());
  }
}

}  // namespace

Json matrix_to_json(const RealMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

RealMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw ValidationError("matrix must be a nonempty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  RealMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError("matrix rows have unequal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw ValidationError("matrix entry is not a number");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

Json to_json(const EvenOperator& op) {
  Json coeffs = Json::array();
  for (const auto& [mask, value] : op.coeffs) {
    coeffs.push_back({{"mask", mask}, {"value", value}});
  }
  return {{"m", op.m.value()}, {"coeffs", coeffs}};
}

EvenOperator even_operator_from_json(const Json& j) {
  EvenOperator op{ModeCount(field<int>(j, "m")), {}};
  const Json coeffs = field<Json>(j, "coeffs");
  if (!coeffs.is_array()) throw ValidationError("coeffs must be an array");
  const std::uint32_t limit = 1u << op.m.majoranas();
  for (const Json& c : coeffs) {
    const auto mask = field<std::uint32_t>(c, "mask");
    if (mask >= limit || std::popcount(mask) % 2) {
      throw ValidationError("mask " + std::to_string(mask) +
                            " is not an even correlator");
    }
    op.coeffs[mask] += field<double>(c, "value");
  }
  return op;
}

Json to_json(const DensityOperator& rho) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < rho.matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < rho.matrix.cols(); ++c) {
      data.push_back(rho.matrix(r, c).real());
      data.push_back(rho.matrix(r, c).imag());
    }
  }
  return {{"m", rho.m.value()},
          {"parity", to_string(rho.parity)},
          {"data", data}};
}

DensityOperator density_from_json(const Json& j) {
  const ModeCount m(field<int>(j, "m"));
  const auto data = field<std::vector<double>>(j, "data");
  const Eigen::Index d = m.dim();
  if (static_cast<Eigen::Index>(data.size()) != 2 * d * d) {
    throw ValidationError("density data needs " + std::to_string(2 * d * d) +
                          " numbers");
  }
  ComplexMatrix x(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto k = static_cast<std::size_t>(2 * (r * d + c));
      x(r, c) = Complex(data[k], data[k + 1]);
    }
  }
  DensityOperator rho = DensityOperator::from_matrix(x, 1e-9);
  if (j.contains("parity") &&
      parity_from_string(j.at("parity").get<std::string>()) != rho.parity) {
    throw ValidationError("parity tag does not match the matrix");
  }
  return rho;
}

Json to_json(const GaussianPureState& s) {
  return {{"m", s.modes().value()},
          {"rotation", matrix_to_json(s.rotation)},
          {"signs", s.signs}};
}

GaussianPureState pure_state_from_json(const Json& j) {
  GaussianPureState s;
  const int m = field<int>(j, "m");
  s.rotation = matrix_from_json(field<Json>(j, "rotation"));
  s.signs = field<std::vector<int>>(j, "signs");
  if (s.rotation.rows() != 2 * m || static_cast<int>(s.signs.size()) != m) {
    throw ValidationError("pure state dimensions do not match m");
  }
  s.validate(1e-9);
  return s;
}

Json to_json(const GaussianEnsemble& e) {
  Json entries = Json::array();
  for (const auto& entry : e.entries) {
    entries.push_back({{"weight", entry.weight},
                       {"state", to_json(entry.state)}});
  }
  return {{"m", e.modes().value()}, {"entries", entries}};
}

GaussianEnsemble ensemble_from_json(const Json& j) {
  GaussianEnsemble e;
  const int m = field<int>(j, "m");
  const Json entries = field<Json>(j, "entries");
  if (!entries.is_array()) throw ValidationError("entries must be an array");
  for (const Json& entry : entries) {
    e.entries.push_back({field<double>(entry, "weight"),
                         pure_state_from_json(field<Json>(entry, "state"))});
  }
  e.validate(1e-9);
  if (e.modes().value() != m) {
    throw ValidationError("ensemble states do not have m modes");
  }
  return e;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ValidationError(path + ": " + ex.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

AntisymmetricMatrix read_antisymmetric_file(const std::string& path,
                                            double tol) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ValidationError(path + " is empty");
  RealMatrix a;
  if (text[first] == '[') {
    try {
      a = matrix_from_json(Json::parse(text));
    } catch (const nlohmann::json::parse_error& ex) {
      throw ValidationError(path + ": " + ex.what());
    }
  } else {
    std::vector<std::vector<double>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (line[line.find_first_not_of(" \t\r")] == '#') continue;
      std::istringstream ls(line);
      std::vector<double> row;
      std::string tok;
      while (ls >> tok) {
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0') {
          throw ValidationError(path + ": bad number \"" + tok + "\"");
        }
        row.push_back(v);
      }
      rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ValidationError(path + " holds no rows");
    a.resize(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != rows.front().size()) {
        throw ValidationError(path + ": rows have unequal length");
      }
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            rows[r][c];
      }
    }
  }
  return AntisymmetricMatrix(a, tol);
}

FloCircuit circuit_from_json(const Json& j, const std::string& base_dir) {
  FloCircuit c;
  c.modes = field<int>(j, "modes");
  const Json steps = field<Json>(j, "steps");
  if (!steps.is_array()) throw ValidationError("steps must be an array");
  int current = c.modes;
  for (const Json& s : steps) {
    CircuitStep step;
    const auto op = field<std::string>(s, "op");
    if (op == "rotate") {
      step.op = CircuitStep::Op::kRotate;
      if (s.contains("rotation")) {
        step.rotation = matrix_from_json(s.at("rotation"));
      } else if (s.contains("givens")) {
        std::vector<GivensParameter> params;
        for (const Json& g : s.at("givens")) {
          params.push_back({field<int>(g, "i"), field<int>(g, "j"),
                            field<double>(g, "theta")});
        }
        step.rotation = so_from_givens(2 * current, params);
      } else {
        throw ValidationError("rotate step needs \"rotation\" or \"givens\"");
      }
    } else if (op == "braid") {
      step.op = CircuitStep::Op::kBraid;
      step.i = field<int>(s, "i");
      step.j = field<int>(s, "j");
    } else if (op == "measure") {
      step.op = CircuitStep::Op::kMeasure;
      step.mode = field<int>(s, "mode");
    } else if (op == "inject") {
      step.op = CircuitStep::Op::kInject;
      const Json& ens = s.contains("ensemble") ? s.at("ensemble") : Json();
      GaussianEnsemble e;
      if (ens.is_string()) {
        std::filesystem::path p(ens.get<std::string>());
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        e = ensemble_from_json(read_json_file(p.string()));
      } else if (ens.is_object()) {
        e = ensemble_from_json(ens);
      } else {
        throw ValidationError("inject step needs an \"ensemble\"");
      }
      step.offset = s.contains("offset") ? field<int>(s, "offset") : current;
      current += e.modes().value();
      step.ensemble = std::make_shared<const GaussianEnsemble>(std::move(e));
    } else {
      throw ValidationError("unknown op \"" + op + "\"");
    }
    c.steps.push_back(std::move(step));
  }
  c.validate();
  return c;
}

FloCircuit read_circuit_file(const std::string& path) {
  const std::string dir =
      std::filesystem::path(path).parent_path().string();
  return circuit_from_json(read_json_file(path), dir.empty() ? "." : dir);
}

void write_histogram_csv(std::ostream& out,
                         const std::map<std::string, std::uint64_t>& hist) {
  std::uint64_t total = 0;
  for (const auto& [key, count] : hist) total += count;
  out << "bitstring,count,probability\n";
  char buf[64];
  for (const auto& [key, count] : hist) {
    std::snprintf(buf, sizeof buf, "%.17g",
                  total ? static_cast<double>(count) / total : 0.0);
    out << key << "," << count << "," << buf << "\n";
  }
}

}  // namespace fermigauss
