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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fermigauss/extension_sdp.hpp"

namespace fermigauss {

namespace {

constexpr double kDropTol = 1e-15;

/// Upper-triangle entries of the real embedding of a Hermitian operator,
/// sorted by (row, col), 1-based.
void embed_entries(const PauliSum& f, double scale, bool transpose_first,
                   int qubits_half, int matrix, int block,
                   const std::function<void(const SdpaEntry&)>& emit) {
  PauliSum g = f;
  if (transpose_first) {
    const std::uint32_t low = (1u << qubits_half) - 1;
    for (auto& [p, w] : g.terms) {
      const std::uint32_t high_y = ((p.x & p.z) >> qubits_half) & low;
      if (std::popcount(high_y) % 2) w = -w;
    }
  }
  const auto entries = g.entries();
  const int d = 1 << (2 * qubits_half);
  std::map<std::pair<int, int>, double> out;
  for (const auto& [r, c, v] : entries) {
    const int ri = static_cast<int>(r);
    const int ci = static_cast<int>(c);
    const double re = scale * v.real();
    const double im = scale * v.imag();
    auto put = [&](int i, int j, double val) {
      if (std::abs(val) <= kDropTol || i > j) return;
      out[{i + 1, j + 1}] = val;
    };
    put(ri, ci, re);
    put(ri + d, ci + d, re);
    put(ri + d, ci, im);
    put(ri, ci + d, -im);
  }
  for (const auto& [rc, v] : out) {
    emit(SdpaEntry{matrix, block, rc.first, rc.second, v});
  }
}

std::string format_entry(const SdpaEntry& e) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d %d %d %d %.17g", e.matrix, e.block,
                e.row, e.col, e.value);
  return buf;
}

std::vector<int> block_struct(const SdpInstance& inst) {
  std::vector<int> bs = inst.block_dims();
  bs.push_back(-2 * static_cast<int>(inst.eq_a.rows()));
  return bs;
}

}  // namespace

void for_each_sdpa_entry(const SdpInstance& inst,
                         const std::function<void(const SdpaEntry&)>& emit) {
  const int q = inst.m.value();
  const int eq_block = inst.ppt ? 3 : 2;
  const auto rows = static_cast<int>(inst.eq_a.rows());

  const PauliSum f0 = inst.f0_terms();
  embed_entries(f0, -1.0, false, q, 0, 1, emit);
  if (inst.ppt) embed_entries(f0, -1.0, true, q, 0, 2, emit);
  for (int r = 0; r < rows; ++r) {
    const double b = inst.eq_b(r);
    if (std::abs(b) <= kDropTol) continue;
    emit(SdpaEntry{0, eq_block, 2 * r + 1, 2 * r + 1, b});
    emit(SdpaEntry{0, eq_block, 2 * r + 2, 2 * r + 2, -b});
  }

  // Column access to the row-major equality matrix.
  const Eigen::SparseMatrix<double> acol = inst.eq_a;
  for (std::size_t k = 0; k < inst.variable_count(); ++k) {
    const int mat = static_cast<int>(k) + 1;
    const PauliSum fk = inst.f_terms(k);
    embed_entries(fk, 1.0, false, q, mat, 1, emit);
    if (inst.ppt) embed_entries(fk, 1.0, true, q, mat, 2, emit);
    for (Eigen::SparseMatrix<double>::InnerIterator it(
             acol, static_cast<Eigen::Index>(k));
         it; ++it) {
      if (std::abs(it.value()) <= kDropTol) continue;
      const int r = static_cast<int>(it.row());
      emit(SdpaEntry{mat, eq_block, 2 * r + 1, 2 * r + 1, it.value()});
      emit(SdpaEntry{mat, eq_block, 2 * r + 2, 2 * r + 2, -it.value()});
    }
  }
}

void export_sdpa(const SdpInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open " + path + " for writing");
  const std::vector<int> bs = block_struct(inst);
  out << "* fermigauss Gaussian-extension feasibility, m = " << inst.m.value()
      << ", n = " << inst.n << (inst.ppt ? ", ppt" : "") << "\n";
  out << inst.variable_count() << "\n" << bs.size() << "\n";
  for (std::size_t i = 0; i < bs.size(); ++i) {
    out << (i ? " " : "") << bs[i];
  }
  out << "\n";
  for (std::size_t k = 0; k < inst.variable_count(); ++k) {
    out << (k ? " " : "") << "0";
  }
  out << "\n";
  for_each_sdpa_entry(inst, [&](const SdpaEntry& e) {
    out << format_entry(e) << "\n";
  });
  if (!out) throw NumericalError("write failed for " + path);

  nlohmann::json meta;
  meta["m"] = inst.m.value();
  meta["n"] = inst.n;
  meta["ppt"] = inst.ppt;
  meta["variable_count"] = inst.variable_count();
  meta["block_dims"] = bs;
  meta["equality_rows"] = inst.eq_a.rows();
  std::ofstream side(path + ".json");
  if (!side) throw ValidationError("cannot open " + path + ".json");
  side << meta.dump(2) << "\n";
}

namespace {

struct SdpaReader {
  std::ifstream in;
  std::string line;
  std::size_t line_no = 0;

  explicit SdpaReader(const std::string& path) : in(path) {
    if (!in) throw ValidationError("cannot open " + path);
  }

  /// Next non-comment line; false at end of file.
  bool next() {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (line[first] == '*' || line[first] == '"') continue;
      return true;
    }
    return false;
  }

  std::string where() const { return "line " + std::to_string(line_no); }
};

std::istringstream header_stream(const std::string& s) {
  std::string t = s;
  for (char& ch : t) {
    if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
  }
  return std::istringstream(t);
}

void read_header(SdpaReader& rd, SdpaProblem& p) {
  if (!rd.next()) throw ValidationError("SDPA: missing mDIM");
  p.variables = std::stoi(rd.line);
  if (!rd.next()) throw ValidationError("SDPA: missing nBLOCK");
  const int nblock = std::stoi(rd.line);
  if (!rd.next()) throw ValidationError("SDPA: missing blockStruct");
  auto bs = header_stream(rd.line);
  for (int i = 0; i < nblock; ++i) {
    int v;
    if (!(bs >> v)) throw ValidationError("SDPA: short blockStruct");
    p.block_struct.push_back(v);
  }
  p.objective.reserve(static_cast<std::size_t>(p.variables));
  while (static_cast<int>(p.objective.size()) < p.variables) {
    if (!rd.next()) throw ValidationError("SDPA: short objective");
    auto os = header_stream(rd.line);
    double v;
    while (os >> v) p.objective.push_back(v);
  }
}

bool parse_entry(const std::string& line, SdpaEntry& e) {
  std::istringstream ls(line);
  return static_cast<bool>(ls >> e.matrix >> e.block >> e.row >> e.col >>
                           e.value);
}

}  // namespace

SdpaProblem parse_sdpa(const std::string& path) {
  SdpaReader rd(path);
  SdpaProblem p;
  read_header(rd, p);
  while (rd.next()) {
    SdpaEntry e;
    if (!parse_entry(rd.line, e)) {
      throw ValidationError("SDPA: malformed entry at " + rd.where());
    }
    p.entries.push_back(e);
  }
  return p;
}

SdpaRoundTrip check_sdpa_roundtrip(const SdpInstance& inst,
                                   const std::string& path) {
  SdpaRoundTrip res;
  SdpaReader rd(path);
  SdpaProblem head;
  try {
    read_header(rd, head);
  } catch (const std::exception& ex) {
    res.message = ex.what();
    return res;
  }
  if (head.variables != static_cast<int>(inst.variable_count()) ||
      head.block_struct != block_struct(inst)) {
    res.message = "header does not match the instance";
    return res;
  }
  for (double v : head.objective) {
    if (v != 0.0) {
      res.message = "nonzero objective coefficient";
      return res;
    }
  }
  bool mismatch = false;
  for_each_sdpa_entry(inst, [&](const SdpaEntry& expected) {
    if (mismatch) return;
    SdpaEntry got;
    if (!rd.next() || !parse_entry(rd.line, got)) {
      res.message = "file ends early after " + std::to_string(res.entries) +
                    " entries";
      mismatch = true;
      return;
    }
    if (!(got == expected)) {
      res.message = "entry mismatch at " + rd.where() + ": expected \"" +
                    format_entry(expected) + "\"";
      mismatch = true;
      return;
    }
    ++res.entries;
  });
  if (mismatch) return res;
  if (rd.next()) {
    res.message = "trailing entries at " + rd.where();
    return res;
  }
  res.ok = true;
  res.message = "exact match";
  return res;
}

}  // namespace fermigauss
