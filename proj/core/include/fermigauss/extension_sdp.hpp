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

#include <Eigen/Sparse>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fermigauss/gaussian.hpp"

namespace fermigauss {

/// Hermitian basis M_0 = I, M_1, ... of even operators: the correlators of
/// every even mask in ascending mask order (2^(2m-1) of them).
std::vector<std::uint32_t> build_basis(ModeCount m);

/// Weighted Pauli strings on two copies of m modes.
struct PauliSum {
  std::vector<std::pair<PauliString, double>> terms;

  ComplexMatrix dense() const;
  /// Nonzero entries (row, col, value), each position once.
  std::vector<std::tuple<std::uint32_t, std::uint32_t, Complex>> entries()
      const;
};

/// Extension rho_ext = F0 + sum_k x_k F_k on two copies, where
/// F_k = M_j (x) M_j for the diagonal pairs and M_j (x) M_k + M_k (x) M_j
/// for j < k (1 <= j, k < 2^(2m-1)), and F0 carries the coefficients fixed
/// by Tr_2 rho_ext = rho. The equalities Lambda rho_ext = 0 are held as
/// A x = b in reduced row-echelon form.
struct SdpInstance {
  ModeCount m{1};
  int n = 2;
  bool ppt = false;
  std::vector<std::uint32_t> basis;
  /// Variable k is the basis pair (i, j), i <= j; diagonal pairs come first,
  /// then i < j in lexicographic order.
  std::vector<std::pair<int, int>> variables;
  std::map<std::pair<int, int>, int> var_index;
  /// beta_{0j} = alpha_j / 2^m.
  std::vector<double> beta0;

  Eigen::SparseMatrix<double, Eigen::RowMajor> eq_a;
  RealVector eq_b;
  std::vector<int> pivots;  // pivot column of each row of eq_a
  /// False when the reduced system contains 0 = b with b != 0.
  bool consistent = true;
  double inconsistency = 0.0;
  std::size_t unreduced_rows = 0;

  std::size_t variable_count() const { return variables.size(); }
  /// Complex side length 2^(2m) of rho_ext.
  int complex_dim() const { return 1 << (2 * m.value()); }
  /// Side lengths of the real positivity blocks (one, or two with PPT).
  std::vector<int> block_dims() const;

  PauliSum f0_terms() const;
  PauliSum f_terms(std::size_t k) const;
  ComplexMatrix f0() const { return f0_terms().dense(); }
  ComplexMatrix f(std::size_t k) const { return f_terms(k).dense(); }

  ComplexMatrix assemble(const RealVector& x) const;
  double equality_residual(const RealVector& x) const;
};

SdpInstance build_extension_sdp(const DensityOperator& rho, bool ppt = false);

/// The equality system generated literally: columns vec(Lambda F_k) in
/// column-major order, b = -vec(Lambda F0), split into real and imaginary
/// rows. Dense; intended as a cross-check for m <= 3.
struct LiteralSystem {
  RealMatrix a;
  RealVector b;
};
LiteralSystem literal_equality_system(const SdpInstance& inst);

/// Reduced row-echelon form of [a | b] in place; returns pivot columns.
/// Rows whose coefficients all fall below tol (relative to the largest
/// entry) are dropped; the largest |b| among them goes to `inconsistency`.
std::vector<int> rref(RealMatrix& a, RealVector& b, double tol = 1e-10,
                      double* inconsistency = nullptr);

/// [[Re Z, -Im Z], [Im Z, Re Z]].
RealMatrix real_embed(const ComplexMatrix& z);

/// Operator transpose on the first tensor factor of an operator on two
/// copies of m modes.
ComplexMatrix partial_transpose(const ComplexMatrix& x, ModeCount m);

struct ExtensionResiduals {
  double min_eigenvalue = 0.0;  // max(0, -lambda_min(rho_ext))
  double equality = 0.0;        // ||A x - b||
  double partial_trace = 0.0;   // ||Tr_2 rho_ext - rho||_F
  double lambda = 0.0;          // ||Lambda rho_ext||_F
  double trace = 0.0;           // |Tr rho_ext - 1|
  double bose = 0.0;            // ||P rho_ext - rho_ext||_F
  double ppt = 0.0;             // max(0, -lambda_min(rho_ext^T1)), if asked

  double worst() const;
};

/// Residual report for a candidate extension of rho. The equality entry is
/// left at zero; it belongs to a parametrized solution.
ExtensionResiduals verify_extension(const ComplexMatrix& rho_ext,
                                    const DensityOperator& rho,
                                    bool check_ppt = false);

enum class ExtensionStatus { kFeasible, kInfeasible, kUnknown };
const char* to_string(ExtensionStatus s);

struct SolverOptions {
  double tol = 1e-7;
  int max_iterations = 80;
  bool verbose = false;
};

struct ExtensionCertificate {
  ExtensionStatus status = ExtensionStatus::kUnknown;
  RealVector x;
  ComplexMatrix rho_ext;
  ExtensionResiduals residuals;
  /// Best lower bound t with rho_ext restricted to the null space of
  /// Lambda (and rho_ext^T1 with PPT) >= t I.
  double t = 0.0;
  /// Infeasible: -Tr(G0 Y) for the normalized dual point Y.
  double margin = 0.0;
  int iterations = 0;
  std::size_t free_parameters = 0;
  std::string message;
};

ExtensionCertificate solve_feasibility(const SdpInstance& inst,
                                       const DensityOperator& rho,
                                       const SolverOptions& options = {});

// ---------------------------------------------------------------------------
// SDPA sparse export

struct SdpaEntry {
  int matrix = 0;  // 0 is F0
  int block = 1;
  int row = 1;
  int col = 1;
  double value = 0.0;

  friend bool operator==(const SdpaEntry&, const SdpaEntry&) = default;
};

struct SdpaProblem {
  int variables = 0;
  std::vector<int> block_struct;
  std::vector<double> objective;
  std::vector<SdpaEntry> entries;
};

/// Streams every entry of the exported problem in file order. The problem
/// reads sum_k x_k F_k - F0' >= 0 with F0' = -F0, blocks are the real
/// embeddings of rho_ext (and rho_ext^T1), and a diagonal block holds the
/// equalities as paired inequalities.
void for_each_sdpa_entry(const SdpInstance& inst,
                         const std::function<void(const SdpaEntry&)>& emit);

/// Writes the .dat-s file and a "<path>.json" metadata sidecar.
void export_sdpa(const SdpInstance& inst, const std::string& path);

SdpaProblem parse_sdpa(const std::string& path);

struct SdpaRoundTrip {
  bool ok = false;
  std::size_t entries = 0;
  std::string message;
};

/// Re-reads an exported file line by line and compares it against the
/// instance without materializing either side.
SdpaRoundTrip check_sdpa_roundtrip(const SdpInstance& inst,
                                   const std::string& path);

}  // namespace fermigauss
