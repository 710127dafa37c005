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

#include "fermigauss/extension_sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "fermigauss/linalg.hpp"

namespace fermigauss {

namespace {

constexpr int kMaxSdpModes = 4;

Complex phase_value(int phase) {
  switch (((phase % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliString pair_string(std::uint32_t a, std::uint32_t b, ModeCount m) {
  return correlator_string(a, m).tensor(correlator_string(b, m));
}

}  // namespace

std::vector<std::uint32_t> build_basis(ModeCount m) {
  m.require_tensor_square();
  return even_masks(m);
}

// ---------------------------------------------------------------------------
// PauliSum

ComplexMatrix PauliSum::dense() const {
  if (terms.empty()) throw ValidationError("empty PauliSum");
  const std::uint32_t d = 1u << terms.front().first.qubits;
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& [p, w] : terms) {
    for (std::uint32_t c = 0; c < d; ++c) out(c ^ p.x, c) += w * p.element(c);
  }
  return out;
}

std::vector<std::tuple<std::uint32_t, std::uint32_t, Complex>>
PauliSum::entries() const {
  std::map<std::pair<std::uint32_t, std::uint32_t>, Complex> acc;
  for (const auto& [p, w] : terms) {
    const std::uint32_t d = 1u << p.qubits;
    for (std::uint32_t c = 0; c < d; ++c) acc[{c ^ p.x, c}] += w * p.element(c);
  }
  std::vector<std::tuple<std::uint32_t, std::uint32_t, Complex>> out;
  out.reserve(acc.size());
  for (const auto& [rc, v] : acc) {
    if (std::abs(v) > 1e-15) out.emplace_back(rc.first, rc.second, v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// SdpInstance

std::vector<int> SdpInstance::block_dims() const {
  std::vector<int> dims{2 * complex_dim()};
  if (ppt) dims.push_back(2 * complex_dim());
  return dims;
}

PauliSum SdpInstance::f0_terms() const {
  PauliSum s;
  s.terms.emplace_back(pair_string(0, 0, m), beta0[0]);
  for (std::size_t j = 1; j < basis.size(); ++j) {
    if (beta0[j] == 0.0) continue;
    s.terms.emplace_back(pair_string(0, basis[j], m), beta0[j]);
    s.terms.emplace_back(pair_string(basis[j], 0, m), beta0[j]);
  }
  return s;
}

PauliSum SdpInstance::f_terms(std::size_t k) const {
  const auto [i, j] = variables.at(k);
  PauliSum s;
  s.terms.emplace_back(pair_string(basis[i], basis[j], m), 1.0);
  if (i != j) s.terms.emplace_back(pair_string(basis[j], basis[i], m), 1.0);
  return s;
}

ComplexMatrix SdpInstance::assemble(const RealVector& x) const {
  if (static_cast<std::size_t>(x.size()) != variables.size()) {
    throw ValidationError("assemble: wrong number of variables");
  }
  ComplexMatrix out = f0();
  const std::uint32_t d = static_cast<std::uint32_t>(complex_dim());
  for (std::size_t k = 0; k < variables.size(); ++k) {
    const double v = x(static_cast<Eigen::Index>(k));
    if (v == 0.0) continue;
    for (const auto& [p, w] : f_terms(k).terms) {
      for (std::uint32_t c = 0; c < d; ++c) {
        out(c ^ p.x, c) += v * w * p.element(c);
      }
    }
  }
  return out;
}

double SdpInstance::equality_residual(const RealVector& x) const {
  if (eq_a.rows() == 0) return 0.0;
  return (eq_a * x - eq_b).norm();
}

// ---------------------------------------------------------------------------
// Reduced row-echelon form

std::vector<int> rref(RealMatrix& a, RealVector& b, double tol,
                      double* inconsistency) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  const double scale = std::max(1.0, rows > 0 && cols > 0
                                         ? a.cwiseAbs().maxCoeff()
                                         : 0.0);
  const double cut = tol * scale;
  std::vector<int> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p;
    const double best = a.col(c).tail(rows - r).cwiseAbs().maxCoeff(&p);
    p += r;
    if (best <= cut) {
      a.col(c).tail(rows - r).setZero();
      continue;
    }
    if (p != r) {
      a.row(p).swap(a.row(r));
      std::swap(b(p), b(r));
    }
    const double piv = a(r, c);
    a.row(r) /= piv;
    b(r) /= piv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = a(i, c);
      if (f == 0.0) continue;
      a.row(i) -= f * a.row(r);
      b(i) -= f * b(r);
      a(i, c) = 0.0;
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  double worst = 0.0;
  for (Eigen::Index i = r; i < rows; ++i) worst = std::max(worst, std::abs(b(i)));
  if (inconsistency) *inconsistency = worst;
  a.conservativeResize(r, cols);
  b.conservativeResize(r);
  a = a.unaryExpr([](double v) { return std::abs(v) < 1e-14 ? 0.0 : v; });
  return pivots;
}

// ---------------------------------------------------------------------------
// Builder

namespace {

/// Equations of one block D = mask_i ^ mask_j. Rows are the Pauli patterns
/// of Lambda (M_i (x) M_j); each complex equation contributes a real and an
/// imaginary row.
struct EqBlock {
  std::vector<int> vars;  // ascending global indices
  std::unordered_map<std::uint64_t, int> row_of;
  std::vector<std::vector<std::pair<int, Complex>>> rows;  // (local col, v)
  std::vector<Complex> constant;

  int row(std::uint64_t key) {
    auto [it, inserted] = row_of.emplace(key, static_cast<int>(rows.size()));
    if (inserted) {
      rows.emplace_back();
      constant.emplace_back(0.0, 0.0);
    }
    return it->second;
  }
};

std::uint64_t pauli_key(const PauliString& p) {
  return (static_cast<std::uint64_t>(p.x) << 32) | p.z;
}

}  // namespace

SdpInstance build_extension_sdp(const DensityOperator& rho, bool ppt) {
  const ModeCount m = rho.m;
  if (m.value() > kMaxSdpModes) {
    throw ValidationError("extension SDP builder supports m <= " +
                          std::to_string(kMaxSdpModes));
  }
  if (rho.parity != Parity::kEven) {
    throw ValidationError("extension SDP needs an even state (got " +
                          std::string(to_string(rho.parity)) + ")");
  }
  const EvenOperator alpha = expand_even(rho.matrix, m, 1e-9);

  SdpInstance inst;
  inst.m = m;
  inst.ppt = ppt;
  inst.basis = build_basis(m);
  const int nb = static_cast<int>(inst.basis.size());
  const double dim = static_cast<double>(m.dim());
  for (int j = 0; j < nb; ++j) {
    inst.beta0.push_back(alpha.coefficient(inst.basis[j]) / dim);
  }
  for (int j = 1; j < nb; ++j) inst.variables.emplace_back(j, j);
  for (int j = 1; j < nb; ++j) {
    for (int k = j + 1; k < nb; ++k) inst.variables.emplace_back(j, k);
  }
  for (std::size_t v = 0; v < inst.variables.size(); ++v) {
    inst.var_index[inst.variables[v]] = static_cast<int>(v);
  }

  std::vector<PauliString> lambda_terms;
  for (int a = 1; a <= m.majoranas(); ++a) {
    const PauliString c = majorana_string(a, m);
    lambda_terms.push_back(c.tensor(c));
  }

  std::map<std::uint32_t, EqBlock> blocks;
  auto add_terms = [&](EqBlock& blk, const PauliSum& f, int local_col,
                       double constant_scale) {
    for (const auto& [p, w] : f.terms) {
      for (const PauliString& l : lambda_terms) {
        const PauliString q = l * p;
        const int r = blk.row(pauli_key(q));
        const Complex v = w * phase_value(q.phase);
        if (local_col >= 0) {
          blk.rows[r].emplace_back(local_col, v);
        } else {
          blk.constant[r] += constant_scale * v;
        }
      }
    }
  };

  for (std::size_t k = 0; k < inst.variables.size(); ++k) {
    const auto [i, j] = inst.variables[k];
    EqBlock& blk = blocks[inst.basis[i] ^ inst.basis[j]];
    const int local = static_cast<int>(blk.vars.size());
    blk.vars.push_back(static_cast<int>(k));
    add_terms(blk, inst.f_terms(k), local, 0.0);
  }
  // Constants of F0, split by block.
  {
    PauliSum id;
    id.terms.emplace_back(pair_string(0, 0, m), 1.0);
    add_terms(blocks[0], id, -1, inst.beta0[0]);
    for (int j = 1; j < nb; ++j) {
      if (inst.beta0[j] == 0.0) continue;
      PauliSum s;
      s.terms.emplace_back(pair_string(0, inst.basis[j], m), 1.0);
      s.terms.emplace_back(pair_string(inst.basis[j], 0, m), 1.0);
      add_terms(blocks[inst.basis[j]], s, -1, inst.beta0[j]);
    }
  }

  struct Row {
    int pivot;
    std::vector<std::pair<int, double>> coeffs;
    double rhs;
  };
  std::vector<Row> reduced;
  for (auto& [mask, blk] : blocks) {
    (void)mask;
    const auto nrows = static_cast<Eigen::Index>(2 * blk.rows.size());
    const auto ncols = static_cast<Eigen::Index>(blk.vars.size());
    inst.unreduced_rows += static_cast<std::size_t>(nrows);
    RealMatrix a = RealMatrix::Zero(nrows, ncols);
    RealVector b(nrows);
    for (std::size_t r = 0; r < blk.rows.size(); ++r) {
      for (const auto& [col, v] : blk.rows[r]) {
        a(2 * r, col) += v.real();
        a(2 * r + 1, col) += v.imag();
      }
      b(2 * r) = -blk.constant[r].real();
      b(2 * r + 1) = -blk.constant[r].imag();
    }
    double bad = 0.0;
    const std::vector<int> piv = rref(a, b, 1e-10, &bad);
    if (bad > 1e-10) {
      inst.consistent = false;
      inst.inconsistency = std::max(inst.inconsistency, bad);
    }
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      Row row;
      row.pivot = blk.vars[piv[r]];
      for (Eigen::Index c = 0; c < ncols; ++c) {
        if (a(r, c) != 0.0) row.coeffs.emplace_back(blk.vars[c], a(r, c));
      }
      row.rhs = b(r);
      reduced.push_back(std::move(row));
    }
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const Row& x, const Row& y) { return x.pivot < y.pivot; });

  std::vector<Eigen::Triplet<double>> trip;
  inst.eq_b.resize(static_cast<Eigen::Index>(reduced.size()));
  for (std::size_t r = 0; r < reduced.size(); ++r) {
    for (const auto& [c, v] : reduced[r].coeffs) {
      trip.emplace_back(static_cast<int>(r), c, v);
    }
    inst.eq_b(static_cast<Eigen::Index>(r)) = reduced[r].rhs;
    inst.pivots.push_back(reduced[r].pivot);
  }
  inst.eq_a.resize(static_cast<Eigen::Index>(reduced.size()),
                   static_cast<Eigen::Index>(inst.variables.size()));
  inst.eq_a.setFromTriplets(trip.begin(), trip.end());
  inst.eq_a.makeCompressed();
  return inst;
}

LiteralSystem literal_equality_system(const SdpInstance& inst) {
  const ModeCount m = inst.m;
  if (m.value() > 3) {
    throw ValidationError("literal equality system is limited to m <= 3");
  }
  const LambdaOperator lambda(m);
  const Eigen::Index d = inst.complex_dim();
  const Eigen::Index len = d * d;
  const auto nvar = static_cast<Eigen::Index>(inst.variable_count());
  LiteralSystem out;
  out.a.resize(2 * len, nvar);
  auto vec = [&](const ComplexMatrix& g) {
    return Eigen::Map<const ComplexVector>(g.data(), len);
  };
  for (Eigen::Index k = 0; k < nvar; ++k) {
    const ComplexMatrix g = lambda.apply_left(inst.f(static_cast<std::size_t>(k)));
    const ComplexVector v = vec(g);
    out.a.col(k).head(len) = v.real();
    out.a.col(k).tail(len) = v.imag();
  }
  const ComplexMatrix g0 = lambda.apply_left(inst.f0());
  const ComplexVector v0 = vec(g0);
  out.b.resize(2 * len);
  out.b.head(len) = -v0.real();
  out.b.tail(len) = -v0.imag();
  return out;
}

RealMatrix real_embed(const ComplexMatrix& z) {
  if (!is_hermitian(z, 1e-9)) {
    throw ValidationError("real_embed needs a Hermitian matrix");
  }
  const Eigen::Index d = z.rows();
  RealMatrix t(2 * d, 2 * d);
  t.topLeftCorner(d, d) = z.real();
  t.bottomRightCorner(d, d) = z.real();
  t.topRightCorner(d, d) = -z.imag();
  t.bottomLeftCorner(d, d) = z.imag();
  return t;
}

ComplexMatrix partial_transpose(const ComplexMatrix& x, ModeCount m) {
  return partial_transpose_first(x, m.dim());
}

// ---------------------------------------------------------------------------
// Verification

double ExtensionResiduals::worst() const {
  return std::max({min_eigenvalue, equality, partial_trace, lambda, trace,
                   bose, ppt});
}

ExtensionResiduals verify_extension(const ComplexMatrix& rho_ext,
                                    const DensityOperator& rho,
                                    bool check_ppt) {
  const ModeCount m = rho.m;
  m.require_tensor_square();
  const Eigen::Index d = m.dim();
  if (rho_ext.rows() != d * d || rho_ext.cols() != d * d) {
    throw ValidationError("verify_extension: rho_ext must be " +
                          std::to_string(d * d) + "x" + std::to_string(d * d));
  }
  ExtensionResiduals r;
  const ComplexMatrix h = 0.5 * (rho_ext + rho_ext.adjoint());
  r.min_eigenvalue = std::max(0.0, -min_eigenvalue_hermitian(h));
  r.trace = std::abs(h.trace().real() - 1.0);
  r.partial_trace = (partial_trace_second(h, d) - rho.matrix).norm();
  r.lambda = LambdaOperator(m).apply_left(h).norm();
  r.bose = (swap_operator(m) * h - h).norm();
  if (check_ppt) {
    r.ppt = std::max(0.0, -min_eigenvalue_hermitian(partial_transpose(h, m)));
  }
  return r;
}

const char* to_string(ExtensionStatus s) {
  switch (s) {
    case ExtensionStatus::kFeasible: return "feasible";
    case ExtensionStatus::kInfeasible: return "infeasible";
    default: return "unknown";
  }
}

// ---------------------------------------------------------------------------
// Solver

namespace {

/// Block-diagonal Hermitian matrices stored as one stacked column of the
/// column-major blocks, so that many constraint matrices form a single
/// dense matrix and Schur complements become one product.
struct Layout {
  std::vector<Eigen::Index> dims;
  std::vector<Eigen::Index> offsets;
  Eigen::Index length = 0;
  Eigen::Index total_dim = 0;

  explicit Layout(std::vector<Eigen::Index> d) : dims(std::move(d)) {
    for (Eigen::Index b : dims) {
      offsets.push_back(length);
      length += b * b;
      total_dim += b;
    }
  }
  std::size_t blocks() const { return dims.size(); }

  Eigen::Map<ComplexMatrix> block(ComplexVector& v, std::size_t k) const {
    return {v.data() + offsets[k], dims[k], dims[k]};
  }
  Eigen::Map<const ComplexMatrix> block(const ComplexVector& v,
                                        std::size_t k) const {
    return {v.data() + offsets[k], dims[k], dims[k]};
  }
  ComplexVector identity(double s = 1.0) const {
    ComplexVector v = ComplexVector::Zero(length);
    for (std::size_t k = 0; k < blocks(); ++k) {
      block(v, k).diagonal().setConstant(s);
    }
    return v;
  }
  ComplexVector herm(const ComplexVector& v) const {
    ComplexVector out(length);
    for (std::size_t k = 0; k < blocks(); ++k) {
      block(out, k) = 0.5 * (block(v, k) + block(v, k).adjoint());
    }
    return out;
  }
  /// a * b * c blockwise.
  ComplexVector mul3(const ComplexVector& a, const ComplexVector& b,
                     const ComplexVector& c) const {
    ComplexVector out(length);
    for (std::size_t k = 0; k < blocks(); ++k) {
      block(out, k) = block(a, k) * block(b, k) * block(c, k);
    }
    return out;
  }
  double min_eig(const ComplexVector& v) const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < blocks(); ++k) {
      m = std::min(m, min_eigenvalue_hermitian(block(v, k)));
    }
    return m;
  }
  double trace(const ComplexVector& v, std::size_t k) const {
    return block(v, k).trace().real();
  }
};

double inner(const ComplexVector& a, const ComplexVector& b) {
  return a.dot(b).real();  // conjugates a
}

/// Largest alpha <= 1 with x + alpha dx scaled by frac staying PSD.
double step_length(const Layout& lay, const ComplexVector& x,
                   const ComplexVector& dx, double frac) {
  double alpha = 1.0;
  for (std::size_t k = 0; k < lay.blocks(); ++k) {
    Eigen::LLT<ComplexMatrix> llt(lay.block(x, k));
    if (llt.info() != Eigen::Success) return 0.0;
    const Eigen::Index d = lay.dims[k];
    const ComplexMatrix linv = llt.matrixL().solve(ComplexMatrix::Identity(d, d));
    ComplexMatrix m = linv * lay.block(dx, k) * linv.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    const double lmin = min_eigenvalue_hermitian(m);
    if (lmin < 0) alpha = std::min(alpha, -frac / lmin);
  }
  return std::min(1.0, alpha);
}

bool inverse(const Layout& lay, const ComplexVector& x, ComplexVector& out) {
  out.resize(lay.length);
  for (std::size_t k = 0; k < lay.blocks(); ++k) {
    Eigen::LLT<ComplexMatrix> llt(lay.block(x, k));
    if (llt.info() != Eigen::Success) return false;
    const Eigen::Index d = lay.dims[k];
    const ComplexMatrix inv = llt.solve(ComplexMatrix::Identity(d, d));
    lay.block(out, k) = 0.5 * (inv + inv.adjoint());
  }
  return true;
}

struct IpmResult {
  RealVector z;
  double t = 0.0;
  ComplexVector x;
  int iterations = 0;
  bool strictly_feasible = false;
  bool converged = false;
};

/// max t subject to C + sum_k z_k G_k - t I >= 0, with the primal
/// min <C, X> s.t. <G_k, X> = 0, Tr X = 1, X >= 0. Both sides start
/// strictly feasible because every G_k is traceless. Columns of `g` are the
/// stacked G_k. HKM direction with Mehrotra predictor-corrector.
IpmResult maximize_min_eigenvalue(const Layout& lay, const ComplexVector& c,
                                  const ComplexMatrix& g, int max_iterations,
                                  double stop_t, bool verbose) {
  const Eigen::Index nz = g.cols();
  const Eigen::Index ny = nz + 1;
  // A_k = -G_k for k < nz, A_nz = I; b = e_nz.
  ComplexMatrix a(lay.length, ny);
  a.leftCols(nz) = -g;
  a.col(nz) = lay.identity();
  RealVector b = RealVector::Zero(ny);
  b(nz) = 1.0;

  auto apply_a = [&](const ComplexVector& w) -> RealVector {
    return (a.adjoint() * w).real();
  };
  auto apply_at = [&](const RealVector& y) -> ComplexVector {
    return a * y.cast<Complex>();
  };

  IpmResult res;
  const double n = static_cast<double>(lay.total_dim);
  ComplexVector x = lay.identity(1.0 / n);
  RealVector y = RealVector::Zero(ny);
  y(nz) = lay.min_eig(c) - 1.0;
  ComplexVector s = c - y(nz) * lay.identity();
  ComplexMatrix w(lay.length, ny);

  for (int it = 0; it < max_iterations; ++it) {
    res.iterations = it;
    const double mu = inner(x, s) / n;
    const double pobj = inner(c, x);
    const double dobj = y(nz);
    if (verbose) {
      std::fprintf(stderr, "ipm %3d  pobj % .10e  dobj % .10e  mu %.3e\n", it,
                   pobj, dobj, mu);
    }
    if (dobj >= stop_t && lay.min_eig(s) > 0) {
      res.strictly_feasible = true;
      break;
    }
    if (pobj - dobj < 1e-11 * (1.0 + std::abs(pobj))) {
      res.converged = true;
      break;
    }

    ComplexVector sinv;
    if (!inverse(lay, s, sinv)) break;
    const RealVector rp = b - apply_a(x);
    const ComplexVector rd = c - apply_at(y) - s;

    // Schur complement H_ij = Re Tr(A_i X A_j S^-1).
    for (Eigen::Index j = 0; j < ny; ++j) {
      for (std::size_t k = 0; k < lay.blocks(); ++k) {
        const Eigen::Index d = lay.dims[k];
        Eigen::Map<const ComplexMatrix> aj(a.col(j).data() + lay.offsets[k], d,
                                           d);
        Eigen::Map<ComplexMatrix> wj(w.col(j).data() + lay.offsets[k], d, d);
        wj.noalias() = lay.block(x, k) * aj * lay.block(sinv, k);
      }
    }
    RealMatrix h = (a.adjoint() * w).real();
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::LDLT<RealMatrix> ldlt(h);
    if (ldlt.info() != Eigen::Success) {
      // Lost definiteness near the boundary; keep the current iterate.
      break;
    }
    const ComplexVector x_rd_sinv = lay.mul3(x, rd, sinv);

    auto direction = [&](double target, const ComplexVector* corr,
                         ComplexVector& dx, ComplexVector& ds,
                         RealVector& dy) {
      ComplexVector r = target * sinv - x;
      if (corr) r -= *corr;
      dy = ldlt.solve(rp - apply_a(r) + apply_a(x_rd_sinv));
      ds = rd - apply_at(dy);
      dx = lay.herm(r - lay.herm(lay.mul3(x, ds, sinv)));
    };

    ComplexVector dx, ds;
    RealVector dy;
    direction(0.0, nullptr, dx, ds, dy);
    const double ap = step_length(lay, x, dx, 1.0);
    const double ad = step_length(lay, s, ds, 1.0);
    const double ratio = inner(x + ap * dx, s + ad * ds) / inner(x, s);
    const double sigma = std::clamp(ratio * ratio * ratio, 0.0, 1.0);

    const ComplexVector corr = lay.herm(lay.mul3(dx, ds, sinv));
    direction(sigma * mu, &corr, dx, ds, dy);
    const double step_p = step_length(lay, x, dx, 0.95);
    const double step_d = step_length(lay, s, ds, 0.95);
    x = lay.herm(x + step_p * dx);
    y += step_d * dy;
    s = lay.herm(s + step_d * ds);
    res.iterations = it + 1;
  }
  res.z = y.head(nz);
  res.t = y(nz);
  res.x = std::move(x);
  return res;
}

/// Projects a primal point onto {<G_k, Y> = 0, Tr Y = 1}, shifts it to be
/// PSD, and returns -<C, Y> per unit of unscaled trace. A positive value
/// certifies that no z makes C + sum z_k G_k PSD.
double farkas_margin(const Layout& lay, const ComplexVector& c,
                     const ComplexMatrix& g, ComplexVector y,
                     const std::vector<double>& block_scale) {
  const Eigen::Index n = g.cols() + 1;
  ComplexMatrix a(lay.length, n);
  a.leftCols(g.cols()) = g;
  a.col(g.cols()) = lay.identity();
  const RealMatrix gram = (a.adjoint() * a).real();
  RealVector rhs = -(a.adjoint() * y).real();
  rhs(n - 1) += 1.0;
  const RealVector u = gram.ldlt().solve(rhs);
  y = lay.herm(y + a * u.cast<Complex>());
  const double lmin = lay.min_eig(y);
  if (lmin < 0) y -= lmin * lay.identity();
  double trace = 0.0;
  for (std::size_t k = 0; k < lay.blocks(); ++k) {
    trace += block_scale[k] * lay.trace(y, k);
  }
  return -inner(c, y) / trace;
}

}  // namespace

ExtensionCertificate solve_feasibility(const SdpInstance& inst,
                                       const DensityOperator& rho,
                                       const SolverOptions& options) {
  ExtensionCertificate cert;
  const ModeCount m = inst.m;
  if (!(rho.m == m)) throw ValidationError("solve_feasibility: size mismatch");
  // The partial transpose does not preserve the null space of Lambda, so the
  // PPT block keeps its full side 2^(2m); at m = 4 the stacked directions
  // alone need tens of GB.
  if (inst.ppt && m.value() > 3) {
    throw ValidationError(
        "solve_feasibility: PPT solves are limited to m <= 3; export the "
        "instance for an external solver instead");
  }
  if (!inst.consistent) {
    cert.status = ExtensionStatus::kInfeasible;
    cert.margin = inst.inconsistency;
    cert.message = "equality system Lambda rho_ext = 0 is inconsistent";
    return cert;
  }
  const auto nx = static_cast<Eigen::Index>(inst.variable_count());
  const Eigen::Index dfull = inst.complex_dim();

  // x = x_p + N w over the free (non-pivot) columns of the reduced system.
  std::vector<bool> is_pivot(static_cast<std::size_t>(nx), false);
  RealVector xp = RealVector::Zero(nx);
  for (std::size_t r = 0; r < inst.pivots.size(); ++r) {
    is_pivot[inst.pivots[r]] = true;
    xp(inst.pivots[r]) = inst.eq_b(static_cast<Eigen::Index>(r));
  }
  std::vector<int> free_cols;
  for (Eigen::Index k = 0; k < nx; ++k) {
    if (!is_pivot[k]) free_cols.push_back(static_cast<int>(k));
  }
  const auto nf = static_cast<Eigen::Index>(free_cols.size());
  Eigen::SparseMatrix<double> null_basis(nx, nf);
  {
    const Eigen::SparseMatrix<double> acol = inst.eq_a;
    std::vector<Eigen::Triplet<double>> trip;
    for (Eigen::Index f = 0; f < nf; ++f) {
      trip.emplace_back(free_cols[f], f, 1.0);
      for (Eigen::SparseMatrix<double>::InnerIterator it(acol, free_cols[f]);
           it; ++it) {
        trip.emplace_back(inst.pivots[it.row()], f, -it.value());
      }
    }
    null_basis.setFromTriplets(trip.begin(), trip.end());
  }
  cert.free_parameters = free_cols.size();

  // Facial reduction: rho_ext lives on the null space of Lambda, so block 1
  // is V^dagger rho_ext V. The PPT block keeps the full space.
  const ComplexMatrix v = gaussian_symmetric_basis(m);
  const Eigen::Index dk = v.cols();
  std::vector<Eigen::Index> dims{dk};
  if (inst.ppt) dims.push_back(dfull);
  const Layout lay(dims);
  const double s1 = static_cast<double>(dk);
  const double s2 = static_cast<double>(dfull);
  std::vector<double> block_scale{s1};
  if (inst.ppt) block_scale.push_back(s2);

  auto stacked = [&](const PauliSum& f) {
    ComplexVector out(lay.length);
    ComplexMatrix fv = ComplexMatrix::Zero(dfull, dk);
    for (const auto& [p, w] : f.terms) fv += w * p.apply_left(v);
    ComplexMatrix r = v.adjoint() * fv;
    lay.block(out, 0) = s1 * 0.5 * (r + r.adjoint());
    if (inst.ppt) {
      // (P1 (x) P2)^T1 = (-1)^{#Y in P1} P1 (x) P2.
      const int q = m.value();
      const std::uint32_t low = (1u << q) - 1;
      ComplexMatrix acc = ComplexMatrix::Zero(dfull, dfull);
      for (const auto& [p, w] : f.terms) {
        const std::uint32_t high_y = ((p.x & p.z) >> q) & low;
        const double sign = std::popcount(high_y) % 2 ? -1.0 : 1.0;
        for (std::uint32_t col = 0; col < static_cast<std::uint32_t>(dfull);
             ++col) {
          acc(col ^ p.x, col) += sign * w * p.element(col);
        }
      }
      lay.block(out, 1) = s2 * 0.5 * (acc + acc.adjoint());
    }
    return out;
  };

  // Stacked F_k for every variable, then directions D = H N and the
  // constant C = F0 + sum_k xp_k F_k.
  ComplexMatrix dirs;
  ComplexVector c0 = stacked(inst.f0_terms());
  {
    ComplexMatrix hall(lay.length, nx);
    for (Eigen::Index k = 0; k < nx; ++k) {
      hall.col(k) = stacked(inst.f_terms(static_cast<std::size_t>(k)));
    }
    c0 += hall * xp.cast<Complex>();
    const Eigen::SparseMatrix<Complex> nb = null_basis.cast<Complex>();
    dirs = hall * nb;
  }
  c0 = lay.herm(c0);

  // Orthonormalize the directions; `transform` maps new coordinates to w.
  RealMatrix transform(nf, 0);
  ComplexMatrix g(lay.length, 0);
  if (nf > 0) {
    const RealMatrix gram = (dirs.adjoint() * dirs).real();
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
    const double top = es.eigenvalues().maxCoeff();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < nf; ++i) {
      if (es.eigenvalues()(i) > 1e-12 * top) keep.push_back(i);
    }
    transform.resize(nf, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t l = 0; l < keep.size(); ++l) {
      transform.col(static_cast<Eigen::Index>(l)) =
          es.eigenvectors().col(keep[l]) /
          std::sqrt(es.eigenvalues()(keep[l]));
    }
    g = dirs * transform.cast<Complex>();
    dirs.resize(0, 0);
  }

  const double stop_t = 1e-3;
  const IpmResult ipm = maximize_min_eigenvalue(
      lay, c0, g, options.max_iterations, stop_t, options.verbose);
  cert.iterations = ipm.iterations;
  cert.t = ipm.t / s1;

  RealVector x = xp;
  if (transform.cols() > 0) x += null_basis * (transform * ipm.z);
  cert.x = x;
  cert.rho_ext = inst.assemble(x);
  cert.residuals = verify_extension(cert.rho_ext, rho, inst.ppt);
  cert.residuals.equality = inst.equality_residual(x);

  if (cert.residuals.worst() <= options.tol) {
    cert.status = ExtensionStatus::kFeasible;
    cert.message = ipm.strictly_feasible ? "strictly feasible point found"
                                         : "feasible within tolerance";
    return cert;
  }
  cert.margin = farkas_margin(lay, c0, g, ipm.x, block_scale);
  if (cert.margin > options.tol) {
    cert.status = ExtensionStatus::kInfeasible;
    cert.message = "dual certificate separates rho from extendable states";
  } else {
    cert.status = ExtensionStatus::kUnknown;
    cert.message = ipm.converged ? "optimum within tolerance of the boundary"
                                 : "iteration limit reached";
  }
  return cert;
}

}  // namespace fermigauss
