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

#include "fermigauss/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <random>

#include "fermigauss/linalg.hpp"

namespace fermigauss {

namespace {

const Complex kI(0.0, 1.0);

ModeCount modes_of_majorana_dim(Eigen::Index n) {
  if (n < 2 || n % 2 != 0) {
    throw ValidationError("correlation matrix needs even dimension");
  }
  return ModeCount(static_cast<int>(n / 2), kMaxCorrelationModes);
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t out = 1;
  for (int j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return out;
}

// ---------------------------------------------------------------------------
// CorrelationMatrix

CorrelationMatrix::CorrelationMatrix(const AntisymmetricMatrix& a, double tol)
    : a_(a), m_(modes_of_majorana_dim(a.dim())) {
  const RealMatrix mtm = a_.matrix().transpose() * a_.matrix();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(mtm, Eigen::EigenvaluesOnly);
  const double top = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  if (top > 1.0 + tol) {
    throw ValidationError("correlation matrix violates M^T M <= I (lambda = " +
                          std::to_string(top) + ")");
  }
}

CorrelationMatrix CorrelationMatrix::vacuum(ModeCount m) {
  std::vector<double> ones(static_cast<std::size_t>(m.value()), 1.0);
  return CorrelationMatrix(AntisymmetricMatrix(canonical_block_matrix(ones)),
                           m);
}

CorrelationMatrix CorrelationMatrix::zero(ModeCount m) {
  return CorrelationMatrix(AntisymmetricMatrix::zero(m.majoranas()), m);
}

double CorrelationMatrix::purity_defect() const {
  const RealMatrix& a = a_.matrix();
  return (a.transpose() * a - RealMatrix::Identity(a.rows(), a.cols())).norm();
}

// ---------------------------------------------------------------------------
// Rotated frames and FLO unitaries

ComplexMatrix rotated_majorana(const RealMatrix& r, int k, ModeCount m) {
  if (r.rows() != m.majoranas() || r.cols() != m.majoranas()) {
    throw ValidationError("rotated_majorana: rotation size mismatch");
  }
  m.require_dense();
  ComplexMatrix out = ComplexMatrix::Zero(m.dim(), m.dim());
  for (int i = 1; i <= m.majoranas(); ++i) {
    const double w = r(i - 1, k - 1);
    if (w == 0.0) continue;
    const PauliString p = majorana_string(i, m);
    for (std::uint32_t c = 0; c < static_cast<std::uint32_t>(m.dim()); ++c) {
      out(c ^ p.x, c) += w * p.element(c);
    }
  }
  return out;
}

ComplexMatrix flo_unitary(const RealMatrix& r) {
  const ModeCount m = modes_of_majorana_dim(r.rows());
  m.require_dense();
  const RotationPlanes planes = rotation_planes(r);
  ComplexMatrix u = ComplexMatrix::Identity(m.dim(), m.dim());
  for (std::size_t l = 0; l < planes.thetas.size(); ++l) {
    const double theta = planes.thetas[l];
    if (theta == 0.0) continue;
    const ComplexMatrix a =
        rotated_majorana(planes.basis, static_cast<int>(2 * l + 1), m);
    const ComplexMatrix b =
        rotated_majorana(planes.basis, static_cast<int>(2 * l + 2), m);
    const ComplexMatrix factor =
        std::cos(theta / 2) * ComplexMatrix::Identity(m.dim(), m.dim()) +
        std::sin(theta / 2) * (a * b);
    u = factor * u;
  }
  return u;
}

ComplexVector canonical_basis_state(const std::vector<int>& signs) {
  const ModeCount m(static_cast<int>(signs.size()));
  // i c_{2k-1} c_{2k} = -Z on the qubit of mode k.
  std::uint32_t index = 0;
  for (int k = 1; k <= m.value(); ++k) {
    const int s = signs[static_cast<std::size_t>(k - 1)];
    if (s != 1 && s != -1) throw ValidationError("signs must be +-1");
    if (s == 1) index |= 1u << (m.value() - k);
  }
  ComplexVector psi = ComplexVector::Zero(m.dim());
  psi(index) = 1.0;
  return psi;
}

// ---------------------------------------------------------------------------
// GaussianPureState

ModeCount GaussianPureState::modes() const {
  return ModeCount(static_cast<int>(signs.size()), kMaxCorrelationModes);
}

void GaussianPureState::validate(double tol) const {
  const ModeCount m = modes();
  if (rotation.rows() != m.majoranas() || rotation.cols() != m.majoranas()) {
    throw ValidationError("Gaussian state rotation has the wrong size");
  }
  if (!is_special_orthogonal(rotation, tol)) {
    throw ValidationError("Gaussian state rotation is not in SO(2m)");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw ValidationError("signs must be +-1");
  }
}

CorrelationMatrix GaussianPureState::correlation() const {
  std::vector<double> lam(signs.begin(), signs.end());
  const RealMatrix m =
      rotation * canonical_block_matrix(lam) * rotation.transpose();
  return CorrelationMatrix(AntisymmetricMatrix(m, 1e-9));
}

ComplexVector GaussianPureState::state_vector() const {
  return flo_unitary(rotation) * canonical_basis_state(signs);
}

DensityOperator GaussianPureState::density() const {
  return density_from_vector(state_vector());
}

DensityOperator density_from_vector(const ComplexVector& psi) {
  ComplexMatrix rho = psi * psi.adjoint();
  return DensityOperator::from_matrix(std::move(rho));
}

// ---------------------------------------------------------------------------
// Correlation matrices and Gaussian states

CorrelationMatrix correlation_matrix(const DensityOperator& rho, double tol) {
  const ModeCount m = rho.m;
  const int n = m.majoranas();
  RealMatrix out = RealMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const std::uint32_t mask = (1u << a) | (1u << b);
      const Complex t = correlator_string(mask, m).trace_with(rho.matrix);
      if (std::abs(t.imag()) > tol) {
        throw NumericalError("correlation_matrix: imaginary residue " +
                             std::to_string(t.imag()));
      }
      out(a, b) = t.real();
      out(b, a) = -t.real();
    }
  }
  return CorrelationMatrix(out);
}

DensityOperator gaussian_from_correlation(const CorrelationMatrix& cm,
                                          double tol) {
  const ModeCount m = cm.modes();
  m.require_dense();
  const BlockDiagonalForm bd = block_diagonalize(cm.antisymmetric());
  const auto dim = static_cast<Eigen::Index>(m.dim());
  ComplexMatrix rho = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  for (int k = 1; k <= m.value(); ++k) {
    double lambda = bd.lambdas[static_cast<std::size_t>(k - 1)];
    if (std::abs(lambda) > 1.0 + tol) {
      throw ValidationError("gaussian_from_correlation: |lambda| > 1");
    }
    lambda = std::clamp(lambda, -1.0, 1.0);
    if (lambda == 0.0) continue;
    const ComplexMatrix a = rotated_majorana(bd.rotation, 2 * k - 1, m);
    const ComplexMatrix b = rotated_majorana(bd.rotation, 2 * k, m);
    const ComplexMatrix chi =
        ComplexMatrix::Identity(dim, dim) + (kI * lambda) * (a * b);
    rho = rho * chi;
  }
  return DensityOperator::from_matrix(0.5 * (rho + rho.adjoint()).eval());
}

double wick_expectation(const CorrelationMatrix& m, CorrelatorIndex index) {
  const std::vector<int> idx = index.indices();
  for (int a : idx) {
    if (a > m.modes().majoranas()) {
      throw ValidationError("wick_expectation: index out of range");
    }
  }
  return pfaffian_minor(m.antisymmetric(), idx);
}

// ---------------------------------------------------------------------------
// Lambda

namespace {

std::shared_ptr<const ComplexMatrix> cached_lambda(
    ModeCount m, const std::vector<PauliString>& terms) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const ComplexMatrix>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(m.value());
  if (it != cache.end()) return it->second;
  const std::uint32_t n = 1u << (2 * m.value());
  auto dense = std::make_shared<ComplexMatrix>(ComplexMatrix::Zero(n, n));
  for (const PauliString& p : terms) {
    for (std::uint32_t c = 0; c < n; ++c) (*dense)(c ^ p.x, c) += p.element(c);
  }
  cache.emplace(m.value(), dense);
  return dense;
}

}  // namespace

LambdaOperator::LambdaOperator(ModeCount m) : m_(m) {
  m.require_tensor_square();
  for (int i = 1; i <= m.majoranas(); ++i) {
    const PauliString c = majorana_string(i, m);
    terms_.push_back(c.tensor(c));
  }
}

LambdaOperator lambda_operator(ModeCount m) { return LambdaOperator(m); }

const ComplexMatrix& LambdaOperator::matrix() const {
  if (!dense_) dense_ = cached_lambda(m_, terms_);
  return *dense_;
}

ComplexMatrix LambdaOperator::apply_left(const ComplexMatrix& x) const {
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const PauliString& p : terms_) out += p.apply_left(x);
  return out;
}

ComplexMatrix LambdaOperator::apply_right(const ComplexMatrix& x) const {
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const PauliString& p : terms_) out += p.apply_right(x);
  return out;
}

ComplexVector LambdaOperator::apply(const ComplexVector& v) const {
  ComplexVector out = ComplexVector::Zero(v.size());
  for (const PauliString& p : terms_) out += p.apply(v);
  return out;
}

double LambdaOperator::trace_norm() const {
  const int n = m_.majoranas();
  double total = 0.0;
  for (int j = 0; j <= n; ++j) {
    total += static_cast<double>(binomial(n, j)) * std::abs(n - 2 * j);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Gaussianity tests

GaussianityTest is_gaussian(const DensityOperator& rho, double tol) {
  const LambdaOperator lambda(rho.m);
  const ComplexMatrix sq = kron(rho.matrix, rho.matrix);
  const double residual =
      (lambda.apply_left(sq) - lambda.apply_right(sq)).norm();
  return {residual <= tol, residual};
}

SandwichNorm lambda_sandwich_norm(const DensityOperator& rho) {
  const LambdaOperator lambda(rho.m);
  const ComplexMatrix sq = kron(rho.matrix, rho.matrix);
  ComplexMatrix sandwich = lambda.apply_right(lambda.apply_left(sq));
  sandwich = 0.5 * (sandwich + sandwich.adjoint()).eval();
  const CorrelationMatrix m = correlation_matrix(rho);
  const double mtm = (m.matrix().transpose() * m.matrix()).trace();
  return {trace_norm_hermitian(sandwich), rho.m.majoranas() - mtm};
}

DensityOperator dephase(const DensityOperator& rho) {
  const ModeCount m = rho.m;
  const CorrelationMatrix cm = correlation_matrix(rho);
  const BlockDiagonalForm bd = block_diagonalize(cm.antisymmetric());
  ComplexMatrix current = rho.matrix;
  for (int k = 1; k <= m.value(); ++k) {
    const ComplexMatrix a = rotated_majorana(bd.rotation, 2 * k - 1, m);
    const ComplexMatrix b = rotated_majorana(bd.rotation, 2 * k, m);
    const ComplexMatrix u = kI * (a * b);
    current = 0.5 * (current + u * current * u.adjoint());
  }
  return DensityOperator::from_matrix(0.5 * (current + current.adjoint()).eval());
}

ComplexMatrix gaussian_symmetric_basis(ModeCount m) {
  const LambdaOperator lambda(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(lambda.matrix());
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i)) < 0.5) cols.push_back(i);
  }
  ComplexMatrix basis(es.eigenvectors().rows(),
                      static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    basis.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(cols[j]);
  }
  return basis;
}

ComplexMatrix gaussian_symmetric_projector(ModeCount m) {
  const ComplexMatrix basis = gaussian_symmetric_basis(m);
  return basis * basis.adjoint();
}

ComplexMatrix swap_operator(ModeCount m) {
  const std::uint32_t d = m.dim();
  ComplexMatrix p = ComplexMatrix::Zero(d * d, d * d);
  for (std::uint32_t a = 0; a < d; ++a) {
    for (std::uint32_t b = 0; b < d; ++b) p(b * d + a, a * d + b) = 1.0;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Samplers

GaussianPureState random_pure_gaussian(ModeCount m, std::uint64_t seed) {
  GaussianPureState g;
  g.rotation = random_special_orthogonal(m.majoranas(), seed);
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < m.value(); ++k) g.signs.push_back(coin(gen) ? 1 : -1);
  return g;
}

ComplexVector random_parity_state(ModeCount m, std::uint64_t seed, bool even) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const PauliString parity = parity_string(m);
  const double want = even ? 1.0 : -1.0;
  ComplexVector psi = ComplexVector::Zero(m.dim());
  for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(m.dim()); ++b) {
    const double re = normal(gen);
    const double im = normal(gen);
    if (parity.element(b).real() == want) psi(b) = Complex(re, im);
  }
  return psi / psi.norm();
}

DensityOperator random_even_state(ModeCount m, std::uint64_t seed, int rank) {
  if (rank <= 0) rank = m.dim();
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  ComplexMatrix rho = ComplexMatrix::Zero(m.dim(), m.dim());
  double total = 0.0;
  for (int j = 0; j < rank; ++j) {
    const double w = -std::log(1.0 - unif(gen));
    const bool even = unif(gen) < 0.5;
    const ComplexVector psi = random_parity_state(m, gen(), even);
    rho += w * psi * psi.adjoint();
    total += w;
  }
  rho /= total;
  return DensityOperator::from_matrix(0.5 * (rho + rho.adjoint()).eval());
}

}  // namespace fermigauss
