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

#include "fermigauss/antisym.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace fermigauss {

AntisymmetricMatrix::AntisymmetricMatrix(const RealMatrix& a, double tol) {
  if (a.rows() != a.cols()) {
    throw ValidationError("antisymmetric matrix must be square");
  }
  if (a.rows() == 0 || a.rows() % 2 != 0) {
    throw ValidationError("antisymmetric matrix must have even positive "
                          "dimension, got " + std::to_string(a.rows()));
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a + a.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol * scale) {
    throw ValidationError("matrix is not antisymmetric (|A + A^T| = " +
                          std::to_string(asym) + ")");
  }
  a_ = 0.5 * (a - a.transpose());
}

AntisymmetricMatrix AntisymmetricMatrix::zero(Eigen::Index dim) {
  return AntisymmetricMatrix(RealMatrix::Zero(dim, dim));
}

double pfaffian(const AntisymmetricMatrix& am) {
  RealMatrix a = am.matrix();
  const Eigen::Index n = a.rows();
  double pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index kp;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
    kp += k + 1;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf = -pf;
    }
    if (a(k + 1, k) == 0.0) return 0.0;
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      const Eigen::Index rest = n - k - 2;
      const RealVector tau = a.row(k).tail(rest).transpose() / a(k, k + 1);
      const RealVector col = a.col(k + 1).tail(rest);
      a.bottomRightCorner(rest, rest) +=
          tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

double pfaffian_minor(const AntisymmetricMatrix& a,
                      const std::vector<int>& indices) {
  if (indices.size() % 2 != 0) {
    throw ValidationError("pfaffian_minor needs an even number of indices");
  }
  if (indices.empty()) return 1.0;
  int prev = 0;
  for (int idx : indices) {
    if (idx < 1 || idx > a.dim()) {
      throw ValidationError("pfaffian_minor index out of range");
    }
    if (idx <= prev) {
      throw ValidationError("pfaffian_minor indices must be strictly "
                            "increasing");
    }
    prev = idx;
  }
  const auto k = static_cast<Eigen::Index>(indices.size());
  if (k == 2) return a(indices[0] - 1, indices[1] - 1);
  RealMatrix sub(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      sub(r, c) = a(indices[r] - 1, indices[c] - 1);
    }
  }
  return pfaffian(AntisymmetricMatrix(sub));
}

RealMatrix canonical_block_matrix(const std::vector<double>& lambdas) {
  const auto n = static_cast<Eigen::Index>(2 * lambdas.size());
  RealMatrix d = RealMatrix::Zero(n, n);
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    d(2 * j, 2 * j + 1) = lambdas[j];
    d(2 * j + 1, 2 * j) = -lambdas[j];
  }
  return d;
}

RealMatrix BlockDiagonalForm::reconstruct() const {
  return rotation * canonical_block_matrix(lambdas) * rotation.transpose();
}

namespace {

struct Plane {
  RealVector first;
  RealVector second;
  double lambda;
};

bool lexicographically_less(const RealVector& a, const RealVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i) - b(i)) > 1e-12) return a(i) < b(i);
  }
  return false;
}

}  // namespace

BlockDiagonalForm block_diagonalize(const AntisymmetricMatrix& am) {
  const Eigen::Index n = am.dim();
  const RealMatrix& a = am.matrix();
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    return {RealMatrix::Identity(n, n),
            std::vector<double>(static_cast<std::size_t>(n / 2), 0.0)};
  }

  Eigen::RealSchur<RealMatrix> schur(a);
  const RealMatrix& t = schur.matrixT();
  const RealMatrix& u = schur.matrixU();

  std::vector<Plane> planes;
  std::vector<RealVector> kernel;
  for (Eigen::Index i = 0; i < n;) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      const double lambda = 0.5 * (t(i, i + 1) - t(i + 1, i));
      if (lambda >= 0) {
        planes.push_back({u.col(i), u.col(i + 1), lambda});
      } else {
        planes.push_back({u.col(i), -u.col(i + 1), -lambda});
      }
      i += 2;
    } else {
      kernel.push_back(u.col(i));
      i += 1;
    }
  }
  if (kernel.size() % 2 != 0) {
    throw NumericalError("block_diagonalize: odd number of real eigenvalues");
  }
  for (std::size_t k = 0; k < kernel.size(); k += 2) {
    planes.push_back({kernel[k], kernel[k + 1], 0.0});
  }

  std::stable_sort(planes.begin(), planes.end(),
                   [](const Plane& x, const Plane& y) {
                     if (std::abs(x.lambda - y.lambda) > 1e-10) {
                       return x.lambda > y.lambda;
                     }
                     return lexicographically_less(x.first, y.first);
                   });

  BlockDiagonalForm out;
  out.rotation.resize(n, n);
  for (std::size_t j = 0; j < planes.size(); ++j) {
    out.rotation.col(2 * j) = planes[j].first;
    out.rotation.col(2 * j + 1) = planes[j].second;
    out.lambdas.push_back(planes[j].lambda);
  }
  if (out.rotation.determinant() < 0) {
    out.rotation.col(n - 1) *= -1.0;
    out.lambdas.back() = -out.lambdas.back();
  }
  return out;
}

RealMatrix givens_rotation(int dim, int i, int j, double theta) {
  if (i < 1 || j < 1 || i > dim || j > dim || i == j) {
    throw ValidationError("givens_rotation: invalid plane");
  }
  RealMatrix g = RealMatrix::Identity(dim, dim);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  g(i - 1, i - 1) = c;
  g(j - 1, j - 1) = c;
  g(j - 1, i - 1) = s;
  g(i - 1, j - 1) = -s;
  return g;
}

RealMatrix so_from_givens(int dim, const std::vector<GivensParameter>& params) {
  RealMatrix r = RealMatrix::Identity(dim, dim);
  for (const auto& p : params) r = r * givens_rotation(dim, p.i, p.j, p.theta);
  return r;
}

RealMatrix so_from_permutation(const std::vector<int>& perm) {
  const auto n = static_cast<int>(perm.size());
  RealMatrix p = RealMatrix::Zero(n, n);
  std::vector<bool> seen(perm.size(), false);
  for (int k = 0; k < n; ++k) {
    const int image = perm[k];
    if (image < 1 || image > n || seen[image - 1]) {
      throw ValidationError("so_from_permutation: not a permutation");
    }
    seen[image - 1] = true;
    p(image - 1, k) = 1.0;
  }
  // Parity by cycle decomposition.
  std::vector<bool> visited(perm.size(), false);
  int transpositions = 0;
  for (int k = 0; k < n; ++k) {
    if (visited[k]) continue;
    int len = 0;
    for (int c = k; !visited[c]; c = perm[c] - 1) {
      visited[c] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  if (transpositions % 2 != 0) {
    throw ValidationError("so_from_permutation: odd permutation has "
                          "determinant -1");
  }
  return p;
}

RealMatrix direct_sum(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out = RealMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

RealMatrix random_special_orthogonal(int dim, std::uint64_t seed) {
  if (dim < 1) throw ValidationError("random_special_orthogonal: bad dim");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix g(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) g(r, c) = normal(gen);
  }
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  const RealMatrix& rr = qr.matrixQR();
  for (int k = 0; k < dim; ++k) {
    if (rr(k, k) < 0) q.col(k) *= -1.0;
  }
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

bool is_orthogonal(const RealMatrix& r, double tol) {
  if (r.rows() != r.cols()) return false;
  const RealMatrix id = RealMatrix::Identity(r.rows(), r.cols());
  return (r.transpose() * r - id).cwiseAbs().maxCoeff() <= tol;
}

bool is_special_orthogonal(const RealMatrix& r, double tol) {
  return is_orthogonal(r, tol) && std::abs(r.determinant() - 1.0) <= tol;
}

RotationPlanes rotation_planes(const RealMatrix& r) {
  if (!is_special_orthogonal(r, 1e-8)) {
    throw ValidationError("rotation_planes: matrix is not in SO(n)");
  }
  const Eigen::Index n = r.rows();
  if (n % 2 != 0) throw ValidationError("rotation_planes: odd dimension");

  Eigen::RealSchur<RealMatrix> schur(r);
  const RealMatrix& t = schur.matrixT();
  const RealMatrix& u = schur.matrixU();

  RotationPlanes out;
  out.basis.resize(n, n);
  Eigen::Index filled = 0;
  std::vector<Eigen::Index> plus;
  std::vector<Eigen::Index> minus;
  for (Eigen::Index i = 0; i < n;) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      const double c = 0.5 * (t(i, i) + t(i + 1, i + 1));
      const double s = 0.5 * (t(i, i + 1) - t(i + 1, i));
      out.basis.col(filled++) = u.col(i);
      out.basis.col(filled++) = u.col(i + 1);
      out.thetas.push_back(std::atan2(s, c));
      i += 2;
    } else {
      (t(i, i) > 0 ? plus : minus).push_back(i);
      i += 1;
    }
  }
  if (plus.size() % 2 != 0 || minus.size() % 2 != 0) {
    throw NumericalError("rotation_planes: unpaired real eigenvalue");
  }
  for (std::size_t k = 0; k < plus.size(); k += 2) {
    out.basis.col(filled++) = u.col(plus[k]);
    out.basis.col(filled++) = u.col(plus[k + 1]);
    out.thetas.push_back(0.0);
  }
  for (std::size_t k = 0; k < minus.size(); k += 2) {
    out.basis.col(filled++) = u.col(minus[k]);
    out.basis.col(filled++) = u.col(minus[k + 1]);
    out.thetas.push_back(M_PI);
  }
  return out;
}

}  // namespace fermigauss
