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
#include <vector>

#include "fermigauss/types.hpp"

namespace fermigauss {

/// Real antisymmetric matrix of even dimension. The constructor checks
/// |A + A^T| <= tol * max(1, |A|) entrywise and then stores (A - A^T) / 2.
class AntisymmetricMatrix {
 public:
  explicit AntisymmetricMatrix(const RealMatrix& a, double tol = 1e-12);

  static AntisymmetricMatrix zero(Eigen::Index dim);

  const RealMatrix& matrix() const { return a_; }
  Eigen::Index dim() const { return a_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return a_(i, j); }

 private:
  struct Trusted {};
  AntisymmetricMatrix(RealMatrix a, Trusted) : a_(std::move(a)) {}
  RealMatrix a_;
};

/// Pfaffian by Parlett-Reid tridiagonalization with partial pivoting.
double pfaffian(const AntisymmetricMatrix& a);

/// Pfaffian of the principal submatrix on the given 1-based, strictly
/// increasing indices. An empty list gives 1.
double pfaffian_minor(const AntisymmetricMatrix& a,
                      const std::vector<int>& indices);

/// A = rotation * (+)_j [[0, l_j], [-l_j, 0]] * rotation^T with rotation in
/// SO(2m). The lambdas are sorted by decreasing magnitude and are
/// nonnegative, except that the last one may carry a negative sign when that
/// is needed to keep det(rotation) = +1.
struct BlockDiagonalForm {
  RealMatrix rotation;
  std::vector<double> lambdas;

  RealMatrix reconstruct() const;
};

BlockDiagonalForm block_diagonalize(const AntisymmetricMatrix& a);

/// (+)_j [[0, l_j], [-l_j, 0]].
RealMatrix canonical_block_matrix(const std::vector<double>& lambdas);

/// Rotation by `theta` in the (i, j) plane, 1-based: e_i -> cos e_i + sin e_j.
RealMatrix givens_rotation(int dim, int i, int j, double theta);

struct GivensParameter {
  int i;
  int j;
  double theta;
};

/// Product G_1 G_2 ... of Givens rotations (identity for an empty list).
RealMatrix so_from_givens(int dim, const std::vector<GivensParameter>& params);

/// Permutation matrix P with P e_k = e_{perm[k]} (1-based images). Odd
/// permutations have determinant -1 and are rejected.
RealMatrix so_from_permutation(const std::vector<int>& perm);

RealMatrix direct_sum(const RealMatrix& a, const RealMatrix& b);

/// Haar-random element of SO(dim): QR of a Gaussian matrix with the sign of
/// R's diagonal folded into Q, determinant corrected by negating column 0.
RealMatrix random_special_orthogonal(int dim, std::uint64_t seed);

bool is_orthogonal(const RealMatrix& r, double tol = 1e-10);
bool is_special_orthogonal(const RealMatrix& r, double tol = 1e-10);

/// Canonical planes of a rotation: r = basis * (+)_j rot(theta_j) * basis^T,
/// rot(t) = [[cos t, sin t], [-sin t, cos t]], theta_j in (-pi, pi].
struct RotationPlanes {
  RealMatrix basis;
  std::vector<double> thetas;
};

RotationPlanes rotation_planes(const RealMatrix& r);

}  // namespace fermigauss
