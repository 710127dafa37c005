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

#include "fermigauss/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace fermigauss {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

namespace {

void check_factor(const ComplexMatrix& x, Eigen::Index factor) {
  if (x.rows() != x.cols() || factor <= 0 || x.rows() % factor != 0) {
    throw ValidationError("tensor factor dimension does not divide operator");
  }
}

}  // namespace

ComplexMatrix partial_trace_second(const ComplexMatrix& x,
                                   Eigen::Index dim_b) {
  check_factor(x, dim_b);
  const Eigen::Index dim_a = x.rows() / dim_b;
  ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    for (Eigen::Index j = 0; j < dim_a; ++j) {
      out(i, j) = x.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    }
  }
  return out;
}

ComplexMatrix partial_trace_first(const ComplexMatrix& x, Eigen::Index dim_a) {
  check_factor(x, dim_a);
  const Eigen::Index dim_b = x.rows() / dim_a;
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (Eigen::Index k = 0; k < dim_a; ++k) {
    out += x.block(k * dim_b, k * dim_b, dim_b, dim_b);
  }
  return out;
}

ComplexMatrix partial_transpose_first(const ComplexMatrix& x,
                                      Eigen::Index dim_a) {
  check_factor(x, dim_a);
  const Eigen::Index dim_b = x.rows() / dim_a;
  ComplexMatrix out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    for (Eigen::Index j = 0; j < dim_a; ++j) {
      out.block(i * dim_b, j * dim_b, dim_b, dim_b) =
          x.block(j * dim_b, i * dim_b, dim_b, dim_b);
    }
  }
  return out;
}

double trace_norm_hermitian(const ComplexMatrix& x) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return 0.5 * trace_norm_hermitian(a - b);
}

double min_eigenvalue_hermitian(const ComplexMatrix& x) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double p : es.eigenvalues()) {
    if (p > 1e-14) s -= p * std::log(p);
  }
  return s;
}

}  // namespace fermigauss
