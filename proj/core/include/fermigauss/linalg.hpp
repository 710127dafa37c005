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

#include "fermigauss/types.hpp"

namespace fermigauss {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr_B of an operator on A (x) B, with dim(B) = dim_b.
ComplexMatrix partial_trace_second(const ComplexMatrix& x, Eigen::Index dim_b);
/// Tr_A of an operator on A (x) B, with dim(A) = dim_a.
ComplexMatrix partial_trace_first(const ComplexMatrix& x, Eigen::Index dim_a);
/// Transpose on the first tensor factor: (X (x) Y)^T1 = X^T (x) Y.
ComplexMatrix partial_transpose_first(const ComplexMatrix& x,
                                      Eigen::Index dim_a);

/// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm_hermitian(const ComplexMatrix& x);
/// (1/2) ||a - b||_1 for Hermitian a, b.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

double min_eigenvalue_hermitian(const ComplexMatrix& x);

/// Von Neumann entropy in nats; eigenvalues below 1e-14 are dropped.
double von_neumann_entropy(const ComplexMatrix& rho);

}  // namespace fermigauss
