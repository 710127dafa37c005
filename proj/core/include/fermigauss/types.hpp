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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fermigauss {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Raised when an input violates a documented precondition (bad index,
/// non-antisymmetric matrix, probability out of range, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot produce a trustworthy answer
/// (zero-probability branch, solver breakdown, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default tolerance for exactness checks on constructed operators.
inline constexpr double kExactTol = 1e-10;

/// Largest supported number of fermionic modes for single-copy operators.
inline constexpr int kMaxModes = 6;

/// Correlation-matrix work (Wick, FLO simulation) never forms a 2^m
/// operator; its limit comes from the 32-bit Majorana masks.
inline constexpr int kMaxCorrelationModes = 16;

/// Tensor-square operators are limited to 2^(2m) <= 2^12.
inline constexpr int kMaxTensorSquareQubits = 12;

/// Number of fermionic modes m; the Majorana count is 2m and the Hilbert
/// space dimension is 2^m.
class ModeCount {
 public:
  explicit ModeCount(int m, int cap = kMaxModes) : m_(m) {
    if (m < 1 || m > cap) {
      throw ValidationError(
          "mode count " + std::to_string(m) + " outside [1, " +
          std::to_string(cap) + "]");
    }
  }

  int value() const { return m_; }
  int majoranas() const { return 2 * m_; }
  int dim() const { return 1 << m_; }

  /// Throws unless a dense 2^m x 2^m operator is within the cap.
  void require_dense() const {
    if (m_ > kMaxModes) {
      throw ValidationError("dense operators need m <= " +
                            std::to_string(kMaxModes) + ", got m = " +
                            std::to_string(m_));
    }
  }

  /// Throws unless the tensor square (dimension 2^(2m)) is within the cap.
  void require_tensor_square() const {
    if (2 * m_ > kMaxTensorSquareQubits) {
      throw ValidationError(
          "tensor-square operations need 2m <= " +
          std::to_string(kMaxTensorSquareQubits) + ", got m = " +
          std::to_string(m_));
    }
  }

  friend bool operator==(ModeCount a, ModeCount b) { return a.m_ == b.m_; }

 private:
  int m_;
};

/// Mode count implied by a square operator of side 2^m.
ModeCount mode_count_from_dim(Eigen::Index dim);

}  // namespace fermigauss
