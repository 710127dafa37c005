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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "fermigauss/linalg.hpp"

namespace fermigauss::oracle {

double permutation_pfaffian(const RealMatrix& a) {
  const int dim = static_cast<int>(a.rows());
  if (dim % 2) return 0.0;
  std::vector<int> perm(static_cast<std::size_t>(dim));
  std::iota(perm.begin(), perm.end(), 0);
  double sum = 0.0;
  do {
    // Sign by counting inversions.
    int inversions = 0;
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) inversions += perm[i] > perm[j];
    }
    double term = inversions % 2 ? -1.0 : 1.0;
    for (int i = 0; i < dim; i += 2) term *= a(perm[i], perm[i + 1]);
    sum += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  double norm = 1.0;
  for (int k = 1; k <= dim / 2; ++k) norm *= 2.0 * k;
  return sum / norm;
}

double dense_correlator(const ComplexMatrix& rho, std::uint32_t mask,
                        ModeCount m) {
  ComplexMatrix op = ComplexMatrix::Identity(m.dim(), m.dim());
  int k = 0;
  for (int i = 1; i <= m.majoranas(); ++i) {
    if (mask & (1u << (i - 1))) {
      op = op * majorana_matrix(i, m);
      ++k;
    }
  }
  static const Complex kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  op *= kPhase[(k / 2) % 4];
  return (rho * op).trace().real();
}

RealMatrix random_antisymmetric(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  RealMatrix a = RealMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      a(i, j) = normal(gen);
      a(j, i) = -a(i, j);
    }
  }
  return a;
}

namespace {

ComplexMatrix projector(int mode, int outcome, ModeCount m) {
  const ComplexMatrix q = Complex(0, 1) * majorana_matrix(2 * mode - 1, m) *
                          majorana_matrix(2 * mode, m);
  const ComplexMatrix id = ComplexMatrix::Identity(m.dim(), m.dim());
  return 0.5 * (outcome == 0 ? ComplexMatrix(id + q) : ComplexMatrix(id - q));
}

}  // namespace

std::map<std::string, double> dense_circuit_distribution(
    const FloCircuit& circuit) {
  std::map<std::string, double> out;
  // Library vacuum: <i c_{2k-1} c_{2k}> = +1 on every mode.
  const ComplexVector vac = canonical_basis_state(
      std::vector<int>(static_cast<std::size_t>(circuit.modes), 1));
  const ComplexMatrix rho0 = vac * vac.adjoint();

  std::function<void(std::size_t, ComplexMatrix, int, std::string, double)>
      walk = [&](std::size_t step, ComplexMatrix rho, int modes,
                 std::string key, double prob) {
        const ModeCount m(modes);
        for (; step < circuit.steps.size(); ++step) {
          const CircuitStep& s = circuit.steps[step];
          switch (s.op) {
            case CircuitStep::Op::kRotate: {
              const ComplexMatrix u = flo_unitary(s.rotation);
              rho = u * rho * u.adjoint();
              break;
            }
            case CircuitStep::Op::kBraid: {
              const ComplexMatrix u =
                  flo_unitary(braid_rotation(s.i, s.j, 2 * modes));
              rho = u * rho * u.adjoint();
              break;
            }
            case CircuitStep::Op::kInject: {
              ComplexMatrix sigma;
              for (const auto& e : s.ensemble->entries) {
                const ComplexVector v = flo_unitary(e.state.rotation) *
                                        canonical_basis_state(e.state.signs);
                const ComplexMatrix d = e.weight * (v * v.adjoint());
                sigma = sigma.size() ? ComplexMatrix(sigma + d) : d;
              }
              walk(step + 1, kron(rho, sigma),
                   modes + s.ensemble->modes().value(), key, prob);
              return;
            }
            case CircuitStep::Op::kMeasure: {
              for (int outcome = 0; outcome < 2; ++outcome) {
                const ComplexMatrix p = projector(s.mode, outcome, m);
                ComplexMatrix post = p * rho * p;
                const double q = post.trace().real();
                if (q < 1e-14) continue;
                walk(step + 1, post / q, modes, key + char('0' + outcome),
                     prob * q);
              }
              return;
            }
          }
        }
        out[key] += prob;
      };
  walk(0, rho0, circuit.modes, "", 1.0);
  return out;
}

FloCircuit random_circuit(std::uint64_t seed, int max_modes, int max_gates,
                          int max_measurements) {
  std::mt19937_64 gen(seed);
  auto uniform_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
  };
  FloCircuit c;
  c.modes = uniform_int(1, std::max(1, max_modes - 1));
  int modes = c.modes;
  const int gates = uniform_int(1, max_gates);
  const int measurements = uniform_int(1, max_measurements);
  // Interleave: measurements land at random positions among the gates.
  std::vector<bool> is_measure(static_cast<std::size_t>(gates), false);
  is_measure.resize(static_cast<std::size_t>(gates + measurements), true);
  std::shuffle(is_measure.begin(), is_measure.end(), gen);
  for (bool measure : is_measure) {
    CircuitStep step;
    if (measure) {
      step.op = CircuitStep::Op::kMeasure;
      step.mode = uniform_int(1, modes);
    } else {
      const int kind = uniform_int(0, 9);
      if (kind < 2 && modes < max_modes) {
        step.op = CircuitStep::Op::kInject;
        const int extra = uniform_int(1, max_modes - modes);
        auto e = std::make_shared<GaussianEnsemble>();
        const int n = uniform_int(1, 3);
        std::vector<double> w(static_cast<std::size_t>(n));
        for (auto& x : w) x = std::uniform_real_distribution<double>(0.1, 1)(gen);
        const double total = std::accumulate(w.begin(), w.end(), 0.0);
        for (int i = 0; i < n; ++i) {
          e->entries.push_back(
              {w[i] / total, random_pure_gaussian(ModeCount(extra), gen())});
        }
        step.ensemble = e;
        step.offset = modes;
        modes += extra;
      } else if (kind < 5) {
        step.op = CircuitStep::Op::kBraid;
        step.i = uniform_int(1, 2 * modes);
        do {
          step.j = uniform_int(1, 2 * modes);
        } while (step.j == step.i);
      } else {
        step.op = CircuitStep::Op::kRotate;
        step.rotation = random_special_orthogonal(2 * modes, gen());
      }
    }
    c.steps.push_back(std::move(step));
  }
  c.validate();
  return c;
}

double total_variation(const std::map<std::string, double>& p,
                       const std::map<std::string, double>& q) {
  double tv = 0.0;
  for (const auto& [k, v] : p) {
    auto it = q.find(k);
    tv += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : q) {
    if (!p.count(k)) tv += std::abs(v);
  }
  return 0.5 * tv;
}

}  // namespace fermigauss::oracle
