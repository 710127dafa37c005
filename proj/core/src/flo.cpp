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

#include "fermigauss/flo.hpp"

#include <cmath>
#include <cstring>
#include <numeric>

namespace fermigauss {

namespace {

constexpr double kZeroBranch = 1e-12;

}  // namespace

// ---------------------------------------------------------------------------
// GaussianEnsemble

ModeCount GaussianEnsemble::modes() const {
  if (entries.empty()) throw ValidationError("empty Gaussian ensemble");
  return entries.front().state.modes();
}

void GaussianEnsemble::validate(double tol) const {
  if (entries.empty()) throw ValidationError("empty Gaussian ensemble");
  const int m = modes().value();
  double total = 0.0;
  for (const Entry& e : entries) {
    if (!(e.weight >= 0.0)) {
      throw ValidationError("ensemble weight must be nonnegative");
    }
    if (e.state.modes().value() != m) {
      throw ValidationError("ensemble entries have different mode counts");
    }
    e.state.validate();
    total += e.weight;
  }
  if (std::abs(total - 1.0) > tol) {
    throw ValidationError("ensemble weights sum to " + std::to_string(total));
  }
}

DensityOperator GaussianEnsemble::density() const {
  const ModeCount m = modes();
  m.require_dense();
  ComplexMatrix rho = ComplexMatrix::Zero(m.dim(), m.dim());
  for (const Entry& e : entries) {
    if (e.weight == 0.0) continue;
    const ComplexVector psi = e.state.state_vector();
    rho += e.weight * psi * psi.adjoint();
  }
  return DensityOperator::from_matrix(0.5 * (rho + rho.adjoint()).eval());
}

std::size_t GaussianEnsemble::sample(std::mt19937_64& gen) const {
  if (entries.empty()) throw ValidationError("empty Gaussian ensemble");
  std::vector<double> w;
  w.reserve(entries.size());
  for (const Entry& e : entries) w.push_back(e.weight);
  std::discrete_distribution<std::size_t> dist(w.begin(), w.end());
  return dist(gen);
}

// ---------------------------------------------------------------------------
// Gates and measurements

CorrelationMatrix apply_rotation(const CorrelationMatrix& m,
                                 const RealMatrix& r) {
  if (r.rows() != m.matrix().rows() || r.cols() != m.matrix().cols()) {
    throw ValidationError("apply_rotation: rotation size mismatch");
  }
  if (!is_special_orthogonal(r, 1e-9)) {
    throw ValidationError("apply_rotation: rotation is not in SO(2m)");
  }
  const RealMatrix out = r * m.matrix() * r.transpose();
  return CorrelationMatrix(AntisymmetricMatrix(out, 1e-9));
}

RealMatrix braid_rotation(int i, int j, int dim) {
  if (i == j) throw ValidationError("braid_rotation: i == j");
  if (i < 1 || j < 1 || i > dim || j > dim) {
    throw ValidationError("braid_rotation: index out of range");
  }
  RealMatrix r = RealMatrix::Identity(dim, dim);
  r(i - 1, i - 1) = 0.0;
  r(j - 1, j - 1) = 0.0;
  r(j - 1, i - 1) = 1.0;
  r(i - 1, j - 1) = -1.0;
  return r;
}

double empty_probability(const CorrelationMatrix& m, int k) {
  if (k < 1 || k > m.modes().value()) {
    throw ValidationError("measure: mode index out of range");
  }
  const double p = 0.5 * (1.0 + m(2 * k - 2, 2 * k - 1));
  return std::clamp(p, 0.0, 1.0);
}

MeasurementResult measure_mode(const CorrelationMatrix& m, int k,
                               int outcome) {
  if (outcome != 0 && outcome != 1) {
    throw ValidationError("measurement outcome must be 0 or 1");
  }
  const double p0 = empty_probability(m, k);
  const double p = outcome == 0 ? p0 : 1.0 - p0;
  if (p < kZeroBranch) {
    throw NumericalError("measure: outcome " + std::to_string(outcome) +
                         " on mode " + std::to_string(k) +
                         " has zero probability");
  }
  const double s = outcome == 0 ? 1.0 : -1.0;
  const RealMatrix& a = m.matrix();
  const Eigen::Index n = a.rows();
  const Eigen::Index ia = 2 * k - 2;
  const Eigen::Index ib = 2 * k - 1;
  const double denom = 1.0 + s * a(ia, ib);

  // Conditioning on i c_a c_b = s: for i, j outside {a, b} the projected
  // expectation follows from the four-point Pfaffian
  // <i c_a c_b i c_i c_j> = M_ab M_ij - M_ai M_bj + M_aj M_bi.
  RealMatrix post = RealMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == ia || i == ib) continue;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (j == ia || j == ib) continue;
      const double four =
          a(ia, ib) * a(i, j) - a(ia, i) * a(ib, j) + a(ia, j) * a(ib, i);
      post(i, j) = (a(i, j) + s * four) / denom;
      post(j, i) = -post(i, j);
    }
  }
  post(ia, ib) = s;
  post(ib, ia) = -s;
  return {outcome, p, CorrelationMatrix(AntisymmetricMatrix(post, 1e-9))};
}

MeasurementResult measure_mode(const CorrelationMatrix& m, int k,
                               std::mt19937_64& gen) {
  const double p0 = empty_probability(m, k);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return measure_mode(m, k, unif(gen) < p0 ? 0 : 1);
}

CorrelationMatrix inject_state(const CorrelationMatrix& m,
                               const CorrelationMatrix& ancilla) {
  const int total = m.modes().value() + ancilla.modes().value();
  if (total > kMaxCorrelationModes) {
    throw ValidationError("injection exceeds the mode cap (" +
                          std::to_string(total) + " > " +
                          std::to_string(kMaxCorrelationModes) + ")");
  }
  return CorrelationMatrix(
      AntisymmetricMatrix(direct_sum(m.matrix(), ancilla.matrix())));
}

// ---------------------------------------------------------------------------
// Circuits

int FloCircuit::validate() const {
  int current = modes;
  (void)ModeCount(current, kMaxCorrelationModes);  // range check
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const CircuitStep& st = steps[s];
    const std::string where = "circuit step " + std::to_string(s) + ": ";
    switch (st.op) {
      case CircuitStep::Op::kRotate:
        if (st.rotation.rows() != 2 * current ||
            st.rotation.cols() != 2 * current) {
          throw ValidationError(where + "rotation must be " +
                                std::to_string(2 * current) + "x" +
                                std::to_string(2 * current));
        }
        if (!is_special_orthogonal(st.rotation, 1e-9)) {
          throw ValidationError(where + "rotation is not in SO(2m)");
        }
        break;
      case CircuitStep::Op::kBraid:
        if (st.i == st.j || st.i < 1 || st.j < 1 || st.i > 2 * current ||
            st.j > 2 * current) {
          throw ValidationError(where + "invalid braid indices");
        }
        break;
      case CircuitStep::Op::kMeasure:
        if (st.mode < 1 || st.mode > current) {
          throw ValidationError(where + "measured mode out of range");
        }
        break;
      case CircuitStep::Op::kInject:
        if (!st.ensemble) throw ValidationError(where + "missing ensemble");
        st.ensemble->validate(1e-9);
        if (st.offset != current) {
          throw ValidationError(where + "ancilla offset must equal the "
                                "current mode count " +
                                std::to_string(current));
        }
        current += st.ensemble->modes().value();
        if (current > kMaxCorrelationModes) {
          throw ValidationError(where + "mode count overflow");
        }
        break;
    }
  }
  return current;
}

int FloCircuit::measurement_count() const {
  int n = 0;
  for (const CircuitStep& st : steps) {
    if (st.op == CircuitStep::Op::kMeasure) ++n;
  }
  return n;
}

std::uint64_t hash_matrix(const RealMatrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      double v = m(r, c);
      if (v == 0.0) v = 0.0;  // fold -0
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &v, sizeof(double));
      for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
      }
    }
  }
  return h;
}

std::string outcome_key(const std::vector<int>& outcomes) {
  std::string key;
  key.reserve(outcomes.size());
  for (int o : outcomes) key.push_back(o ? '1' : '0');
  return key;
}

namespace {

CorrelationMatrix apply_unitary_step(const CorrelationMatrix& m,
                                     const CircuitStep& st) {
  if (st.op == CircuitStep::Op::kRotate) return apply_rotation(m, st.rotation);
  return apply_rotation(
      m, braid_rotation(st.i, st.j, m.modes().majoranas()));
}

}  // namespace

SimulationRecord run_shot(const FloCircuit& circuit, std::uint64_t seed,
                          std::uint64_t shot) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shot),
                    static_cast<std::uint32_t>(shot >> 32)};
  std::mt19937_64 gen(seq);

  SimulationRecord rec;
  rec.seed = seed;
  rec.shot = shot;
  CorrelationMatrix m = CorrelationMatrix::vacuum(
      ModeCount(circuit.modes, kMaxCorrelationModes));
  for (const CircuitStep& st : circuit.steps) {
    switch (st.op) {
      case CircuitStep::Op::kRotate:
      case CircuitStep::Op::kBraid:
        m = apply_unitary_step(m, st);
        break;
      case CircuitStep::Op::kMeasure: {
        MeasurementResult r = measure_mode(m, st.mode, gen);
        rec.outcomes.push_back(r.outcome);
        m = std::move(r.posterior);
        break;
      }
      case CircuitStep::Op::kInject: {
        const std::size_t idx = st.ensemble->sample(gen);
        rec.injected.push_back(idx);
        m = inject_state(m, st.ensemble->entries[idx].state.correlation());
        break;
      }
    }
    rec.step_hashes.push_back(hash_matrix(m.matrix()));
  }
  rec.final_correlation = m.matrix();
  return rec;
}

RunResult run(const FloCircuit& circuit, std::uint64_t shots,
              std::uint64_t seed, bool keep_records) {
  circuit.validate();
  RunResult out;
  for (std::uint64_t s = 0; s < shots; ++s) {
    SimulationRecord rec = run_shot(circuit, seed, s);
    ++out.histogram[outcome_key(rec.outcomes)];
    if (keep_records) out.records.push_back(std::move(rec));
  }
  return out;
}

namespace {

void enumerate(const FloCircuit& circuit, std::size_t step,
               const CorrelationMatrix& m, double prob,
               std::vector<int>& outcomes,
               std::map<std::string, double>& dist) {
  if (prob < 1e-300) return;
  if (step == circuit.steps.size()) {
    dist[outcome_key(outcomes)] += prob;
    return;
  }
  const CircuitStep& st = circuit.steps[step];
  switch (st.op) {
    case CircuitStep::Op::kRotate:
    case CircuitStep::Op::kBraid:
      enumerate(circuit, step + 1, apply_unitary_step(m, st), prob, outcomes,
                dist);
      return;
    case CircuitStep::Op::kMeasure: {
      const double p0 = empty_probability(m, st.mode);
      for (int o = 0; o < 2; ++o) {
        const double p = o == 0 ? p0 : 1.0 - p0;
        outcomes.push_back(o);
        // Branches below the conditioning threshold are dropped; their total
        // mass is bounded by 1e-12 per measurement.
        if (p >= kZeroBranch) {
          const MeasurementResult r = measure_mode(m, st.mode, o);
          enumerate(circuit, step + 1, r.posterior, prob * p, outcomes, dist);
        }
        outcomes.pop_back();
      }
      return;
    }
    case CircuitStep::Op::kInject:
      for (const auto& e : st.ensemble->entries) {
        if (e.weight == 0.0) continue;
        enumerate(circuit, step + 1, inject_state(m, e.state.correlation()),
                  prob * e.weight, outcomes, dist);
      }
      return;
  }
}

}  // namespace

std::map<std::string, double> exact_distribution(const FloCircuit& circuit) {
  circuit.validate();
  std::map<std::string, double> dist;
  std::vector<int> outcomes;
  const ModeCount m(circuit.modes, kMaxCorrelationModes);
  enumerate(circuit, 0, CorrelationMatrix::vacuum(m), 1.0, outcomes, dist);
  return dist;
}

}  // namespace fermigauss
