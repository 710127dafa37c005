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

#include "fermigauss/convex.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "fermigauss/linalg.hpp"

namespace fermigauss {

namespace {

const ModeCount kA8Modes(4);

/// B_a B_b = sign * B_{a ^ b} for commuting Hermitian correlators.
std::pair<std::uint32_t, double> correlator_product(std::uint32_t a,
                                                    std::uint32_t b,
                                                    ModeCount m) {
  const PauliString p = correlator_string(a, m) * correlator_string(b, m);
  const PauliString q = correlator_string(a ^ b, m);
  const int rel = ((p.phase - q.phase) % 4 + 4) % 4;
  if (rel == 0) return {a ^ b, 1.0};
  if (rel == 2) return {a ^ b, -1.0};
  throw NumericalError("correlator product is not Hermitian");
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("depolarization p must lie in [0, 1], got " +
                          std::to_string(p));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// The a8 ancilla and its witness

std::array<std::uint32_t, 4> a8_stabilizer_masks() {
  return {0x33u, 0x66u, 0x0Fu, 0xFFu};
}

EvenOperator a8_expansion() {
  const auto stab = a8_stabilizer_masks();
  EvenOperator op{kA8Modes, {}};
  for (unsigned subset = 0; subset < 16; ++subset) {
    std::uint32_t mask = 0;
    double sign = 1.0;
    for (int k = 0; k < 4; ++k) {
      if (!(subset & (1u << k))) continue;
      const auto [next, s] = correlator_product(mask, stab[k], kA8Modes);
      mask = next;
      sign *= s;
    }
    op.coeffs[mask] += sign / 16.0;
  }
  return op;
}

DensityOperator ancilla_a8() {
  return DensityOperator::from_matrix(assemble_even(a8_expansion()));
}

DensityOperator depolarized_a8(double p) {
  check_probability(p);
  const ComplexMatrix id = ComplexMatrix::Identity(16, 16);
  return DensityOperator::from_matrix((1.0 - p) * ancilla_a8().matrix +
                                      (p / 16.0) * id);
}

double witness_value(double p) {
  check_probability(p);
  return 1.0 - 15.0 * p / 16.0;
}

double a8_overlap(const DensityOperator& rho) {
  if (rho.m.value() != 4) {
    throw ValidationError("a8 overlap needs a 4-mode state");
  }
  static const ComplexMatrix w = ancilla_a8().matrix;
  return (w * rho.matrix).trace().real();
}

double a8_overlap(const CorrelationMatrix& m) {
  if (m.modes().value() != 4) {
    throw ValidationError("a8 overlap needs a 4-mode state");
  }
  static const EvenOperator expansion = a8_expansion();
  double total = 0.0;
  for (const auto& [mask, value] : expansion.coeffs) {
    total += value * wick_expectation(m, CorrelatorIndex(mask));
  }
  return total;
}

const char* to_string(WitnessVerdict v) {
  return v == WitnessVerdict::kNotConvexGaussian ? "not-convex-gaussian"
                                                 : "inconclusive";
}

WitnessVerdict witness_verdict(const DensityOperator& rho, double slack) {
  return a8_overlap(rho) > 0.5 + slack ? WitnessVerdict::kNotConvexGaussian
                                       : WitnessVerdict::kInconclusive;
}

// ---------------------------------------------------------------------------
// Overlap search

namespace {

struct Candidate {
  double value;
  GaussianPureState state;
};

double overlap_of(const RealMatrix& r, const std::vector<int>& signs) {
  std::vector<double> lam(signs.begin(), signs.end());
  const RealMatrix m = r * canonical_block_matrix(lam) * r.transpose();
  return a8_overlap(CorrelationMatrix(AntisymmetricMatrix(m, 1e-9)));
}

}  // namespace

OverlapSearch max_overlap_search(std::uint64_t samples, std::uint64_t seed,
                                 int refine, int sweeps) {
  OverlapSearch out;
  std::mt19937_64 master(seed);
  std::vector<Candidate> top;
  auto record = [&](double v) {
    ++out.evaluations;
    if (v > 0.5 + 1e-9) ++out.violations;
  };

  for (std::uint64_t s = 0; s < samples; ++s) {
    GaussianPureState g = random_pure_gaussian(kA8Modes, master());
    const double v = overlap_of(g.rotation, g.signs);
    record(v);
    top.push_back({v, std::move(g)});
    std::sort(top.begin(), top.end(),
              [](const Candidate& a, const Candidate& b) {
                return a.value > b.value;
              });
    if (top.size() > static_cast<std::size_t>(std::max(refine, 1))) {
      top.pop_back();
    }
  }

  const int n = kA8Modes.majoranas();
  const int grid = 24;
  for (int c = 0; c < refine && c < static_cast<int>(top.size()); ++c) {
    RealMatrix r = top[c].state.rotation;
    const std::vector<int>& signs = top[c].state.signs;
    double best = top[c].value;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
      const double before = best;
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          auto f = [&](double theta) {
            const double v =
                overlap_of(givens_rotation(n, i, j, theta) * r, signs);
            record(v);
            return v;
          };
          double best_theta = 0.0;
          double best_val = best;
          for (int g = 1; g < grid; ++g) {
            const double theta = 2.0 * M_PI * g / grid;
            const double v = f(theta);
            if (v > best_val) {
              best_val = v;
              best_theta = theta;
            }
          }
          // Golden-section refinement around the best grid point.
          const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
          double lo = best_theta - 2.0 * M_PI / grid;
          double hi = best_theta + 2.0 * M_PI / grid;
          double x1 = hi - phi * (hi - lo);
          double x2 = lo + phi * (hi - lo);
          double f1 = f(x1);
          double f2 = f(x2);
          for (int it = 0; it < 30; ++it) {
            if (f1 > f2) {
              hi = x2;
              x2 = x1;
              f2 = f1;
              x1 = hi - phi * (hi - lo);
              f1 = f(x1);
            } else {
              lo = x1;
              x1 = x2;
              f1 = f2;
              x2 = lo + phi * (hi - lo);
              f2 = f(x2);
            }
          }
          const double x = f1 > f2 ? x1 : x2;
          const double fx = std::max(f1, f2);
          if (fx > best_val) {
            best_val = fx;
            best_theta = x;
          }
          if (best_val > best) {
            r = givens_rotation(n, i, j, best_theta) * r;
            best = best_val;
          }
        }
      }
      if (best - before < 1e-13) break;
    }
    top[c].value = best;
    top[c].state.rotation = r;
  }

  for (const Candidate& cand : top) {
    if (cand.value > out.best || out.best_state.signs.empty()) {
      out.best = cand.value;
      out.best_state = cand.state;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Extreme points phi_t(x)

ExtremePointId ExtremePointId::canonical() const {
  validate();
  return {type, (x & 0x8) ? (~x & 0xF) : x};
}

void ExtremePointId::validate() const {
  if (type < 1 || type > 3) {
    throw ValidationError("extreme point type must be 1, 2 or 3");
  }
  if (x < 0 || x > 15) throw ValidationError("extreme point x must be 4 bits");
}

RealMatrix phi_rotation(int type) {
  if (type == 1) return RealMatrix::Identity(8, 8);
  RealMatrix p = RealMatrix::Zero(4, 4);
  if (type == 2) {
    p << 1, 0, 0, 0,
         0, 0, 1, 0,
         0, 1, 0, 0,
         0, 0, 0, 1;
  } else if (type == 3) {
    p << 1, 0, 0, 0,
         0, 0, 0, 1,
         0, 1, 0, 0,
         0, 0, 1, 0;
    // Conjugating by P13 itself pairs (1,3),(2,4) like type 2; the transpose
    // yields the (1,4),(2,3) pairing of the type-3 correlation matrix.
    p.transposeInPlace();
  } else {
    throw ValidationError("extreme point type must be 1, 2 or 3");
  }
  return direct_sum(p, p);
}

namespace {

std::vector<int> signs_of(int x) {
  std::vector<int> s(4);
  for (int k = 1; k <= 4; ++k) s[k - 1] = (x >> (4 - k)) & 1 ? -1 : 1;
  return s;
}

std::vector<int> negated(std::vector<int> s) {
  for (int& v : s) v = -v;
  return s;
}

}  // namespace

GaussianEnsemble phi_ensemble(ExtremePointId id) {
  id.validate();
  const RealMatrix r = phi_rotation(id.type);
  const std::vector<int> s = signs_of(id.x);
  GaussianEnsemble e;
  e.entries.push_back({0.5, {r, s}});
  e.entries.push_back({0.5, {r, negated(s)}});
  return e;
}

DensityOperator phi_state(ExtremePointId id) {
  const GaussianEnsemble e = phi_ensemble(id);
  ComplexMatrix rho = ComplexMatrix::Zero(16, 16);
  for (const auto& entry : e.entries) {
    rho += entry.weight *
           gaussian_from_correlation(entry.state.correlation()).matrix;
  }
  return DensityOperator::from_matrix(std::move(rho));
}

DensityOperator phi_state_via_unitary(ExtremePointId id) {
  id.validate();
  const std::vector<int> s = signs_of(id.x);
  const ComplexVector a = canonical_basis_state(s);
  const ComplexVector b = canonical_basis_state(negated(s));
  const ComplexMatrix phi1 = 0.5 * (a * a.adjoint() + b * b.adjoint());
  const ComplexMatrix u = flo_unitary(phi_rotation(id.type));
  return DensityOperator::from_matrix(u * phi1 * u.adjoint());
}

std::vector<ExtremePointId> canonical_extreme_points() {
  std::vector<ExtremePointId> out;
  for (int t = 1; t <= 3; ++t) {
    for (int x = 0; x < 8; ++x) out.push_back({t, x});
  }
  return out;
}

// ---------------------------------------------------------------------------
// decompose_a8

namespace {

/// Lawson-Hanson active-set NNLS: argmin ||A x - b|| subject to x >= 0.
RealVector nnls(const RealMatrix& a, const RealVector& b, double tol) {
  const Eigen::Index n = a.cols();
  RealVector x = RealVector::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  RealVector w = a.transpose() * (b - a * x);

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[j]) idx.push_back(j);
    }
    RealMatrix ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      ap.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
    }
    const RealVector zp = ap.colPivHouseholderQr().solve(b);
    RealVector z = RealVector::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      z(idx[k]) = zp(static_cast<Eigen::Index>(k));
    }
    return z;
  };

  for (int outer = 0; outer < 10 * n; ++outer) {
    Eigen::Index t = -1;
    double wmax = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && w(j) > wmax) {
        wmax = w(j);
        t = j;
      }
    }
    if (t < 0) break;
    passive[t] = true;
    for (int inner = 0; inner < 10 * n; ++inner) {
      const RealVector z = solve_passive();
      bool positive = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0.0) positive = false;
      }
      if (positive) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0.0) {
          alpha = std::min(alpha, x(j) / (x(j) - z(j)));
        }
      }
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && x(j) <= 1e-15) {
          passive[j] = false;
          x(j) = 0.0;
        }
      }
    }
    w = a.transpose() * (b - a * x);
  }
  return x;
}

}  // namespace

A8Decomposition decompose_a8(double p, double tol) {
  check_probability(p);
  const std::vector<std::uint32_t> masks = even_masks(kA8Modes);
  std::map<std::uint32_t, Eigen::Index> row_of;
  for (std::size_t r = 0; r < masks.size(); ++r) {
    row_of[masks[r]] = static_cast<Eigen::Index>(r);
  }
  const auto rows = static_cast<Eigen::Index>(masks.size());
  const std::vector<ExtremePointId> points = canonical_extreme_points();

  // Coefficients are scaled by 16 so that every entry is 0 or +-1.
  RealVector b = RealVector::Zero(rows);
  for (const auto& [mask, value] : a8_expansion().coeffs) {
    b(row_of.at(mask)) += (1.0 - p) * 16.0 * value;
  }
  b(row_of.at(0)) += p;

  RealMatrix a = RealMatrix::Zero(rows, static_cast<Eigen::Index>(points.size()));
  for (std::size_t c = 0; c < points.size(); ++c) {
    for (const auto& entry : phi_ensemble(points[c]).entries) {
      const CorrelationMatrix m = entry.state.correlation();
      for (std::size_t r = 0; r < masks.size(); ++r) {
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
            entry.weight * wick_expectation(m, CorrelatorIndex(masks[r]));
      }
    }
  }

  A8Decomposition out;
  out.p = p;
  const RealVector gamma = nnls(a, b, 1e-14);
  const RealVector y = b - a * gamma;
  out.residual = y.norm();
  out.gamma.assign(gamma.data(), gamma.data() + gamma.size());
  out.feasible = out.residual <= tol;
  if (!out.feasible) {
    out.certificate = y;
    out.margin = b.dot(y);
    return out;
  }
  for (std::size_t c = 0; c < points.size(); ++c) {
    if (out.gamma[c] <= 0.0) continue;
    for (const auto& entry : phi_ensemble(points[c]).entries) {
      out.ensemble.entries.push_back({out.gamma[c] * entry.weight,
                                      entry.state});
    }
  }
  out.trace_distance =
      trace_distance(out.ensemble.density().matrix, depolarized_a8(p).matrix);
  return out;
}

// ---------------------------------------------------------------------------
// Ball decomposition

DensityOperator mix_with_identity(const DensityOperator& rho, double eps) {
  const auto d = static_cast<double>(rho.m.dim());
  ComplexMatrix out = eps * rho.matrix;
  out.diagonal().array() += (1.0 - eps) / d;
  return DensityOperator::from_matrix(std::move(out));
}

namespace {

/// Rotation sending canonical pair k onto (pairs[k].first, pairs[k].second)
/// and the lambdas adjusted so that the determinant is +1.
RealMatrix pairing_rotation(
    const std::vector<std::pair<int, int>>& pairs, std::vector<double>& lam) {
  const auto n = static_cast<Eigen::Index>(2 * pairs.size());
  RealMatrix r = RealMatrix::Zero(n, n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    r(pairs[k].first - 1, static_cast<Eigen::Index>(2 * k)) = 1.0;
    r(pairs[k].second - 1, static_cast<Eigen::Index>(2 * k + 1)) = 1.0;
  }
  if (r.determinant() < 0) {
    r.col(n - 1) *= -1.0;
    lam.back() = -lam.back();
  }
  return r;
}

void expand_pure(const BallTerm& t, double weight,
                 GaussianEnsemble& ensemble) {
  std::vector<std::size_t> zeros;
  for (std::size_t k = 0; k < t.lambdas.size(); ++k) {
    if (t.lambdas[k] == 0.0) zeros.push_back(k);
  }
  const std::size_t count = std::size_t{1} << zeros.size();
  for (std::size_t bits = 0; bits < count; ++bits) {
    GaussianPureState s;
    s.rotation = t.rotation;
    for (double l : t.lambdas) s.signs.push_back(l < 0 ? -1 : 1);
    for (std::size_t z = 0; z < zeros.size(); ++z) {
      s.signs[zeros[z]] = (bits >> z) & 1 ? -1 : 1;
    }
    ensemble.entries.push_back({weight / static_cast<double>(count), s});
  }
}

}  // namespace

BallDecomposition ball_decomposition(const DensityOperator& rho) {
  const ModeCount m = rho.m;
  if (m.value() > 4) {
    throw ValidationError("ball_decomposition supports m <= 4");
  }
  const EvenOperator expansion = expand_even(rho.matrix, m, 1e-9);
  const double scale = static_cast<double>(m.dim());
  std::map<std::uint32_t, double> alpha = expansion.coeffs;

  std::vector<std::uint32_t> order = even_masks(m);
  std::stable_sort(order.begin(), order.end(),
                   [](std::uint32_t a, std::uint32_t b) {
                     const int ca = std::popcount(a);
                     const int cb = std::popcount(b);
                     return ca != cb ? ca > cb : a < b;
                   });

  BallDecomposition out;
  double total = 0.0;
  for (std::uint32_t mask : order) {
    if (mask == 0) continue;
    const double a = alpha[mask];
    if (std::abs(a) <= 1e-15) continue;

    const std::vector<int> in = CorrelatorIndex(mask).indices();
    std::vector<int> rest;
    for (int i = 1; i <= m.majoranas(); ++i) {
      if (!(mask & (1u << (i - 1)))) rest.push_back(i);
    }
    std::vector<std::pair<int, int>> pairs;
    std::vector<double> lam;
    for (std::size_t k = 0; k < in.size(); k += 2) {
      pairs.emplace_back(in[k], in[k + 1]);
      lam.push_back(k == 0 ? (a > 0 ? 1.0 : -1.0) : 1.0);
    }
    const std::size_t active = pairs.size();
    for (std::size_t k = 0; k < rest.size(); k += 2) {
      pairs.emplace_back(rest[k], rest[k + 1]);
      lam.push_back(0.0);
    }

    // xi = (1/2^m) prod over active pairs of (I + lambda_k B_pair); the
    // product of any subset of pair correlators is B of their union.
    const double w = scale * std::abs(a);
    for (std::uint32_t sub = 0; sub < (1u << active); ++sub) {
      std::uint32_t u = 0;
      double coeff = 1.0;
      for (std::size_t k = 0; k < active; ++k) {
        if (!(sub & (1u << k))) continue;
        u |= (1u << (pairs[k].first - 1)) | (1u << (pairs[k].second - 1));
        coeff *= lam[k];
      }
      alpha[u] -= w * coeff / scale;
    }
    total += w;

    BallTerm t;
    t.weight = w;
    t.mask = mask;
    t.rotation = pairing_rotation(pairs, lam);
    t.lambdas = lam;
    out.terms.push_back(std::move(t));
  }

  const double rest_weight = 1.0 - total;
  out.c = std::max(0.0, -rest_weight);
  out.epsilon = 1.0 / (1.0 + out.c);

  ComplexMatrix recon = ComplexMatrix::Zero(m.dim(), m.dim());
  for (const BallTerm& t : out.terms) {
    const RealMatrix mm =
        t.rotation * canonical_block_matrix(t.lambdas) * t.rotation.transpose();
    recon += t.weight * gaussian_from_correlation(CorrelationMatrix(mm)).matrix;
  }
  recon.diagonal().array() += rest_weight / scale;
  out.reconstruction_error = (recon - rho.matrix).norm();

  for (const BallTerm& t : out.terms) {
    expand_pure(t, t.weight * out.epsilon, out.certified);
  }
  if (rest_weight > 0.0) {
    BallTerm id;
    id.rotation = RealMatrix::Identity(m.majoranas(), m.majoranas());
    id.lambdas.assign(static_cast<std::size_t>(m.value()), 0.0);
    expand_pure(id, rest_weight, out.certified);
  }
  return out;
}

double ensemble_trace_distance(const GaussianEnsemble& e,
                               const DensityOperator& rho) {
  e.validate(1e-9);
  for (const auto& entry : e.entries) {
    if (entry.state.correlation().purity_defect() > 1e-8) {
      throw NumericalError("ensemble entry is not a pure Gaussian state");
    }
  }
  return trace_distance(e.density().matrix, rho.matrix);
}

}  // namespace fermigauss
