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

#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "fermigauss/convex.hpp"
#include "fermigauss/extension_sdp.hpp"
#include "fermigauss/linalg.hpp"
#include "oracles.hpp"

namespace fermigauss::acceptance {

namespace {

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

struct Outcome {
  bool pass;
  std::string detail;
};

// 1 -------------------------------------------------------------------------
Outcome pfaffian_criterion() {
  std::mt19937_64 gen(20260101);
  double worst_det = 0.0;
  double worst_oracle = 0.0;
  int oracle_checks = 0;
  for (int t = 0; t < 200; ++t) {
    const int dim = 2 * (1 + t % 6);
    const RealMatrix a = oracle::random_antisymmetric(dim, gen);
    const double pf = pfaffian(AntisymmetricMatrix(a));
    const double det = a.determinant();
    worst_det = std::max(worst_det,
                         std::abs(pf * pf - det) / std::max(1.0, std::abs(det)));
    if (dim <= 8) {
      const double ref = oracle::permutation_pfaffian(a);
      worst_oracle = std::max(worst_oracle, std::abs(pf - ref) /
                                                std::max(1.0, std::abs(ref)));
      ++oracle_checks;
    }
  }
  return {worst_det < 1e-8 && worst_oracle < 1e-9,
          fmt("200 matrices, max rel |Pf^2-det| %.2e (<1e-8), %d oracle "
              "checks max rel err %.2e (<1e-9)",
              worst_det, oracle_checks, worst_oracle)};
}

// 2 -------------------------------------------------------------------------
Outcome wick_criterion() {
  const ModeCount m(3);
  double worst = 0.0;
  int checks = 0;
  for (int s = 0; s < 50; ++s) {
    const GaussianPureState st = random_pure_gaussian(m, 5000 + s);
    const ComplexVector v =
        flo_unitary(st.rotation) * canonical_basis_state(st.signs);
    const ComplexMatrix rho = v * v.adjoint();
    const CorrelationMatrix corr = st.correlation();
    for (std::uint32_t mask : even_masks(m)) {
      const double w = wick_expectation(corr, CorrelatorIndex(mask));
      worst = std::max(worst, std::abs(w - oracle::dense_correlator(rho, mask, m)));
      ++checks;
    }
  }
  return {worst < 1e-9,
          fmt("50 states, %d correlators up to order 6, max |wick-dense| "
              "%.2e (<1e-9)",
              checks, worst)};
}

// 3 -------------------------------------------------------------------------
Outcome pure_even_gaussian_criterion() {
  double worst_mm = 0.0;
  double worst_comm = 0.0;
  int count = 0;
  for (int mm : {2, 3}) {
    const ModeCount m(mm);
    for (int s = 0; s < 200; ++s) {
      const ComplexVector psi =
          random_parity_state(m, 7000 + 1000 * mm + s, s % 2 == 0);
      const DensityOperator rho = density_from_vector(psi);
      const RealMatrix c = correlation_matrix(rho).matrix();
      const RealMatrix id = RealMatrix::Identity(c.rows(), c.cols());
      worst_mm = std::max(worst_mm, (c.transpose() * c - id).norm());
      worst_comm = std::max(worst_comm, is_gaussian(rho).residual);
      ++count;
    }
  }
  return {worst_mm < 1e-7 && worst_comm < 1e-7,
          fmt("%d states (m=2,3, both parities), max ||M^T M - I||_F %.2e, "
              "max Lambda commutator %.2e (<1e-7)",
              count, worst_mm, worst_comm)};
}

// 4 -------------------------------------------------------------------------
Outcome sandwich_criterion() {
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const ModeCount m(1 + s % 3);
    const int rank = s % 4;  // 0 means full rank
    const DensityOperator rho = random_even_state(m, 9000 + s, rank);
    const SandwichNorm n = lambda_sandwich_norm(rho);
    worst = std::max(worst, std::abs(n.lhs - n.rhs));
  }
  return {worst < 1e-8,
          fmt("100 even states m<=3, max |lhs-rhs| %.2e (<1e-8)", worst)};
}

// 5 -------------------------------------------------------------------------
Outcome tensor_square_criterion() {
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const ModeCount m(1 + s % 4);
    const GaussianPureState st = random_pure_gaussian(m, 11000 + s);
    const ComplexVector v = st.state_vector();
    const ComplexVector vv = kron(ComplexMatrix(v), ComplexMatrix(v)).col(0);
    // Lambda (sigma (x) sigma) = (Lambda |vv>) <vv|, so the vector norm is
    // the operator residual.
    worst = std::max(worst, LambdaOperator(m).apply(vv).norm());
  }
  return {worst < 1e-9,
          fmt("100 pure Gaussians m<=4 (Pauli action, no dense Lambda), "
              "max ||Lambda(sigma x sigma)||_F %.2e (<1e-9)",
              worst)};
}

// 6 -------------------------------------------------------------------------
Outcome projector_criterion() {
  bool ok = true;
  std::ostringstream d;
  for (int mm = 1; mm <= 3; ++mm) {
    const ModeCount m(mm);
    const ComplexMatrix p = gaussian_symmetric_projector(m);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(p);
    const long rank = (es.eigenvalues().array() > 0.5).count();
    const double idem = (p * p - p).norm();
    const LambdaOperator lambda(m);
    const double annihil = lambda.apply_left(p).norm();
    const double tn = lambda.trace_norm();
    const double tn_dense = trace_norm_hermitian(lambda.matrix());
    const double formula = std::sqrt(
        4.0 * (mm + 1) * (mm + 1) *
        std::pow(static_cast<double>(binomial(2 * mm, mm + 1)), 2));
    const long want_rank = static_cast<long>(binomial(2 * mm, mm));
    const double want_tn[] = {4.0, 24.0, 120.0};
    const bool good = rank == want_rank && idem < 1e-10 && annihil < 1e-10 &&
                      tn == want_tn[mm - 1] && formula == want_tn[mm - 1] &&
                      std::abs(tn_dense - tn) < 1e-9;
    ok = ok && good;
    d << (mm > 1 ? "; " : "") << "m=" << mm << " rank " << rank << " idem "
      << fmt("%.1e", idem) << " Lambda.P " << fmt("%.1e", annihil)
      << " ||Lambda||_1 " << tn << " (dense " << fmt("%.10g", tn_dense) << ")";
  }
  return {ok, d.str()};
}

// 7 -------------------------------------------------------------------------
Outcome witness_criterion() {
  const double threshold = 8.0 / 15.0;
  const double at = witness_value(threshold);
  bool verdicts_ok = true;
  int tested = 0;
  std::vector<double> grid;
  for (int i = 0; i <= 1000; ++i) grid.push_back(i / 1000.0);
  for (double off : {2e-6, 1e-5, 1e-4}) {
    grid.push_back(threshold - off);
    grid.push_back(threshold + off);
  }
  for (double p : grid) {
    if (std::abs(p - threshold) <= 1e-6) continue;
    const WitnessVerdict v = witness_verdict(depolarized_a8(p));
    const bool flagged = v == WitnessVerdict::kNotConvexGaussian;
    if (flagged != (p < threshold)) verdicts_ok = false;
    ++tested;
  }
  const OverlapSearch search = max_overlap_search(10000, 424242);
  const bool bound_ok = search.best <= 0.5 + 1e-9 && search.violations == 0;
  return {std::abs(at - 0.5) <= 1e-15 && verdicts_ok && bound_ok,
          fmt("witness(8/15)-1/2 = %.1e; %d p values classified %s; "
              "%llu Gaussian overlaps, max %.12f (<=0.5+1e-9), %llu "
              "violations",
              at - 0.5, tested, verdicts_ok ? "correctly" : "INCORRECTLY",
              static_cast<unsigned long long>(search.evaluations), search.best,
              static_cast<unsigned long long>(search.violations))};
}

// 8 -------------------------------------------------------------------------
Outcome decomposition_criterion() {
  bool ok = true;
  std::ostringstream d;
  for (double p : {8.0 / 9.0, 0.92, 1.0}) {
    const A8Decomposition r = decompose_a8(p);
    const bool good = r.feasible && r.trace_distance < 1e-9 &&
                      r.ensemble.entries.size() <= 48;
    ok = ok && good;
    d << fmt("p=%.4f feasible, %zu states, td %.1e; ", p,
             r.ensemble.entries.size(), r.trace_distance);
  }
  for (double p : {0.85, 0.4, 0.0}) {
    const A8Decomposition r = decompose_a8(p);
    const bool good = !r.feasible && r.margin > 1e-10;
    ok = ok && good;
    d << fmt("p=%.2f infeasible (Farkas margin %.2e); ", p, r.margin);
  }
  std::string s = d.str();
  s.resize(s.size() - 2);
  return {ok, s};
}

// 9 -------------------------------------------------------------------------
Outcome simulator_criterion() {
  constexpr std::uint64_t kShots = 100000;
  double worst_tv = 0.0;
  double worst_sigma = 0.0;
  int cells = 0;
  bool sampled_ok = true;
  for (int c = 0; c < 20; ++c) {
    const FloCircuit circuit = oracle::random_circuit(31000 + c);
    const auto exact = exact_distribution(circuit);
    const auto dense = oracle::dense_circuit_distribution(circuit);
    worst_tv = std::max(worst_tv, oracle::total_variation(exact, dense));
    const RunResult run = fermigauss::run(circuit, kShots, 77 + c, false);
    std::map<std::string, double> keys = exact;
    for (const auto& [k, n] : run.histogram) keys[k] += 0.0;
    for (const auto& [k, unused] : keys) {
      (void)unused;
      const double p = exact.count(k) ? exact.at(k) : 0.0;
      const double n = run.histogram.count(k)
                           ? static_cast<double>(run.histogram.at(k))
                           : 0.0;
      const double mean = kShots * p;
      const double sigma = std::sqrt(kShots * p * (1.0 - p));
      if (sigma > 0) {
        worst_sigma = std::max(worst_sigma, std::abs(n - mean) / sigma);
        if (std::abs(n - mean) > 3.0 * sigma) sampled_ok = false;
      } else if (n != mean) {
        sampled_ok = false;
      }
      ++cells;
    }
  }
  return {worst_tv < 1e-8 && sampled_ok,
          fmt("20 circuits, max TV(exact, dense) %.2e (<1e-8); %d histogram "
              "cells at 1e5 shots, max deviation %.2f sigma (<=3)",
              worst_tv, cells, worst_sigma)};
}

// 10 ------------------------------------------------------------------------
Outcome sdp_small_criterion() {
  int feasible = 0;
  int total = 0;
  double worst = 0.0;
  auto check = [&](const DensityOperator& rho) {
    const SdpInstance inst = build_extension_sdp(rho, false);
    const ExtensionCertificate cert = solve_feasibility(inst, rho);
    ++total;
    if (cert.status == ExtensionStatus::kFeasible &&
        cert.residuals.worst() < 1e-7) {
      ++feasible;
    }
    worst = std::max(worst, cert.residuals.worst());
  };
  for (int s = 0; s < 20; ++s) {
    check(random_even_state(ModeCount(2), 13000 + s, s % 4));
  }
  const ModeCount m3(3);
  for (int s = 0; s < 10; ++s) {
    std::mt19937_64 gen(14000 + s);
    const int k = 1 + s % 4;
    GaussianEnsemble e;
    double total_w = 0.0;
    for (int i = 0; i < k; ++i) {
      const double w = std::uniform_real_distribution<double>(0.1, 1.0)(gen);
      e.entries.push_back({w, random_pure_gaussian(m3, gen())});
      total_w += w;
    }
    for (auto& entry : e.entries) entry.weight /= total_w;
    check(e.density());
  }
  return {feasible == total,
          fmt("%d/%d feasible (20 random m=2, 10 convex-Gaussian m=3), max "
              "residual %.2e (<1e-7)",
              feasible, total, worst)};
}

// 11 ------------------------------------------------------------------------
Outcome sdp_scale_criterion(const Options& options) {
  const DensityOperator rho = depolarized_a8(0.3);
  const SdpInstance inst = build_extension_sdp(rho, false);
  const std::size_t want = (std::size_t{1} << 5) * ((1u << 8) - 2);
  std::filesystem::path dir = options.scratch_dir.empty()
                                  ? std::filesystem::temp_directory_path()
                                  : std::filesystem::path(options.scratch_dir);
  const std::filesystem::path file =
      dir / fmt("fermigauss_acceptance_%ld.dat-s",
                static_cast<long>(std::chrono::steady_clock::now()
                                      .time_since_epoch()
                                      .count()));
  export_sdpa(inst, file.string());
  const auto bytes = std::filesystem::file_size(file);
  const SdpaRoundTrip rt = check_sdpa_roundtrip(inst, file.string());
  std::filesystem::remove(file);
  std::filesystem::remove(file.string() + ".json");
  std::string detail =
      fmt("m=4 a8(p=0.3): %zu variables (formula %zu), %ld reduced equality "
          "rows, export %.1f MB, round trip %s (%zu entries)",
          inst.variable_count(), want, static_cast<long>(inst.eq_a.rows()),
          bytes / 1e6, rt.ok ? "exact" : rt.message.c_str(), rt.entries);
  bool ok = inst.variable_count() == want && rt.ok && inst.consistent;
  if (options.long_run) {
    for (double p : options.long_run_p) {
      const DensityOperator r = depolarized_a8(p);
      const SdpInstance i = build_extension_sdp(r, false);
      const ExtensionCertificate cert = solve_feasibility(i, r);
      detail += fmt("; long-run p=%.3f: %s (residual %.1e, margin %.1e)", p,
                    to_string(cert.status), cert.residuals.worst(),
                    cert.margin);
      ok = ok && cert.status == ExtensionStatus::kFeasible;
    }
  } else {
    detail += "; m=4 solve skipped (long-run only)";
  }
  return {ok, detail};
}

// 12 ------------------------------------------------------------------------
Outcome ball_criterion() {
  double worst_rec = 0.0;
  double worst_td = 0.0;
  double min_c = 1.0;
  bool valid = true;
  for (int s = 0; s < 20; ++s) {
    const DensityOperator rho = random_even_state(ModeCount(2), 15000 + s, s % 4);
    const BallDecomposition b = ball_decomposition(rho);
    worst_rec = std::max(worst_rec, b.reconstruction_error);
    min_c = std::min(min_c, b.c);
    try {
      b.certified.validate(1e-9);
      const DensityOperator target = mix_with_identity(rho, b.epsilon);
      worst_td = std::max(worst_td, ensemble_trace_distance(b.certified, target));
      if (!(b.epsilon > 0.0 && b.epsilon <= 1.0)) valid = false;
    } catch (const std::exception&) {
      valid = false;
    }
  }
  return {worst_rec < 1e-9 && min_c >= 0.0 && valid && worst_td < 1e-9,
          fmt("20 even states m=2, max reconstruction %.2e (<1e-9), min c "
              "%.3f, certified ensembles %s, max trace distance %.2e",
              worst_rec, min_c, valid ? "valid" : "INVALID", worst_td)};
}

struct Criterion {
  int id;
  const char* name;
  double budget;
  std::function<Outcome(const Options&)> body;
};

std::vector<Criterion> criteria() {
  auto plain = [](Outcome (*f)()) {
    return [f](const Options&) { return f(); };
  };
  return {
      {1, "pfaffian", 10, plain(pfaffian_criterion)},
      {2, "wick", 30, plain(wick_criterion)},
      {3, "even-pure-is-gaussian", 120, plain(pure_even_gaussian_criterion)},
      {4, "lambda-sandwich-identity", 120, plain(sandwich_criterion)},
      {5, "lambda-tensor-square", 60, plain(tensor_square_criterion)},
      {6, "gaussian-symmetric-projector", 60, plain(projector_criterion)},
      {7, "witness-threshold", 300, plain(witness_criterion)},
      {8, "a8-decomposition", 60, plain(decomposition_criterion)},
      {9, "flo-simulator", 300, plain(simulator_criterion)},
      {10, "sdp-small", 1200, plain(sdp_small_criterion)},
      {11, "sdp-four-modes", 300, sdp_scale_criterion},
      {12, "ball-decomposition", 120, plain(ball_criterion)},
  };
}

}  // namespace

std::string format(const CriterionResult& r) {
  return fmt("[%s] %2d %-28s %7.2fs (budget %4.0fs)  %s", r.pass ? "PASS" : "FAIL", r.id,
             r.name.c_str(), r.seconds, r.budget_seconds, r.detail.c_str());
}

std::vector<CriterionResult> run(const Options& options) {
  std::vector<CriterionResult> results;
  for (const Criterion& c : criteria()) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), c.id) ==
            options.only.end()) {
      continue;
    }
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.budget_seconds = c.budget;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = c.body(options);
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& ex) {
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
    // Long-run solves are exempt from the default-tier budget.
    const bool timed = !(c.id == 11 && options.long_run);
    if (timed && r.seconds > r.budget_seconds) {
      r.pass = false;
      r.detail += " [over time budget]";
    }
    if (options.on_result) options.on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace fermigauss::acceptance
