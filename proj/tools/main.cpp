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

#include <CLI11.hpp>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <nlohmann/json.hpp>
#include <thread>

#include "acceptance/acceptance.hpp"
#include "fermigauss/convex.hpp"
#include "fermigauss/extension_sdp.hpp"
#include "fermigauss/serialize.hpp"

namespace fg = fermigauss;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

/// Largest mode count solved without --long-run.
constexpr int kSolveCap = 3;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// pfaffian -------------------------------------------------------------------

int cmd_pfaffian(const std::string& file) {
  const fg::AntisymmetricMatrix a = fg::read_antisymmetric_file(file);
  if (a.dim() % 2) {
    throw fg::ValidationError("matrix has odd dimension " +
                              std::to_string(a.dim()) +
                              "; its Pfaffian is not defined");
  }
  const double pf = fg::pfaffian(a);
  const double det = a.matrix().determinant();
  std::cout << "pfaffian " << num(pf) << "\n"
            << "det_residual "
            << num(std::abs(pf * pf - det) / std::max(1.0, std::abs(det)))
            << "\n";
  return 0;
}

// witness-scan ---------------------------------------------------------------

std::vector<double> parse_grid(const std::string& spec) {
  double a, b, step;
  char c1, c2;
  std::istringstream in(spec);
  if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
      !in.eof()) {
    throw fg::ValidationError("grid must be a:b:step, got \"" + spec + "\"");
  }
  if (!(a >= 0.0 && b <= 1.0 && a <= b && step > 0.0)) {
    throw fg::ValidationError("grid needs 0 <= a <= b <= 1 and step > 0");
  }
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
  for (long i = 0; i <= n; ++i) grid.push_back(a + i * step);
  return grid;
}

int cmd_witness_scan(const std::string& grid_spec, const std::string& out_path,
                     int jobs) {
  const std::vector<double> grid = parse_grid(grid_spec);
  std::ofstream out(out_path);
  if (!out) throw fg::ValidationError("cannot open " + out_path);
  struct Row {
    double witness;
    fg::WitnessVerdict verdict;
    bool feasible;
  };
  std::vector<Row> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < grid.size();) {
      const double p = grid[i];
      rows[i] = {fg::witness_value(p),
                 fg::witness_verdict(fg::depolarized_a8(p)),
                 fg::decompose_a8(p).feasible};
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  out << "p,witness_value,verdict,decompose_feasible\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << num(grid[i]) << "," << num(rows[i].witness) << ","
        << fg::to_string(rows[i].verdict) << ","
        << (rows[i].feasible ? "true" : "false") << "\n";
  }
  std::cout << "wrote " << grid.size() << " rows to " << out_path << "\n";
  return 0;
}

// decompose ------------------------------------------------------------------

int cmd_decompose(double p, const std::string& out_path) {
  const fg::A8Decomposition d = fg::decompose_a8(p);
  if (!d.feasible) {
    std::cout << "p " << num(p)
              << ": infeasible within the extreme-point family\n"
              << "residual " << num(d.residual) << "\nfarkas_margin "
              << num(d.margin) << "\nno ensemble written\n";
    return 0;
  }
  fg::write_json_file(out_path, fg::to_json(d.ensemble));
  std::cout << "p " << num(p) << ": feasible, " << d.ensemble.entries.size()
            << " pure Gaussian states\ntrace_distance "
            << num(d.trace_distance) << "\nwrote " << out_path << "\n";
  return 0;
}

// simulate -------------------------------------------------------------------

int cmd_simulate(const std::string& circuit_path, std::uint64_t shots,
                 std::uint64_t seed, const std::string& out_path,
                 const std::string& records_path, int jobs) {
  const fg::FloCircuit circuit = fg::read_circuit_file(circuit_path);
  const bool keep = !records_path.empty();
  fg::RunResult result;
  if (jobs <= 1) {
    result = fg::run(circuit, shots, seed, keep);
  } else {
    // Shot s depends only on (seed, s), so splitting by shot index and
    // merging is identical to the serial run.
    std::vector<std::vector<fg::SimulationRecord>> recs(jobs);
    std::vector<std::map<std::string, std::uint64_t>> hists(jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t s = t; s < shots; s += jobs) {
          fg::SimulationRecord r = fg::run_shot(circuit, seed, s);
          ++hists[t][fg::outcome_key(r.outcomes)];
          if (keep) recs[t].push_back(std::move(r));
        }
      });
    }
    for (auto& th : pool) th.join();
    for (int t = 0; t < jobs; ++t) {
      for (const auto& [k, n] : hists[t]) result.histogram[k] += n;
    }
    if (keep) {
      for (std::uint64_t s = 0; s < shots; ++s) {
        result.records.push_back(std::move(recs[s % jobs][s / jobs]));
      }
    }
  }
  if (out_path.empty()) {
    fg::write_histogram_csv(std::cout, result.histogram);
  } else {
    std::ofstream out(out_path);
    if (!out) throw fg::ValidationError("cannot open " + out_path);
    fg::write_histogram_csv(out, result.histogram);
  }
  if (keep) {
    std::ofstream log(records_path);
    if (!log) throw fg::ValidationError("cannot open " + records_path);
    for (const auto& r : result.records) {
      nlohmann::json j = {{"seed", r.seed},
                          {"shot", r.shot},
                          {"outcomes", r.outcomes},
                          {"injected", r.injected},
                          {"step_hashes", r.step_hashes}};
      log << j.dump() << "\n";
    }
  }
  return 0;
}

// sdp ------------------------------------------------------------------------

fg::DensityOperator parse_state(const std::string& spec) {
  auto value_after = [&](const std::string& prefix) {
    const std::string rest = spec.substr(prefix.size());
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size()) {
      throw fg::ValidationError("bad number in state spec \"" + spec + "\"");
    }
    return v;
  };
  if (spec.rfind("a8:p=", 0) == 0) {
    return fg::depolarized_a8(value_after("a8:p="));
  }
  if (spec.rfind("maximally-mixed:m=", 0) == 0) {
    const double m = value_after("maximally-mixed:m=");
    if (m != std::floor(m)) throw fg::ValidationError("m must be an integer");
    const fg::ModeCount mc(static_cast<int>(m));
    return fg::DensityOperator::from_matrix(
        fg::ComplexMatrix::Identity(mc.dim(), mc.dim()) / mc.dim());
  }
  fg::DensityOperator rho = fg::density_from_json(fg::read_json_file(spec));
  rho.validate_state();
  return rho;
}

int cmd_sdp(const std::string& state, bool ppt, bool solve,
            const std::string& export_path, bool long_run, double tol,
            bool verbose) {
  const fg::DensityOperator rho = parse_state(state);
  if (solve && rho.m.value() > kSolveCap && !long_run) {
    throw fg::ValidationError(
        "solving at m = " + std::to_string(rho.m.value()) +
        " takes minutes and about 1 GB; pass --long-run to solve anyway, or "
        "--export a file for an external SDPA solver");
  }
  const fg::SdpInstance inst = fg::build_extension_sdp(rho, ppt);
  std::cout << "m " << inst.m.value() << "\nppt " << (ppt ? "true" : "false")
            << "\nvariables " << inst.variable_count() << "\nequality_rows "
            << inst.eq_a.rows() << " (from " << inst.unreduced_rows << ")\n";
  if (!export_path.empty()) {
    fg::export_sdpa(inst, export_path);
    std::cout << "wrote " << export_path << " and " << export_path
              << ".json\n";
  }
  if (!solve) return 0;
  fg::SolverOptions opts;
  opts.tol = tol;
  opts.verbose = verbose;
  const fg::ExtensionCertificate c = fg::solve_feasibility(inst, rho, opts);
  const fg::ExtensionResiduals& r = c.residuals;
  std::cout << "status " << fg::to_string(c.status) << "\nmessage "
            << c.message << "\niterations " << c.iterations
            << "\nfree_parameters " << c.free_parameters << "\nmin_eig_bound "
            << num(c.t) << "\nfarkas_margin " << num(c.margin)
            << "\nresidual.min_eigenvalue " << num(r.min_eigenvalue)
            << "\nresidual.equality " << num(r.equality)
            << "\nresidual.partial_trace " << num(r.partial_trace)
            << "\nresidual.lambda " << num(r.lambda) << "\nresidual.trace "
            << num(r.trace) << "\nresidual.bose " << num(r.bose)
            << "\nresidual.ppt " << num(r.ppt) << "\n";
  return c.status == fg::ExtensionStatus::kUnknown ? kExitNumerical : 0;
}

// selftest -------------------------------------------------------------------

int cmd_selftest(bool long_run, const std::vector<int>& only) {
  fermigauss::acceptance::Options opts;
  opts.long_run = long_run;
  opts.only = only;
  opts.on_result = [](const fermigauss::acceptance::CriterionResult& r) {
    std::cout << fermigauss::acceptance::format(r) << std::endl;
  };
  const auto results = fermigauss::acceptance::run(opts);
  int failed = 0;
  for (const auto& r : results) failed += !r.pass;
  std::cout << results.size() - failed << "/" << results.size()
            << " criteria passed\n";
  return failed ? kExitNumerical : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fermionic Gaussian states, FLO simulation and "
               "convex-Gaussian certification"};
  app.require_subcommand(1);

  std::string pf_file;
  auto* pf = app.add_subcommand("pfaffian", "Pfaffian of a matrix file");
  pf->add_option("file", pf_file, "JSON nested array or whitespace rows")
      ->required();

  std::string grid, scan_out;
  int jobs = 1;
  auto* scan = app.add_subcommand("witness-scan",
                                  "Witness and decomposition over a p grid");
  scan->add_option("--grid", grid, "a:b:step within [0, 1]")->required();
  scan->add_option("--out", scan_out, "CSV output")->required();
  scan->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  double p = 0.0;
  std::string dec_out;
  auto* dec = app.add_subcommand("decompose",
                                 "Pure-Gaussian ensemble for the a8 state");
  dec->add_option("--p", p, "depolarizing strength")->required();
  dec->add_option("--out", dec_out, "ensemble JSON output")->required();

  std::string circuit, sim_out, records;
  std::uint64_t shots = 0, seed = 0;
  auto* sim = app.add_subcommand("simulate", "Sample an FLO circuit");
  sim->add_option("--circuit", circuit, "circuit JSON")->required();
  sim->add_option("--shots", shots, "number of shots")->required();
  sim->add_option("--seed", seed, "generator seed")->required();
  sim->add_option("--out", sim_out, "histogram CSV (default stdout)");
  sim->add_option("--records", records, "per-shot JSON lines log");
  sim->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  std::string state, export_path;
  bool ppt = false, solve = false, long_run = false, verbose = false;
  double tol = 1e-7;
  auto* sdp = app.add_subcommand("sdp", "Gaussian-symmetric extension program");
  sdp->add_option("--state", state,
                  "a8:p=<x>, maximally-mixed:m=<k>, or a density JSON file")
      ->required();
  sdp->add_flag("--ppt", ppt, "add the partial-transpose block");
  auto* solve_flag = sdp->add_flag("--solve", solve, "run the solver");
  auto* export_opt =
      sdp->add_option("--export", export_path, "write an SDPA .dat-s file");
  solve_flag->excludes(export_opt);
  sdp->add_flag("--long-run", long_run, "allow solving beyond m = 3");
  sdp->add_option("--tol", tol, "feasibility tolerance");
  sdp->add_flag("--verbose", verbose, "print solver iterations");

  std::vector<int> only;
  bool self_long = false;
  auto* self = app.add_subcommand("selftest", "Run the acceptance criteria");
  self->add_flag("--long-run", self_long, "include the four-mode solves");
  self->add_option("--only", only, "criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*pf) return cmd_pfaffian(pf_file);
    if (*scan) return cmd_witness_scan(grid, scan_out, jobs);
    if (*dec) return cmd_decompose(p, dec_out);
    if (*sim) return cmd_simulate(circuit, shots, seed, sim_out, records, jobs);
    if (*sdp) {
      if (!solve && export_path.empty()) {
        throw fg::ValidationError("sdp needs --solve or --export");
      }
      return cmd_sdp(state, ppt, solve, export_path, long_run, tol, verbose);
    }
    if (*self) return cmd_selftest(self_long, only);
  } catch (const fg::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const fg::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
