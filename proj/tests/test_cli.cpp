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

// Drives the built command line through popen.

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(FERMIGAUSS_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "fermigauss_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("pfaffian command", "[cli]") {
  const fs::path dir = scratch();
  std::ofstream(dir / "a2.txt") << "0 3\n-3 0\n";
  const Run ok = cli("pfaffian " + (dir / "a2.txt").string());
  CHECK(ok.code == 0);
  CHECK(ok.out.find("pfaffian 3\n") != std::string::npos);

  const Run sample =
      cli(std::string("pfaffian ") + FERMIGAUSS_DATA_DIR + "/pfaffian_4x4.txt");
  CHECK(sample.code == 0);
  CHECK(sample.out.find("pfaffian 4.99999999999999") != std::string::npos);

  std::ofstream(dir / "a3.txt") << "0 1 2\n-1 0 3\n-2 -3 0\n";
  const Run odd = cli("pfaffian " + (dir / "a3.txt").string());
  CHECK(odd.code == 2);
  CHECK_FALSE(odd.out.empty());
}

TEST_CASE("witness scan command", "[cli]") {
  const fs::path out = scratch() / "scan.csv";
  const Run r = cli("witness-scan --grid 0.5:0.9:0.2 --out " + out.string());
  REQUIRE(r.code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("p,witness_value,verdict,decompose_feasible\n") == 0);
  CHECK(csv.find("\n0.5,0.53125,not-convex-gaussian,false\n") != std::string::npos);
  CHECK(csv.find("\n0.69999999999999996,") != std::string::npos);
  CHECK(csv.find(",inconclusive,false\n") != std::string::npos);
  CHECK(csv.find(",inconclusive,true\n") != std::string::npos);
  CHECK(cli("witness-scan --grid 0.9:0.5:0.1 --out " + out.string()).code == 2);
}

TEST_CASE("decompose command", "[cli]") {
  const fs::path out = scratch() / "ens.json";
  fs::remove(out);
  const Run bad = cli("decompose --p 0.85 --out " + out.string());
  CHECK(bad.code == 0);
  CHECK(bad.out.find("infeasible") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
  const Run good = cli("decompose --p 0.9 --out " + out.string());
  CHECK(good.code == 0);
  CHECK(fs::exists(out));
}

TEST_CASE("simulate command", "[cli]") {
  const fs::path dir = scratch();
  std::ofstream(dir / "c.json")
      << R"({"modes": 2, "steps": [{"op": "braid", "i": 2, "j": 3},
             {"op": "measure", "mode": 1}]})";
  const std::string base = "simulate --circuit " + (dir / "c.json").string() +
                           " --shots 500 --seed 4";
  const Run a = cli(base);
  const Run b = cli(base + " --jobs 3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("bitstring,count,probability\n") == 0);
  CHECK(cli("simulate --circuit " + (dir / "c.json").string() + " --shots 5")
            .code == 2);
}

TEST_CASE("sample a8 injection circuit", "[cli]") {
  const Run r = cli(std::string("simulate --circuit ") + FERMIGAUSS_DATA_DIR +
                    "/a8_injection_circuit.json --shots 2000 --seed 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("\n0000,") != std::string::npos);
  CHECK(r.out.find("\n1111,") != std::string::npos);
}

TEST_CASE("sdp command", "[cli]") {
  const Run mixed = cli("sdp --state maximally-mixed:m=1 --solve");
  CHECK(mixed.code == 0);
  CHECK(mixed.out.find("status feasible") != std::string::npos);

  const Run refuse = cli("sdp --state a8:p=0.3 --solve");
  CHECK(refuse.code == 2);
  CHECK(refuse.out.find("--long-run") != std::string::npos);

  CHECK(cli("sdp --state a8:p=oops").code == 2);
  CHECK(cli("sdp --state maximally-mixed:m=2 --solve --export x.dat-s").code == 2);

  const fs::path out = scratch() / "m2.dat-s";
  const Run ex = cli("sdp --state maximally-mixed:m=2 --export " + out.string());
  CHECK(ex.code == 0);
  CHECK(fs::exists(out));
  CHECK(fs::exists(out.string() + ".json"));
  fs::remove(out);
  fs::remove(out.string() + ".json");
}

TEST_CASE("selftest command", "[cli]") {
  const Run r = cli("selftest --only 1,6");
  CHECK(r.code == 0);
  CHECK(r.out.find("2/2 criteria passed") != std::string::npos);
}
