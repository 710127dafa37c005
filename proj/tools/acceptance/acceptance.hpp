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

#include <functional>
#include <string>
#include <vector>

namespace fermigauss::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct Options {
  /// Also solve the four-mode extension program for the a8 family. Takes
  /// long enough that it is off by default.
  bool long_run = false;
  std::vector<double> long_run_p{0.25, 0.3};
  /// Criteria to run (1..12); empty runs all of them.
  std::vector<int> only;
  /// Directory for the exported four-mode SDPA file; empty means the
  /// system temp directory. The file is removed afterwards.
  std::string scratch_dir;
  std::function<void(const CriterionResult&)> on_result;
};

std::string format(const CriterionResult& r);

std::vector<CriterionResult> run(const Options& options);

}  // namespace fermigauss::acceptance
