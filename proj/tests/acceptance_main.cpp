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

// One line per acceptance criterion; exit status 1 if any fails.
//   fermigauss_acceptance [--long-run] [--only 1,2,...]

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>

#include "acceptance/acceptance.hpp"

int main(int argc, char** argv) {
  namespace acc = fermigauss::acceptance;
  acc::Options opts;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--long-run") == 0) {
      opts.long_run = true;
    } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      std::stringstream ids(argv[++i]);
      for (std::string id; std::getline(ids, id, ',');) {
        opts.only.push_back(std::atoi(id.c_str()));
      }
    } else {
      std::cerr << "usage: " << argv[0] << " [--long-run] [--only ids]\n";
      return 2;
    }
  }
  opts.on_result = [](const acc::CriterionResult& r) {
    std::cout << acc::format(r) << std::endl;
  };
  const auto results = acc::run(opts);
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass;
  std::cout << passed << "/" << results.size() << " criteria passed\n";
  return passed == results.size() ? 0 : 1;
}
