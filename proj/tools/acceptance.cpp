// Copyright 2026 The vzeno Authors
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

// Acceptance runner: one PASS/FAIL line per criterion.

#include <cstdio>
#include <vector>

#include "CLI11.hpp"
#include "zeno/checks.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> ids;
  zeno::checks::AcceptanceOptions opts;
  app.add_option("--criterion", ids, "criterion ids (default: all)")
      ->check(CLI::Range(1, zeno::checks::kCriterionCount));
  app.add_option("--threads", opts.n_threads, "worker threads (0: all cores)");
  app.add_option("--seed", opts.seed, "seed for random draws");
  CLI11_PARSE(app, argc, argv);

  if (ids.empty()) {
    for (int k = 1; k <= zeno::checks::kCriterionCount; ++k) ids.push_back(k);
  }
  int failed = 0;
  for (const int id : ids) {
    const auto r = zeno::checks::run_criterion(id, opts);
    std::printf("%s\n", zeno::checks::summary_line(r).c_str());
    for (const auto& f : r.failures) std::printf("    - %s\n", f.c_str());
    for (const auto& n : r.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
