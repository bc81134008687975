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

#pragma once

// Independent oracles and the acceptance criteria built on them.

#include <cstdint>
#include <string>
#include <vector>

#include "zeno/bloch.hpp"

namespace zeno::checks {

/// Fixed-step classical Runge-Kutta integration of the Bloch equations over
/// a schedule. Each segment is split into equal steps no longer than max_step.
DensityMatrix3 integrate_bloch_rk4(const DensityMatrix3& rho0, const SystemParams& p,
                                   const std::vector<Segment>& segments, double max_step);

struct AcceptanceOptions {
  int n_threads = 0;
  std::uint64_t seed = 7;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
};

inline constexpr int kCriterionCount = 7;

CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});

/// "PASS [k] title (1.23 s)" or "FAIL [k] ...".
std::string summary_line(const CriterionResult& r);

}  // namespace zeno::checks
