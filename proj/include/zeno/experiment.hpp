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

// Measurement schedules, method comparison tables, configuration and reports.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zeno/bloch.hpp"
#include "zeno/vsystem.hpp"

namespace zeno {

enum class Method { IdealPP, ModifiedPP, QuantumJump, Bloch, MonteCarlo };

const char* to_string(Method m);
std::optional<Method> method_from_string(const std::string& name);
const std::vector<Method>& all_methods();

/// n repetitions of [probe off for t_pi/n - tau_p, probe on for tau_p].
std::vector<Segment> build_schedule(double t_pi, double tau_p, int n);
std::vector<Segment> build_schedule(const SystemParams& p, double tau_p, int n);

struct McOptions {
  int n_traj = 1000;
  std::uint64_t master_seed = 20260101;
  /// Trajectories run with all rates multiplied by this factor and all
  /// durations divided by it, which leaves the small parameters unchanged.
  double rescale_factor = 1e-4;
  int n_threads = 0;  // 0: hardware concurrency

  bool operator==(const McOptions&) const = default;
};

enum class OutputFormat { Csv, Json };

struct OutputOptions {
  OutputFormat format = OutputFormat::Csv;
  std::string path;  // empty: standard output

  bool operator==(const OutputOptions&) const = default;
};

struct ExperimentConfig {
  SystemParams params = SystemParams::reference();
  double t_pi = kRefTPi;  // schedule length; equals pi / omega2 unless omega2 is overridden
  double tau_p = kRefTauP;
  std::vector<int> n_values{1, 2, 4, 8, 16, 32, 64};
  std::vector<Method> methods{Method::IdealPP, Method::ModifiedPP, Method::QuantumJump,
                              Method::Bloch};
  McOptions mc;
  OutputOptions output;

  bool has(Method m) const;
  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig table1_config();
ExperimentConfig table2_config();

/// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const std::string& source);
void validate_config(const ExperimentConfig& cfg);

struct ComparisonRow {
  int n = 0;
  std::map<Method, double> values;
  std::optional<double> mc_stderr;
  std::optional<double> observed;
  std::optional<std::uint64_t> mc_seed;
  std::vector<std::string> warnings;

  bool operator==(const ComparisonRow&) const = default;
};

/// Measured level-2 populations for the reference setup, n = 1, 2, ..., 64.
std::optional<double> observed_population(int n);
bool is_reference_setup(const ExperimentConfig& cfg);

std::vector<ComparisonRow> run_comparison(const ExperimentConfig& cfg);

std::string format_csv(const std::vector<ComparisonRow>& rows);
std::string format_json(const std::vector<ComparisonRow>& rows, const ExperimentConfig& cfg);
std::vector<ComparisonRow> parse_json_rows(const std::string& report);

/// Formats per cfg.output and writes to cfg.output.path (or returns the text
/// when the path is empty). Throws IoError when the path cannot be written.
std::string emit_report(const std::vector<ComparisonRow>& rows, const ExperimentConfig& cfg);

}  // namespace zeno
