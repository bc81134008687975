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

#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "zeno/errors.hpp"
#include "zeno/experiment.hpp"

namespace zeno {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "zeno-report/1";

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string cell(const std::optional<double>& x, int digits) {
  return x ? fixed(*x, digits) : std::string();
}

std::optional<double> lookup(const ComparisonRow& row, Method m) {
  const auto it = row.values.find(m);
  if (it == row.values.end()) return std::nullopt;
  return it->second;
}

json config_echo(const ExperimentConfig& cfg) {
  json methods = json::array();
  for (const Method m : cfg.methods) methods.push_back(to_string(m));
  return json{{"t_pi_s", cfg.t_pi},
              {"omega2_per_s", cfg.params.omega2},
              {"omega3_per_s", cfg.params.omega3},
              {"a3_per_s", cfg.params.a3},
              {"tau_p_s", cfg.tau_p},
              {"n_values", cfg.n_values},
              {"methods", methods},
              {"mc",
               {{"n_traj", cfg.mc.n_traj},
                {"master_seed", cfg.mc.master_seed},
                {"rescale_factor", cfg.mc.rescale_factor}}},
              {"eps_p", cfg.params.eps_p()},
              {"eps_r", cfg.params.eps_r()},
              {"eps_a", cfg.params.eps_a()}};
}

}  // namespace

std::string format_csv(const std::vector<ComparisonRow>& rows) {
  std::string out = "n,ideal_pp,modified_pp,quantum_jump,bloch,monte_carlo,mc_stderr,observed\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n);
    for (const Method m : all_methods()) out += "," + cell(lookup(row, m), 5);
    out += "," + cell(row.mc_stderr, 5);
    out += "," + cell(row.observed, 3);
    out += "\n";
  }
  return out;
}

std::string format_json(const std::vector<ComparisonRow>& rows, const ExperimentConfig& cfg) {
  json jrows = json::array();
  for (const auto& row : rows) {
    json values = json::object();
    for (const auto& [m, v] : row.values) values[to_string(m)] = v;
    json r{{"n", row.n}, {"values", values}, {"warnings", row.warnings}};
    if (row.mc_stderr) r["mc_stderr"] = *row.mc_stderr;
    if (row.mc_seed) r["mc_seed"] = *row.mc_seed;
    if (row.observed) r["observed"] = *row.observed;
    jrows.push_back(std::move(r));
  }
  json doc{{"schema", kSchema}, {"config", config_echo(cfg)}, {"rows", jrows}};
  if (is_reference_setup(cfg)) {
    doc["observed_note"] =
        "measured level-2 populations of the reference setup; shown for context, not compared";
  }
  return doc.dump(2) + "\n";
}

std::vector<ComparisonRow> parse_json_rows(const std::string& report) {
  json doc;
  try {
    doc = json::parse(report);
  } catch (const json::parse_error& e) {
    throw ConfigError("<report>", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != kSchema) {
    throw ConfigError("schema", std::string("expected \"") + kSchema + "\"");
  }
  std::vector<ComparisonRow> rows;
  try {
    for (const auto& r : doc.at("rows")) {
      ComparisonRow row;
      row.n = r.at("n").get<int>();
      for (const auto& item : r.at("values").items()) {
        const auto m = method_from_string(item.key());
        if (!m) throw ConfigError("rows.values." + item.key(), "unknown method");
        row.values[*m] = item.value().get<double>();
      }
      row.warnings = r.at("warnings").get<std::vector<std::string>>();
      if (r.contains("mc_stderr")) row.mc_stderr = r["mc_stderr"].get<double>();
      if (r.contains("mc_seed")) row.mc_seed = r["mc_seed"].get<std::uint64_t>();
      if (r.contains("observed")) row.observed = r["observed"].get<double>();
      rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw ConfigError("rows", e.what());
  }
  return rows;
}

std::string emit_report(const std::vector<ComparisonRow>& rows, const ExperimentConfig& cfg) {
  if (rows.empty()) throw ConfigError("n_values", "no rows to report");
  if (cfg.methods.empty()) throw ConfigError("methods", "must not be empty");
  const std::string text =
      cfg.output.format == OutputFormat::Json ? format_json(rows, cfg) : format_csv(rows);
  if (!cfg.output.path.empty()) {
    std::ofstream f(cfg.output.path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + cfg.output.path + " for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("failed writing " + cfg.output.path);
  }
  return text;
}

}  // namespace zeno
