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

#include "zeno/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "zeno/errors.hpp"
#include "zeno/montecarlo.hpp"
#include "zeno/pulse_analysis.hpp"

namespace zeno {

namespace {

using nlohmann::json;

struct MethodName {
  Method method;
  const char* name;
};

constexpr MethodName kMethodNames[] = {{Method::IdealPP, "ideal_pp"},
                                       {Method::ModifiedPP, "modified_pp"},
                                       {Method::QuantumJump, "quantum_jump"},
                                       {Method::Bloch, "bloch"},
                                       {Method::MonteCarlo, "monte_carlo"}};

// Level-2 populations measured with the reference setup.
constexpr std::pair<int, double> kObserved[] = {{1, 0.995},  {2, 0.500},  {4, 0.335}, {8, 0.194},
                                                {16, 0.103}, {32, 0.013}, {64, -0.006}};

double number_field(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
  return x;
}

double positive_field(const json& obj, const std::string& key, const std::string& path) {
  const double x = number_field(obj, key, path);
  if (!(x > 0.0)) throw ConfigError(path, "must be > 0");
  return x;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& prefix) {
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) throw ConfigError(prefix + item.key(), "unknown key");
  }
}

void parse_mc(const json& mc, McOptions& out) {
  if (!mc.is_object()) throw ConfigError("mc", "expected an object");
  reject_unknown(mc, {"n_traj", "master_seed", "rescale_factor"}, "mc.");
  if (mc.contains("n_traj")) {
    const json& v = mc["n_traj"];
    if (!v.is_number_integer() || v.get<long long>() < 1 ||
        v.get<long long>() > std::numeric_limits<int>::max()) {
      throw ConfigError("mc.n_traj", "expected a positive integer");
    }
    out.n_traj = v.get<int>();
  }
  if (mc.contains("master_seed")) {
    const json& v = mc["master_seed"];
    if (!v.is_number_unsigned()) throw ConfigError("mc.master_seed", "expected a non-negative integer");
    out.master_seed = v.get<std::uint64_t>();
  }
  if (mc.contains("rescale_factor")) {
    out.rescale_factor = positive_field(mc, "rescale_factor", "mc.rescale_factor");
  }
}

void parse_output(const json& output, OutputOptions& out) {
  if (!output.is_object()) throw ConfigError("output", "expected an object");
  reject_unknown(output, {"format", "path"}, "output.");
  if (output.contains("format")) {
    const json& v = output["format"];
    if (v == "csv") {
      out.format = OutputFormat::Csv;
    } else if (v == "json") {
      out.format = OutputFormat::Json;
    } else {
      throw ConfigError("output.format", "expected \"csv\" or \"json\"");
    }
  }
  if (output.contains("path")) {
    if (!output["path"].is_string()) throw ConfigError("output.path", "expected a string");
    out.path = output["path"].get<std::string>();
  }
}

// Re-throws a module error with the row it belongs to.
[[noreturn]] void rethrow_with_row(int n) {
  const std::string where = "n = " + std::to_string(n) + ": ";
  try {
    throw;
  } catch (const RegimeError& e) {
    std::vector<std::string> failed;
    for (const auto& f : e.failed_conditions()) failed.push_back(where + f);
    throw RegimeError(std::move(failed));
  } catch (const ScheduleError& e) {
    throw ScheduleError(where + e.what());
  } catch (const ConsistencyError& e) {
    throw ConsistencyError(where + e.what());
  } catch (const DegenerateSpectrumError& e) {
    throw DegenerateSpectrumError(where + e.what());
  }
}

void require_probability(double x, const char* what, int n) {
  if (!(x >= -1e-12 && x <= 1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << what << " = " << x << " for n = " << n << " is not a probability";
    throw ConsistencyError(msg.str());
  }
}

}  // namespace

const char* to_string(Method m) {
  for (const auto& e : kMethodNames) {
    if (e.method == m) return e.name;
  }
  return "unknown";
}

std::optional<Method> method_from_string(const std::string& name) {
  for (const auto& e : kMethodNames) {
    if (name == e.name) return e.method;
  }
  return std::nullopt;
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{Method::IdealPP, Method::ModifiedPP, Method::QuantumJump,
                                           Method::Bloch, Method::MonteCarlo};
  return methods;
}

std::vector<Segment> build_schedule(double t_pi, double tau_p, int n) {
  if (n < 1) throw ScheduleError("number of probe pulses must be >= 1");
  if (!(tau_p >= 0.0) || !(t_pi > 0.0) || !std::isfinite(t_pi)) {
    throw ScheduleError("schedule needs t_pi > 0 and tau_p >= 0");
  }
  const double delta_t = t_pi / n - tau_p;
  if (!(delta_t > 0.0)) {
    std::ostringstream msg;
    msg << n << " probe pulses of " << tau_p << " s do not fit into " << t_pi << " s";
    throw ScheduleError(msg.str());
  }
  std::vector<Segment> out;
  out.reserve(2 * static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    out.push_back({GeneratorKind::ProbeOff, delta_t});
    out.push_back({GeneratorKind::ProbeOn, tau_p});
  }
  return out;
}

std::vector<Segment> build_schedule(const SystemParams& p, double tau_p, int n) {
  return build_schedule(p.t_pi(), tau_p, n);
}

bool ExperimentConfig::has(Method m) const {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}

ExperimentConfig table1_config() { return ExperimentConfig{}; }

ExperimentConfig table2_config() {
  ExperimentConfig cfg;
  cfg.params = SystemParams::strong_probe();
  return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.n_values.empty()) throw ConfigError("n_values", "must not be empty");
  if (cfg.methods.empty()) throw ConfigError("methods", "must not be empty");
  if (!(cfg.t_pi > 0.0) || !std::isfinite(cfg.t_pi)) throw ConfigError("t_pi_s", "must be finite and > 0");
  if (!(cfg.tau_p > 0.0) || !std::isfinite(cfg.tau_p)) throw ConfigError("tau_p_s", "must be finite and > 0");
  if (!(cfg.params.omega2 > 0.0)) throw ConfigError("omega2_per_s", "must be > 0");
  if (!(cfg.params.omega3 > 0.0)) throw ConfigError("omega3_per_s", "must be > 0");
  for (std::size_t i = 0; i < cfg.n_values.size(); ++i) {
    if (cfg.n_values[i] < 1) {
      throw ConfigError("n_values[" + std::to_string(i) + "]", "must be a positive integer");
    }
  }
  if (cfg.mc.n_traj < 1) throw ConfigError("mc.n_traj", "must be >= 1");
  if (!(cfg.mc.rescale_factor > 0.0)) throw ConfigError("mc.rescale_factor", "must be > 0");
}

ExperimentConfig parse_config(const std::string& source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");
  reject_unknown(doc,
                 {"t_pi_s", "a3_per_s", "omega3_per_s", "omega3_over_a3", "omega2_per_s", "tau_p_s",
                  "n_values", "methods", "mc", "output"},
                 "");

  ExperimentConfig cfg;
  cfg.t_pi = doc.contains("t_pi_s") ? positive_field(doc, "t_pi_s", "t_pi_s") : kRefTPi;
  const double a3 = doc.contains("a3_per_s") ? positive_field(doc, "a3_per_s", "a3_per_s") : kRefA3;
  if (doc.contains("omega3_per_s") && doc.contains("omega3_over_a3")) {
    throw ConfigError("omega3_over_a3", "conflicts with omega3_per_s; give only one");
  }
  double omega3 = kRefOmega3;
  if (doc.contains("omega3_per_s")) omega3 = positive_field(doc, "omega3_per_s", "omega3_per_s");
  if (doc.contains("omega3_over_a3")) omega3 = a3 * positive_field(doc, "omega3_over_a3", "omega3_over_a3");
  const double omega2 = doc.contains("omega2_per_s") ? positive_field(doc, "omega2_per_s", "omega2_per_s")
                                                     : std::numbers::pi / cfg.t_pi;
  cfg.params = SystemParams::make(omega2, omega3, a3);
  cfg.tau_p = doc.contains("tau_p_s") ? positive_field(doc, "tau_p_s", "tau_p_s") : kRefTauP;

  if (doc.contains("n_values")) {
    const json& v = doc["n_values"];
    if (!v.is_array()) throw ConfigError("n_values", "expected an array");
    cfg.n_values.clear();
    std::set<int> seen;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string path = "n_values[" + std::to_string(i) + "]";
      if (!v[i].is_number_integer() || v[i].get<long long>() < 1 ||
          v[i].get<long long>() > std::numeric_limits<int>::max()) {
        throw ConfigError(path, "expected a positive integer");
      }
      const int n = v[i].get<int>();
      if (!seen.insert(n).second) throw ConfigError(path, "duplicate value");
      cfg.n_values.push_back(n);
    }
    std::sort(cfg.n_values.begin(), cfg.n_values.end());
  }
  if (doc.contains("methods")) {
    const json& v = doc["methods"];
    if (!v.is_array()) throw ConfigError("methods", "expected an array");
    cfg.methods.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string path = "methods[" + std::to_string(i) + "]";
      if (!v[i].is_string()) throw ConfigError(path, "expected a string");
      const auto m = method_from_string(v[i].get<std::string>());
      if (!m) throw ConfigError(path, "unknown method \"" + v[i].get<std::string>() + "\"");
      if (cfg.has(*m)) throw ConfigError(path, "duplicate method");
      cfg.methods.push_back(*m);
    }
  }
  if (doc.contains("mc")) parse_mc(doc["mc"], cfg.mc);
  if (doc.contains("output")) parse_output(doc["output"], cfg.output);
  validate_config(cfg);
  return cfg;
}

std::optional<double> observed_population(int n) {
  for (const auto& [k, v] : kObserved) {
    if (k == n) return v;
  }
  return std::nullopt;
}

bool is_reference_setup(const ExperimentConfig& cfg) {
  return cfg.params == SystemParams::reference() && cfg.t_pi == kRefTPi && cfg.tau_p == kRefTauP;
}

std::vector<ComparisonRow> run_comparison(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const SystemParams& p = cfg.params;
  const bool reference = is_reference_setup(cfg);
  std::vector<int> ns = cfg.n_values;
  std::sort(ns.begin(), ns.end());

  std::vector<ComparisonRow> rows;
  rows.reserve(ns.size());
  for (const int n : ns) {
    try {
      const auto schedule = build_schedule(cfg.t_pi, cfg.tau_p, n);
      ComparisonRow row;
      row.n = n;
      if (reference) row.observed = observed_population(n);

      const ZenoPrediction pred = zeno_prediction(p, cfg.tau_p, n);
      for (const auto& w : pred.warnings) row.warnings.push_back(w.message);
      if (cfg.has(Method::IdealPP)) row.values[Method::IdealPP] = pred.rho22_ideal;
      if (cfg.has(Method::ModifiedPP)) row.values[Method::ModifiedPP] = pred.rho22_modified;
      if (pred.rho22_quantum_jump) {
        const ZenoPrediction bare = zeno_prediction(p, cfg.tau_p, n, Corrections::None);
        if (!bare.rho22_quantum_jump ||
            std::abs(*bare.rho22_quantum_jump - pred.rho22_modified) > 1e-14) {
          throw ConsistencyError("quantum-jump result without corrections differs from modified_pp");
        }
        if (cfg.has(Method::QuantumJump)) row.values[Method::QuantumJump] = *pred.rho22_quantum_jump;
      } else if (cfg.has(Method::QuantumJump)) {
        row.warnings.push_back("quantum_jump omitted: measurement regime not satisfied");
      }
      if (cfg.has(Method::Bloch)) {
        row.values[Method::Bloch] = run_schedule(DensityMatrix3::basis(kLevel1), p, schedule).population(kLevel2);
      }
      if (cfg.has(Method::MonteCarlo)) {
        const double f = cfg.mc.rescale_factor;
        const std::uint64_t seed = CounterRng::derive(cfg.mc.master_seed, static_cast<std::uint64_t>(n));
        const EnsembleEstimate est =
            run_ensemble(Vec3C::UnitX(), p.rescaled(f), build_schedule(cfg.t_pi / f, cfg.tau_p / f, n),
                         cfg.mc.n_traj, seed, cfg.mc.n_threads);
        row.values[Method::MonteCarlo] = est.pop_mean[kLevel2];
        row.mc_stderr = est.pop_stderr[kLevel2];
        row.mc_seed = seed;
      }
      for (const auto& [m, v] : row.values) require_probability(v, to_string(m), n);
      rows.push_back(std::move(row));
    } catch (const Error&) {
      rethrow_with_row(n);
    }
  }
  return rows;
}

}  // namespace zeno
