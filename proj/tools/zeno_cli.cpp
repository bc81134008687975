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

// Command-line front end: preset tables, config-driven runs, trajectory
// diagnostics and the acceptance suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zeno/checks.hpp"
#include "zeno/errors.hpp"
#include "zeno/experiment.hpp"
#include "zeno/montecarlo.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSchedule = 3;
constexpr int kExitCheck = 4;

struct TableOptions {
  std::string format = "csv";
  std::string output;
  std::vector<std::string> methods;
  int n_traj = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int run_and_report(zeno::ExperimentConfig cfg, int threads) {
  cfg.mc.n_threads = threads;
  const auto rows = zeno::run_comparison(cfg);
  const std::string text = zeno::emit_report(rows, cfg);
  if (cfg.output.path.empty()) std::cout << text;
  for (const auto& row : rows) {
    for (const auto& w : row.warnings) std::cerr << "warning: n = " << row.n << ": " << w << "\n";
  }
  return 0;
}

void apply_table_options(zeno::ExperimentConfig& cfg, const TableOptions& o) {
  if (o.format == "json") {
    cfg.output.format = zeno::OutputFormat::Json;
  } else if (o.format != "csv") {
    throw zeno::ConfigError("--format", "expected csv or json");
  }
  cfg.output.path = o.output;
  if (!o.methods.empty()) {
    cfg.methods.clear();
    for (const auto& name : o.methods) {
      const auto m = zeno::method_from_string(name);
      if (!m) throw zeno::ConfigError("--methods", "unknown method \"" + name + "\"");
      if (!cfg.has(*m)) cfg.methods.push_back(*m);
    }
  }
  if (o.n_traj > 0) cfg.mc.n_traj = o.n_traj;
  if (o.seed_set) cfg.mc.master_seed = o.seed;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw zeno::ConfigError(path, "cannot read config file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_trajectories(int n_traj, std::uint64_t seed, double factor, int threads, bool strong) {
  const zeno::SystemParams base = strong ? zeno::SystemParams::strong_probe() : zeno::SystemParams::reference();
  const zeno::SystemParams p = base.rescaled(factor);
  const double tau_p = zeno::kRefTauP / factor;
  std::printf("parameters: A3 = %.6g /s, Omega3 = %.6g /s, Omega2 = %.6g /s, tau_p = %.6g s\n", p.a3,
              p.omega3, p.omega2, tau_p);
  std::printf("eps_p = %.4e, eps_R = %.4e, eps_A = %.4e\n", p.eps_p(), p.eps_r(), p.eps_a());

  const zeno::KsResult ks = zeno::first_jump_ks_test(p, tau_p, n_traj, seed);
  std::printf("first-jump KS: D = %.5f, 1%% critical = %.5f, censored = %d -> %s\n", ks.statistic,
              ks.critical_1pct, ks.n_censored, ks.passed() ? "pass" : "fail");

  const zeno::ConditionalStateCheck c = zeno::conditional_state_check(p, tau_p, n_traj, seed + 1, threads);
  std::printf("no-emission subensemble: %d trajectories, fidelity %.6f (max stderr %.2e)\n",
              c.ensemble.n_no_emission, c.fidelity_no_emission, c.ensemble.max_stderr_no_emission);
  std::printf("emission subensemble:    %d trajectories, fidelity %.6f (max stderr %.2e)\n",
              c.ensemble.n_emission, c.fidelity_emission, c.ensemble.max_stderr_emission);
  for (const auto& w : c.warnings) std::printf("warning: %s\n", w.c_str());
  return 0;
}

int run_checks(const std::vector<int>& ids, int threads, std::uint64_t seed) {
  zeno::checks::AcceptanceOptions opts;
  opts.n_threads = threads;
  opts.seed = seed;
  std::vector<int> todo = ids;
  if (todo.empty()) {
    for (int k = 1; k <= zeno::checks::kCriterionCount; ++k) todo.push_back(k);
  }
  bool ok = true;
  for (const int id : todo) {
    const auto r = zeno::checks::run_criterion(id, opts);
    std::printf("%s\n", zeno::checks::summary_line(r).c_str());
    for (const auto& f : r.failures) std::printf("    - %s\n", f.c_str());
    for (const auto& n : r.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    ok = ok && r.passed;
  }
  return ok ? 0 : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"V-system Zeno measurement simulator"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

  TableOptions t1;
  TableOptions t2;
  auto add_table_options = [](CLI::App* cmd, TableOptions& o) {
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output,-o", o.output, "write the report to this file");
    cmd->add_option("--methods", o.methods, "ideal_pp modified_pp quantum_jump bloch monte_carlo");
    cmd->add_option("--mc-traj", o.n_traj, "Monte Carlo trajectories per row")->check(CLI::PositiveNumber);
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&o](const std::uint64_t& s) { o.seed = s, o.seed_set = true; }, "Monte Carlo master seed");
  };
  auto* table1 = app.add_subcommand("table1", "reference parameters, n = 1 ... 64");
  add_table_options(table1, t1);
  auto* table2 = app.add_subcommand("table2", "as table1 with Omega3 = A3/2");
  add_table_options(table2, t2);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run a JSON configuration");
  run->add_option("config", config_path, "configuration file")->required();

  int n_traj = 10000;
  std::uint64_t seed = 1;
  double factor = 1e-4;
  bool strong = false;
  auto* traj = app.add_subcommand("trajectories", "first-jump KS test and conditional-state fidelities");
  traj->add_option("--n-traj", n_traj, "trajectories")->check(CLI::PositiveNumber);
  traj->add_option("--seed", seed, "master seed");
  traj->add_option("--rescale", factor, "rate rescaling factor")->check(CLI::PositiveNumber);
  traj->add_flag("--strong-probe", strong, "use Omega3 = A3/2");

  std::vector<int> criteria;
  std::uint64_t check_seed = 7;
  auto* check = app.add_subcommand("check", "run the acceptance criteria");
  check->add_option("--criterion", criteria, "criterion ids (default: all)")
      ->check(CLI::Range(1, zeno::checks::kCriterionCount));
  check->add_option("--seed", check_seed, "seed for random draws");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*table1) {
      zeno::ExperimentConfig cfg = zeno::table1_config();
      apply_table_options(cfg, t1);
      return run_and_report(cfg, threads);
    }
    if (*table2) {
      zeno::ExperimentConfig cfg = zeno::table2_config();
      apply_table_options(cfg, t2);
      return run_and_report(cfg, threads);
    }
    if (*run) return run_and_report(zeno::parse_config(read_file(config_path)), threads);
    if (*traj) return run_trajectories(n_traj, seed, factor, threads, strong);
    if (*check) return run_checks(criteria, threads, check_seed);
  } catch (const zeno::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const zeno::ScheduleError& e) {
    std::cerr << "schedule error: " << e.what() << "\n";
    return kExitSchedule;
  } catch (const zeno::RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return kExitSchedule;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
