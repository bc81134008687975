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
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "zeno/errors.hpp"
#include "zeno/experiment.hpp"

using namespace zeno;

TEST_CASE("schedules span T_pi") {
  const SystemParams p = SystemParams::reference();
  for (int n = 1; n <= 106; ++n) {
    const auto s = build_schedule(p, kRefTauP, n);
    REQUIRE(s.size() == 2 * static_cast<std::size_t>(n));
    double total = 0.0;
    for (const auto& seg : s) total += seg.duration;
    CHECK(total == doctest::Approx(p.t_pi()).epsilon(1e-12));
    CHECK(s.front().kind == GeneratorKind::ProbeOff);
    CHECK(s.back().kind == GeneratorKind::ProbeOn);
  }
  CHECK(build_schedule(p, kRefTauP, 16)[0].duration == doctest::Approx(0.0136).epsilon(1e-12));
  CHECK(build_schedule(p, kRefTauP, 1)[0].duration == doctest::Approx(0.256 - 0.0024).epsilon(1e-14));
  CHECK_THROWS_AS(build_schedule(p, kRefTauP, 107), ScheduleError);
  CHECK_THROWS_AS(build_schedule(p, kRefTauP, 0), ScheduleError);
}

TEST_CASE("empty configuration gives the reference setup") {
  const ExperimentConfig cfg = parse_config("{}");
  CHECK(cfg == table1_config());
  CHECK(is_reference_setup(cfg));
  CHECK(cfg.params.omega2 == doctest::Approx(12.271846303085129).epsilon(1e-15));
}

TEST_CASE("configuration overrides") {
  const ExperimentConfig cfg = parse_config(R"({"omega3_over_a3": 0.5})");
  CHECK(cfg.params == SystemParams::strong_probe());
  CHECK_FALSE(is_reference_setup(cfg));

  const ExperimentConfig full = parse_config(R"({
    "t_pi_s": 0.5, "a3_per_s": 1e7, "omega3_per_s": 1e6, "tau_p_s": 1e-3,
    "n_values": [8, 2], "methods": ["bloch", "ideal_pp"],
    "mc": {"n_traj": 50, "master_seed": 9, "rescale_factor": 0.01},
    "output": {"format": "json", "path": "out.json"}})");
  CHECK(full.t_pi == 0.5);
  CHECK(full.params.omega2 == doctest::Approx(std::numbers::pi / 0.5));
  CHECK(full.n_values == std::vector<int>{2, 8});
  CHECK(full.methods == std::vector<Method>{Method::Bloch, Method::IdealPP});
  CHECK(full.mc.n_traj == 50);
  CHECK(full.mc.master_seed == 9);
  CHECK(full.output.format == OutputFormat::Json);
  CHECK(full.output.path == "out.json");

  const ExperimentConfig rabi = parse_config(R"({"omega2_per_s": 12.27})");
  CHECK(rabi.params.omega2 == 12.27);
  CHECK(rabi.t_pi == kRefTPi);
}

TEST_CASE("configuration errors name the field") {
  auto field_of = [](const char* text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of(R"({"a3_per_s": -1})") == "a3_per_s");
  CHECK(field_of(R"({"bogus": 1})") == "bogus");
  CHECK(field_of(R"({"mc": {"n_trajs": 1}})") == "mc.n_trajs");
  CHECK(field_of(R"({"mc": {"n_traj": 0}})") == "mc.n_traj");
  CHECK(field_of(R"({"n_values": []})") == "n_values");
  CHECK(field_of(R"({"n_values": [4, -1]})") == "n_values[1]");
  CHECK(field_of(R"({"n_values": [4, 4]})") == "n_values[1]");
  CHECK(field_of(R"({"methods": []})") == "methods");
  CHECK(field_of(R"({"methods": ["bloch", "magic"]})") == "methods[1]");
  CHECK(field_of(R"({"omega3_per_s": 1e6, "omega3_over_a3": 0.5})") == "omega3_over_a3");
  CHECK(field_of(R"({"output": {"format": "xml"}})") == "output.format");
  CHECK(field_of(R"({"tau_p_s": "long"})") == "tau_p_s");
  CHECK(field_of("{not json") == "<document>");
  CHECK(field_of("[]") == "<document>");
}

TEST_CASE("comparison rows at the reference setup") {
  ExperimentConfig cfg = table1_config();
  cfg.n_values = {8};
  const auto rows = run_comparison(cfg);
  REQUIRE(rows.size() == 1);
  const auto& v = rows[0].values;
  CHECK(v.at(Method::IdealPP) == doctest::Approx(0.23460).epsilon(1e-4));
  CHECK(std::abs(v.at(Method::ModifiedPP) - 0.20857) < 1e-5);
  CHECK(std::abs(v.at(Method::QuantumJump) - 0.20998) < 1e-5);
  CHECK(std::abs(v.at(Method::Bloch) - 0.20998291119349833) < 1e-10);
  CHECK(rows[0].observed == 0.194);

  ExperimentConfig single = table1_config();
  single.n_values = {1};
  single.methods = {Method::IdealPP};
  const auto one = run_comparison(single);
  REQUIRE(one.size() == 1);
  CHECK(one[0].values.size() == 1);
  CHECK(one[0].values.at(Method::IdealPP) == doctest::Approx(1.0));
}

TEST_CASE("rows that do not fit carry the row in the error") {
  ExperimentConfig cfg = table1_config();
  cfg.n_values = {2, 107};
  try {
    run_comparison(cfg);
    FAIL("expected ScheduleError");
  } catch (const ScheduleError& e) {
    CHECK(std::string(e.what()).find("n = 107") != std::string::npos);
  }
}

TEST_CASE("CSV report") {
  ExperimentConfig cfg = table1_config();
  cfg.n_values = {16, 64};
  const std::string csv = format_csv(run_comparison(cfg));
  CHECK(csv ==
        "n,ideal_pp,modified_pp,quantum_jump,bloch,monte_carlo,mc_stderr,observed\n"
        "16,0.13343,0.10029,0.10215,0.10215,,,0.103\n"
        "64,0.03712,0.00613,0.00789,0.00789,,,-0.006\n");
  ExperimentConfig other = table2_config();
  other.n_values = {64};
  const std::string strong = format_csv(run_comparison(other));
  CHECK(strong.substr(strong.find('\n') + 1) == "64,0.03712,0.00613,0.00613,0.00613,,,\n");
}

TEST_CASE("JSON report round-trips and is deterministic") {
  ExperimentConfig cfg = table1_config();
  cfg.n_values = {2, 4};
  cfg.methods = all_methods();
  cfg.mc.n_traj = 40;
  cfg.mc.n_threads = 2;
  cfg.output.format = OutputFormat::Json;
  const auto rows = run_comparison(cfg);
  const std::string a = emit_report(rows, cfg);
  CHECK(parse_json_rows(a) == rows);
  REQUIRE(rows[0].mc_seed.has_value());
  REQUIRE(rows[0].mc_stderr.has_value());
  cfg.mc.n_threads = 1;
  CHECK(emit_report(run_comparison(cfg), cfg) == a);
  CHECK(a.find("\"schema\": \"zeno-report/1\"") != std::string::npos);
}

TEST_CASE("report output errors") {
  ExperimentConfig cfg = table1_config();
  cfg.n_values = {1};
  const auto rows = run_comparison(cfg);
  cfg.output.path = "/nonexistent-dir/report.csv";
  CHECK_THROWS_AS(emit_report(rows, cfg), IoError);
  cfg.output.path.clear();
  CHECK_THROWS_AS(emit_report({}, cfg), ConfigError);
  ExperimentConfig none = cfg;
  none.methods.clear();
  CHECK_THROWS_AS(emit_report(rows, none), ConfigError);
  CHECK_THROWS_AS(run_comparison(none), ConfigError);

  const auto path = std::filesystem::temp_directory_path() / "zeno_report_test.csv";
  cfg.output.path = path.string();
  const std::string text = emit_report(rows, cfg);
  std::ifstream f(path);
  const std::string back((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(back == text);
  std::filesystem::remove(path);
}

TEST_CASE("method names") {
  for (const Method m : all_methods()) CHECK(method_from_string(to_string(m)) == m);
  CHECK_FALSE(method_from_string("nope").has_value());
}
