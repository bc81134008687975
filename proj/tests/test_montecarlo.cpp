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

#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "zeno/experiment.hpp"
#include "zeno/montecarlo.hpp"

using namespace zeno;

namespace {

const SystemParams& scaled() {
  static const SystemParams p = SystemParams::reference().rescaled(1e-4);
  return p;
}

constexpr double kScaledTauP = kRefTauP / 1e-4;
constexpr double kScaledTPi = kRefTPi / 1e-4;

}  // namespace

TEST_CASE("counter RNG is deterministic and open-interval uniform") {
  CounterRng a(5), b(5), c(6);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
    sum += x;
  }
  CHECK(a.draws() == 100000);
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
  CHECK(c.next() != CounterRng(5).next());
  CHECK(CounterRng::derive(1, 0) != CounterRng::derive(1, 1));
  CHECK(CounterRng::derive(1, 0) != CounterRng::derive(2, 0));
}

TEST_CASE("no-jump evolution matches the matrix exponential") {
  std::mt19937_64 rng(51);
  for (const SystemParams& p : {scaled(), SystemParams::strong_probe().rescaled(1e-4)}) {
    for (const auto kind : {GeneratorKind::ProbeOn, GeneratorKind::ProbeOff}) {
      const NoJumpEvolution evo(p, kind, kScaledTauP);
      const Mat3C g = build_generator(p, kind);
      const Vec3C psi = testing::random_state(rng);
      const auto curve = evo.survival_curve(psi);
      for (const double t : {1e-5, 1e-3, 0.1, 3.0, kScaledTauP}) {
        const Vec3C exact = expm_series(g, t) * psi;
        CHECK((evo.apply(psi, t) - exact).norm() < 1e-9);
        CHECK(curve(t) == doctest::Approx(exact.squaredNorm()).epsilon(1e-9));
      }
    }
  }
  CHECK(NoJumpEvolution(SystemParams::strong_probe().rescaled(1e-4), GeneratorKind::ProbeOn, 1.0).uses_ladder());
  CHECK_FALSE(NoJumpEvolution(scaled(), GeneratorKind::ProbeOn, 1.0).uses_ladder());
}

TEST_CASE("sampled jump times invert the survival curve") {
  const NoJumpEvolution evo(scaled(), GeneratorKind::ProbeOn, kScaledTauP);
  const auto curve = evo.survival_curve(Vec3C::UnitX());
  for (const double u : {0.9, 0.5, 0.1, 1e-3}) {
    const auto t = sample_jump_time(curve, kScaledTauP, u);
    REQUIRE(t.has_value());
    CHECK(curve(*t) == doctest::Approx(u).epsilon(1e-7));
  }
  // |2> barely decays within one pulse.
  CHECK_FALSE(sample_jump_time(Vec3C::UnitY(), scaled(), GeneratorKind::ProbeOn, kScaledTauP, 0.5).has_value());
  CHECK_THROWS_AS(sample_jump_time(curve, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sample_jump_time(Vec3C(1.0, 1.0, 0.0), scaled(), GeneratorKind::ProbeOn, 1.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("first-jump times follow 1 - P0") {
  const KsResult ks = first_jump_ks_test(scaled(), kScaledTauP, 4000, 3);
  CHECK(ks.passed());
  const KsResult strong = first_jump_ks_test(SystemParams::strong_probe().rescaled(1e-4), kScaledTauP, 2000, 4);
  CHECK(strong.passed());
}

TEST_CASE("trajectory bookkeeping") {
  const auto s = build_schedule(kScaledTPi, kScaledTauP, 8);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const TrajectoryRecord r = evolve_trajectory(Vec3C::UnitX(), scaled(), s, seed);
    REQUIRE(r.emissions_per_pulse.size() == 8);
    CHECK(std::is_sorted(r.emission_times.begin(), r.emission_times.end()));
    int total = 0;
    for (const int c : r.emissions_per_pulse) total += c;
    CHECK(total <= static_cast<int>(r.emission_times.size()));
    CHECK(r.final_state.norm() == doctest::Approx(1.0).epsilon(1e-12));
    // Free intervals emit only within the transient after a pulse.
    double start = 0.0;
    for (const auto& seg : s) {
      if (seg.kind == GeneratorKind::ProbeOff) {
        for (const double t : r.emission_times) {
          if (t > start && t < start + seg.duration) CHECK(t - start < 30.0 / scaled().a3);
        }
      }
      start += seg.duration;
    }
  }
  CHECK(evolve_trajectory(Vec3C::UnitX(), scaled(), s, 9) == evolve_trajectory(Vec3C::UnitX(), scaled(), s, 9));
}

TEST_CASE("ensemble results do not depend on the thread count") {
  const auto s = build_schedule(kScaledTPi, kScaledTauP, 4);
  const EnsembleEstimate a = run_ensemble(Vec3C::UnitX(), scaled(), s, 300, 17, 1);
  const EnsembleEstimate b = run_ensemble(Vec3C::UnitX(), scaled(), s, 300, 17, 4);
  CHECK(a.pop_mean == b.pop_mean);
  CHECK(a.pop_stderr == b.pop_stderr);
  CHECK(a.mean_state.matrix() == b.mean_state.matrix());
  CHECK(a.mean_emissions_per_pulse == b.mean_emissions_per_pulse);
  CHECK_THROWS_AS(run_ensemble(Vec3C::UnitX(), scaled(), s, 0, 1), std::invalid_argument);
}

TEST_CASE("ensemble average reproduces the Bloch population") {
  const auto s = build_schedule(kScaledTPi, kScaledTauP, 2);
  const EnsembleEstimate e = run_ensemble(Vec3C::UnitX(), scaled(), s, 3000, 23);
  const double bloch = run_schedule(DensityMatrix3::basis(kLevel1), scaled(), s).population(kLevel2);
  CHECK(std::abs(e.pop_mean[kLevel2] - bloch) < 4.0 * e.pop_stderr[kLevel2]);
  CHECK(e.mean_state.weight() == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(e.p0_frequency_per_pulse.size() == 2);
}

TEST_CASE("conditional subensembles approach the predicted states") {
  const ConditionalStateCheck c = conditional_state_check(scaled(), kScaledTauP, 4000, 29);
  CHECK(c.ensemble.n_no_emission + c.ensemble.n_emission == 4000);
  CHECK(c.fidelity_no_emission > 0.999);
  CHECK(c.fidelity_emission > 0.99);
  CHECK_FALSE(c.warnings.empty());
}
