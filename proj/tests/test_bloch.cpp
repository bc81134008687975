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
#include "zeno/bloch.hpp"
#include "zeno/checks.hpp"
#include "zeno/experiment.hpp"
#include "zeno/pulse_analysis.hpp"

using namespace zeno;

namespace {

// Level-2 population after n [probe off, probe on] cycles from |1>, computed
// with a 40-digit 9x9 matrix exponential.
constexpr std::pair<int, double> kReferenceBloch[] = {
    {1, 0.99978349016318703},  {2, 0.49960167090782744},  {4, 0.36061523250281324},
    {8, 0.20998291119349833},  {16, 0.102146090864776},   {32, 0.038408928969916096},
    {64, 0.0078912973924364577}};

constexpr std::pair<int, double> kStrongProbeBloch[] = {
    {1, 0.9997831542538739},   {2, 0.4995663620798031},   {4, 0.35984967070093199},
    {8, 0.20857597696426539},  {16, 0.10029573610637439}, {32, 0.036419077505607136},
    {64, 0.0061323368892930668}};

}  // namespace

TEST_CASE("vectorization is column-major") {
  CHECK(vec_index(0, 0) == 0);
  CHECK(vec_index(2, 0) == 2);
  CHECK(vec_index(0, 1) == 3);
  CHECK(vec_index(2, 2) == 8);
  std::mt19937_64 rng(41);
  const Mat3C m = testing::random_density(rng);
  CHECK(unvectorize(vectorize(m)) == m);
}

TEST_CASE("Liouvillian applies the Bloch equations") {
  std::mt19937_64 rng(42);
  const SystemParams p = SystemParams::reference();
  for (const auto kind : {GeneratorKind::ProbeOn, GeneratorKind::ProbeOff}) {
    const Mat3C rho = testing::random_density(rng);
    const Mat3C g = build_generator(p, kind);
    Mat3C expected = -(g * rho + rho * g.adjoint());
    expected(kLevel1, kLevel1) += p.a3 * rho(kLevel3, kLevel3);
    CHECK(testing::max_abs(unvectorize(build_liouvillian(p, kind) * vectorize(rho)), expected) < 1e-6);
  }
}

TEST_CASE("stationary state is annihilated by the Liouvillian") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 20; ++k) {
    const SystemParams p = testing::random_regime_params(rng);
    const VecRho r = build_liouvillian(p, GeneratorKind::ProbeOn) * vectorize(stationary_state(p).matrix());
    CHECK(r.cwiseAbs().maxCoeff() <= 1e-12 * p.a3);
  }
}

TEST_CASE("Liouvillian spectrum is dissipative") {
  for (const SystemParams& p : {SystemParams::reference(), SystemParams::strong_probe()}) {
    for (const auto kind : {GeneratorKind::ProbeOn, GeneratorKind::ProbeOff}) {
      const auto s = liouvillian_spectrum(p, kind);
      for (const auto& z : s) CHECK(z.real() <= 1e-12 * p.a3);
      for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1].real() >= s[i].real());
    }
  }
}

TEST_CASE("schedule propagation matches the frozen values") {
  const auto rho0 = DensityMatrix3::basis(kLevel1);
  for (const auto& [n, value] : kReferenceBloch) {
    const auto s = build_schedule(SystemParams::reference(), kRefTauP, n);
    CHECK(std::abs(run_schedule(rho0, SystemParams::reference(), s).population(kLevel2) - value) < 1e-10);
  }
  for (const auto& [n, value] : kStrongProbeBloch) {
    const auto s = build_schedule(SystemParams::strong_probe(), kRefTauP, n);
    CHECK(std::abs(run_schedule(rho0, SystemParams::strong_probe(), s).population(kLevel2) - value) < 1e-10);
  }
}

TEST_CASE("trace and positivity are preserved over long schedules") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const SystemParams p = SystemParams::reference();
  DensityMatrix3 rho(testing::random_density(rng));
  PropagatorCache cache;
  for (int k = 0; k < 1000; ++k) {
    const auto kind = k % 2 == 0 ? GeneratorKind::ProbeOff : GeneratorKind::ProbeOn;
    rho = propagate(rho, p, Segment{kind, 1e-4 * (1.0 + u(rng))}, cache);
    REQUIRE(rho.min_eigenvalue() >= -1e-12);
  }
  CHECK(rho.weight() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("zero-length segments leave the state unchanged") {
  const auto rho = DensityMatrix3::basis(kLevel2);
  CHECK(propagate(rho, SystemParams::reference(), Segment{GeneratorKind::ProbeOn, 0.0}).matrix() == rho.matrix());
  CHECK_THROWS_AS(propagate(rho, SystemParams::reference(), Segment{GeneratorKind::ProbeOn, -1.0}),
                  std::invalid_argument);
}

TEST_CASE("segment composition is a semigroup") {
  const SystemParams p = SystemParams::reference();
  const auto rho = DensityMatrix3::basis(kLevel1);
  const auto one = propagate(rho, p, Segment{GeneratorKind::ProbeOn, 3e-4});
  const auto two = propagate(propagate(rho, p, Segment{GeneratorKind::ProbeOn, 1e-4}), p,
                             Segment{GeneratorKind::ProbeOn, 2e-4});
  CHECK(testing::max_abs(one.matrix(), two.matrix()) < 1e-11);
}

TEST_CASE("propagator cache") {
  PropagatorCache cache(2);
  const SystemParams p = SystemParams::reference();
  const auto a = cache.get(p, GeneratorKind::ProbeOn, 1e-5);
  CHECK(cache.size() == 1);
  CHECK(cache.get(p, GeneratorKind::ProbeOn, 1e-5) == a);
  CHECK(cache.size() == 1);
  cache.get(p, GeneratorKind::ProbeOff, 1e-5);
  cache.get(p, GeneratorKind::ProbeOff, 2e-5);
  CHECK(cache.size() <= 2);
}

TEST_CASE("observer sees every segment") {
  const auto s = build_schedule(SystemParams::reference(), kRefTauP, 4);
  std::size_t calls = 0;
  run_schedule(DensityMatrix3::basis(kLevel1), SystemParams::reference(), s,
               [&](std::size_t i, const DensityMatrix3&) { CHECK(i == calls++); });
  CHECK(calls == s.size());
}

TEST_CASE("emission intensity satisfies the renewal integral equation") {
  std::mt19937_64 rng(45);
  const SystemParams p = SystemParams::reference();
  const double c0 = intensity_coefficients(p).c0;
  const double tau_max = 3.0 * p.a3 / (p.omega3 * p.omega3);
  for (const auto& rho : {DensityMatrix3::basis(kLevel1), DensityMatrix3::basis(kLevel2),
                          DensityMatrix3(testing::random_density(rng))}) {
    CHECK(verify_integral_equation(p, rho, tau_max, 16) <= 1e-6 * c0);
  }
  CHECK_THROWS_AS(verify_integral_equation(p, DensityMatrix3::basis(kLevel1), tau_max, 4), std::invalid_argument);
}

TEST_CASE("exact propagation agrees with a Runge-Kutta integrator") {
  std::mt19937_64 rng(46);
  const SystemParams p = SystemParams::make(300.0, 4.0e3, 1.0e4);
  const std::vector<Segment> s{{GeneratorKind::ProbeOn, 2e-3}, {GeneratorKind::ProbeOff, 4e-3},
                               {GeneratorKind::ProbeOn, 1e-3}};
  const DensityMatrix3 rho0(testing::random_density(rng));
  const auto exact = run_schedule(rho0, p, s);
  const auto rk = checks::integrate_bloch_rk4(rho0, p, s, 2e-7);
  CHECK(testing::max_abs(exact.matrix(), rk.matrix()) < 1e-8);
  CHECK(emission_intensity(exact, p) == doctest::Approx(p.a3 * exact.population(kLevel3)));
}
