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
#include "zeno/errors.hpp"
#include "zeno/linalg3.hpp"
#include "zeno/vsystem.hpp"

using namespace zeno;

TEST_CASE("cubic roots of a product of linear factors") {
  const auto r = cubic_roots(-6.0, 11.0, -6.0);
  CHECK(r[0].real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r[1].real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r[2].real() == doctest::Approx(3.0).epsilon(1e-14));
  for (const auto& z : r) CHECK(z.imag() == 0.0);
}

TEST_CASE("cubic roots with a complex pair are ordered by real then imaginary part") {
  // (x - 2)(x^2 + 2x + 5): roots 2, -1 +- 2i
  const auto r = cubic_roots(0.0, 1.0, -10.0);
  CHECK(std::abs(r[0] - Complex(-1.0, -2.0)) < 1e-14);
  CHECK(std::abs(r[1] - Complex(-1.0, 2.0)) < 1e-14);
  CHECK(std::abs(r[2] - Complex(2.0, 0.0)) < 1e-14);
}

TEST_CASE("cubic roots with complex coefficients") {
  const Complex a(1.0, 2.0), b(-0.5, 0.25), c(3.0, -1.0);
  const Complex a2 = -(a + b + c), a1 = a * b + a * c + b * c, a0 = -a * b * c;
  const auto r = cubic_roots(a2, a1, a0);
  CHECK(std::abs(r[0] - b) < 1e-13);
  CHECK(std::abs(r[1] - a) < 1e-13);
  CHECK(std::abs(r[2] - c) < 1e-13);
}

TEST_CASE("cubic roots reject non-finite coefficients") {
  CHECK_THROWS_AS(cubic_roots(std::nan(""), 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("probe-on roots at the reference parameters") {
  const auto es = eigensystem(build_generator(SystemParams::reference(), GeneratorKind::ProbeOn));
  CHECK_FALSE(es.degenerate);
  CHECK(es.eigenvalues[0].real() == doctest::Approx(0.0025030177851632209263).epsilon(1e-12));
  CHECK(es.eigenvalues[1].real() == doctest::Approx(15045.436917771468103).epsilon(1e-12));
  CHECK(es.eigenvalues[2].real() == doctest::Approx(59984954.560579210747).epsilon(1e-12));
}

TEST_CASE("probe-on roots with Omega3 = A3/2 are flagged degenerate") {
  const auto es = eigensystem(build_generator(SystemParams::strong_probe(), GeneratorKind::ProbeOn));
  CHECK(es.degenerate);
  CHECK(es.eigenvalues[0].real() == doctest::Approx(2.5099701947760510327e-6).epsilon(1e-10));
  // The close pair is conditioned like eps |M|^2 / gap, about 1e-2 absolute.
  CHECK(es.eigenvalues[1].real() == doctest::Approx(29999993.864075593472).epsilon(2e-10));
  CHECK(es.eigenvalues[2].real() == doctest::Approx(30000006.135921896558).epsilon(2e-10));
  CHECK(es.degeneracy_gap == doctest::Approx(12.271846).epsilon(1e-3));
  CHECK_THROWS_AS(expm_spectral(es, 1e-6), DegenerateSpectrumError);
}

TEST_CASE("Vieta identities over random regime-valid draws") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const SystemParams p = testing::random_regime_params(rng);
    const auto l = eigensystem(build_generator(p, GeneratorKind::ProbeOn)).eigenvalues;
    const double w2 = p.omega2 * p.omega2;
    const double s1 = std::abs(l[0]) + std::abs(l[1]) + std::abs(l[2]);
    const double s2 = std::abs(l[0] * l[1]) + std::abs(l[0] * l[2]) + std::abs(l[1] * l[2]);
    CHECK(std::abs(l[0] + l[1] + l[2] - 0.5 * p.a3) <= 1e-12 * s1);
    CHECK(std::abs(l[0] * l[1] + l[0] * l[2] + l[1] * l[2] - 0.25 * (w2 + p.omega3 * p.omega3)) <= 1e-12 * s2);
    CHECK(std::abs(l[0] * l[1] * l[2] - 0.125 * p.a3 * w2) <= 1e-12 * 0.125 * p.a3 * w2);
  }
}

TEST_CASE("slow root respects the lower perturbative bound") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 200; ++k) {
    const SystemParams p = testing::random_regime_params(rng);
    const double slow = eigensystem(build_generator(p, GeneratorKind::ProbeOn)).eigenvalues[0].real();
    CHECK(slow >= 0.5 * p.omega2 * p.eps_p() / (1.0 + p.eps_r() * p.eps_r()));
    CHECK(slow == doctest::Approx(0.5 * p.omega2 * p.eps_p()).epsilon(2.0 * p.eps_p() * p.eps_p() + 1e-14));
  }
}

TEST_CASE("eigenvectors, reciprocal basis and reconstruction") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 50; ++k) {
    const SystemParams p = testing::random_regime_params(rng);
    const Mat3C m = build_generator(p, GeneratorKind::ProbeOn);
    const EigenSystem es = eigensystem(m);
    REQUIRE_FALSE(es.degenerate);
    Mat3C sum = Mat3C::Zero();
    for (std::size_t i = 0; i < 3; ++i) {
      const Vec3C& v = es.right_vectors[i];
      CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-14));
      CHECK((m * v - es.eigenvalues[i] * v).norm() <= 1e-12 * std::abs(es.eigenvalues[2]));
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(std::abs(v.dot(es.reciprocal_vectors[j]) - (i == j ? 1.0 : 0.0)) < 1e-11);
      }
      sum += v * es.reciprocal_vectors[i].adjoint();
    }
    CHECK(testing::max_abs(sum, Mat3C::Identity()) < 1e-11);
  }
}

TEST_CASE("spectral and series exponentials agree and form a semigroup") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const SystemParams p = testing::random_regime_params(rng);
    const Mat3C m = build_generator(p, GeneratorKind::ProbeOn);
    const EigenSystem es = eigensystem(m);
    const double s = std::pow(10.0, -2.0 + 3.0 * u(rng)) / p.a3;
    const double t = std::pow(10.0, -2.0 + 3.0 * u(rng)) / p.a3;
    CHECK(testing::max_abs(expm_spectral(es, t), expm_series(m, t)) <= 1e-10);
    CHECK(testing::max_abs(expm_spectral(es, s + t), expm_spectral(es, s) * expm_spectral(es, t)) <= 1e-10);
    CHECK(testing::max_abs(expm_series(m, s + t), expm_series(m, s) * expm_series(m, t)) <= 1e-10);
  }
}

TEST_CASE("series exponential of a defective matrix") {
  // Jordan block: exp(-J t) = e^{-t} [[1, -t], [0, 1]]
  Mat3C j = Mat3C::Identity();
  j(0, 1) = 1.0;
  const Mat3C e = expm_series(j, 2.0);
  CHECK(std::abs(e(0, 0) - std::exp(-2.0)) < 1e-15);
  CHECK(std::abs(e(0, 1) + 2.0 * std::exp(-2.0)) < 1e-15);
  CHECK(std::abs(e(1, 0)) < 1e-15);
  const EigenSystem es = eigensystem(j);
  CHECK(es.degenerate);
}

TEST_CASE("series exponential rejects non-finite input") {
  CHECK_THROWS_AS(expm_series(Mat3C::Identity().eval(), std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}
