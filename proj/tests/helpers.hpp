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

#include <random>

#include "zeno/vsystem.hpp"

namespace zeno::testing {

inline double max_abs(const Mat3C& a, const Mat3C& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline Mat3C random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat3C a;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  const Mat3C m = a * a.adjoint();
  return m / m.trace().real();
}

inline Vec3C random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3C v(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
  return v.normalized();
}

// eps_p in [1e-6, 1e-1], Omega3 / A3 in [1e-2, 1].
inline SystemParams random_regime_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double a3 = std::pow(10.0, 6.0 + 3.0 * u(rng));
  const double omega3 = a3 * std::pow(10.0, -2.0 + 2.0 * u(rng));
  const double eps_p = std::pow(10.0, -6.0 + 5.0 * u(rng));
  return SystemParams::make(eps_p * omega3 * omega3 / a3, omega3, a3);
}

}  // namespace zeno::testing
