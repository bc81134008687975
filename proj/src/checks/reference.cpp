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

#include <cmath>
#include <stdexcept>

#include "zeno/checks.hpp"

namespace zeno::checks {

namespace {

Mat3C bloch_rhs(const Mat3C& g, double a3, const Mat3C& rho) {
  Mat3C d = -(g * rho + rho * g.adjoint());
  d(kLevel1, kLevel1) += a3 * rho(kLevel3, kLevel3);
  return d;
}

}  // namespace

DensityMatrix3 integrate_bloch_rk4(const DensityMatrix3& rho0, const SystemParams& p,
                                   const std::vector<Segment>& segments, double max_step) {
  if (!(max_step > 0.0)) throw std::invalid_argument("integrate_bloch_rk4: max_step must be > 0");
  Mat3C rho = rho0.matrix();
  for (const auto& seg : segments) {
    if (!(seg.duration > 0.0)) continue;
    const Mat3C g = build_generator(p, seg.kind);
    const auto steps = static_cast<long>(std::ceil(seg.duration / max_step));
    const double h = seg.duration / static_cast<double>(steps);
    for (long k = 0; k < steps; ++k) {
      const Mat3C k1 = bloch_rhs(g, p.a3, rho);
      const Mat3C k2 = bloch_rhs(g, p.a3, rho + 0.5 * h * k1);
      const Mat3C k3 = bloch_rhs(g, p.a3, rho + 0.5 * h * k2);
      const Mat3C k4 = bloch_rhs(g, p.a3, rho + h * k3);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  return DensityMatrix3::hermitized(rho);
}

}  // namespace zeno::checks
