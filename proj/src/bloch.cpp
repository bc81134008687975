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

#include "zeno/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace zeno {

VecRho vectorize(const Mat3C& m) {
  VecRho v;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) v(vec_index(i, j)) = m(i, j);
  }
  return v;
}

Mat3C unvectorize(const VecRho& v) {
  Mat3C m;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) m(i, j) = v(vec_index(i, j));
  }
  return m;
}

Superoperator build_liouvillian(const SystemParams& p, GeneratorKind kind) {
  const Mat3C g = build_generator(p, kind);
  const Mat3C id = Mat3C::Identity();
  Superoperator l = Superoperator::Zero();
  // -(G rho + rho G^dagger) -> -(I kron G + conj(G) kron I)
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        for (int d = 0; d < 3; ++d) {
          l(3 * a + c, 3 * b + d) = -(id(a, b) * g(c, d) + std::conj(g(a, b)) * id(c, d));
        }
      }
    }
  }
  l(vec_index(kLevel1, kLevel1), vec_index(kLevel3, kLevel3)) += p.a3;
  return l;
}

Superoperator liouvillian_exponential(const SystemParams& p, GeneratorKind kind, double duration) {
  if (!(duration >= 0.0)) throw std::invalid_argument("liouvillian_exponential: duration must be >= 0");
  // expm_series evaluates exp(-m t); pass -L.
  return expm_series<9>(-build_liouvillian(p, kind), duration);
}

std::array<Complex, 9> liouvillian_spectrum(const SystemParams& p, GeneratorKind kind) {
  Eigen::ComplexEigenSolver<Superoperator> solver(build_liouvillian(p, kind), false);
  std::array<Complex, 9> out;
  for (int i = 0; i < 9; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() < b.imag();
  });
  return out;
}

Superoperator PropagatorCache::get(const SystemParams& p, GeneratorKind kind, double duration) {
  const Key key{p.omega2, p.omega3, p.a3, static_cast<int>(kind), duration};
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  Superoperator value = liouvillian_exponential(p, kind, duration);
  std::unique_lock lock(mutex_);
  if (entries_.size() >= max_entries_) entries_.clear();
  return entries_.try_emplace(key, value).first->second;
}

std::size_t PropagatorCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

PropagatorCache& default_propagator_cache() {
  static PropagatorCache cache;
  return cache;
}

DensityMatrix3 propagate(const DensityMatrix3& rho, const SystemParams& p, const Segment& seg) {
  return propagate(rho, p, seg, default_propagator_cache());
}

DensityMatrix3 propagate(const DensityMatrix3& rho, const SystemParams& p, const Segment& seg,
                         PropagatorCache& cache) {
  if (!(seg.duration >= 0.0)) throw std::invalid_argument("propagate: duration must be >= 0");
  if (seg.duration == 0.0) return rho;
  const Superoperator e = cache.get(p, seg.kind, seg.duration);
  return DensityMatrix3::hermitized(unvectorize(e * vectorize(rho.matrix())));
}

double emission_intensity(const DensityMatrix3& rho_t, const SystemParams& p) {
  return p.a3 * std::max(rho_t.population(kLevel3), 0.0);
}

double verify_integral_equation(const SystemParams& p, const DensityMatrix3& rho0, double tau_max,
                                int samples) {
  if (samples < 16) throw std::invalid_argument("verify_integral_equation: samples must be >= 16");
  if (!(tau_max > 0.0)) throw std::invalid_argument("verify_integral_equation: tau_max must be > 0");

  // Uniform grid resolving 1/A3 and 1/Omega3, with every sample time on an
  // even node so the convolution can use composite Simpson.
  const double rate = std::max({p.a3, p.omega3, p.omega2});
  const long stride = 2 * std::max(1L, static_cast<long>(std::ceil(tau_max * rate / (0.04 * (samples - 1)) / 2.0)));
  const long nodes = stride * (samples - 1);
  if (nodes > 20'000'000L) throw std::invalid_argument("verify_integral_equation: grid too fine");
  const double h = tau_max / static_cast<double>(nodes);

  const Superoperator step = liouvillian_exponential(p, GeneratorKind::ProbeOn, h);
  const Mat3C reduced_step = reduced_propagator(p, GeneratorKind::ProbeOn, h);
  std::vector<double> intensity(static_cast<std::size_t>(nodes) + 1);
  std::vector<double> reset_pop3(static_cast<std::size_t>(nodes) + 1);
  VecRho v = vectorize(rho0.matrix());
  Vec3C psi = Vec3C::UnitX();
  for (long k = 0; k <= nodes; ++k) {
    intensity[static_cast<std::size_t>(k)] = p.a3 * v(vec_index(kLevel3, kLevel3)).real();
    reset_pop3[static_cast<std::size_t>(k)] = std::norm(psi(kLevel3));
    v = step * v;
    psi = reduced_step * psi;
  }

  double worst = 0.0;
  for (int m = 0; m < samples; ++m) {
    const long last = stride * m;
    const double t = h * static_cast<double>(last);
    double conv = 0.0;
    for (long j = 0; j <= last; ++j) {
      const double w = (j == 0 || j == last) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      conv += w * intensity[static_cast<std::size_t>(last - j)] * reset_pop3[static_cast<std::size_t>(j)];
    }
    conv *= h / 3.0;
    const double rhs =
        p.a3 * no_emission_evolution(p, GeneratorKind::ProbeOn, t, rho0).population(kLevel3) + p.a3 * conv;
    worst = std::max(worst, std::abs(intensity[static_cast<std::size_t>(last)] - rhs));
  }
  return worst;
}

DensityMatrix3 run_schedule(const DensityMatrix3& rho0, const SystemParams& p,
                            const std::vector<Segment>& segments, const SegmentObserver& observer) {
  if (segments.empty()) throw std::invalid_argument("run_schedule: empty schedule");
  PropagatorCache local(segments.size() + 1);
  DensityMatrix3 rho = rho0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    rho = propagate(rho, p, segments[i], local);
    if (observer) observer(i, rho);
  }
  return rho;
}

}  // namespace zeno
