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

// Ensemble (Bloch / master equation) dynamics of the V system:
//   d rho / dt = -(G rho + rho G^dagger) + A3 rho_33 |1><1|
// propagated exactly over piecewise-constant segments.
//
// Density matrices are vectorized column-major: vec(rho)[i + 3 j] = rho(i, j),
// so vec(A X B) = (B^T kron A) vec(X).

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "zeno/vsystem.hpp"

namespace zeno {

using Superoperator = MatC<9>;
using VecRho = Eigen::Matrix<Complex, 9, 1>;

constexpr int vec_index(int row, int col) { return row + 3 * col; }

VecRho vectorize(const Mat3C& m);
Mat3C unvectorize(const VecRho& v);

struct Segment {
  GeneratorKind kind = GeneratorKind::ProbeOff;
  double duration = 0.0;

  bool operator==(const Segment&) const = default;
};

Superoperator build_liouvillian(const SystemParams& p, GeneratorKind kind);

/// exp(L duration), uncached.
Superoperator liouvillian_exponential(const SystemParams& p, GeneratorKind kind, double duration);

/// Eigenvalues of L sorted by descending real part (the stationary mode first).
std::array<Complex, 9> liouvillian_spectrum(const SystemParams& p, GeneratorKind kind);

/// Memoizes exp(L duration) per (params, kind, duration). Safe for concurrent
/// use; concurrent misses on the same key compute once and keep the first
/// inserted value.
class PropagatorCache {
 public:
  explicit PropagatorCache(std::size_t max_entries = 4096) : max_entries_(max_entries) {}

  Superoperator get(const SystemParams& p, GeneratorKind kind, double duration);
  std::size_t size() const;

 private:
  using Key = std::tuple<double, double, double, int, double>;
  mutable std::shared_mutex mutex_;
  std::map<Key, Superoperator> entries_;
  std::size_t max_entries_;
};

/// Process-wide cache used by the overloads that do not take one.
PropagatorCache& default_propagator_cache();

DensityMatrix3 propagate(const DensityMatrix3& rho, const SystemParams& p, const Segment& seg);
DensityMatrix3 propagate(const DensityMatrix3& rho, const SystemParams& p, const Segment& seg,
                         PropagatorCache& cache);

/// A3 rho_33.
double emission_intensity(const DensityMatrix3& rho_t, const SystemParams& p);

/// Checks I(t) = A3 rho0_33(t; rho) + A3 int_0^t I(t - t') rho0_33(t'; |1>) dt'
/// with I from probe-on Bloch propagation, on `samples` equally spaced times in
/// [0, tau_max], the convolution by composite Simpson on a grid of step
/// 0.04 / max(A3, Omega3). Returns the largest absolute residual (1/s).
double verify_integral_equation(const SystemParams& p, const DensityMatrix3& rho0, double tau_max,
                                int samples);

using SegmentObserver = std::function<void(std::size_t index, const DensityMatrix3& state)>;

/// Applies the segments in order; exponentials are shared per distinct
/// (kind, duration).
DensityMatrix3 run_schedule(const DensityMatrix3& rho0, const SystemParams& p,
                            const std::vector<Segment>& segments,
                            const SegmentObserver& observer = {});

}  // namespace zeno
