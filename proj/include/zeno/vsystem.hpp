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

// Driven V-system model: two upper levels (2 stable, 3 decaying with rate A3)
// coupled to the ground level 1 by an rf field (Rabi frequency omega2) and a
// probe laser (omega3). All rates are in 1/s and all times in s.

#include <string>
#include <vector>

#include "zeno/linalg3.hpp"

namespace zeno {

// Basis indices for |1>, |2>, |3>.
inline constexpr int kLevel1 = 0;
inline constexpr int kLevel2 = 1;
inline constexpr int kLevel3 = 2;

// Reference experiment constants: pi-pulse length, Einstein coefficient,
// probe Rabi frequency and probe-pulse length.
inline constexpr double kRefTPi = 0.256;
inline constexpr double kRefA3 = 1.2e8;
inline constexpr double kRefOmega3 = 1.9e6;
inline constexpr double kRefTauP = 2.4e-3;

struct SystemParams {
  double omega2 = 0.0;
  double omega3 = 0.0;
  double a3 = 0.0;

  /// Validating constructor: a3 > 0, omega2 >= 0, omega3 >= 0, all finite.
  static SystemParams make(double omega2, double omega3, double a3);
  /// Reference parameters with omega2 = pi / T_pi.
  static SystemParams reference();
  /// Reference parameters with the strong probe omega3 = a3 / 2.
  static SystemParams strong_probe();

  double eps_p() const { return omega2 * a3 / (omega3 * omega3); }
  double eps_r() const { return omega2 / omega3; }
  double eps_a() const { return omega2 / a3; }
  /// pi / omega2 (infinite when the rf field is off).
  double t_pi() const;
  /// 15 / a3: after this long exp(-a3 t) < 1e-4 (amplitude exp(-a3 t / 2) < 1e-3).
  double tau_tr() const { return 15.0 / a3; }

  /// All rates multiplied by `factor`; every small parameter is unchanged and
  /// all characteristic times scale by 1 / factor.
  SystemParams rescaled(double factor) const;

  bool operator==(const SystemParams&) const = default;
};

/// Hermitian 3x3 state, possibly unnormalized; the trace is the weight of the
/// subensemble it describes.
class DensityMatrix3 {
 public:
  DensityMatrix3() = default;
  /// Throws std::invalid_argument when m is non-finite or not Hermitian to
  /// 1e-12 relative.
  explicit DensityMatrix3(const Mat3C& m);

  /// |psi><psi| (weight |psi|^2).
  static DensityMatrix3 pure(const Vec3C& psi);
  /// |level><level|.
  static DensityMatrix3 basis(int level);
  /// (m + m^dagger) / 2, for results of numerical propagation.
  static DensityMatrix3 hermitized(const Mat3C& m);

  const Mat3C& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }
  double population(int level) const { return m_(level, level).real(); }
  double weight() const { return m_.trace().real(); }
  DensityMatrix3 normalized() const;
  double min_eigenvalue() const;

 private:
  Mat3C m_ = Mat3C::Zero();
};

/// Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2 of two unit-weight states.
double fidelity(const DensityMatrix3& a, const DensityMatrix3& b);
/// Half the trace norm of a - b.
double trace_distance(const DensityMatrix3& a, const DensityMatrix3& b);

enum class GeneratorKind { ProbeOn, ProbeOff };

const char* to_string(GeneratorKind kind);

/// Reduced (no-emission) generator G, so that the conditional evolution is
/// exp(-G t). ProbeOn is the full M; ProbeOff drops the probe coupling.
Mat3C build_generator(const SystemParams& p, GeneratorKind kind);

/// rf rotation of the 1-2 block by the half angle omega2 * tau / 2.
Mat3C u_pi(const SystemParams& p, double tau);

/// exp(-G tau). ProbeOff uses the closed form U_pi(tau) P12 + exp(-a3 tau/2)|3><3|;
/// ProbeOn uses the spectral form, falling back to expm_series on degeneracy.
Mat3C reduced_propagator(const SystemParams& p, GeneratorKind kind, double tau);

/// exp(-G tau) rho exp(-G^dagger tau): the unnormalized no-emission subensemble.
DensityMatrix3 no_emission_evolution(const SystemParams& p, GeneratorKind kind, double tau,
                                     const DensityMatrix3& rho);

/// Probability of no photon emission in [0, tau]. rho must have unit weight.
double no_photon_probability(const SystemParams& p, GeneratorKind kind, double tau,
                             const DensityMatrix3& rho);

/// Density of the first emission time, -dP0/dtau = a3 * (evolved 33 entry).
double first_photon_density(const SystemParams& p, GeneratorKind kind, double tau,
                            const DensityMatrix3& rho);

/// Stationary state of the probe-on Bloch equations,
/// (M - a3/2)(M^dagger - a3/2) / tr(...). Throws NoStationaryStateError when
/// omega3 == 0.
DensityMatrix3 stationary_state(const SystemParams& p);

enum class RegimeCheck { PulseTooShort, TransientTooShort, EpsilonTooLarge };

struct RegimeWarning {
  RegimeCheck check;
  std::string message;
};

/// Factor-10 margins: tau_p > 10 max(1/a3, a3/omega3^2), delta_t >= tau_tr and
/// every small parameter below 0.1. Never throws.
std::vector<RegimeWarning> validate_measurement_regime(const SystemParams& p, double tau_p,
                                                       double delta_t);

/// Throws RegimeError if the pulse-length or small-parameter checks fail.
void require_pulse_regime(const SystemParams& p, double tau_p);
/// Throws RegimeError if any check fails.
void require_measurement_regime(const SystemParams& p, double tau_p, double delta_t);

}  // namespace zeno
