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

// Single-pulse subensemble states and the closed-form predictions for the
// level-2 population after n probe pulses during an rf pi pulse.

#include <optional>
#include <string>
#include <vector>

#include "zeno/vsystem.hpp"

namespace zeno {

/// Normalized states right after a probe pulse (with and without emissions)
/// and the level-3-free virtual states they are equivalent to once the
/// transient has decayed.
struct PulseOutcomeStates {
  DensityMatrix3 rho_no_emission;
  DensityMatrix3 rho_emission;
  DensityMatrix3 rho_no_emission_projected;
  DensityMatrix3 rho_emission_projected;
};

/// Emission-rate expansion I(t) = c0 + c1 exp(-mu1 t) + (fast terms).
struct IntensityCoefficients {
  double c0 = 0.0;
  double c1 = 0.0;
  double mu1 = 0.0;
};

struct NoPhotonProbabilities {
  double p = 0.0;  // starting from the emission subensemble
  double q = 0.0;  // starting from the no-emission subensemble
};

/// Whether the first-order small-parameter terms are kept. `None` evaluates
/// the same expressions with every epsilon set to zero.
enum class Corrections { FirstOrder, None };

struct ZenoPrediction {
  int n = 0;
  double rho22_ideal = 0.0;     // n instantaneous projective measurements
  double rho22_modified = 0.0;  // projective, finite pulse length
  std::optional<double> rho22_quantum_jump;  // empty when the regime checks fail
  std::vector<RegimeWarning> warnings;
};

/// |lambda_slow><lambda_slow| from the exact slow eigenvector of M.
DensityMatrix3 no_emission_state(const SystemParams& p);

/// (rho_ss - e^{-M tau_p} rho_ss e^{-M^dagger tau_p}) / tr(...).
DensityMatrix3 emission_state(const SystemParams& p, double tau_p);

/// Level-3-free virtual state: P12 rho P12 plus rho_33 times the rf-rotated
/// reset contribution integrated over the full decay.
DensityMatrix3 project_after_transient(const SystemParams& p, const DensityMatrix3& rho);

PulseOutcomeStates projected_states(const SystemParams& p, double tau_p);

/// Exact probe-off evolution of a state over tau, including the reset to |1>
/// after a level-3 emission.
DensityMatrix3 transient_evolution(const SystemParams& p, const DensityMatrix3& state_at_pulse_end,
                                   double tau);

/// A3 Omega3^2 / (A3^2 + 2 Omega3^2): stationary rate of the bare 1-3 system.
double two_level_emission_rate(const SystemParams& p);

/// c1 is evaluated for `rho` (default |1><1|). Throws ConsistencyError if the
/// rate bounds fail.
IntensityCoefficients intensity_coefficients(const SystemParams& p);
IntensityCoefficients intensity_coefficients(const SystemParams& p, const DensityMatrix3& rho);

NoPhotonProbabilities pq_probabilities(const SystemParams& p, double tau_p, double delta_t,
                                       Corrections corrections = Corrections::FirstOrder);

/// beta(k) from the closed-form solution of beta(k+1) = p (1 - beta(k)) + q beta(k).
double beta_sequence(double p_prob, double q_prob, double beta1, int k);

/// No-emission probability of the first pulse for atoms prepared in |1>.
double beta_initial(const SystemParams& p, double tau_p, double delta_t,
                    Corrections corrections = Corrections::FirstOrder);

/// Level-2 population at T_pi for n cycles of [free delta_t, probe tau_p],
/// delta_t = T_pi / n - tau_p. Throws ScheduleError if delta_t <= 0.
ZenoPrediction zeno_prediction(const SystemParams& p, double tau_p, int n,
                               Corrections corrections = Corrections::FirstOrder);

/// Set when the emission subensemble for initial state `rho` carries less
/// than 10 eps_p weight; its state then deviates from emission_state() at
/// order eps_p T_pi / tau_p.
std::optional<std::string> emission_weight_warning(const SystemParams& p, double tau_p,
                                                   const DensityMatrix3& rho);

/// First-order closed forms of the four states, kept as cross-checks.
namespace first_order {
Mat3C no_emission_state(const SystemParams& p);
Mat3C emission_state(const SystemParams& p, double tau_p);
Mat3C no_emission_projected(const SystemParams& p);
Mat3C emission_projected(const SystemParams& p, double tau_p);
}  // namespace first_order

}  // namespace zeno
