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

#include "zeno/pulse_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

constexpr double kProbabilityBand = 1e-9;

struct Eps {
  double p;
  double r;
  double a;
};

Eps epsilons(const SystemParams& p, Corrections corrections) {
  if (corrections == Corrections::None) return {0.0, 0.0, 0.0};
  return {p.eps_p(), p.eps_r(), p.eps_a()};
}

// sum_{j<m} c^j, i.e. (1 - c^m) / (1 - c) without the removable singularity.
double geometric_sum(double c, int m) {
  double sum = 0.0;
  double term = 1.0;
  for (int j = 0; j < m; ++j) {
    sum += term;
    term *= c;
  }
  return sum;
}

double checked_probability(double value, const char* what) {
  if (!std::isfinite(value) || value < -kProbabilityBand || value > 1.0 + kProbabilityBand) {
    std::ostringstream msg;
    msg << what << " = " << value << " lies outside [0, 1]; first-order expansion broke down";
    throw RegimeError({msg.str()});
  }
  return std::clamp(value, 0.0, 1.0);
}

// Integral over [0, tau] of A3 e^{-A3 t} U^dagger(t)|1><1|U(t).
Mat3C reset_kernel(const SystemParams& p, double tau) {
  const double a = p.a3;
  const double w = p.omega2;
  const double decay = std::isinf(tau) ? 0.0 : std::exp(-a * tau);
  const double wt = std::isinf(tau) ? 0.0 : w * tau;
  const double norm = a / (a * a + w * w);
  const double e0 = 1.0 - decay;
  const double ec = norm * (a - decay * (a * std::cos(wt) - w * std::sin(wt)));
  const double es = norm * (w - decay * (a * std::sin(wt) + w * std::cos(wt)));
  Mat3C k = Mat3C::Zero();
  k(0, 0) = 0.5 * (e0 + ec);
  k(1, 1) = 0.5 * (e0 - ec);
  k(0, 1) = Complex(0.0, -0.5 * es);
  k(1, 0) = Complex(0.0, 0.5 * es);
  return k;
}

Vec3C slow_eigenvector(const SystemParams& p) {
  const EigenSystem es = eigensystem(build_generator(p, GeneratorKind::ProbeOn));
  const Complex slow = es.eigenvalues[EigenSystem::kSlowIndex];
  const double threshold = default_gap_threshold(es.eigenvalues);
  for (std::size_t i = 1; i < 3; ++i) {
    if (std::abs(es.eigenvalues[i] - slow) < threshold || std::abs(es.eigenvalues[i] - slow) == 0.0) {
      throw RegimeError({"slow eigenvalue of M is not isolated; no-emission state is ambiguous"});
    }
  }
  return es.right_vectors[EigenSystem::kSlowIndex];
}

}  // namespace

DensityMatrix3 no_emission_state(const SystemParams& p) {
  return DensityMatrix3::pure(slow_eigenvector(p)).normalized();
}

DensityMatrix3 emission_state(const SystemParams& p, double tau_p) {
  require_pulse_regime(p, tau_p);
  const DensityMatrix3 ss = stationary_state(p);
  const DensityMatrix3 survived = no_emission_evolution(p, GeneratorKind::ProbeOn, tau_p, ss);
  return DensityMatrix3::hermitized(ss.matrix() - survived.matrix()).normalized();
}

DensityMatrix3 project_after_transient(const SystemParams& p, const DensityMatrix3& rho) {
  Mat3C out = Mat3C::Zero();
  out.topLeftCorner<2, 2>() = rho.matrix().topLeftCorner<2, 2>();
  out += rho.population(kLevel3) * reset_kernel(p, std::numeric_limits<double>::infinity());
  return DensityMatrix3::hermitized(out);
}

PulseOutcomeStates projected_states(const SystemParams& p, double tau_p) {
  PulseOutcomeStates out;
  out.rho_emission = emission_state(p, tau_p);
  out.rho_no_emission = no_emission_state(p);
  out.rho_emission_projected = project_after_transient(p, out.rho_emission);
  out.rho_no_emission_projected = project_after_transient(p, out.rho_no_emission);
  return out;
}

DensityMatrix3 transient_evolution(const SystemParams& p, const DensityMatrix3& state_at_pulse_end,
                                   double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("transient_evolution: tau must be >= 0");
  const Mat3C u = u_pi(p, tau);
  const DensityMatrix3 survived =
      no_emission_evolution(p, GeneratorKind::ProbeOff, tau, state_at_pulse_end);
  const Mat3C reset = state_at_pulse_end.population(kLevel3) * u * reset_kernel(p, tau) * u.adjoint();
  return DensityMatrix3::hermitized(survived.matrix() + reset);
}

double two_level_emission_rate(const SystemParams& p) {
  const double a2 = p.a3 * p.a3;
  const double o2 = p.omega3 * p.omega3;
  return p.a3 * o2 / (a2 + 2.0 * o2);
}

IntensityCoefficients intensity_coefficients(const SystemParams& p) {
  return intensity_coefficients(p, DensityMatrix3::basis(kLevel1));
}

IntensityCoefficients intensity_coefficients(const SystemParams& p, const DensityMatrix3& rho) {
  if (!(p.omega3 > 0.0)) throw std::invalid_argument("intensity_coefficients: omega3 must be > 0");
  const double a2 = p.a3 * p.a3;
  const double o2 = p.omega3 * p.omega3;
  const double d = a2 + 2.0 * o2;

  IntensityCoefficients out;
  out.c0 = 0.5 * p.a3 * o2 / (a2 + o2);
  out.mu1 = 2.0 * p.eps_p() * p.omega2 * (a2 + o2) / d;

  const Vec3C slow = slow_eigenvector(p);
  const double slow_overlap = (slow.adjoint() * rho.matrix() * slow)(0, 0).real();
  out.c1 = out.c0 * (a2 / d - 2.0 * (a2 + o2) / d * slow_overlap);

  const double bound = two_level_emission_rate(p) * (1.0 + 1e-12);
  if (out.c0 < 0.0 || out.c0 > bound || std::abs(out.c1) > bound) {
    std::ostringstream msg;
    msg << "intensity_coefficients: c0 = " << out.c0 << ", c1 = " << out.c1
        << " violate the two-level rate bound " << bound;
    throw ConsistencyError(msg.str());
  }
  return out;
}

NoPhotonProbabilities pq_probabilities(const SystemParams& p, double tau_p, double delta_t,
                                       Corrections corrections) {
  require_measurement_regime(p, tau_p, delta_t);
  const Eps eps = epsilons(p, corrections);
  const double c = std::cos(p.omega2 * delta_t);
  const double s = std::sin(p.omega2 * delta_t);
  const double a2 = p.a3 * p.a3;
  const double o2 = p.omega3 * p.omega3;
  const double d = a2 + 2.0 * o2;
  const double rot = p.omega2 * tau_p;  // pi tau_p / T_pi

  NoPhotonProbabilities out;
  out.p = 0.5 * (1.0 - c) +
          eps.p * (2.0 * s * (a2 + o2) / d + 0.5 * rot * c * (3.0 * a2 + 2.0 * o2) / d - 0.5 * rot) -
          0.5 * s * o2 / d * eps.a;
  out.q = 0.5 * (1.0 + c) - eps.p * (2.0 * s + 0.5 * rot * (1.0 + c));
  out.p = checked_probability(out.p, "p");
  out.q = checked_probability(out.q, "q");
  return out;
}

double beta_sequence(double p_prob, double q_prob, double beta1, int k) {
  for (double v : {p_prob, q_prob, beta1}) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("beta_sequence: inputs must lie in [0, 1]");
  }
  if (k < 1) throw std::invalid_argument("beta_sequence: k must be >= 1");
  if (k == 1) return beta1;
  const double r = q_prob - p_prob;
  return p_prob * geometric_sum(r, k - 1) + std::pow(r, k - 1) * beta1;
}

double beta_initial(const SystemParams& p, double tau_p, double delta_t, Corrections corrections) {
  require_measurement_regime(p, tau_p, delta_t);
  const Eps eps = epsilons(p, corrections);
  const double c = std::cos(p.omega2 * delta_t);
  const double s = std::sin(p.omega2 * delta_t);
  const double value = 0.5 * (1.0 - c) + eps.p * s - 0.5 * p.omega2 * tau_p * (1.0 - c) * eps.p;
  return checked_probability(value, "beta(1)");
}

ZenoPrediction zeno_prediction(const SystemParams& p, double tau_p, int n, Corrections corrections) {
  if (n < 1) throw std::invalid_argument("zeno_prediction: n must be >= 1");
  if (!(p.omega2 > 0.0)) throw std::invalid_argument("zeno_prediction: omega2 must be > 0");
  const double t_pi = p.t_pi();
  const double delta_t = t_pi / n - tau_p;
  if (!(delta_t > 0.0)) {
    std::ostringstream msg;
    msg << "n = " << n << " probe pulses of " << tau_p << " s do not fit into T_pi = " << t_pi << " s";
    throw ScheduleError(msg.str());
  }

  ZenoPrediction out;
  out.n = n;
  out.rho22_ideal = 0.5 * (1.0 - std::pow(std::cos(std::numbers::pi / n), n));
  const double c = std::cos(p.omega2 * delta_t);
  const double s = std::sin(p.omega2 * delta_t);
  const double cn = std::pow(c, n);
  const double cn1 = std::pow(c, n - 1);
  out.rho22_modified = 0.5 * (1.0 - cn);

  out.warnings = validate_measurement_regime(p, tau_p, delta_t);
  if (out.warnings.empty()) {
    const Eps eps = epsilons(p, corrections);
    const double a2 = p.a3 * p.a3;
    const double o2 = p.omega3 * p.omega3;
    const double d = a2 + 2.0 * o2;
    const double rot = std::numbers::pi * tau_p / t_pi;
    const double first =
        s * cn1 * ((2.0 * n - 1.0) * a2 + 3.0 * n * o2) / d + rot * n * cn * (a2 + o2) / d -
        geometric_sum(c, n) * (s + rot) * o2 / d;
    const double rf = 0.25 * s * o2 / d * (geometric_sum(c, n - 1) + (n - 1) * cn1);
    const double qj = out.rho22_modified + eps.p * first - eps.a * rf;
    out.rho22_quantum_jump = checked_probability(qj, "rho22 (quantum jump)");
  }
  return out;
}

std::optional<std::string> emission_weight_warning(const SystemParams& p, double tau_p,
                                                   const DensityMatrix3& rho) {
  const double weight = 1.0 - no_photon_probability(p, GeneratorKind::ProbeOn, tau_p, rho);
  if (weight < 10.0 * p.eps_p()) {
    std::ostringstream msg;
    msg << "emission subensemble weight " << weight << " < 10 eps_p = " << 10.0 * p.eps_p()
        << "; its state is only accurate to order eps_p T_pi / tau_p";
    return msg.str();
  }
  return std::nullopt;
}

namespace first_order {

Mat3C no_emission_state(const SystemParams& p) {
  const Complex i(0.0, 1.0);
  Mat3C m = Mat3C::Zero();
  m(0, 1) = -i * p.eps_p();
  m(1, 0) = i * p.eps_p();
  m(1, 1) = 1.0;
  m(1, 2) = m(2, 1) = -p.eps_r();
  return m;
}

Mat3C emission_state(const SystemParams& p, double tau_p) {
  const Complex i(0.0, 1.0);
  const double a2 = p.a3 * p.a3;
  const double o2 = p.omega3 * p.omega3;
  const double dark = a2 * p.eps_p() * p.omega2 * tau_p;
  Mat3C m;
  m << a2 + o2, i * p.eps_p() * a2, i * p.a3 * p.omega3,
      -i * p.eps_p() * a2, dark, p.eps_r() * (a2 + o2),
      -i * p.a3 * p.omega3, p.eps_r() * (a2 + o2), o2;
  return m / (a2 + 2.0 * o2 + dark);
}

Mat3C no_emission_projected(const SystemParams& p) {
  Mat3C m = first_order::no_emission_state(p);
  m(1, 2) = m(2, 1) = 0.0;
  return m;
}

Mat3C emission_projected(const SystemParams& p, double tau_p) {
  const Complex i(0.0, 1.0);
  const double a2 = p.a3 * p.a3;
  const double o2 = p.omega3 * p.omega3;
  const double dark = a2 * p.eps_p() * p.omega2 * tau_p;
  const Complex coherence = i * p.eps_p() * a2 - 0.5 * i * p.eps_a() * o2;
  Mat3C m = Mat3C::Zero();
  m(0, 0) = a2 + 2.0 * o2;
  m(0, 1) = coherence;
  m(1, 0) = std::conj(coherence);
  m(1, 1) = dark;
  return m / (a2 + 2.0 * o2 + dark);
}

}  // namespace first_order
}  // namespace zeno
