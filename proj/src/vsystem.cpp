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

#include "zeno/vsystem.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "zeno/errors.hpp"

namespace zeno {

SystemParams SystemParams::make(double omega2, double omega3, double a3) {
  if (!std::isfinite(omega2) || !std::isfinite(omega3) || !std::isfinite(a3)) {
    throw std::invalid_argument("SystemParams: non-finite rate");
  }
  if (a3 <= 0.0) throw std::invalid_argument("SystemParams: a3 must be > 0");
  if (omega2 < 0.0) throw std::invalid_argument("SystemParams: omega2 must be >= 0");
  if (omega3 < 0.0) throw std::invalid_argument("SystemParams: omega3 must be >= 0");
  return SystemParams{omega2, omega3, a3};
}

SystemParams SystemParams::reference() {
  return make(std::numbers::pi / kRefTPi, kRefOmega3, kRefA3);
}

SystemParams SystemParams::strong_probe() {
  return make(std::numbers::pi / kRefTPi, kRefA3 / 2.0, kRefA3);
}

double SystemParams::t_pi() const {
  return omega2 > 0.0 ? std::numbers::pi / omega2 : std::numeric_limits<double>::infinity();
}

SystemParams SystemParams::rescaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw std::invalid_argument("SystemParams::rescaled: factor must be finite and > 0");
  }
  return make(omega2 * factor, omega3 * factor, a3 * factor);
}

DensityMatrix3::DensityMatrix3(const Mat3C& m) : m_(m) {
  if (!m.allFinite()) throw std::invalid_argument("DensityMatrix3: non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("DensityMatrix3: matrix is not Hermitian");
  }
}

DensityMatrix3 DensityMatrix3::pure(const Vec3C& psi) {
  return hermitized(psi * psi.adjoint());
}

DensityMatrix3 DensityMatrix3::basis(int level) {
  if (level < 0 || level > 2) throw std::invalid_argument("DensityMatrix3::basis: level out of range");
  Mat3C m = Mat3C::Zero();
  m(level, level) = 1.0;
  return DensityMatrix3(m);
}

DensityMatrix3 DensityMatrix3::hermitized(const Mat3C& m) {
  Mat3C h = 0.5 * (m + m.adjoint());
  for (int i = 0; i < 3; ++i) h(i, i) = h(i, i).real();
  return DensityMatrix3(h);
}

DensityMatrix3 DensityMatrix3::normalized() const {
  const double w = weight();
  if (!(w > 0.0)) throw std::invalid_argument("DensityMatrix3::normalized: zero weight");
  return hermitized(m_ / w);
}

double DensityMatrix3::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Mat3C> solver(m_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

namespace {

Mat3C psd_sqrt(const Mat3C& m) {
  Eigen::SelfAdjointEigenSolver<Mat3C> solver(m);
  const Eigen::Vector3d roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix3& a, const DensityMatrix3& b) {
  const Mat3C root = psd_sqrt(a.matrix());
  const Mat3C inner = root * b.matrix() * root;
  Eigen::SelfAdjointEigenSolver<Mat3C> solver(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  const double t = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return t * t;
}

double trace_distance(const DensityMatrix3& a, const DensityMatrix3& b) {
  const Mat3C diff = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<Mat3C> solver(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

const char* to_string(GeneratorKind kind) {
  return kind == GeneratorKind::ProbeOn ? "probe_on" : "probe_off";
}

Mat3C build_generator(const SystemParams& p, GeneratorKind kind) {
  const Complex i(0.0, 1.0);
  Mat3C g = Mat3C::Zero();
  g(kLevel2, kLevel1) = g(kLevel1, kLevel2) = 0.5 * i * p.omega2;
  if (kind == GeneratorKind::ProbeOn) {
    g(kLevel3, kLevel1) = g(kLevel1, kLevel3) = 0.5 * i * p.omega3;
  }
  g(kLevel3, kLevel3) = 0.5 * p.a3;
  return g;
}

Mat3C u_pi(const SystemParams& p, double tau) {
  const double half = 0.5 * p.omega2 * tau;
  const double c = std::cos(half);
  const double s = std::sin(half);
  Mat3C u = Mat3C::Zero();
  u(0, 0) = u(1, 1) = c;
  u(0, 1) = u(1, 0) = Complex(0.0, -s);
  u(2, 2) = 1.0;
  return u;
}

Mat3C reduced_propagator(const SystemParams& p, GeneratorKind kind, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("reduced_propagator: tau must be >= 0");
  if (kind == GeneratorKind::ProbeOff) {
    Mat3C out = u_pi(p, tau);
    out(2, 2) = std::exp(-0.5 * p.a3 * tau);
    return out;
  }
  const Mat3C g = build_generator(p, kind);
  const EigenSystem es = eigensystem(g);
  if (es.degenerate) return expm_series(g, tau);
  return expm_spectral(es, tau);
}

DensityMatrix3 no_emission_evolution(const SystemParams& p, GeneratorKind kind, double tau,
                                     const DensityMatrix3& rho) {
  const Mat3C u = reduced_propagator(p, kind, tau);
  return DensityMatrix3::hermitized(u * rho.matrix() * u.adjoint());
}

namespace {

void require_normalized(const DensityMatrix3& rho, const char* where) {
  if (std::abs(rho.weight() - 1.0) > 1e-10) {
    throw std::invalid_argument(std::string(where) + ": rho must have unit trace");
  }
}

}  // namespace

double no_photon_probability(const SystemParams& p, GeneratorKind kind, double tau,
                             const DensityMatrix3& rho) {
  require_normalized(rho, "no_photon_probability");
  return std::clamp(no_emission_evolution(p, kind, tau, rho).weight(), 0.0, 1.0);
}

double first_photon_density(const SystemParams& p, GeneratorKind kind, double tau,
                            const DensityMatrix3& rho) {
  require_normalized(rho, "first_photon_density");
  const double pop3 = no_emission_evolution(p, kind, tau, rho).population(kLevel3);
  return p.a3 * std::max(pop3, 0.0);
}

DensityMatrix3 stationary_state(const SystemParams& p) {
  if (p.omega3 == 0.0) {
    throw NoStationaryStateError("stationary_state: probe Rabi frequency is zero");
  }
  const Mat3C shifted = build_generator(p, GeneratorKind::ProbeOn) - 0.5 * p.a3 * Mat3C::Identity();
  const Mat3C unnormalized = shifted * shifted.adjoint();
  return DensityMatrix3::hermitized(unnormalized / unnormalized.trace().real());
}

std::vector<RegimeWarning> validate_measurement_regime(const SystemParams& p, double tau_p,
                                                       double delta_t) {
  std::vector<RegimeWarning> out;
  const double pump_time = p.omega3 > 0.0 ? p.a3 / (p.omega3 * p.omega3)
                                          : std::numeric_limits<double>::infinity();
  const double min_pulse = 10.0 * std::max(1.0 / p.a3, pump_time);
  if (!(tau_p > min_pulse)) {
    std::ostringstream msg;
    msg << "probe pulse " << tau_p << " s is not >> max(1/A3, A3/Omega3^2) (need > " << min_pulse
        << " s)";
    out.push_back({RegimeCheck::PulseTooShort, msg.str()});
  }
  if (delta_t < p.tau_tr()) {
    std::ostringstream msg;
    msg << "free interval " << delta_t << " s is shorter than the transient time " << p.tau_tr()
        << " s";
    out.push_back({RegimeCheck::TransientTooShort, msg.str()});
  }
  const double eps[] = {p.omega3 > 0.0 ? p.eps_p() : std::numeric_limits<double>::infinity(),
                        p.omega3 > 0.0 ? p.eps_r() : std::numeric_limits<double>::infinity(),
                        p.eps_a()};
  const char* names[] = {"eps_p", "eps_R", "eps_A"};
  for (int k = 0; k < 3; ++k) {
    if (!(eps[k] < 0.1)) {
      std::ostringstream msg;
      msg << names[k] << " = " << eps[k] << " is not small (>= 0.1)";
      out.push_back({RegimeCheck::EpsilonTooLarge, msg.str()});
    }
  }
  return out;
}

namespace {

void raise_if(const std::vector<RegimeWarning>& warnings, bool include_transient) {
  std::vector<std::string> failed;
  for (const auto& w : warnings) {
    if (w.check == RegimeCheck::TransientTooShort && !include_transient) continue;
    failed.push_back(w.message);
  }
  if (!failed.empty()) throw RegimeError(std::move(failed));
}

}  // namespace

void require_pulse_regime(const SystemParams& p, double tau_p) {
  raise_if(validate_measurement_regime(p, tau_p, std::numeric_limits<double>::infinity()), false);
}

void require_measurement_regime(const SystemParams& p, double tau_p, double delta_t) {
  raise_if(validate_measurement_regime(p, tau_p, delta_t), true);
}

}  // namespace zeno
