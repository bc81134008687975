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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "zeno/checks.hpp"
#include "zeno/errors.hpp"
#include "zeno/experiment.hpp"
#include "zeno/montecarlo.hpp"
#include "zeno/pulse_analysis.hpp"

namespace zeno::checks {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TabulatedRow {
  int n;
  double ideal;
  double modified;
  double quantum_jump;
  double bloch;
};

// Level-2 populations at the end of the pi pulse, reference setup.
constexpr TabulatedRow kReferenceTable[] = {
    {1, 1.00000, 0.99978, 0.99978, 0.99978},  {2, 0.50000, 0.49957, 0.49960, 0.49960},
    {4, 0.37500, 0.35985, 0.36062, 0.36056},  {8, 0.23460, 0.20857, 0.20998, 0.20993},
    {16, 0.13343, 0.10029, 0.10215, 0.10212}, {32, 0.07156, 0.03642, 0.03841, 0.03840},
    {64, 0.00371, 0.00613, 0.00789, 0.00789}};

// Same with Omega3 = A3 / 2.
constexpr TabulatedRow kStrongProbeTable[] = {
    {1, kNaN, 0.99978, 0.99978, 0.99978},  {2, kNaN, 0.49957, 0.49957, 0.49956},
    {4, kNaN, 0.35985, 0.35985, 0.35979},  {8, kNaN, 0.20857, 0.20858, 0.20853},
    {16, kNaN, 0.10029, 0.10030, 0.10027}, {32, kNaN, 0.03642, 0.03642, 0.03641},
    {64, kNaN, 0.00613, 0.00613, 0.00613}};

std::string format(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

double max_abs_diff(const Mat3C& a, const Mat3C& b) { return (a - b).cwiseAbs().maxCoeff(); }

class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}

  // Records a failure unless ok; returns ok.
  bool expect(bool ok, const std::string& what) {
    if (!ok) r_.failures.push_back(what);
    return ok;
  }
  void note(const std::string& what) { r_.notes.push_back(what); }

 private:
  CriterionResult& r_;
};

bool within(double value, double target, double tol) {
  return std::abs(value - target) <= tol * (1.0 + 1e-9);
}

void compare_table(Recorder& rec, const std::vector<ComparisonRow>& rows, const TabulatedRow* table,
                   double tol_ideal, double tol_closed, double tol_bloch) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ComparisonRow& row = rows[i];
    const TabulatedRow& ref = table[i];
    struct Column {
      Method m;
      double tabulated;
      double tol;
    };
    const Column columns[] = {{Method::IdealPP, ref.ideal, tol_ideal},
                              {Method::ModifiedPP, ref.modified, tol_closed},
                              {Method::QuantumJump, ref.quantum_jump, tol_closed},
                              {Method::Bloch, ref.bloch, tol_bloch}};
    for (const auto& c : columns) {
      if (std::isnan(c.tabulated)) continue;
      const auto it = row.values.find(c.m);
      if (it == row.values.end()) {
        rec.expect(false, format("n=%d %s: no value computed", row.n, to_string(c.m)));
        continue;
      }
      rec.expect(within(it->second, c.tabulated, c.tol),
                 format("n=%d %s: computed %.7f, tabulated %.5f, |diff| %.2e > %.0e", row.n,
                        to_string(c.m), it->second, c.tabulated, std::abs(it->second - c.tabulated), c.tol));
    }
  }
}

// Bloch column recomputed with the Rabi frequency rounded to 12.27 / s while
// the schedule still spans T_pi = 0.256 s.
void rounded_rabi_note(Recorder& rec, const SystemParams& p, const TabulatedRow* table) {
  const SystemParams rounded = SystemParams::make(12.27, p.omega3, p.a3);
  double worst = 0.0;
  for (int i = 0; i < 7; ++i) {
    const auto schedule = build_schedule(kRefTPi, kRefTauP, table[i].n);
    const double v = run_schedule(DensityMatrix3::basis(kLevel1), rounded, schedule).population(kLevel2);
    worst = std::max(worst, std::abs(v - table[i].bloch));
  }
  rec.note(format("INFO bloch column with Omega2 = 12.27 /s: max |diff| to tabulated values %.2e", worst));
}

Mat3C random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat3C a;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  const Mat3C m = a * a.adjoint();
  return m / m.trace().real();
}

// Regime-valid random parameters: eps_p log-uniform in [1e-6, 1e-1],
// Omega3 / A3 in [1e-2, 1].
SystemParams random_regime_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double a3 = std::pow(10.0, 6.0 + 3.0 * u(rng));
  const double omega3 = a3 * std::pow(10.0, -2.0 + 2.0 * u(rng));
  const double eps_p = std::pow(10.0, -6.0 + 5.0 * u(rng));
  return SystemParams::make(eps_p * omega3 * omega3 / a3, omega3, a3);
}

void criterion_tables(Recorder& rec, const ExperimentConfig& cfg, const TabulatedRow* table,
                      double tol_ideal, double tol_closed, double tol_bloch) {
  const auto rows = run_comparison(cfg);
  compare_table(rec, rows, table, tol_ideal, tol_closed, tol_bloch);
  rounded_rabi_note(rec, cfg.params, table);
}

void criterion_1(Recorder& rec, const AcceptanceOptions&) {
  criterion_tables(rec, table1_config(), kReferenceTable, 1e-5, 1e-5, 2e-5);
}

void criterion_2(Recorder& rec, const AcceptanceOptions&) {
  const ExperimentConfig cfg = table2_config();
  const EigenSystem es = eigensystem(build_generator(cfg.params, GeneratorKind::ProbeOn));
  rec.note(format("INFO probe-on spectrum degenerate: %s (gap %.4g /s)", es.degenerate ? "yes" : "no",
                  es.degeneracy_gap));
  criterion_tables(rec, cfg, kStrongProbeTable, kNaN, 2e-5, 2e-5);
}

void criterion_3(Recorder& rec, const AcceptanceOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int draws = 0;
  int degenerate = 0;
  while (draws < 50) {
    const double a3 = std::pow(10.0, 5.0 + 4.0 * u(rng));
    const SystemParams p = SystemParams::make(a3 * std::pow(10.0, -8.0 + 7.5 * u(rng)),
                                              a3 * std::pow(10.0, -2.0 + 2.3 * u(rng)), a3);
    const GeneratorKind kind = u(rng) < 0.75 ? GeneratorKind::ProbeOn : GeneratorKind::ProbeOff;
    const Mat3C g = build_generator(p, kind);
    const EigenSystem es = eigensystem(g);
    if (es.degenerate) {
      ++degenerate;
      continue;
    }
    const double t = std::pow(10.0, -3.0 + 4.5 * u(rng)) / a3;
    const double d = max_abs_diff(expm_spectral(es, t), expm_series(g, t));
    worst = std::max(worst, d);
    rec.expect(d <= 1e-10, format("expm draw %d (A3=%.3g, t=%.3g): |diff| %.2e > 1e-10", draws, a3, t, d));
    ++draws;
  }
  rec.note(format("spectral vs series exponential: max |diff| %.2e over 50 draws (%d degenerate redrawn)",
                  worst, degenerate));

  const SystemParams sets[] = {SystemParams::reference().rescaled(1e-4),
                               SystemParams::strong_probe().rescaled(1e-4),
                               SystemParams::make(300.0, 4.0e3, 1.0e4)};
  const std::vector<Segment> schedule{{GeneratorKind::ProbeOn, 4e-3},
                                      {GeneratorKind::ProbeOff, 3e-3},
                                      {GeneratorKind::ProbeOn, 2e-3},
                                      {GeneratorKind::ProbeOff, 1e-3}};
  double worst_rk = 0.0;
  for (const auto& p : sets) {
    const DensityMatrix3 rho0(random_density(rng));
    const double step = 2e-3 / std::max(p.a3, p.omega3);
    const DensityMatrix3 exact = run_schedule(rho0, p, schedule);
    const DensityMatrix3 rk = integrate_bloch_rk4(rho0, p, schedule, step);
    const double d = max_abs_diff(exact.matrix(), rk.matrix());
    worst_rk = std::max(worst_rk, d);
    rec.expect(d <= 1e-7, format("superoperator vs RK4 (A3=%.3g): |diff| %.2e > 1e-7", p.a3, d));
  }
  rec.note(format("superoperator vs RK4: max |diff| %.2e", worst_rk));
}

void criterion_4(Recorder& rec, const AcceptanceOptions& opts) {
  std::mt19937_64 rng(opts.seed + 1);
  double worst_vieta = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  int below = 0;
  int above = 0;
  int confirmed = 0;
  for (int k = 0; k < 100; ++k) {
    const SystemParams p = random_regime_params(rng);
    const EigenSystem es = eigensystem(build_generator(p, GeneratorKind::ProbeOn));
    const auto& l = es.eigenvalues;
    const Complex e1 = l[0] + l[1] + l[2];
    const Complex e2 = l[0] * l[1] + l[0] * l[2] + l[1] * l[2];
    const Complex e3 = l[0] * l[1] * l[2];
    const double s1 = std::abs(l[0]) + std::abs(l[1]) + std::abs(l[2]);
    const double s2 = std::abs(l[0] * l[1]) + std::abs(l[0] * l[2]) + std::abs(l[1] * l[2]);
    const double s3 = std::abs(e3);
    const double w2 = p.omega2 * p.omega2;
    const double r[] = {std::abs(e1 - 0.5 * p.a3) / s1,
                        std::abs(e2 - 0.25 * (w2 + p.omega3 * p.omega3)) / s2,
                        std::abs(e3 - 0.125 * p.a3 * w2) / s3};
    const double rv = std::max({r[0], r[1], r[2]});
    worst_vieta = std::max(worst_vieta, rv);
    rec.expect(rv <= 1e-12, format("Vieta draw %d: relative residual %.2e > 1e-12", k, rv));

    const double slow = l[EigenSystem::kSlowIndex].real();
    const double base = 0.5 * p.omega2 * p.eps_p() / (1.0 + p.eps_r() * p.eps_r());
    const double lo = base;
    const double hi = base * (1.0 + p.eps_p() * p.eps_p());
    if (!(lo <= slow)) ++below;
    if (!(slow <= hi)) {
      ++above;
      // The cubic is negative below its real root, so p(hi) < 0 independently
      // confirms that the root lies above hi.
      const long double x = hi;
      const long double cubic = x * x * x - 0.5L * p.a3 * x * x +
                                0.25L * (static_cast<long double>(w2) + static_cast<long double>(p.omega3) * p.omega3) * x -
                                0.125L * p.a3 * w2;
      if (cubic < 0.0L) ++confirmed;
    }
    min_margin = std::min(min_margin, std::min(slow - lo, hi - slow) / (hi - lo));
  }
  rec.expect(below == 0, format("slow root below the lower bracket bound in %d of 100 draws", below));
  rec.expect(above == 0, format("slow root above the upper bracket bound in %d of 100 draws "
                                "(cubic negative at the upper bound in %d of them)",
                                above, confirmed));
  rec.note(format("Vieta: max relative residual %.2e; slow-root bracket: min relative margin %.3f",
                  worst_vieta, min_margin));

  double worst_ss = 0.0;
  std::vector<SystemParams> ss_sets{SystemParams::reference(), SystemParams::strong_probe()};
  for (int k = 0; k < 20; ++k) ss_sets.push_back(random_regime_params(rng));
  for (const auto& p : ss_sets) {
    const VecRho res = build_liouvillian(p, GeneratorKind::ProbeOn) * vectorize(stationary_state(p).matrix());
    const double rel = res.cwiseAbs().maxCoeff() / p.a3;
    worst_ss = std::max(worst_ss, rel);
    rec.expect(rel <= 1e-12, format("stationary residual %.2e A3 > 1e-12 A3 (A3=%.3g)", rel, p.a3));
  }
  rec.note(format("stationary state: max residual %.2e A3", worst_ss));

  const SystemParams ref = SystemParams::reference();
  const double c0 = intensity_coefficients(ref).c0;
  const double tau_max = 10.0 * ref.a3 / (ref.omega3 * ref.omega3);
  const DensityMatrix3 starts[] = {DensityMatrix3::basis(kLevel1), DensityMatrix3::basis(kLevel2),
                                   DensityMatrix3(random_density(rng))};
  double worst_ie = 0.0;
  for (const auto& rho : starts) {
    const double res = verify_integral_equation(ref, rho, tau_max, 24);
    worst_ie = std::max(worst_ie, res / c0);
    rec.expect(res <= 1e-6 * c0, format("integral equation residual %.2e c0 > 1e-6 c0", res / c0));
  }
  rec.note(format("integral equation: max residual %.2e c0", worst_ie));

  int bound_violations = 0;
  for (int k = 0; k < 100; ++k) {
    const SystemParams p = random_regime_params(rng);
    const DensityMatrix3 rho(random_density(rng));
    const double bound = p.a3 * p.omega3 * p.omega3 / (p.a3 * p.a3 + 2.0 * p.omega3 * p.omega3);
    try {
      const IntensityCoefficients ic = intensity_coefficients(p, rho);
      if (!(ic.c0 >= 0.0 && ic.c0 <= bound && std::abs(ic.c1) <= bound)) ++bound_violations;
    } catch (const ConsistencyError& e) {
      ++bound_violations;
      rec.note(e.what());
    }
  }
  rec.expect(bound_violations == 0, format("intensity coefficient bounds violated in %d of 100 draws",
                                           bound_violations));

  const auto spectrum = liouvillian_spectrum(ref, GeneratorKind::ProbeOn);
  const double slow_mode = -spectrum[1].real();
  const double mu1 = intensity_coefficients(ref).mu1;
  const double rel = std::abs(slow_mode - mu1) / mu1;
  rec.expect(rel <= 0.01, format("slow Liouvillian mode %.6g vs mu1 %.6g: relative diff %.2e > 1%%",
                                 slow_mode, mu1, rel));
  rec.note(format("slow Liouvillian mode %.9g /s, mu1 %.9g /s, relative diff %.2e", slow_mode, mu1, rel));
}

void criterion_5(Recorder& rec, const AcceptanceOptions&) {
  const SystemParams p = SystemParams::reference();
  const double tau_p = kRefTauP;
  const double eps = std::max({p.eps_p(), p.eps_r(), p.eps_a()});
  const double tol = 10.0 * eps * eps;
  const PulseOutcomeStates st = projected_states(p, tau_p);
  struct Pair {
    const char* name;
    Mat3C exact;
    Mat3C first_order;
  };
  const Pair pairs[] = {
      {"no-emission state", st.rho_no_emission.matrix(), first_order::no_emission_state(p)},
      {"emission state", st.rho_emission.matrix(), first_order::emission_state(p, tau_p)},
      {"projected no-emission state", st.rho_no_emission_projected.matrix(),
       first_order::no_emission_projected(p)},
      {"projected emission state", st.rho_emission_projected.matrix(),
       first_order::emission_projected(p, tau_p)}};
  for (const auto& pr : pairs) {
    const double d = max_abs_diff(pr.exact, pr.first_order);
    rec.expect(d <= tol, format("%s: |exact - first order| %.2e > 10 eps^2 = %.2e", pr.name, d, tol));
    rec.note(format("%s: |exact - first order| %.2e (10 eps^2 = %.2e)", pr.name, d, tol));
  }

  const SystemParams weak = SystemParams::make(p.omega2 * 1e-6, p.omega3, p.a3);
  const double weak_eps = std::max({weak.eps_p(), weak.eps_r(), weak.eps_a()});
  const PulseOutcomeStates lim = projected_states(weak, tau_p);
  const double d0 = max_abs_diff(lim.rho_no_emission_projected.matrix(), DensityMatrix3::basis(kLevel2).matrix());
  const double d1 = max_abs_diff(lim.rho_emission_projected.matrix(), DensityMatrix3::basis(kLevel1).matrix());
  rec.expect(d0 <= 10.0 * weak_eps, format("eps->0: projected no-emission state off |2><2| by %.2e", d0));
  rec.expect(d1 <= 10.0 * weak_eps, format("eps->0: projected emission state off |1><1| by %.2e", d1));
  rec.note(format("eps = %.2e: distance to |2><2| %.2e, to |1><1| %.2e", weak_eps, d0, d1));

  double worst_post = 0.0;
  for (const int n : {1, 2, 4, 8, 16, 32, 64}) {
    const double dt = p.t_pi() / n - tau_p;
    const Mat3C u = u_pi(p, dt);
    for (const auto* rho : {&st.rho_no_emission, &st.rho_emission}) {
      const DensityMatrix3 bloch = propagate(*rho, p, Segment{GeneratorKind::ProbeOff, dt});
      const DensityMatrix3 projected = project_after_transient(p, *rho);
      const double d = max_abs_diff(bloch.matrix(), u * projected.matrix() * u.adjoint());
      worst_post = std::max(worst_post, d);
      rec.expect(d <= 1e-6, format("post-transient n=%d: |Bloch - rotated projection| %.2e > 1e-6", n, d));
    }
  }
  rec.note(format("post-transient equality: max |diff| %.2e", worst_post));

  double worst_transient = 0.0;
  for (const double k : {0.1, 1.0, 5.0, 15.0, 50.0}) {
    const double tau = k / p.a3;
    const DensityMatrix3 bloch = propagate(st.rho_emission, p, Segment{GeneratorKind::ProbeOff, tau});
    const double d = max_abs_diff(bloch.matrix(), transient_evolution(p, st.rho_emission, tau).matrix());
    worst_transient = std::max(worst_transient, d);
    rec.expect(d <= 1e-9, format("transient at %.1f/A3: |Bloch - closed form| %.2e > 1e-9", k, d));
  }
  rec.note(format("transient closed form vs Bloch: max |diff| %.2e", worst_transient));
}

void criterion_6(Recorder& rec, const AcceptanceOptions& opts) {
  const double f = 1e-4;
  const SystemParams ref = SystemParams::reference();
  const SystemParams p = ref.rescaled(f);
  const double t_pi = kRefTPi / f;
  const double tau_p = kRefTauP / f;

  const KsResult ks = first_jump_ks_test(p, tau_p, 10000, opts.seed);
  rec.expect(ks.passed(), format("KS first-jump: D = %.4f >= %.4f", ks.statistic, ks.critical_1pct));
  rec.note(format("KS first-jump: D = %.4f, critical %.4f, censored %d", ks.statistic, ks.critical_1pct,
                  ks.n_censored));

  const int n = 8;
  const double dt = kRefTPi / n - kRefTauP;
  const double beta1 = beta_initial(ref, kRefTauP, dt);
  const std::vector<Segment> first{{GeneratorKind::ProbeOff, dt / f}, {GeneratorKind::ProbeOn, tau_p}};
  const EnsembleEstimate one = run_ensemble(Vec3C::UnitX(), p, first, 10000, opts.seed + 1, opts.n_threads);
  const MeanStderr p0 = one.p0_frequency_per_pulse.at(0);
  rec.expect(std::abs(p0.mean - beta1) <= 4.0 * p0.stderr_,
             format("first-pulse no-emission frequency %.5f +- %.5f vs beta(1) %.5f", p0.mean, p0.stderr_,
                    beta1));
  rec.note(format("first-pulse no-emission frequency %.5f +- %.5f, beta(1) %.5f", p0.mean, p0.stderr_, beta1));

  const auto schedule = build_schedule(t_pi, tau_p, n);
  const double bloch = run_schedule(DensityMatrix3::basis(kLevel1), p, schedule).population(kLevel2);
  const EnsembleEstimate full = run_ensemble(Vec3C::UnitX(), p, schedule, 10000, opts.seed + 2, opts.n_threads);
  const double mc = full.pop_mean[kLevel2];
  const double se = full.pop_stderr[kLevel2];
  rec.expect(std::abs(mc - bloch) <= 3.0 * se,
             format("n=8 final rho22: MC %.5f +- %.5f vs Bloch %.5f", mc, se, bloch));
  rec.note(format("n=8 final rho22: MC %.5f +- %.5f, Bloch %.5f", mc, se, bloch));

  const auto small = build_schedule(t_pi, tau_p, 4);
  const EnsembleEstimate a = run_ensemble(Vec3C::UnitX(), p, small, 400, opts.seed + 3, 1);
  const EnsembleEstimate b = run_ensemble(Vec3C::UnitX(), p, small, 400, opts.seed + 3, 3);
  const bool same = a.pop_mean == b.pop_mean && a.pop_stderr == b.pop_stderr &&
                    a.mean_state.matrix() == b.mean_state.matrix() &&
                    a.mean_emissions_per_pulse == b.mean_emissions_per_pulse;
  rec.expect(same, "ensemble results differ between 1 and 3 threads");
  const TrajectoryRecord t1 = evolve_trajectory(Vec3C::UnitX(), p, small, 99);
  const TrajectoryRecord t2 = evolve_trajectory(Vec3C::UnitX(), p, small, 99);
  rec.expect(t1 == t2, "trajectory not reproducible for a fixed seed");
}

void criterion_7(Recorder& rec, const AcceptanceOptions&) {
  int checked = 0;
  double worst = 0.0;
  for (const SystemParams& p : {SystemParams::reference(), SystemParams::strong_probe()}) {
    for (int n = 1; p.t_pi() / n - kRefTauP > 0.0; ++n) {
      const ZenoPrediction bare = zeno_prediction(p, kRefTauP, n, Corrections::None);
      if (!rec.expect(bare.rho22_quantum_jump.has_value(),
                      format("n=%d: quantum-jump value not available", n))) {
        continue;
      }
      const double d = std::abs(*bare.rho22_quantum_jump - bare.rho22_modified);
      worst = std::max(worst, d);
      rec.expect(d <= 1e-14, format("n=%d: |bare quantum jump - modified| %.2e > 1e-14", n, d));
      ++checked;
    }
  }
  rec.note(format("%d accepted n values, max |diff| %.2e", checked, worst));
}

struct CriterionDef {
  const char* title;
  double budget;
  void (*body)(Recorder&, const AcceptanceOptions&);
};

constexpr CriterionDef kCriteria[kCriterionCount] = {
    {"reference-setup table", 5.0, criterion_1},
    {"strong-probe table (Omega3 = A3/2)", 5.0, criterion_2},
    {"oracle equivalence", 30.0, criterion_3},
    {"analytic structure", 60.0, criterion_4},
    {"projection states", 10.0, criterion_5},
    {"Monte Carlo statistics", 600.0, criterion_6},
    {"bare quantum-jump identity", 1.0, criterion_7}};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("unknown criterion " + std::to_string(id));
  const CriterionDef& def = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = def.title;
  r.budget_seconds = def.budget;
  Recorder rec(r);
  const auto start = std::chrono::steady_clock::now();
  try {
    def.body(rec, opts);
  } catch (const std::exception& e) {
    rec.expect(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rec.expect(r.seconds <= r.budget_seconds,
             format("runtime %.2f s exceeds budget %.0f s", r.seconds, r.budget_seconds));
  r.passed = r.failures.empty();
  return r;
}

std::string summary_line(const CriterionResult& r) {
  return format("%s [%d] %s (%.2f s, budget %.0f s)", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.seconds, r.budget_seconds);
}

}  // namespace zeno::checks
