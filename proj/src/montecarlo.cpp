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

#include "zeno/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "zeno/pulse_analysis.hpp"

namespace zeno {
namespace {

constexpr int kLadderLevels = 57;
constexpr double kRelativeTimeTolerance = 1e-10;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void require_unit(const Vec3C& psi, const char* where) {
  if (!psi.allFinite() || std::abs(psi.squaredNorm() - 1.0) > 1e-10) {
    throw std::invalid_argument(std::string(where) + ": state must have unit norm");
  }
}

int resolve_threads(int requested, int work) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(n, 1, std::max(work, 1));
}

// Runs body(i) for i in [0, count) on n_threads workers.
template <typename Body>
void parallel_for(int count, int n_threads, Body&& body) {
  const int workers = resolve_threads(n_threads, count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

double sample_stderr(double sum, double sum_sq, int n) {
  if (n < 2) return 0.0;
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
  return std::sqrt(var / n);
}

// Elementwise mean and largest standard error of a set of projectors.
std::pair<Mat3C, double> projector_mean(const std::vector<Vec3C>& states) {
  const int n = static_cast<int>(states.size());
  Mat3C sum = Mat3C::Zero();
  for (const auto& s : states) sum += s * s.adjoint();
  const Mat3C mean = sum / static_cast<double>(std::max(n, 1));
  if (n < 2) return {mean, 0.0};
  Eigen::Matrix3d sq = Eigen::Matrix3d::Zero();
  for (const auto& s : states) sq += (s * s.adjoint() - mean).cwiseAbs2();
  const double worst = (sq / (n - 1.0)).maxCoeff();
  return {mean, std::sqrt(worst / n)};
}

}  // namespace

std::uint64_t CounterRng::next() {
  return mix64(key_ + 0x9e3779b97f4a7c15ULL * (++counter_));
}

double CounterRng::uniform() {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t CounterRng::derive(std::uint64_t master_seed, std::uint64_t index) {
  return mix64(mix64(master_seed) ^ (0xd1b54a32d192ed03ULL * (index + 1)));
}

NoJumpEvolution::NoJumpEvolution(const SystemParams& p, GeneratorKind kind, double t_ref)
    : params_(p), kind_(kind) {
  if (!(t_ref > 0.0) || !std::isfinite(t_ref)) {
    throw std::invalid_argument("NoJumpEvolution: t_ref must be finite and > 0");
  }
  if (kind == GeneratorKind::ProbeOff) return;
  const Mat3C g = build_generator(p, kind);
  spectral_ = eigensystem(g);
  if (!spectral_.degenerate) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) gram_(i, j) = spectral_.right_vectors[i].dot(spectral_.right_vectors[j]);
    }
    return;
  }
  tick_ = std::ldexp(t_ref, -(kLadderLevels - 1));
  ladder_.reserve(kLadderLevels);
  for (int k = 0; k < kLadderLevels; ++k) ladder_.push_back(expm_series(g, std::ldexp(tick_, k)));
}

Vec3C NoJumpEvolution::apply(const Vec3C& psi, double tau) const {
  if (kind_ == GeneratorKind::ProbeOff) {
    Vec3C out = u_pi(params_, tau) * psi;
    out(kLevel3) = std::exp(-0.5 * params_.a3 * tau) * psi(kLevel3);
    return out;
  }
  if (!uses_ladder()) {
    Vec3C out = Vec3C::Zero();
    for (std::size_t i = 0; i < 3; ++i) {
      out += std::exp(-spectral_.eigenvalues[i] * tau) *
             spectral_.reciprocal_vectors[i].dot(psi) * spectral_.right_vectors[i];
    }
    return out;
  }
  const double ticks = std::nearbyint(tau / tick_);
  const auto max_ticks = static_cast<double>((std::uint64_t{1} << kLadderLevels) - 1);
  auto n = static_cast<std::uint64_t>(std::clamp(ticks, 0.0, max_ticks));
  Vec3C out = psi;
  for (int k = 0; n != 0; ++k, n >>= 1) {
    if (n & 1U) out = ladder_[static_cast<std::size_t>(k)] * out;
  }
  return out;
}

double NoJumpEvolution::survival(const Vec3C& psi, double tau) const {
  return apply(psi, tau).squaredNorm();
}

NoJumpEvolution::Curve NoJumpEvolution::survival_curve(const Vec3C& psi) const {
  Curve c;
  c.owner_ = this;
  c.psi_ = psi;
  if (kind_ == GeneratorKind::ProbeOn && !uses_ladder()) {
    for (std::size_t i = 0; i < 3; ++i) c.coeff_[i] = spectral_.reciprocal_vectors[i].dot(psi);
  }
  return c;
}

double NoJumpEvolution::Curve::operator()(double tau) const {
  const NoJumpEvolution& o = *owner_;
  if (o.kind_ == GeneratorKind::ProbeOff) {
    return psi_.head<2>().squaredNorm() + std::exp(-o.params_.a3 * tau) * std::norm(psi_(kLevel3));
  }
  if (o.uses_ladder()) return o.survival(psi_, tau);
  std::array<Complex, 3> a;
  for (std::size_t i = 0; i < 3; ++i) a[i] = coeff_[i] * std::exp(-o.spectral_.eigenvalues[i] * tau);
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    s += std::norm(a[i]) * o.gram_(i, i).real();
    for (std::size_t j = i + 1; j < 3; ++j) s += 2.0 * (std::conj(a[i]) * a[j] * o.gram_(i, j)).real();
  }
  return s;
}

std::optional<double> sample_jump_time(const NoJumpEvolution::Curve& survival, double t_max, double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("sample_jump_time: u must lie in (0, 1)");
  if (!(t_max > 0.0)) return std::nullopt;
  if (survival(t_max) > u) return std::nullopt;

  double lo = 0.0;
  double hi = std::ldexp(t_max, -20);
  while (survival(hi) > u) {
    lo = hi;
    hi = std::min(2.0 * hi, t_max);
  }
  for (int it = 0; it < 400 && hi - lo > kRelativeTimeTolerance * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (survival(mid) > u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<double> sample_jump_time(const Vec3C& psi, const SystemParams& p, GeneratorKind kind,
                                       double t_max, double u) {
  require_unit(psi, "sample_jump_time");
  if (!(t_max > 0.0)) return std::nullopt;
  const NoJumpEvolution evolution(p, kind, t_max);
  return sample_jump_time(evolution.survival_curve(psi), t_max, u);
}

namespace {

struct Evolvers {
  std::optional<NoJumpEvolution> on;
  std::optional<NoJumpEvolution> off;

  Evolvers(const SystemParams& p, const std::vector<Segment>& segments) {
    double max_on = 0.0;
    double max_off = 0.0;
    for (const auto& s : segments) {
      if (!(s.duration >= 0.0)) throw std::invalid_argument("segment duration must be >= 0");
      (s.kind == GeneratorKind::ProbeOn ? max_on : max_off) = std::max(
          s.kind == GeneratorKind::ProbeOn ? max_on : max_off, s.duration);
    }
    if (max_on > 0.0) on.emplace(p, GeneratorKind::ProbeOn, max_on);
    if (max_off > 0.0) off.emplace(p, GeneratorKind::ProbeOff, max_off);
  }

  const NoJumpEvolution& get(GeneratorKind kind) const {
    return kind == GeneratorKind::ProbeOn ? *on : *off;
  }
};

TrajectoryRecord run_trajectory(const Vec3C& psi0, const Evolvers& evolvers,
                                const std::vector<Segment>& segments, std::uint64_t seed) {
  TrajectoryRecord rec;
  rec.seed = seed;
  CounterRng rng(seed);
  Vec3C psi = psi0;
  double segment_start = 0.0;
  int pulse = -1;
  for (const auto& seg : segments) {
    if (seg.kind == GeneratorKind::ProbeOn) {
      ++pulse;
      rec.emissions_per_pulse.push_back(0);
    }
    if (seg.duration > 0.0) {
      const NoJumpEvolution& evo = evolvers.get(seg.kind);
      double elapsed = 0.0;
      while (true) {
        const double remaining = seg.duration - elapsed;
        const auto jump = sample_jump_time(evo.survival_curve(psi), remaining, rng.uniform());
        if (!jump) {
          psi = evo.apply(psi, remaining).normalized();
          break;
        }
        elapsed += *jump;
        rec.emission_times.push_back(segment_start + elapsed);
        if (pulse >= 0) ++rec.emissions_per_pulse[static_cast<std::size_t>(pulse)];
        psi = Vec3C::UnitX();
        if (!(elapsed < seg.duration)) break;
      }
    }
    segment_start += seg.duration;
  }
  rec.final_state = psi;
  return rec;
}

}  // namespace

TrajectoryRecord evolve_trajectory(const Vec3C& psi0, const SystemParams& p,
                                   const std::vector<Segment>& segments, std::uint64_t seed) {
  require_unit(psi0, "evolve_trajectory");
  const Evolvers evolvers(p, segments);
  return run_trajectory(psi0, evolvers, segments, seed);
}

EnsembleEstimate run_ensemble(const Vec3C& psi0, const SystemParams& p,
                              const std::vector<Segment>& segments, int n_traj,
                              std::uint64_t master_seed, int n_threads) {
  require_unit(psi0, "run_ensemble");
  if (n_traj < 1) throw std::invalid_argument("run_ensemble: n_traj must be >= 1");
  const Evolvers evolvers(p, segments);

  std::vector<Vec3C> finals(static_cast<std::size_t>(n_traj));
  std::vector<std::vector<int>> counts(static_cast<std::size_t>(n_traj));
  parallel_for(n_traj, n_threads, [&](int i) {
    TrajectoryRecord rec =
        run_trajectory(psi0, evolvers, segments, CounterRng::derive(master_seed, static_cast<std::uint64_t>(i)));
    finals[static_cast<std::size_t>(i)] = rec.final_state;
    counts[static_cast<std::size_t>(i)] = std::move(rec.emissions_per_pulse);
  });

  EnsembleEstimate est;
  est.n_traj = n_traj;
  est.master_seed = master_seed;
  for (int level = 0; level < 3; ++level) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& f : finals) {
      const double pop = std::norm(f(level));
      sum += pop;
      sum_sq += pop * pop;
    }
    est.pop_mean[static_cast<std::size_t>(level)] = sum / n_traj;
    est.pop_stderr[static_cast<std::size_t>(level)] = sample_stderr(sum, sum_sq, n_traj);
  }
  const std::size_t pulses = counts.front().size();
  for (std::size_t k = 0; k < pulses; ++k) {
    double dark = 0.0;
    double emitted = 0.0;
    for (const auto& c : counts) {
      dark += c[k] == 0 ? 1.0 : 0.0;
      emitted += c[k];
    }
    est.p0_frequency_per_pulse.push_back({dark / n_traj, sample_stderr(dark, dark, n_traj)});
    est.mean_emissions_per_pulse.push_back(emitted / n_traj);
  }
  const auto [mean, worst] = projector_mean(finals);
  est.mean_state = DensityMatrix3::hermitized(mean);
  est.mean_state_max_stderr = worst;
  return est;
}

ConditionalEnsemble run_conditional(const std::vector<Vec3C>& initial_states, const SystemParams& p,
                                    double tau_p, int n_traj, std::uint64_t master_seed,
                                    int n_threads) {
  if (initial_states.empty()) throw std::invalid_argument("run_conditional: no initial states");
  for (const auto& s : initial_states) require_unit(s, "run_conditional");
  if (n_traj < 1) throw std::invalid_argument("run_conditional: n_traj must be >= 1");
  const std::vector<Segment> pulse{{GeneratorKind::ProbeOn, tau_p}};
  const Evolvers evolvers(p, pulse);

  std::vector<Vec3C> finals(static_cast<std::size_t>(n_traj));
  std::vector<char> emitted(static_cast<std::size_t>(n_traj));
  parallel_for(n_traj, n_threads, [&](int i) {
    const auto idx = static_cast<std::size_t>(i);
    const TrajectoryRecord rec = run_trajectory(initial_states[idx % initial_states.size()], evolvers, pulse,
                                                CounterRng::derive(master_seed, idx));
    finals[idx] = rec.final_state;
    emitted[idx] = rec.emission_times.empty() ? 0 : 1;
  });

  std::vector<Vec3C> dark;
  std::vector<Vec3C> bright;
  for (std::size_t i = 0; i < finals.size(); ++i) (emitted[i] ? bright : dark).push_back(finals[i]);

  ConditionalEnsemble out;
  out.n_no_emission = static_cast<int>(dark.size());
  out.n_emission = static_cast<int>(bright.size());
  if (!dark.empty()) {
    const auto [mean, worst] = projector_mean(dark);
    out.mean_no_emission = DensityMatrix3::hermitized(mean);
    out.max_stderr_no_emission = worst;
  }
  if (!bright.empty()) {
    const auto [mean, worst] = projector_mean(bright);
    out.mean_emission = DensityMatrix3::hermitized(mean);
    out.max_stderr_emission = worst;
  }
  return out;
}

ConditionalStateCheck conditional_state_check(const SystemParams& p, double tau_p, int n_traj,
                                              std::uint64_t master_seed, int n_threads) {
  require_pulse_regime(p, tau_p);
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<Vec3C> starts{Vec3C::UnitX(), Vec3C::UnitY(), Vec3C(r, r, 0.0),
                                  Vec3C(r, Complex(0.0, r), 0.0)};

  ConditionalStateCheck out;
  for (const auto& s : starts) {
    if (auto w = emission_weight_warning(p, tau_p, DensityMatrix3::pure(s))) out.warnings.push_back(*w);
  }
  out.ensemble = run_conditional(starts, p, tau_p, n_traj, master_seed, n_threads);
  if (out.ensemble.mean_no_emission) {
    out.fidelity_no_emission = fidelity(no_emission_state(p), *out.ensemble.mean_no_emission);
  }
  if (out.ensemble.mean_emission) {
    out.fidelity_emission = fidelity(emission_state(p, tau_p), *out.ensemble.mean_emission);
  }
  return out;
}

KsResult first_jump_ks_test(const SystemParams& p, double t_max, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("first_jump_ks_test: n_samples must be >= 1");
  const NoJumpEvolution evolution(p, GeneratorKind::ProbeOn, t_max);
  const auto curve = evolution.survival_curve(Vec3C::UnitX());

  KsResult res;
  res.n_samples = n_samples;
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    CounterRng rng(CounterRng::derive(seed, static_cast<std::uint64_t>(i)));
    if (auto t = sample_jump_time(curve, t_max, rng.uniform())) {
      times.push_back(*t);
    } else {
      ++res.n_censored;
    }
  }
  std::sort(times.begin(), times.end());

  const Mat3C g = build_generator(p, GeneratorKind::ProbeOn);
  auto cdf = [&](double t) { return 1.0 - (expm_series(g, t) * Vec3C::UnitX()).squaredNorm(); };
  const double n = n_samples;
  double d = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double f = cdf(times[i]);
    d = std::max({d, std::abs((i + 1) / n - f), std::abs(i / n - f)});
  }
  d = std::max(d, std::abs(times.size() / n - cdf(t_max)));
  res.statistic = d;
  res.critical_1pct = 1.628 / std::sqrt(n);
  return res;
}

}  // namespace zeno
