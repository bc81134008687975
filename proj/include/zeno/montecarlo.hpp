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

// Quantum-jump trajectories of the V system: waiting times are drawn from the
// exact no-emission survival function, every emission resets the atom to |1>,
// and ensembles are reduced in trajectory-index order so results do not
// depend on how the work was split across threads.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zeno/bloch.hpp"
#include "zeno/vsystem.hpp"

namespace zeno {

/// Counter-based generator: draw k of stream `key` is a pure function of
/// (key, k), so any trajectory can be replayed without the others.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next();
  /// Uniform in the open interval (0, 1).
  double uniform();
  std::uint64_t draws() const { return counter_; }

  /// Stream key of trajectory `index` under `master_seed`.
  static std::uint64_t derive(std::uint64_t master_seed, std::uint64_t index);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// exp(-G tau) applied to states, for tau in [0, t_ref]. Uses three scalar
/// exponentials when the spectrum is non-degenerate (the closed form for the
/// probe-off generator) and a ladder of cached propagators exp(-G dt 2^k)
/// otherwise.
class NoJumpEvolution {
 public:
  NoJumpEvolution(const SystemParams& p, GeneratorKind kind, double t_ref);

  Vec3C apply(const Vec3C& psi, double tau) const;
  /// |exp(-G tau) psi|^2.
  double survival(const Vec3C& psi, double tau) const;
  bool uses_ladder() const { return !ladder_.empty(); }
  GeneratorKind kind() const { return kind_; }

  /// Precomputed survival curve of one starting state.
  class Curve {
   public:
    double operator()(double tau) const;

   private:
    friend class NoJumpEvolution;
    const NoJumpEvolution* owner_ = nullptr;
    Vec3C psi_;
    std::array<Complex, 3> coeff_{};
  };
  Curve survival_curve(const Vec3C& psi) const;

 private:
  SystemParams params_;
  GeneratorKind kind_;
  double tick_ = 0.0;
  std::vector<Mat3C> ladder_;
  EigenSystem spectral_;
  Mat3C gram_ = Mat3C::Identity();
};

/// Time tau* in (0, t_max] at which the survival of psi drops to u, or empty
/// if it stays above u for the whole interval.
std::optional<double> sample_jump_time(const Vec3C& psi, const SystemParams& p, GeneratorKind kind,
                                       double t_max, double u);
std::optional<double> sample_jump_time(const NoJumpEvolution::Curve& survival, double t_max, double u);

struct TrajectoryRecord {
  std::vector<double> emission_times;  // absolute schedule time, s
  /// One entry per probe-on segment. Emissions during a probe-off segment
  /// count towards the preceding pulse; those before the first pulse appear
  /// only in emission_times.
  std::vector<int> emissions_per_pulse;
  Vec3C final_state = Vec3C::UnitX();
  std::uint64_t seed = 0;

  bool operator==(const TrajectoryRecord&) const = default;
};

TrajectoryRecord evolve_trajectory(const Vec3C& psi0, const SystemParams& p,
                                   const std::vector<Segment>& segments, std::uint64_t seed);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

struct EnsembleEstimate {
  int n_traj = 0;
  std::array<double, 3> pop_mean{};
  std::array<double, 3> pop_stderr{};
  /// Fraction of trajectories without emission, per pulse.
  std::vector<MeanStderr> p0_frequency_per_pulse;
  std::vector<double> mean_emissions_per_pulse;
  /// Average of the final pure-state projectors.
  DensityMatrix3 mean_state;
  /// Largest elementwise standard error of mean_state.
  double mean_state_max_stderr = 0.0;
  std::uint64_t master_seed = 0;
};

/// n_threads = 0 picks the hardware concurrency. The estimate is bit-for-bit
/// independent of n_threads.
EnsembleEstimate run_ensemble(const Vec3C& psi0, const SystemParams& p,
                              const std::vector<Segment>& segments, int n_traj,
                              std::uint64_t master_seed, int n_threads = 0);

/// Conditional mean states at the end of a single probe pulse.
struct ConditionalEnsemble {
  int n_no_emission = 0;
  int n_emission = 0;
  std::optional<DensityMatrix3> mean_no_emission;
  std::optional<DensityMatrix3> mean_emission;
  double max_stderr_no_emission = 0.0;
  double max_stderr_emission = 0.0;
};

ConditionalEnsemble run_conditional(const std::vector<Vec3C>& initial_states, const SystemParams& p,
                                    double tau_p, int n_traj, std::uint64_t master_seed,
                                    int n_threads = 0);

struct ConditionalStateCheck {
  double fidelity_no_emission = 0.0;
  double fidelity_emission = 0.0;
  ConditionalEnsemble ensemble;
  std::vector<std::string> warnings;
};

/// Single-pulse trajectories cycling through |1>, |2>, (|1>+|2>)/sqrt2 and
/// (|1>+i|2>)/sqrt2; compares the conditional means with the exact
/// no-emission and emission states.
ConditionalStateCheck conditional_state_check(const SystemParams& p, double tau_p, int n_traj,
                                              std::uint64_t master_seed, int n_threads = 0);

struct KsResult {
  double statistic = 0.0;
  double critical_1pct = 0.0;
  int n_samples = 0;
  int n_censored = 0;  // no emission before t_max
  bool passed() const { return statistic < critical_1pct; }
};

/// Kolmogorov-Smirnov distance between sampled first-emission times from |1>
/// (probe on, window t_max) and 1 - P0(tau; |1>), the latter evaluated with
/// expm_series.
KsResult first_jump_ks_test(const SystemParams& p, double t_max, int n_samples, std::uint64_t seed);

}  // namespace zeno
