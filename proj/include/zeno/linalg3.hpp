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

// Complex three-dimensional linear algebra for the V-system generators:
// cubic roots, biorthogonal eigensystems and two independent matrix
// exponentials.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace zeno {

using Complex = std::complex<double>;
using Vec3C = Eigen::Vector3cd;
using Mat3C = Eigen::Matrix3cd;

template <int N>
using MatC = Eigen::Matrix<Complex, N, N>;

/// Roots of the monic cubic x^3 + a2 x^2 + a1 x + a0, sorted by ascending
/// real part and then ascending imaginary part. Throws std::invalid_argument
/// on non-finite coefficients.
std::array<Complex, 3> cubic_roots(double a2, double a1, double a0);

/// Complex-coefficient variant, used for characteristic polynomials of
/// arbitrary complex matrices. Same ordering and error contract.
std::array<Complex, 3> cubic_roots(Complex a2, Complex a1, Complex a0);

/// Eigenvalues, unit right eigenvectors and reciprocal vectors of a 3x3
/// matrix. The reciprocal vectors satisfy m^dagger w_i = conj(lambda_i) w_i
/// and <v_i|w_j> = delta_ij whenever the spectrum is non-degenerate.
///
/// Eigenvalues follow the cubic_roots ordering, so index 0 holds the root with
/// the smallest real part (the slow, long-lived mode of a decay generator).
struct EigenSystem {
  std::array<Complex, 3> eigenvalues{};
  std::array<Vec3C, 3> right_vectors{};
  std::array<Vec3C, 3> reciprocal_vectors{};
  bool degenerate = false;
  double degeneracy_gap = 0.0;  // min |lambda_i - lambda_j|

  static constexpr int kSlowIndex = 0;
};

/// 1e-6 * max |lambda_i|.
double default_gap_threshold(const std::array<Complex, 3>& eigenvalues);

EigenSystem eigensystem(const Mat3C& m);
EigenSystem eigensystem(const Mat3C& m, double gap_threshold);

/// sum_i exp(-lambda_i t) |v_i><w_i|. Throws DegenerateSpectrumError when
/// es.degenerate is set; callers fall back to expm_series.
Mat3C expm_spectral(const EigenSystem& es, double t);

namespace detail {

template <int N>
double one_norm(const MatC<N>& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace detail

/// exp(-m t) by scaling and squaring: the argument is halved until its
/// 1-norm is at most 0.5 and a degree-16 Taylor polynomial is evaluated in
/// Horner form. The squaring phase carries F = exp(x) - I, using
/// (I + F)^2 - I = 2F + F^2, so slow components are not swamped by the
/// identity. Safe for degenerate or defective m.
template <int N>
MatC<N> expm_series(const MatC<N>& m, double t) {
  constexpr int kOrder = 16;
  MatC<N> x = -t * m;
  const double norm = detail::one_norm<N>(x);
  if (!std::isfinite(norm)) {
    throw std::invalid_argument("expm_series: non-finite matrix or time");
  }
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    x /= std::ldexp(1.0, squarings);
  }
  const MatC<N> id = MatC<N>::Identity();
  MatC<N> poly = id;
  for (int k = kOrder; k >= 2; --k) {
    poly = id + (x * poly) / static_cast<double>(k);
  }
  MatC<N> f = x * poly;
  for (int i = 0; i < squarings; ++i) {
    f = (2.0 * f + f * f).eval();
  }
  return id + f;
}

inline Mat3C expm_series(const Mat3C& m, double t) { return expm_series<3>(m, t); }

}  // namespace zeno
