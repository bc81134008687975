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

#include "zeno/linalg3.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex eval_cubic(Complex a2, Complex a1, Complex a0, Complex x) {
  return ((x + a2) * x + a1) * x + a0;
}

Complex eval_cubic_derivative(Complex a2, Complex a1, Complex x) {
  return (3.0 * x + 2.0 * a2) * x + a1;
}

// Newton steps that are only accepted while they reduce the residual. Near a
// double root the derivative is small and an unguarded step can wander.
Complex polish(Complex a2, Complex a1, Complex a0, Complex x, int max_steps) {
  double residual = std::abs(eval_cubic(a2, a1, a0, x));
  for (int i = 0; i < max_steps && residual > 0.0; ++i) {
    const Complex d = eval_cubic_derivative(a2, a1, x);
    if (d == Complex{}) break;
    const Complex next = x - eval_cubic(a2, a1, a0, x) / d;
    const double next_residual = std::abs(eval_cubic(a2, a1, a0, next));
    if (!(next_residual < residual)) break;
    x = next;
    residual = next_residual;
  }
  return x;
}

void sort_roots(std::array<Complex, 3>& roots) {
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

// Initial roots of the depressed cubic x^3 + p x + q for real p, q.
std::array<Complex, 3> depressed_real(double p, double q) {
  constexpr double kPi = std::numbers::pi;
  if (p == 0.0) {
    const double r = std::cbrt(-q);
    const Complex w(-0.5, std::sqrt(3.0) / 2.0);
    return {Complex(r), r * w, r * std::conj(w)};
  }
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc < 0.0) {
    // Three distinct real roots: trigonometric form.
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    return {Complex(m * std::cos(theta)), Complex(m * std::cos(theta - 2.0 * kPi / 3.0)),
            Complex(m * std::cos(theta - 4.0 * kPi / 3.0))};
  }
  // One real root and a conjugate pair: Cardano, with the sign chosen so the
  // cube-root argument does not cancel.
  const double s = std::sqrt(disc);
  const double u = std::cbrt(-q / 2.0 + (q <= 0.0 ? s : -s));
  const double v = (u != 0.0) ? -p / (3.0 * u) : 0.0;
  const double re = -(u + v) / 2.0;
  const double im = std::sqrt(3.0) / 2.0 * (u - v);
  return {Complex(u + v), Complex(re, im), Complex(re, -im)};
}

std::array<Complex, 3> depressed_complex(Complex p, Complex q) {
  const Complex disc = q * q / 4.0 + p * p * p / 27.0;
  const Complex s = std::sqrt(disc);
  Complex c1 = -q / 2.0 + s;
  Complex c2 = -q / 2.0 - s;
  Complex c = std::abs(c1) >= std::abs(c2) ? c1 : c2;
  const Complex w(-0.5, std::sqrt(3.0) / 2.0);
  std::array<Complex, 3> out{};
  if (c == Complex{}) {
    out.fill(Complex{});
    return out;
  }
  Complex u = std::pow(c, 1.0 / 3.0);
  for (int k = 0; k < 3; ++k) {
    const Complex v = -p / (3.0 * u);
    out[static_cast<std::size_t>(k)] = u + v;
    u *= w;
  }
  return out;
}

// Replaces the two roots other than the best isolated one with the roots of
// the deflated quadratic, so the Vieta relations hold to rounding even when
// the remaining pair is nearly double.
void deflate(Complex a2, Complex a0, std::array<Complex, 3>& roots) {
  std::size_t best = 0;
  double best_gap = -1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double gap = std::min(std::abs(roots[i] - roots[(i + 1) % 3]),
                                std::abs(roots[i] - roots[(i + 2) % 3]));
    if (gap > best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  const Complex r = roots[best];
  if (r == Complex{}) return;
  // x^2 + b x + c with b = a2 + r, c = -a0 / r
  const Complex b = a2 + r;
  const Complex c = -a0 / r;
  Complex sq = std::sqrt(b * b - 4.0 * c);
  if ((std::conj(b) * sq).real() < 0.0) sq = -sq;
  const Complex qq = -0.5 * (b + sq);
  Complex x1, x2;
  if (qq == Complex{}) {
    x1 = x2 = Complex{};
  } else {
    x1 = qq;
    x2 = c / qq;
  }
  roots[(best + 1) % 3] = x1;
  roots[(best + 2) % 3] = x2;
}

std::array<Complex, 3> finish(Complex a2, Complex a1, Complex a0, std::array<Complex, 3> roots) {
  for (auto& r : roots) r = polish(a2, a1, a0, r, 4);
  deflate(a2, a0, roots);
  for (auto& r : roots) r = polish(a2, a1, a0, r, 1);
  sort_roots(roots);
  return roots;
}

// Null vector of a (numerically) singular 3x3 matrix via the bilinear cross
// product of its two best-conditioned rows.
Vec3C null_vector(const Mat3C& a) {
  auto cross = [](const Eigen::RowVector3cd& x, const Eigen::RowVector3cd& y) {
    return Vec3C(x(1) * y(2) - x(2) * y(1), x(2) * y(0) - x(0) * y(2), x(0) * y(1) - x(1) * y(0));
  };
  Vec3C best = cross(a.row(0), a.row(1));
  for (const auto& cand : {cross(a.row(0), a.row(2)), cross(a.row(1), a.row(2))}) {
    if (cand.norm() > best.norm()) best = cand;
  }
  if (best.norm() > std::numeric_limits<double>::min()) return best.normalized();

  // Rank <= 1: any vector annihilated by the largest row.
  Eigen::Index row = 0;
  a.rowwise().norm().maxCoeff(&row);
  const Eigen::RowVector3cd r = a.row(row);
  if (r.norm() == 0.0) return Vec3C::UnitX();
  Eigen::Index col = 0;
  r.cwiseAbs().maxCoeff(&col);
  Vec3C v = Vec3C::Zero();
  const Eigen::Index other = (col + 1) % 3;
  v(col) = -r(other);
  v(other) = r(col);
  return v.normalized();
}

}  // namespace

std::array<Complex, 3> cubic_roots(double a2, double a1, double a0) {
  if (!std::isfinite(a2) || !std::isfinite(a1) || !std::isfinite(a0)) {
    throw std::invalid_argument("cubic_roots: non-finite coefficient");
  }
  const double shift = a2 / 3.0;
  const double p = a1 - a2 * a2 / 3.0;
  const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  auto roots = depressed_real(p, q);
  for (auto& r : roots) r -= shift;
  auto out = finish(a2, a1, a0, roots);
  // Real coefficients: pin conjugate symmetry and exactly real roots.
  for (auto& r : out) {
    if (std::abs(r.imag()) <= 1e-14 * std::abs(r)) r = Complex(r.real(), 0.0);
  }
  sort_roots(out);
  return out;
}

std::array<Complex, 3> cubic_roots(Complex a2, Complex a1, Complex a0) {
  if (!finite(a2) || !finite(a1) || !finite(a0)) {
    throw std::invalid_argument("cubic_roots: non-finite coefficient");
  }
  const Complex shift = a2 / 3.0;
  const Complex p = a1 - a2 * a2 / 3.0;
  const Complex q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  auto roots = depressed_complex(p, q);
  for (auto& r : roots) r -= shift;
  return finish(a2, a1, a0, roots);
}

double default_gap_threshold(const std::array<Complex, 3>& eigenvalues) {
  double mx = 0.0;
  for (const auto& l : eigenvalues) mx = std::max(mx, std::abs(l));
  return 1e-6 * mx;
}

EigenSystem eigensystem(const Mat3C& m) {
  return eigensystem(m, -1.0);
}

EigenSystem eigensystem(const Mat3C& m, double gap_threshold) {
  if (!m.allFinite()) throw std::invalid_argument("eigensystem: non-finite matrix");

  // det(m - x) = -(x^3 + a2 x^2 + a1 x + a0)
  const Complex tr = m.trace();
  const Complex minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                         m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  const Complex det = m.determinant();

  std::array<Complex, 3> roots;
  const bool real_poly = tr.imag() == 0.0 && minors.imag() == 0.0 && det.imag() == 0.0;
  if (real_poly) {
    roots = cubic_roots(-tr.real(), minors.real(), -det.real());
  } else {
    roots = cubic_roots(-tr, minors, -det);
  }

  EigenSystem es;
  es.eigenvalues = roots;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) gap = std::min(gap, std::abs(roots[i] - roots[j]));
  }
  es.degeneracy_gap = gap;
  const double threshold = gap_threshold < 0.0 ? default_gap_threshold(roots) : gap_threshold;
  es.degenerate = gap < threshold || gap == 0.0;

  const Mat3C id = Mat3C::Identity();
  const Mat3C adj = m.adjoint();
  for (std::size_t i = 0; i < 3; ++i) {
    es.right_vectors[i] = null_vector(m - roots[i] * id);
    Vec3C w = null_vector(adj - std::conj(roots[i]) * id);
    const Complex overlap = es.right_vectors[i].dot(w);  // <v_i|w>
    if (std::abs(overlap) > std::numeric_limits<double>::min()) w /= overlap;
    es.reciprocal_vectors[i] = w;
  }
  return es;
}

Mat3C expm_spectral(const EigenSystem& es, double t) {
  if (es.degenerate) {
    throw DegenerateSpectrumError("expm_spectral: degenerate spectrum (gap " +
                                  std::to_string(es.degeneracy_gap) + "), use expm_series");
  }
  if (!std::isfinite(t)) throw std::invalid_argument("expm_spectral: non-finite time");
  Mat3C out = Mat3C::Zero();
  for (std::size_t i = 0; i < 3; ++i) {
    out += std::exp(-es.eigenvalues[i] * t) * es.right_vectors[i] * es.reciprocal_vectors[i].adjoint();
  }
  return out;
}

}  // namespace zeno
