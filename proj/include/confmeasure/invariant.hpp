/*
   Copyright 2026 The confmeasure authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CONFMEASURE_INVARIANT_HPP
#define CONFMEASURE_INVARIANT_HPP

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "confmeasure/series.hpp"

namespace confmeasure {

using Complex = std::complex<double>;

/// Holomorphic differential f(z)(dz)^m on the unit disk, truncated.
///
/// degree == 0 is the rescaled H^0/C convention: the carrier is an
/// antiderivative x with vanishing constant term and norm sum_k k |x_k|^2,
/// isometric to H^1 under d/dz.
struct Differential {
  double degree = 1.0;
  SeriesXcd coeffs;

  Differential() = default;
  Differential(double m, SeriesXcd c) : degree(m), coeffs(std::move(c)) {}
};

/// Invariant norm weight w_m(n) = n! / ((2m)(2m+1)..(2m+n-1)), w_m(0) = 1.
/// Satisfies w_m(n+1)/w_m(n) = (n+1)/(2m+n).
inline double norm_weight(double m, int n) {
  if (m <= 0.0) throw std::domain_error("norm_weight: degree must be positive");
  double w = 1.0;
  for (int k = 0; k < n; ++k) w *= (k + 1.0) / (2.0 * m + k);
  return w;
}

/// Fills weights w_m(0..N); O(N) via the ratio recurrence.
inline std::vector<double> norm_weights(double m, int order) {
  if (m <= 0.0) throw std::domain_error("norm_weights: degree must be positive");
  std::vector<double> w(static_cast<size_t>(order) + 1, 1.0);
  for (int n = 0; n < order; ++n) w[n + 1] = w[n] * (n + 1.0) / (2.0 * m + n);
  return w;
}

/// Invariant inner product; conjugate-linear in the second argument.
/// For degree 0 the H^0/C convention sum_k k f_k conj(g_k) applies.
inline Complex inner_product(const Differential& f, const Differential& g) {
  if (f.degree != g.degree)
    throw std::invalid_argument("inner_product: degree mismatch");
  int n = std::min(f.coeffs.order(), g.coeffs.order());
  Complex acc = 0.0;
  if (f.degree == 0.0) {
    for (int k = 1; k <= n; ++k)
      acc += static_cast<double>(k) * f.coeffs[k] * std::conj(g.coeffs[k]);
    return acc;
  }
  std::vector<double> w = norm_weights(f.degree, n);
  for (int k = 0; k <= n; ++k) acc += w[static_cast<size_t>(k)] * f.coeffs[k] * std::conj(g.coeffs[k]);
  return acc;
}

inline double norm_squared(const Differential& f) { return inner_product(f, f).real(); }

/// Representer of evaluation at z0: (1 - conj(z0) z)^{-2m} (dz)^m, truncated.
inline Differential eval_representer(Complex z0, double m, int order) {
  if (std::abs(z0) >= 1.0) throw std::domain_error("eval_representer: point outside the open disk");
  SeriesXcd k(order);
  Complex zb = std::conj(z0);
  Complex pw = 1.0;
  double rising = 1.0, fact = 1.0;
  for (int n = 0; n <= order; ++n) {
    if (n > 0) {
      rising *= 2.0 * m + (n - 1);
      fact *= n;
      pw *= zb;
    }
    k[n] = (n == 0) ? Complex(1.0) : rising / fact * pw;
  }
  return {m, std::move(k)};
}

/// Representer of x(z0)-x(0) in the degree-0 convention:
/// coefficients conj(z0)^k / k.
inline Differential eval_representer_log(Complex z0, int order) {
  if (std::abs(z0) >= 1.0)
    throw std::domain_error("eval_representer_log: point outside the open disk");
  SeriesXcd k(order);
  Complex zb = std::conj(z0);
  Complex pw = 1.0;
  for (int n = 1; n <= order; ++n) {
    pw *= zb;
    k[n] = pw / static_cast<double>(n);
  }
  return {0.0, std::move(k)};
}

/// Kernel matrix C_ij = (1 - conj(z_i) z_j)^{-2m}; Hermitian positive
/// semidefinite for points inside the disk.
inline Eigen::MatrixXcd covariance_matrix(const std::vector<Complex>& points, double m) {
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXcd c(n, n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(points[static_cast<size_t>(i)]) >= 1.0)
      throw std::domain_error("covariance_matrix: point outside the open disk");
    for (int j = 0; j < n; ++j)
      c(i, j) = std::pow(1.0 - std::conj(points[static_cast<size_t>(i)]) * points[static_cast<size_t>(j)],
                         -2.0 * m);
  }
  return c;
}

/// Antiderivative-statistic kernel ln 1/(1 - conj(z_i) z_j) for degree 1.
inline Eigen::MatrixXcd covariance_matrix_log(const std::vector<Complex>& points) {
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXcd c(n, n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(points[static_cast<size_t>(i)]) >= 1.0)
      throw std::domain_error("covariance_matrix_log: point outside the open disk");
    for (int j = 0; j < n; ++j)
      c(i, j) = -std::log(1.0 - std::conj(points[static_cast<size_t>(i)]) * points[static_cast<size_t>(j)]);
  }
  return c;
}

/// Element of the universal cover of PSU(1,1): an SU(1,1) matrix
/// [[a, b], [conj b, conj a]] with |a|^2 - |b|^2 = 1, together with a
/// logarithm A of a (exp(A) = a) selecting the sheet.
struct GroupElementTilde {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  Complex A{0.0, 0.0};
};

inline GroupElementTilde tilde_identity() { return {}; }

/// Central element indexed by n: ((-1)^n, 0, i pi n).
inline GroupElementTilde tilde_center(int n) {
  GroupElementTilde g;
  g.a = (n % 2 == 0) ? 1.0 : -1.0;
  g.b = 0.0;
  g.A = Complex(0.0, std::numbers::pi * n);
  return g;
}

/// Lift of the SU(1,1) element (a, b) on the principal sheet shifted by
/// 2 pi i branch.
inline GroupElementTilde tilde_element(Complex a, Complex b, int branch = 0) {
  if (std::abs(std::norm(a) - std::norm(b) - 1.0) > 1e-9)
    throw std::domain_error("tilde_element: not an SU(1,1) pair");
  GroupElementTilde g;
  g.a = a;
  g.b = b;
  g.A = std::log(a) + Complex(0.0, 2.0 * std::numbers::pi * branch);
  return g;
}

inline bool tilde_valid(const GroupElementTilde& g, double tol = 1e-12) {
  return std::abs(std::norm(g.a) - std::norm(g.b) - 1.0) <= tol &&
         std::abs(std::exp(g.A) - g.a) <= tol;
}

/// Product in the cover: SU(1,1) product for (a, b), and
/// A_3 = A_1 + A_2 + log(1 + b_1 conj(b_2) / (a_1 a_2)) with the principal
/// log (the argument lies in the right half plane since |b| < |a|).
inline GroupElementTilde tilde_mul(const GroupElementTilde& g1, const GroupElementTilde& g2) {
  GroupElementTilde g3;
  g3.a = g1.a * g2.a + g1.b * std::conj(g2.b);
  g3.b = g1.a * g2.b + g1.b * std::conj(g2.a);
  g3.A = g1.A + g2.A + std::log(1.0 + g1.b * std::conj(g2.b) / (g1.a * g2.a));
  return g3;
}

inline GroupElementTilde operator*(const GroupElementTilde& g1, const GroupElementTilde& g2) {
  return tilde_mul(g1, g2);
}

inline GroupElementTilde tilde_inverse(const GroupElementTilde& g) {
  GroupElementTilde inv;
  inv.a = std::conj(g.a);
  inv.b = -g.b;
  inv.A = -g.A + std::log(std::norm(g.a));  // exp = |a|^2 / a = conj(a)
  return inv;
}

/// Disk automorphism z -> (a z + b) / (conj(b) z + conj(a)).
inline Complex moebius_point(const GroupElementTilde& g, Complex z) {
  return (g.a * z + g.b) / (std::conj(g.b) * z + std::conj(g.a));
}

/// Action on differentials: theta -> f((conj(a) z - b)/(-conj(b) z + a))
/// times (-conj(b) z + a)^{-2m} (dz)^m, with the branch fixed by
/// (a - conj(b) z)^{-2m} = exp(-2mA) (1 - (conj(b)/a) z)^{-2m}.
/// Requires a polynomial argument; the result is truncated at `order`.
/// Zero sets transform by moebius_point: Z(g. theta) = g . Z(theta).
inline Differential moebius_act(const GroupElementTilde& g, const Differential& theta, int order) {
  const double m = theta.degree;
  // Moebius argument as a series: (conj(a) z - b) / (a - conj(b) z).
  SeriesXcd num(order), den(order);
  num[0] = -g.b;
  if (order >= 1) num[1] = std::conj(g.a);
  den[0] = g.a;
  if (order >= 1) den[1] = -std::conj(g.b);
  SeriesXcd arg = series_div(num, den);
  SeriesXcd composed = compose_polynomial(theta.coeffs, arg);

  SeriesXcd base(order);
  base[0] = 1.0;
  if (order >= 1) base[1] = -std::conj(g.b) / g.a;
  SeriesXcd prefactor = std::exp(-2.0 * m * g.A) * series_pow(base, -2.0 * m);
  return {m, composed * prefactor};
}

/// Hyperbolic distance arctanh |(z - w)/(1 - conj(z) w)| for the metric
/// ds = |dz| / (1 - |z|^2).
inline double poincare_dist(Complex z, Complex w) {
  if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0)
    throw std::domain_error("poincare_dist: points must lie in the open disk");
  double t = std::abs((z - w) / (1.0 - std::conj(z) * w));
  return std::atanh(t);
}

/// Hyperbolic area of the ball of radius R for the area form
/// dx dy / (1 - |z|^2)^2: pi sinh(R)^2.
inline double hyperbolic_ball_area(double radius) {
  double s = std::sinh(radius);
  return std::numbers::pi * s * s;
}

struct SupNormResult {
  double value = 0.0;
  Complex argmax{0.0, 0.0};
  bool within_band_2 = false;  // |q| < 2
  bool within_band_6 = false;  // |q| < 6
};

/// Numerical supremum of (1-|z|^2)^2 |Q(z)| over the disk for a truncated
/// quadratic differential, on a radial-angular grid refined near the
/// maximizer.
inline SupNormResult sup_norm_quadratic(const Differential& q, int nr = 96, int ntheta = 192) {
  if (q.degree != 2.0) throw std::invalid_argument("sup_norm_quadratic: degree 2 required");
  const SeriesXcd& p = q.coeffs;
  auto value_at = [&](double r, double t) {
    Complex z = std::polar(r, t);
    double w = 1.0 - r * r;
    return w * w * std::abs(evaluate(p, z));
  };
  double best = 0.0, best_r = 0.0, best_t = 0.0;
  for (int i = 0; i < nr; ++i) {
    double r = static_cast<double>(i) / nr;
    for (int j = 0; j < ntheta; ++j) {
      double t = 2.0 * std::numbers::pi * j / ntheta;
      double v = value_at(r, t);
      if (v > best) {
        best = v;
        best_r = r;
        best_t = t;
      }
    }
  }
  double dr = 1.0 / nr, dt = 2.0 * std::numbers::pi / ntheta;
  for (int round = 0; round < 5; ++round) {
    double r0 = best_r, t0 = best_t;
    for (int i = -8; i <= 8; ++i) {
      double r = std::clamp(r0 + i * dr / 8.0, 0.0, 1.0 - 1e-12);
      for (int j = -8; j <= 8; ++j) {
        double t = t0 + j * dt / 8.0;
        double v = value_at(r, t);
        if (v > best) {
          best = v;
          best_r = r;
          best_t = t;
        }
      }
    }
    dr /= 8.0;
    dt /= 8.0;
  }
  SupNormResult out;
  out.value = best;
  out.argmax = std::polar(best_r, best_t);
  out.within_band_2 = best < 2.0;
  out.within_band_6 = best < 6.0;
  return out;
}

}  // namespace confmeasure

#endif  // CONFMEASURE_INVARIANT_HPP
