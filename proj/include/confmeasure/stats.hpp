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

#ifndef CONFMEASURE_STATS_HPP
#define CONFMEASURE_STATS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace confmeasure {

/// One-sample Kolmogorov-Smirnov statistic of values against Uniform(0,1).
inline double ks_statistic_uniform(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    double hi = (static_cast<double>(i) + 1.0) / n - u[i];
    double lo = u[i] - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

/// One-sample KS statistic against an arbitrary CDF.
inline double ks_statistic_cdf(std::vector<double> x, const std::function<double(double)>& cdf) {
  for (double& v : x) v = cdf(v);
  return ks_statistic_uniform(std::move(x));
}

/// Two-sample KS statistic.
inline double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    double fa = static_cast<double>(i) / static_cast<double>(a.size());
    double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

/// Critical constant c(alpha) = sqrt(-ln(alpha/2)/2) of the asymptotic
/// Kolmogorov distribution; the one-sample threshold is c(alpha)/sqrt(n).
inline double ks_critical_constant(double alpha) {
  return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

inline double ks_threshold_one_sample(double alpha, size_t n) {
  return ks_critical_constant(alpha) / std::sqrt(static_cast<double>(n));
}

inline double ks_threshold_two_sample(double alpha, size_t n, size_t m) {
  return ks_critical_constant(alpha) *
         std::sqrt((static_cast<double>(n) + static_cast<double>(m)) /
                   (static_cast<double>(n) * static_cast<double>(m)));
}

/// Asymptotic Kolmogorov tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} e^{-2k^2 lambda^2}.
inline double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16) break;
  }
  return std::min(std::max(sum, 0.0), 1.0);
}

/// Rayleigh test p-value for uniformity of phases on the circle.
inline double rayleigh_pvalue(const std::vector<double>& phases) {
  double c = 0.0, s = 0.0;
  for (double p : phases) {
    c += std::cos(p);
    s += std::sin(p);
  }
  double n = static_cast<double>(phases.size());
  double r2 = (c * c + s * s) / (n * n);
  double z = n * r2;
  // Berens' correction keeps the approximation honest at moderate n.
  double p = std::exp(-z) * (1.0 + (2.0 * z - z * z) / (4.0 * n));
  return std::min(std::max(p, 0.0), 1.0);
}

/// Regularized lower incomplete gamma P(a, x).
inline double gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::domain_error("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) {
    // series expansion
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  // continued fraction for Q, then P = 1 - Q
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  return 1.0 - q;
}

inline double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

/// Chi-square survival function with k degrees of freedom.
inline double chi2_sf(double x, double k) { return gamma_q(0.5 * k, 0.5 * x); }

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

/// Adaptive Simpson quadrature.
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-10, int max_depth = 40) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Streaming mean and standard error.
struct MeanAccumulator {
  double sum = 0.0, sumsq = 0.0;
  long n = 0;
  void add(double x) {
    sum += x;
    sumsq += x * x;
    ++n;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double variance() const {
    double m = mean();
    return std::max(0.0, sumsq / static_cast<double>(n) - m * m);
  }
  double stderror() const { return std::sqrt(variance() / static_cast<double>(n)); }
};

struct ComplexMeanAccumulator {
  MeanAccumulator re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> mean() const { return {re.mean(), im.mean()}; }
  /// Combined standard error of the complex mean.
  double stderror() const {
    return std::sqrt(re.variance() + im.variance()) / std::sqrt(static_cast<double>(re.n));
  }
};

}  // namespace confmeasure

#endif  // CONFMEASURE_STATS_HPP
