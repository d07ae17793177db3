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

#ifndef CONFMEASURE_MEASURES_HPP
#define CONFMEASURE_MEASURES_HPP

#include <Eigen/Core>
#include <complex>
#include <memory>
#include <vector>

#include "confmeasure/invariant.hpp"
#include "confmeasure/rng.hpp"

namespace confmeasure {

/// Invariant Gaussian on H^m cap L^2 at temperature T.  degree == 0 means
/// the plain complex Gaussian on the constants (the denominator convention
/// for quotients of adjacent degrees).
struct GaussianSpec {
  double degree = 1.0;
  double temperature = 1.0;
};

/// Tagged description of a samplable invariant measure.
struct MeasureSpec {
  enum class Kind { gaussian, mixture_mu, det_hankel, product, convolution, scaled, quotient };
  Kind kind = Kind::gaussian;
  GaussianSpec gaussian;               // kind == gaussian
  double l = 0.0;                      // mixture_mu, det_hankel
  int truncation = 1;                  // det_hankel N
  std::complex<double> scale{1.0, 0.0};  // scaled
  std::vector<MeasureSpec> children;   // binary combinators

  static MeasureSpec make_gaussian(double m, double t);
  static MeasureSpec make_mixture(double l);
  static MeasureSpec make_det_hankel(int n, double l);
  static MeasureSpec make_product(MeasureSpec a, MeasureSpec b);
  static MeasureSpec make_convolution(MeasureSpec a, MeasureSpec b);
  static MeasureSpec make_scaled(MeasureSpec a, std::complex<double> c);
  static MeasureSpec make_quotient(MeasureSpec a, MeasureSpec b);
};

/// Degree of the differentials the measure lives on (products add,
/// quotients subtract).
double spec_degree(const MeasureSpec& spec);

/// Coefficients f_n = sqrt(T / w_m(n)) Z_n with independent complex
/// Gaussians normalized so E|Z|^2 = 2; for degree 0 only the constant
/// coefficient is drawn.
Differential sample_gaussian(const GaussianSpec& spec, int order, RngStream& rng);

/// The degree-0-convention Gaussian: x_n = sqrt(T/n) Z_n for n >= 1.
Differential sample_gaussian_h0c(double temperature, int order, RngStream& rng);

/// Joint density of (f(z_1), .., f(z_n)) under the Gaussian, normalized to
/// total mass one: exp(-v* M^{-1} v) / (pi^n det M) with
/// M_ij = 2T (1 - z_i conj(z_j))^{-2m}.
double gaussian_npoint_density(const GaussianSpec& spec, const std::vector<Complex>& points,
                               const Eigen::VectorXcd& values);

/// Gamma-mixture draw: beta ~ Gamma(l+1, 1), then the degree-1 Gaussian at
/// temperature 1/beta.  n_coeffs coefficients theta_1..theta_n are stored
/// at series indices 0..n-1.
Differential sample_mu_l(double l, int n_coeffs, RngStream& rng);

/// Density of the n-coefficient mixture law at theta (theta[j-1] = theta_j):
/// Gamma(n+l+1)/(pi^n Gamma(l+1)) (1 + sum |theta_j|^2 / j)^{-(n+1+l)}.
double mu_l_density(const Eigen::VectorXcd& theta, double l);

/// Closed-form Fourier transform nu^(F) = E exp(-i Re<F, sample>).
/// Supported: gaussian  -> exp(-T ||F||^2 / 2);
///            product of two gaussians -> 1/det(1 + S T B B*);
///            mixture_mu -> Gamma quadrature of the Gaussian transforms.
std::complex<double> ft_closed_form(const MeasureSpec& spec, const Differential& F);

struct FtEstimate {
  std::complex<double> value;
  double stderror = 0.0;
};

/// Monte Carlo estimate of the Fourier transform.
FtEstimate ft_estimate(const MeasureSpec& spec, const Differential& F, long nsamples,
                       RngStream& rng);

/// Draw from an arbitrary combinator tree.  Quotient denominators are
/// resampled while |g_0| < 1e-12, up to a retry cap of 100.
Differential combine_sample(const MeasureSpec& spec, int order, RngStream& rng);

struct QuotientStat {
  double ks_statistic = 0.0;
  double ks_threshold = 0.0;
  double rayleigh_p = 0.0;
  bool pass = false;
};

/// One-point law of f(0)/g(0) for the quotient of adjacent-degree
/// Gaussians: |q|^2/(1+|q|^2) is exactly Uniform(0,1), tested by KS at the
/// 0.001 level; the phase is checked by a Rayleigh test.
QuotientStat quotient_onepoint_stat(int m, double temperature, long nsamples, RngStream& rng);

/// Finite point configuration in the open disk.
struct Configuration {
  std::vector<Complex> points;
};

/// Poisson configuration of intensity lambda with respect to the invariant
/// area dx dy/(1-|z|^2)^2, restricted to the hyperbolic ball of the given
/// radius: count ~ Poisson(lambda pi sinh(R)^2), points i.i.d. invariant.
Configuration poisson_sample(double lambda, double hyperbolic_radius, RngStream& rng);

/// All roots of the truncated polynomial with modulus < r, by companion
/// matrix eigenvalues plus a Newton polish step.
std::vector<Complex> zeros(const Differential& theta, double r);
std::vector<Complex> polynomial_roots(const Eigen::VectorXcd& coeffs);

/// Growth diagnostic along a ray: ratios
/// |x(r e^{i alpha})| / sqrt(rho(r) ln(rho(sqrt r)/(1-r))), rho(r) = -ln(1-r^2).
/// The truncation should satisfy order >= 10/(1-max r).
std::vector<double> radial_growth(const Differential& x, double alpha,
                                  const std::vector<double>& radii);

}  // namespace confmeasure

#endif  // CONFMEASURE_MEASURES_HPP
