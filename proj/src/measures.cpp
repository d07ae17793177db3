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

#include "confmeasure/measures.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "confmeasure/hankel.hpp"
#include "confmeasure/stats.hpp"

namespace confmeasure {

using cd = std::complex<double>;

MeasureSpec MeasureSpec::make_gaussian(double m, double t) {
  MeasureSpec s;
  s.kind = Kind::gaussian;
  s.gaussian = {m, t};
  return s;
}
MeasureSpec MeasureSpec::make_mixture(double l) {
  MeasureSpec s;
  s.kind = Kind::mixture_mu;
  s.l = l;
  return s;
}
MeasureSpec MeasureSpec::make_det_hankel(int n, double l) {
  MeasureSpec s;
  s.kind = Kind::det_hankel;
  s.truncation = n;
  s.l = l;
  return s;
}
MeasureSpec MeasureSpec::make_product(MeasureSpec a, MeasureSpec b) {
  MeasureSpec s;
  s.kind = Kind::product;
  s.children = {std::move(a), std::move(b)};
  return s;
}
MeasureSpec MeasureSpec::make_convolution(MeasureSpec a, MeasureSpec b) {
  MeasureSpec s;
  s.kind = Kind::convolution;
  s.children = {std::move(a), std::move(b)};
  return s;
}
MeasureSpec MeasureSpec::make_scaled(MeasureSpec a, cd c) {
  if (c == cd(0.0, 0.0)) throw std::invalid_argument("make_scaled: zero factor");
  MeasureSpec s;
  s.kind = Kind::scaled;
  s.scale = c;
  s.children = {std::move(a)};
  return s;
}
MeasureSpec MeasureSpec::make_quotient(MeasureSpec a, MeasureSpec b) {
  MeasureSpec s;
  s.kind = Kind::quotient;
  s.children = {std::move(a), std::move(b)};
  return s;
}

double spec_degree(const MeasureSpec& spec) {
  switch (spec.kind) {
    case MeasureSpec::Kind::gaussian:
      return spec.gaussian.degree;
    case MeasureSpec::Kind::mixture_mu:
    case MeasureSpec::Kind::det_hankel:
      return 1.0;
    case MeasureSpec::Kind::product:
      return spec_degree(spec.children[0]) + spec_degree(spec.children[1]);
    case MeasureSpec::Kind::quotient:
      return spec_degree(spec.children[0]) - spec_degree(spec.children[1]);
    case MeasureSpec::Kind::convolution: {
      double a = spec_degree(spec.children[0]);
      double b = spec_degree(spec.children[1]);
      if (a != b) throw std::invalid_argument("convolution requires equal degrees");
      return a;
    }
    case MeasureSpec::Kind::scaled:
      return spec_degree(spec.children[0]);
  }
  throw std::logic_error("spec_degree: unreachable");
}

Differential sample_gaussian(const GaussianSpec& spec, int order, RngStream& rng) {
  if (spec.temperature <= 0.0) throw std::domain_error("sample_gaussian: temperature must be positive");
  SeriesXcd f(order);
  if (spec.degree == 0.0) {
    f[0] = std::sqrt(spec.temperature) * rng.normal_complex();
    return {0.0, std::move(f)};
  }
  std::vector<double> w = norm_weights(spec.degree, order);
  for (int n = 0; n <= order; ++n)
    f[n] = std::sqrt(spec.temperature / w[static_cast<size_t>(n)]) * rng.normal_complex();
  return {spec.degree, std::move(f)};
}

Differential sample_gaussian_h0c(double temperature, int order, RngStream& rng) {
  if (temperature <= 0.0) throw std::domain_error("sample_gaussian_h0c: temperature must be positive");
  SeriesXcd x(order);
  for (int n = 1; n <= order; ++n)
    x[n] = std::sqrt(temperature / static_cast<double>(n)) * rng.normal_complex();
  return {0.0, std::move(x)};
}

double gaussian_npoint_density(const GaussianSpec& spec, const std::vector<Complex>& points,
                               const Eigen::VectorXcd& values) {
  const int n = static_cast<int>(points.size());
  if (values.size() != n)
    throw std::invalid_argument("gaussian_npoint_density: points/values size mismatch");
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = 2.0 * spec.temperature *
                std::pow(1.0 - points[static_cast<size_t>(i)] * std::conj(points[static_cast<size_t>(j)]),
                         -2.0 * spec.degree);
  Eigen::LLT<Eigen::MatrixXcd> llt(m);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("gaussian_npoint_density: singular covariance (coincident points?)");
  double logdet = 0.0;
  for (int i = 0; i < n; ++i) logdet += 2.0 * std::log(llt.matrixLLT()(i, i).real());
  Eigen::VectorXcd sol = llt.solve(values);
  double quad = values.dot(sol).real();  // v* M^{-1} v
  return std::exp(-quad - logdet - n * std::log(std::numbers::pi));
}

Differential sample_mu_l(double l, int n_coeffs, RngStream& rng) {
  if (l <= -1.0) throw std::domain_error("sample_mu_l: l must exceed -1");
  double beta = rng.gamma(l + 1.0);
  return sample_gaussian({1.0, 1.0 / beta}, n_coeffs - 1, rng);
}

double mu_l_density(const Eigen::VectorXcd& theta, double l) {
  return radial_density(theta, l);
}

namespace {

double norm2_for_degree(const Differential& f) { return norm_squared(f); }

cd ft_gaussian(const GaussianSpec& g, const Differential& F) {
  double f2;
  if (g.degree == 0.0 && F.degree == 0.0) {
    f2 = std::norm(F.coeffs[0]);
  } else {
    if (F.degree != g.degree) throw std::invalid_argument("ft_closed_form: degree mismatch");
    f2 = norm2_for_degree(F);
  }
  return std::exp(-0.5 * g.temperature * f2);
}

}  // namespace

cd ft_closed_form(const MeasureSpec& spec, const Differential& F) {
  switch (spec.kind) {
    case MeasureSpec::Kind::gaussian:
      return ft_gaussian(spec.gaussian, F);
    case MeasureSpec::Kind::product: {
      const MeasureSpec& a = spec.children[0];
      const MeasureSpec& b = spec.children[1];
      if (a.kind != MeasureSpec::Kind::gaussian || b.kind != MeasureSpec::Kind::gaussian)
        throw std::invalid_argument("ft_closed_form: product supported for Gaussian factors only");
      double m = a.gaussian.degree, n = b.gaussian.degree;
      if (m <= 0.0 || n <= 0.0)
        throw std::invalid_argument("ft_closed_form: product factors need positive degrees");
      if (F.degree != m + n) throw std::invalid_argument("ft_closed_form: degree mismatch");
      int dim = F.coeffs.order() + 1;
      Eigen::VectorXcd fc(dim);
      for (int k = 0; k < dim; ++k) fc[k] = F.coeffs[k];
      OperatorMatrix bmat = hankel_generalized(fc, m, n, dim, dim);
      double st = a.gaussian.temperature * b.gaussian.temperature;
      Eigen::MatrixXcd mm = Eigen::MatrixXcd::Identity(dim, dim);
      mm.noalias() += st * bmat.mat * bmat.mat.adjoint();
      return 1.0 / mm.determinant().real();
    }
    case MeasureSpec::Kind::mixture_mu: {
      if (F.degree != 1.0) throw std::invalid_argument("ft_closed_form: mixture lives on degree 1");
      double f2 = norm2_for_degree(F);
      if (f2 == 0.0) return 1.0;
      double l = spec.l;
      double lg = std::lgamma(l + 1.0);
      auto integrand = [&](double beta) {
        if (beta <= 0.0) return 0.0;
        return std::exp(-0.5 * f2 / beta + l * std::log(beta) - beta - lg);
      };
      double upper = l + 60.0 + 10.0 * std::sqrt(l + 1.0);
      return adaptive_simpson(integrand, 0.0, upper, 1e-12);
    }
    default:
      throw std::invalid_argument("ft_closed_form: unsupported measure kind");
  }
}

FtEstimate ft_estimate(const MeasureSpec& spec, const Differential& F, long nsamples,
                       RngStream& rng) {
  double deg = spec_degree(spec);
  if (deg != F.degree) throw std::invalid_argument("ft_estimate: degree mismatch");
  ComplexMeanAccumulator acc;
  for (long i = 0; i < nsamples; ++i) {
    Differential s = combine_sample(spec, F.coeffs.order(), rng);
    double phase = inner_product(F, s).real();
    acc.add(std::polar(1.0, -phase));
  }
  return {acc.mean(), acc.stderror()};
}

Differential combine_sample(const MeasureSpec& spec, int order, RngStream& rng) {
  switch (spec.kind) {
    case MeasureSpec::Kind::gaussian:
      return sample_gaussian(spec.gaussian, order, rng);
    case MeasureSpec::Kind::mixture_mu:
      return sample_mu_l(spec.l, order + 1, rng);
    case MeasureSpec::Kind::det_hankel: {
      DetMeasureSpec d{spec.truncation, spec.l};
      McmcOptions opt;
      opt.sweeps = 4000;
      opt.burnin = 2000;
      opt.thin = 2000;  // one retained state per call
      McmcResult r = mcmc_sample_det(d, opt, rng);
      // return the degree-1 differential d/dz of the sampled antiderivative
      SeriesXcd f(order);
      for (int k = 1; k - 1 <= order && k <= spec.truncation; ++k)
        f[k - 1] = static_cast<double>(k) * r.samples(0, k - 1);
      return {1.0, std::move(f)};
    }
    case MeasureSpec::Kind::scaled: {
      Differential s = combine_sample(spec.children[0], order, rng);
      s.coeffs = spec.scale * s.coeffs;
      return s;
    }
    case MeasureSpec::Kind::convolution: {
      Differential a = combine_sample(spec.children[0], order, rng);
      Differential b = combine_sample(spec.children[1], order, rng);
      if (a.degree != b.degree) throw std::invalid_argument("convolution requires equal degrees");
      return {a.degree, a.coeffs + b.coeffs};
    }
    case MeasureSpec::Kind::product: {
      Differential a = combine_sample(spec.children[0], order, rng);
      Differential b = combine_sample(spec.children[1], order, rng);
      return {a.degree + b.degree, a.coeffs * b.coeffs};
    }
    case MeasureSpec::Kind::quotient: {
      Differential a = combine_sample(spec.children[0], order, rng);
      for (int attempt = 0; attempt < 100; ++attempt) {
        Differential b = combine_sample(spec.children[1], order, rng);
        if (std::abs(b.coeffs[0]) >= 1e-12)
          return {a.degree - b.degree, series_div(a.coeffs, b.coeffs)};
      }
      throw std::runtime_error("combine_sample: quotient denominator kept vanishing at 0");
    }
  }
  throw std::logic_error("combine_sample: unreachable");
}

QuotientStat quotient_onepoint_stat(int m, double temperature, long nsamples, RngStream& rng) {
  if (m < 1) throw std::domain_error("quotient_onepoint_stat: m >= 1 required");
  MeasureSpec spec = MeasureSpec::make_quotient(
      MeasureSpec::make_gaussian(m, temperature),
      MeasureSpec::make_gaussian(m - 1.0, temperature));
  std::vector<double> transformed;
  std::vector<double> phases;
  transformed.reserve(static_cast<size_t>(nsamples));
  phases.reserve(static_cast<size_t>(nsamples));
  for (long i = 0; i < nsamples; ++i) {
    Differential q = combine_sample(spec, 4, rng);
    cd q0 = q.coeffs[0];
    double s = std::norm(q0);
    transformed.push_back(s / (1.0 + s));
    phases.push_back(std::arg(q0));
  }
  QuotientStat out;
  out.ks_statistic = ks_statistic_uniform(std::move(transformed));
  out.ks_threshold = ks_threshold_one_sample(1e-3, static_cast<size_t>(nsamples));
  out.rayleigh_p = rayleigh_pvalue(phases);
  out.pass = out.ks_statistic < out.ks_threshold && out.rayleigh_p > 1e-3;
  return out;
}

Configuration poisson_sample(double lambda, double hyperbolic_radius, RngStream& rng) {
  if (lambda <= 0.0 || hyperbolic_radius <= 0.0)
    throw std::domain_error("poisson_sample: positive intensity and radius required");
  double area = hyperbolic_ball_area(hyperbolic_radius);
  long count = rng.poisson(lambda * area);
  double sinh2 = std::sinh(hyperbolic_radius) * std::sinh(hyperbolic_radius);
  Configuration cfg;
  cfg.points.reserve(static_cast<size_t>(count));
  for (long i = 0; i < count; ++i) {
    // invariant radial law: |z|^2/(1-|z|^2) uniform up to sinh^2(R)
    double t = rng.uniform() * sinh2;
    double r = std::sqrt(t / (1.0 + t));
    double angle = 2.0 * std::numbers::pi * rng.uniform();
    cfg.points.push_back(std::polar(r, angle));
  }
  return cfg;
}

std::vector<cd> polynomial_roots(const Eigen::VectorXcd& coeffs) {
  int lo = 0, hi = static_cast<int>(coeffs.size()) - 1;
  while (hi >= 0 && coeffs[hi] == cd(0.0, 0.0)) --hi;
  if (hi < 0) throw std::domain_error("polynomial_roots: zero polynomial");
  while (lo < hi && coeffs[lo] == cd(0.0, 0.0)) ++lo;
  std::vector<cd> roots(static_cast<size_t>(lo), cd(0.0, 0.0));  // roots at the origin
  int deg = hi - lo;
  if (deg == 0) return roots;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[lo + i] / coeffs[hi];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  auto value_and_slope = [&](cd z) {
    cd p = 0.0, dp = 0.0;
    for (int k = hi; k >= lo; --k) {
      dp = dp * z + p;
      p = p * z + coeffs[k];
    }
    return std::make_pair(p, dp);
  };
  for (int i = 0; i < deg; ++i) {
    cd z = es.eigenvalues()[i];
    for (int step = 0; step < 2; ++step) {
      auto [p, dp] = value_and_slope(z);
      if (std::abs(dp) > 1e-14) z -= p / dp;
    }
    roots.push_back(z);
  }
  return roots;
}

std::vector<cd> zeros(const Differential& theta, double r) {
  const SeriesXcd& f = theta.coeffs;
  Eigen::VectorXcd c(f.order() + 1);
  for (int k = 0; k <= f.order(); ++k) c[k] = f[k];
  std::vector<cd> all = polynomial_roots(c);
  std::vector<cd> inside;
  for (cd z : all)
    if (std::abs(z) < r) inside.push_back(z);
  return inside;
}

std::vector<double> radial_growth(const Differential& x, double alpha,
                                  const std::vector<double>& radii) {
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) {
    if (r <= 0.0 || r >= 1.0) throw std::domain_error("radial_growth: radii must lie in (0,1)");
    double needed = 10.0 / (1.0 - r);
    if (static_cast<double>(x.coeffs.order()) < needed)
      throw std::domain_error("radial_growth: truncation too small for requested radius");
    double rho = -std::log1p(-r * r);
    double rho_sqrt = -std::log1p(-r);  // rho(sqrt r) = -ln(1 - r)
    if (rho_sqrt / (1.0 - r) <= 1.0)
      throw std::domain_error("radial_growth: radius too small for the growth normalization");
    double denom = std::sqrt(rho * std::log(rho_sqrt / (1.0 - r)));
    cd v = evaluate(x.coeffs, std::polar(r, alpha));
    out.push_back(std::abs(v) / denom);
  }
  return out;
}

}  // namespace confmeasure
