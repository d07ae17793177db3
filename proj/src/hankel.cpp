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

#include "confmeasure/hankel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "confmeasure/invariant.hpp"

namespace confmeasure {

namespace {

using cd = std::complex<double>;

// density of the product complex-t(3) proposal at x, per coordinate:
// (1/2pi) (1 + |x|^2/3)^{-5/2}
double log_proposal_density(const Eigen::VectorXcd& x) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k)
    acc += -std::log(2.0 * std::numbers::pi) - 2.5 * std::log1p(std::norm(x[k]) / 3.0);
  return acc;
}

Eigen::VectorXcd draw_proposal(int n, RngStream& rng) {
  Eigen::VectorXcd x(n);
  for (int k = 0; k < n; ++k) {
    double w = 2.0 * rng.gamma(1.5);  // chi-square with 3 dof
    x[k] = rng.normal_complex() * std::sqrt(3.0 / w);
  }
  return x;
}

McEstimate importance_sample(long nsamples, RngStream& rng, int dim,
                             const std::function<double(const Eigen::VectorXcd&)>& log_integrand) {
  double sum = 0.0, sumsq = 0.0, wsum = 0.0, wsumsq = 0.0;
  for (long it = 0; it < nsamples; ++it) {
    Eigen::VectorXcd x = draw_proposal(dim, rng);
    double w = std::exp(log_integrand(x) - log_proposal_density(x));
    sum += w;
    sumsq += w * w;
    wsum += w;
    wsumsq += w * w;
  }
  McEstimate est;
  double n = static_cast<double>(nsamples);
  est.value = sum / n;
  double var = std::max(0.0, sumsq / n - est.value * est.value);
  est.stderror = std::sqrt(var / n);
  est.ess = (wsumsq > 0.0) ? wsum * wsum / wsumsq : 0.0;
  return est;
}

}  // namespace

OperatorMatrix hankel_classical(const Eigen::VectorXcd& x) {
  const int n = static_cast<int>(x.size());
  OperatorMatrix b;
  b.tag = OperatorTag::classical;
  b.mat = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j + 1 <= n) b.mat(i, j) = x[i + j];
  return b;
}

OperatorMatrix hankel_generalized(const Eigen::VectorXcd& F, double m, double n, int rows,
                                  int cols) {
  if (m <= 0.0 || n <= 0.0)
    throw std::domain_error("hankel_generalized: degrees must be positive");
  OperatorMatrix b;
  b.tag = OperatorTag::generalized;
  b.m = m;
  b.n = n;
  b.mat = Eigen::MatrixXcd::Zero(rows, cols);
  const int top = rows + cols - 1;
  std::vector<double> wmn = norm_weights(m + n, top);
  std::vector<double> wm = norm_weights(m, rows);
  std::vector<double> wn = norm_weights(n, cols);
  for (int j = 0; j < rows; ++j)
    for (int k = 0; k < cols; ++k) {
      if (j + k >= F.size()) continue;
      b.mat(j, k) = F[j + k] * wmn[static_cast<size_t>(j + k)] /
                    std::sqrt(wm[static_cast<size_t>(j)] * wn[static_cast<size_t>(k)]);
    }
  return b;
}

OperatorMatrix linearized_schwarzian_matrix(const Eigen::VectorXcd& v, int rows, int cols) {
  OperatorMatrix b;
  b.tag = OperatorTag::linearized_schwarzian;
  b.mat = Eigen::MatrixXcd::Zero(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 1; j <= cols; ++j) {
      int idx = i + j - 2;  // v(idx) holds v_{i+j}
      if (idx >= 0 && idx < v.size())
        b.mat(i, j - 1) = 0.5 * static_cast<double>(i - j + 1) * v[idx];
    }
  return b;
}

double log_det_one_plus_bbstar(const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(b.rows(), b.rows());
  m.noalias() += b * b.adjoint();
  Eigen::LLT<Eigen::MatrixXcd> llt(m);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("log_det_one_plus_bbstar: Cholesky failed");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    acc += 2.0 * std::log(llt.matrixLLT()(i, i).real());
  return acc;
}

double log_det_invariant(const OperatorMatrix& b) { return log_det_one_plus_bbstar(b.mat); }

double det_invariant(const OperatorMatrix& b) { return std::exp(log_det_invariant(b)); }

double partition_closed_form(double p, int n) {
  if (n < 1) throw std::domain_error("partition_closed_form: N >= 1 required");
  if (p <= partition_critical_exponent(n))
    throw std::domain_error("partition_closed_form: exponent at or below the critical value");
  double acc = std::pow(std::numbers::pi, n);
  for (int k = 1; k <= n; ++k) acc /= static_cast<double>(k) * (p - (2.0 - 1.0 / k));
  return acc;
}

McEstimate partition_mc(double p, int n, long nsamples, RngStream& rng) {
  if (p <= partition_critical_exponent(n) + 0.1)
    throw std::domain_error("partition_mc: exponent too close to critical for MC variance");
  auto log_integrand = [&](const Eigen::VectorXcd& x) {
    return -p * log_det_one_plus_bbstar(hankel_classical(x).mat);
  };
  McEstimate est = importance_sample(nsamples, rng, n, log_integrand);
  if (est.ess < 100.0)
    throw std::runtime_error("partition_mc: effective sample size below 100");
  return est;
}

McEstimate generalized_partition_mc(double p, int n, double m, double deg_n, long nsamples,
                                    RngStream& rng) {
  auto log_integrand = [&](const Eigen::VectorXcd& f) {
    return -p * log_det_one_plus_bbstar(hankel_generalized(f, m, deg_n, n, n).mat);
  };
  return importance_sample(nsamples, rng, n, log_integrand);
}

double log_det_density(const Eigen::VectorXcd& x, const DetMeasureSpec& spec) {
  double p = spec.exponent();
  return -p * log_det_one_plus_bbstar(hankel_classical(x).mat) -
         std::log(partition_closed_form(p, spec.n));
}

double det_density(const Eigen::VectorXcd& x, const DetMeasureSpec& spec) {
  return std::exp(log_det_density(x, spec));
}

double alternative_normalizer(int n, double l) {
  double acc = 1.0;
  for (int k = 1; k <= n; ++k) acc *= 1.0 + (l + 1.0) * k;
  return acc / std::pow(std::numbers::pi, n);
}

double radial_density(const Eigen::VectorXcd& theta, double l) {
  const int n = static_cast<int>(theta.size());
  double s = 0.0;
  for (int k = 1; k <= n; ++k) s += std::norm(theta[k - 1]) / static_cast<double>(k);
  double log_norm = std::lgamma(n + l + 1.0) - n * std::log(std::numbers::pi) - std::lgamma(l + 1.0);
  return std::exp(log_norm - (n + 1.0 + l) * std::log1p(s));
}

McmcResult mcmc_sample_det(const DetMeasureSpec& spec, const McmcOptions& opt, RngStream& rng) {
  const int n = spec.n;
  const double p = spec.exponent();
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
  auto log_target = [&](const Eigen::VectorXcd& v) {
    return -p * log_det_one_plus_bbstar(hankel_classical(v).mat);
  };
  double cur = log_target(x);
  std::vector<double> log_scale(static_cast<size_t>(n), 0.0);
  long kept_capacity = (opt.sweeps - opt.burnin + opt.thin - 1) / opt.thin;
  McmcResult out;
  out.samples.resize(kept_capacity, n);
  long kept = 0;
  long accepted = 0, proposed = 0;
  for (long sweep = 0; sweep < opt.sweeps; ++sweep) {
    bool adapting = sweep < opt.burnin;
    double gain = 0.5 / std::pow(static_cast<double>(sweep + 1), 0.6);
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXcd cand = x;
      cand[k] += std::exp(log_scale[static_cast<size_t>(k)]) * rng.normal_complex();
      double trial = log_target(cand);
      double alpha = std::min(1.0, std::exp(trial - cur));
      double u = rng.uniform();
      if (u < alpha) {
        x = cand;
        cur = trial;
        if (!adapting) ++accepted;
      }
      if (!adapting) ++proposed;
      if (adapting)
        log_scale[static_cast<size_t>(k)] += gain * (alpha - opt.target_accept);
    }
    if (!adapting && (sweep - opt.burnin) % opt.thin == 0 && kept < kept_capacity) {
      out.samples.row(kept++) = x.transpose();
    }
  }
  out.samples.conservativeResize(kept, n);
  out.acceptance = proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
  out.scales.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) out.scales[static_cast<size_t>(k)] = std::exp(log_scale[static_cast<size_t>(k)]);
  if (out.acceptance < 0.05 || out.acceptance > 0.8)
    throw std::runtime_error("mcmc_sample_det: acceptance rate outside [0.05, 0.8]");
  return out;
}

Eigen::VectorXd singular_values(const OperatorMatrix& b) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b.mat);
  return svd.singularValues();
}

std::pair<double, double> hankel2_singular_closed(cd x1, cd x2) {
  double sigma1 = std::norm(x1) + 2.0 * std::norm(x2);
  double sigma2 = std::norm(x2) * std::norm(x2);
  double disc = std::sqrt(std::max(0.0, sigma1 * sigma1 - 4.0 * sigma2));
  double s1sq = 0.5 * (sigma1 + disc);
  double s2sq = 0.5 * (sigma1 - disc);
  return {std::sqrt(s1sq), std::sqrt(std::max(0.0, s2sq))};
}

}  // namespace confmeasure
