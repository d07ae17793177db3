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

#ifndef CONFMEASURE_HANKEL_HPP
#define CONFMEASURE_HANKEL_HPP

#include <Eigen/Core>
#include <complex>
#include <utility>
#include <vector>

#include "confmeasure/rational.hpp"
#include "confmeasure/rng.hpp"

namespace confmeasure {

enum class OperatorTag { classical, generalized, linearized_schwarzian, loop_block };

/// Dense truncation of an equivariant operator, with its construction tag.
struct OperatorMatrix {
  Eigen::MatrixXcd mat;
  OperatorTag tag = OperatorTag::classical;
  double m = 0.0;  // degrees for the generalized construction
  double n = 0.0;
};

/// Classical finite Hankel matrix: entry (i, j) = x_{i+j+1} when
/// i+j+1 <= N, else 0 (indices from 0, x(k-1) holds x_k).  Row order is a
/// permutation of the usual display; singular values and det(1 + BB*) are
/// unaffected.
OperatorMatrix hankel_classical(const Eigen::VectorXcd& x);

/// Same entries over an arbitrary scalar, for exact-mode identities.
template <typename S>
DenseMat<S> hankel_entries(const std::vector<S>& x) {
  const int n = static_cast<int>(x.size());
  DenseMat<S> h = DenseMat<S>::Constant(n, n, ScalarOps<S>::zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j + 1 <= n) h(i, j) = x[static_cast<size_t>(i + j)];
  return h;
}

/// Generalized Hankel matrix in orthonormal bases:
/// entry (j, k) = F_{k+j} w_{m+n}(k+j) / sqrt(w_m(j) w_n(k)), j row, k col.
/// Reduces to the classical matrix of the antiderivative when m = n = 1/2.
OperatorMatrix hankel_generalized(const Eigen::VectorXcd& F, double m, double n, int rows,
                                  int cols);

/// Matrix of the half-form Lie-derivative action of the vector field
/// (v_2 z^3 + v_3 z^4 + ..) d/dz: entry (i, j-1) = (i - j + 1)/2 * v_{i+j}.
/// v(k) holds v_{k+2}.
OperatorMatrix linearized_schwarzian_matrix(const Eigen::VectorXcd& v, int rows, int cols);

/// det(1 + B B*), always >= 1.
double det_invariant(const OperatorMatrix& b);
double log_det_invariant(const OperatorMatrix& b);
double log_det_one_plus_bbstar(const Eigen::MatrixXcd& b);

/// Critical exponent p_N = 2 - 1/N of the determinant integrals.
inline double partition_critical_exponent(int n) { return 2.0 - 1.0 / static_cast<double>(n); }

/// Exact partition function pi^N / (N! prod_{k<=N} (p - (2 - 1/k))),
/// finite exactly when p > 2 - 1/N.
double partition_closed_form(double p, int n);

struct McEstimate {
  double value = 0.0;
  double stderror = 0.0;
  double ess = 0.0;  // effective sample size of the importance weights
};

/// Importance-sampling estimate of the determinant integral with a product
/// complex-t(3) proposal; requires p > p_N + 0.1 for variance control.
/// Effective sample size below 100 signals an unusable proposal.
McEstimate partition_mc(double p, int n, long nsamples, RngStream& rng);

/// Same integral for the generalized operator over F_0..F_{N-1}; used to
/// probe critical exponents where no closed form is known.
McEstimate generalized_partition_mc(double p, int n, double m, double deg_n, long nsamples,
                                    RngStream& rng);

/// Finite-truncation determinantal measure on C^N with exponent 1 + p_N + l.
struct DetMeasureSpec {
  int n = 1;
  double l = 0.0;
  double exponent() const { return 1.0 + partition_critical_exponent(n) + l; }
};

/// Normalized density of the determinantal measure at x (x(k-1) = x_k).
double det_density(const Eigen::VectorXcd& x, const DetMeasureSpec& spec);
double log_det_density(const Eigen::VectorXcd& x, const DetMeasureSpec& spec);

/// Normalizer prod_{k<=N}(1 + (l+1)k) / pi^N, which matches exponent 3 + l
/// rather than 1 + p_N + l; reported alongside the direct normalizer.
double alternative_normalizer(int n, double l);

/// Radial density (1 + sum k |x_k|^2)^{-(1+N+l)} with its exact normalizer
/// Gamma(N+l+1) / (pi^N Gamma(l+1)).
double radial_density(const Eigen::VectorXcd& theta, double l);

struct McmcOptions {
  long sweeps = 60000;
  long burnin = 5000;
  long thin = 5;
  double target_accept = 0.3;
};

struct McmcResult {
  Eigen::MatrixXcd samples;  // one row per retained state
  double acceptance = 0.0;   // post-burnin acceptance rate
  std::vector<double> scales;
};

/// Componentwise random-walk Metropolis chain targeting det_density, with
/// Robbins-Monro scale adaptation frozen after burn-in.  Acceptance outside
/// [0.05, 0.8] after adaptation signals mis-tuning.
McmcResult mcmc_sample_det(const DetMeasureSpec& spec, const McmcOptions& opt, RngStream& rng);

/// Descending singular values.
Eigen::VectorXd singular_values(const OperatorMatrix& b);

/// Closed-form singular values for the 2x2 classical matrix:
/// s^2 = (sigma1 +- sqrt(sigma1^2 - 4 sigma2))/2 with
/// sigma1 = |x1|^2 + 2|x2|^2, sigma2 = |x2|^4.
std::pair<double, double> hankel2_singular_closed(std::complex<double> x1,
                                                  std::complex<double> x2);

}  // namespace confmeasure

#endif  // CONFMEASURE_HANKEL_HPP
