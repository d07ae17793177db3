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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "confmeasure/invariant.hpp"

using namespace confmeasure;
using cd = std::complex<double>;

namespace {

double u01(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

cd rand_disk(std::mt19937_64& eng, double rmax) {
  double r = rmax * std::sqrt(u01(eng));
  double t = 2.0 * std::numbers::pi * u01(eng);
  return std::polar(r, t);
}

GroupElementTilde rand_tilde(std::mt19937_64& eng, double bmax) {
  cd b = rand_disk(eng, bmax);
  double phi = 2.0 * std::numbers::pi * u01(eng);
  cd a = std::sqrt(1.0 + std::norm(b)) * std::polar(1.0, phi);
  return tilde_element(a, b);
}

SeriesXcd rand_poly(std::mt19937_64& eng, int deg, int order, double scale = 1.0) {
  SeriesXcd s(order);
  for (int k = 0; k <= deg; ++k)
    s[k] = {scale * (2.0 * u01(eng) - 1.0), scale * (2.0 * u01(eng) - 1.0)};
  return s;
}

}  // namespace

TEST_CASE("norm weights: anchor values and ratio recurrence") {
  CHECK(norm_weight(0.7, 0) == 1.0);
  CHECK(norm_weight(1.0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  for (int n = 0; n <= 50; ++n) CHECK(norm_weight(0.5, n) == doctest::Approx(1.0).epsilon(1e-13));
  std::mt19937_64 eng(31);
  for (int trial = 0; trial < 10; ++trial) {
    double m = 0.1 + 3.0 * u01(eng);
    auto w = norm_weights(m, 30);
    for (int n = 0; n < 30; ++n) {
      double ratio = w[n + 1] / w[n];
      CHECK(ratio == doctest::Approx((n + 1.0) / (2.0 * m + n)).epsilon(1e-14));
    }
    // cross-check against the direct Gamma evaluation
    for (int n : {1, 5, 17}) {
      double direct = std::exp(std::lgamma(n + 1.0) + std::lgamma(2.0 * m) - std::lgamma(2.0 * m + n));
      CHECK(w[n] == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("inner product: unit constant, degree-0 convention, Hermitian symmetry") {
  Differential unit(1.5, SeriesXcd::one(4));
  CHECK(norm_squared(unit) == doctest::Approx(1.0).epsilon(1e-15));

  SeriesXcd x(4);
  x[1] = 1.0;
  x[2] = 1.0;
  Differential xd(0.0, x);
  CHECK(norm_squared(xd) == doctest::Approx(3.0).epsilon(1e-15));

  std::mt19937_64 eng(32);
  for (int trial = 0; trial < 10; ++trial) {
    Differential f(1.25, rand_poly(eng, 6, 6)), g(1.25, rand_poly(eng, 6, 6));
    cd fg = inner_product(f, g);
    cd gf = inner_product(g, f);
    CHECK(std::abs(fg - std::conj(gf)) < 1e-14);
  }
  Differential h(2.0, SeriesXcd::one(3));
  CHECK_THROWS_AS(inner_product(unit, h), std::invalid_argument);
}

TEST_CASE("evaluation representer reproduces point values") {
  Differential k0 = eval_representer(0.0, 0.8, 12);
  CHECK(std::abs(k0.coeffs[0] - cd(1.0)) == 0.0);
  for (int n = 1; n <= 12; ++n) CHECK(std::abs(k0.coeffs[n]) == 0.0);

  std::mt19937_64 eng(33);
  for (double m : {0.5, 1.0, 1.75}) {
    for (int trial = 0; trial < 5; ++trial) {
      cd z0 = rand_disk(eng, 0.5);
      const int order = 120;
      Differential f(m, rand_poly(eng, 50, order));
      Differential k = eval_representer(z0, m, order);
      cd direct = evaluate(f.coeffs, z0);
      CHECK(std::abs(inner_product(f, k) - direct) < 1e-10);
    }
  }
}

TEST_CASE("degree-1 antiderivative kernel has coefficients conj(z0)^k / k") {
  cd z0(0.3, -0.4);
  Differential k = eval_representer_log(z0, 8);
  cd pw = 1.0;
  for (int n = 1; n <= 8; ++n) {
    pw *= std::conj(z0);
    CHECK(std::abs(k.coeffs[n] - pw / static_cast<double>(n)) < 1e-15);
  }
  // reproduces x(z0) - x(0) under the degree-0 pairing
  std::mt19937_64 eng(34);
  SeriesXcd x = rand_poly(eng, 6, 64);
  x[0] = 0.0;
  Differential xd(0.0, x);
  Differential klong = eval_representer_log(z0, 64);
  CHECK(std::abs(inner_product(xd, klong) - evaluate(x, z0)) < 1e-12);
}

TEST_CASE("covariance matrices: anchors and positive semidefiniteness") {
  Eigen::MatrixXcd c1 = covariance_matrix({cd(0.0, 0.0)}, 1.3);
  CHECK(std::abs(c1(0, 0) - cd(1.0)) == 0.0);

  Eigen::MatrixXcd c2 = covariance_matrix({cd(0.5, 0.0), cd(0.0, 0.0)}, 1.0);
  CHECK(std::abs(c2(0, 0) - std::pow(0.75, -2.0)) < 1e-14);
  CHECK(std::abs(c2(0, 1) - cd(1.0)) < 1e-14);
  CHECK(std::abs(c2(1, 0) - cd(1.0)) < 1e-14);

  std::mt19937_64 eng(35);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<cd> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(rand_disk(eng, 0.85));
    for (bool log_kernel : {false, true}) {
      Eigen::MatrixXcd c = log_kernel ? covariance_matrix_log(pts) : covariance_matrix(pts, 0.9);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c);
      CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    }
  }
  CHECK_THROWS_AS(covariance_matrix({cd(1.0, 0.0)}, 1.0), std::domain_error);
}

TEST_CASE("cover group: identity, center, associativity, matrix part") {
  std::mt19937_64 eng(36);
  GroupElementTilde id = tilde_identity();
  for (int trial = 0; trial < 10; ++trial) {
    GroupElementTilde g = rand_tilde(eng, 0.7);
    CHECK(tilde_valid(g));
    GroupElementTilde gi = tilde_mul(g, id);
    CHECK(std::abs(gi.a - g.a) < 1e-15);
    CHECK(std::abs(gi.b - g.b) < 1e-15);
    CHECK(std::abs(gi.A - g.A) < 1e-15);

    // center commutes and projects to +/- identity
    GroupElementTilde c1 = tilde_center(1);
    GroupElementTilde lhs = tilde_mul(c1, g);
    GroupElementTilde rhs = tilde_mul(g, c1);
    CHECK(std::abs(lhs.a - rhs.a) < 1e-15);
    CHECK(std::abs(lhs.b - rhs.b) < 1e-15);
    CHECK(std::abs(lhs.A - rhs.A) < 1e-12);

    GroupElementTilde ginv = tilde_inverse(g);
    GroupElementTilde e = tilde_mul(g, ginv);
    CHECK(std::abs(e.a - 1.0) < 1e-12);
    CHECK(std::abs(e.b) < 1e-12);
    CHECK(std::abs(e.A) < 1e-12);
  }

  // the covering sequence is exact: central indices add under the product
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j) {
      GroupElementTilde cij = tilde_mul(tilde_center(i), tilde_center(j));
      GroupElementTilde expect = tilde_center(i + j);
      CHECK(std::abs(cij.a - expect.a) < 1e-14);
      CHECK(std::abs(cij.A - expect.A) < 1e-12);
    }

  for (int trial = 0; trial < 20; ++trial) {
    GroupElementTilde g1 = rand_tilde(eng, 0.8), g2 = rand_tilde(eng, 0.8), g3 = rand_tilde(eng, 0.8);
    GroupElementTilde lhs = tilde_mul(tilde_mul(g1, g2), g3);
    GroupElementTilde rhs = tilde_mul(g1, tilde_mul(g2, g3));
    CHECK(std::abs(lhs.a - rhs.a) < 1e-12);
    CHECK(std::abs(lhs.b - rhs.b) < 1e-12);
    CHECK(std::abs(lhs.A - rhs.A) < 1e-12);

    // (a, b) parts compose exactly as 2x2 matrices
    Eigen::Matrix2cd m1, m2;
    m1 << g1.a, g1.b, std::conj(g1.b), std::conj(g1.a);
    m2 << g2.a, g2.b, std::conj(g2.b), std::conj(g2.a);
    Eigen::Matrix2cd m12 = m1 * m2;
    GroupElementTilde g12 = tilde_mul(g1, g2);
    CHECK(std::abs(m12(0, 0) - g12.a) == 0.0);
    CHECK(std::abs(m12(0, 1) - g12.b) == 0.0);
  }
}

TEST_CASE("Moebius action: identity, center phase, norm invariance") {
  std::mt19937_64 eng(37);
  Differential theta(1.0, rand_poly(eng, 5, 40, 0.8));
  Differential same = moebius_act(tilde_identity(), theta, 40);
  CHECK(max_abs_diff(same.coeffs, theta.coeffs) < 1e-14);

  // central element n = 1 scales by exp(-2 pi i m)
  for (double m : {1.0, 2.0}) {
    Differential th(m, rand_poly(eng, 4, 20, 0.5));
    Differential acted = moebius_act(tilde_center(1), th, 20);
    CHECK(max_abs_diff(acted.coeffs, th.coeffs) < 1e-12);
  }
  {
    double m = 0.75;
    Differential th(m, rand_poly(eng, 4, 20, 0.5));
    Differential acted = moebius_act(tilde_center(1), th, 20);
    cd phase = std::exp(cd(0.0, -2.0 * std::numbers::pi * m));
    SeriesXcd scaled = phase * th.coeffs;
    CHECK(max_abs_diff(acted.coeffs, scaled) < 1e-12);
  }

  // invariance of the norm under the action, at high truncation
  for (int trial = 0; trial < 5; ++trial) {
    GroupElementTilde g = rand_tilde(eng, 0.44);  // |b/a| <= 0.4ish
    Differential th(1.0, rand_poly(eng, 5, 200, 1.0));
    Differential acted = moebius_act(g, th, 200);
    double ratio = norm_squared(acted) / norm_squared(th);
    CHECK(std::abs(ratio - 1.0) < 1e-6);
  }
}

TEST_CASE("Moebius action composes along the group product") {
  std::mt19937_64 eng(38);
  for (int trial = 0; trial < 5; ++trial) {
    GroupElementTilde g1 = rand_tilde(eng, 0.3), g2 = rand_tilde(eng, 0.3);
    Differential th(1.0, rand_poly(eng, 3, 160, 0.7));
    Differential two_step = moebius_act(g1, moebius_act(g2, th, 160), 160);
    Differential one_step = moebius_act(tilde_mul(g1, g2), th, 160);
    double worst = 0.0;
    for (int k = 0; k <= 40; ++k)
      worst = std::max(worst, std::abs(two_step.coeffs[k] - one_step.coeffs[k]));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("Poincare distance: anchors and invariance") {
  CHECK(poincare_dist(cd(0.3, 0.2), cd(0.3, 0.2)) == 0.0);
  for (double r : {0.1, 0.5, 0.9})
    CHECK(poincare_dist(0.0, r) == doctest::Approx(std::atanh(r)).epsilon(1e-15));

  std::mt19937_64 eng(39);
  for (int trial = 0; trial < 20; ++trial) {
    GroupElementTilde g = rand_tilde(eng, 0.8);
    cd z = rand_disk(eng, 0.9), w = rand_disk(eng, 0.9);
    double d0 = poincare_dist(z, w);
    double d1 = poincare_dist(moebius_point(g, z), moebius_point(g, w));
    CHECK(std::abs(d0 - d1) < 1e-12);
  }
  CHECK_THROWS_AS(poincare_dist(cd(1.0, 0.0), cd(0.0, 0.0)), std::domain_error);
}

TEST_CASE("sup norm of quadratic differentials") {
  Differential zero(2.0, SeriesXcd::zero(4));
  CHECK(sup_norm_quadratic(zero).value == 0.0);

  Differential constant(2.0, SeriesXcd::constant(cd(1.5, -2.0), 4));
  SupNormResult r = sup_norm_quadratic(constant);
  CHECK(r.value == doctest::Approx(std::abs(cd(1.5, -2.0))).epsilon(1e-10));
  CHECK(std::abs(r.argmax) < 1e-2);
  CHECK(r.within_band_6);

  // refinement only increases the reported supremum
  std::mt19937_64 eng(40);
  Differential q(2.0, rand_poly(eng, 6, 6, 2.0));
  double coarse = 0.0;
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 48; ++j) {
      double rr = i / 24.0;
      double tt = 2.0 * std::numbers::pi * j / 48.0;
      double w = 1.0 - rr * rr;
      coarse = std::max(coarse, w * w * std::abs(evaluate(q.coeffs, std::polar(rr, tt))));
    }
  SupNormResult fine = sup_norm_quadratic(q);
  CHECK(fine.value >= coarse);
  CHECK(fine.value <= coarse * 1.2 + 1e-12);
}
