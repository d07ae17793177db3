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

#include <complex>
#include <random>
#include <vector>

#include "confmeasure/matrix_series.hpp"
#include "confmeasure/series.hpp"

using namespace confmeasure;
using cd = std::complex<double>;

namespace {

double u01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

cd rand_c(std::mt19937_64& eng, double scale = 1.0) {
  return {scale * (2.0 * u01(eng) - 1.0), scale * (2.0 * u01(eng) - 1.0)};
}

SeriesXcd rand_series(std::mt19937_64& eng, int order, double scale = 1.0) {
  SeriesXcd s(order);
  for (int k = 0; k <= order; ++k) s[k] = rand_c(eng, scale);
  return s;
}

RationalComplex rand_q(std::mt19937_64& eng) {
  long a = static_cast<long>(eng() % 19) - 9;
  long b = static_cast<long>(eng() % 19) - 9;
  long d = 1 + static_cast<long>(eng() % 6);
  return {Rational(a) / d, Rational(b) / d};
}

SeriesXq rand_series_q(std::mt19937_64& eng, int order) {
  SeriesXq s(order);
  for (int k = 0; k <= order; ++k) s[k] = rand_q(eng);
  return s;
}

}  // namespace

TEST_CASE("geometric series times (1-z) telescopes to 1") {
  const int n = 20;
  SeriesXcd geo(n), one_minus_z(n);
  for (int k = 0; k <= n; ++k) geo[k] = 1.0;
  one_minus_z[0] = 1.0;
  one_minus_z[1] = -1.0;
  SeriesXcd prod = geo * one_minus_z;
  CHECK(std::abs(prod[0] - cd(1.0)) == 0.0);
  for (int k = 1; k <= n; ++k) CHECK(std::abs(prod[k]) == 0.0);
}

TEST_CASE("multiplication is commutative and associative") {
  std::mt19937_64 eng(101);
  for (int trial = 0; trial < 20; ++trial) {
    SeriesXcd a = rand_series(eng, 8), b = rand_series(eng, 8), c = rand_series(eng, 8);
    CHECK(max_abs_diff(a * b, b * a) == 0.0);
    CHECK(max_abs_diff((a * b) * c, a * (b * c)) < 1e-12);
    // distributivity
    CHECK(max_abs_diff(a * (b + c), a * b + a * c) < 1e-12);
  }
}

TEST_CASE("division by one and first-order quotient coefficient") {
  std::mt19937_64 eng(202);
  SeriesXcd f = rand_series(eng, 10);
  CHECK(max_abs_diff(f / SeriesXcd::one(10), f) == 0.0);

  SeriesXcd g = rand_series(eng, 10);
  g[0] += cd(2.0, 0.0);  // keep the constant term away from zero
  SeriesXcd q = f / g;
  cd expected = (f[1] * g[0] - f[0] * g[1]) / (g[0] * g[0]);
  CHECK(std::abs(q[1] - expected) < 1e-13);
  CHECK(std::abs(q[0] - f[0] / g[0]) < 1e-14);
}

TEST_CASE("division rejects vanishing constant term") {
  SeriesXcd f = SeriesXcd::one(4);
  SeriesXcd g = SeriesXcd::identity(4);
  CHECK_THROWS_AS(series_div(f, g), std::domain_error);
}

TEST_CASE("multiply-then-divide roundtrip") {
  std::mt19937_64 eng(303);
  for (int trial = 0; trial < 20; ++trial) {
    SeriesXcd f = rand_series(eng, 10), g = rand_series(eng, 10);
    if (std::abs(g[0]) < 0.5) g[0] += cd(1.0, 0.0);
    CHECK(max_abs_diff((f * g) / g, f) < 1e-12);
  }
}

TEST_CASE("multiply-then-divide roundtrip is exact over rationals") {
  std::mt19937_64 eng(304);
  for (int trial = 0; trial < 8; ++trial) {
    SeriesXq f = rand_series_q(eng, 8), g = rand_series_q(eng, 8);
    if (ScalarOps<RationalComplex>::is_zero(g[0])) g[0] = RationalComplex(1);
    CHECK(exactly_equal(series_div(f * g, g), f));
  }
}

TEST_CASE("composition basics") {
  std::mt19937_64 eng(404);
  SeriesXcd f = rand_series(eng, 10);
  CHECK(max_abs_diff(series_compose(f, SeriesXcd::identity(10)), f) == 0.0);

  // z^2 at z + z^2 expands to z^2 + 2 z^3 + z^4
  SeriesXcd z2(6);
  z2[2] = 1.0;
  SeriesXcd inner(6);
  inner[1] = 1.0;
  inner[2] = 1.0;
  SeriesXcd out = series_compose(z2, inner);
  CHECK(std::abs(out[2] - cd(1.0)) < 1e-15);
  CHECK(std::abs(out[3] - cd(2.0)) < 1e-15);
  CHECK(std::abs(out[4] - cd(1.0)) < 1e-15);
  CHECK(std::abs(out[5]) < 1e-15);
}

TEST_CASE("composition is associative") {
  std::mt19937_64 eng(505);
  for (int trial = 0; trial < 10; ++trial) {
    SeriesXcd f = rand_series(eng, 6);
    SeriesXcd g = rand_series(eng, 6, 0.5), h = rand_series(eng, 6, 0.5);
    g[0] = 0.0;
    h[0] = 0.0;
    SeriesXcd lhs = series_compose(series_compose(f, g), h);
    SeriesXcd rhs = series_compose(f, series_compose(g, h));
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("composition rejects nonvanishing inner constant term") {
  SeriesXcd f = rand_series(*(new std::mt19937_64(1)), 4);  // value irrelevant
  SeriesXcd g = SeriesXcd::one(4);
  CHECK_THROWS_AS(series_compose(f, g), std::domain_error);
}

TEST_CASE("reversion of z and of z/(1-z)") {
  CHECK(max_abs_diff(series_reversion(SeriesXcd::identity(8)), SeriesXcd::identity(8)) == 0.0);

  // z/(1-z) = z + z^2 + ... has compositional inverse z/(1+z) = z - z^2 + z^3 - ...
  const int n = 12;
  SeriesXcd f(n);
  for (int k = 1; k <= n; ++k) f[k] = 1.0;
  SeriesXcd g = series_reversion(f);
  for (int k = 1; k <= n; ++k) CHECK(std::abs(g[k] - cd(k % 2 ? 1.0 : -1.0)) < 1e-12);
}

TEST_CASE("reversion roundtrip at degree 12") {
  std::mt19937_64 eng(606);
  for (int trial = 0; trial < 10; ++trial) {
    SeriesXcd f = rand_series(eng, 12, 0.4);
    f[0] = 0.0;
    f[1] = 1.0;
    SeriesXcd g = series_reversion(f);
    SeriesXcd fg = series_compose(f, g);
    SeriesXcd gf = series_compose(g, f);
    SeriesXcd id = SeriesXcd::identity(12);
    CHECK(max_abs_diff(fg, id) < 1e-12);
    CHECK(max_abs_diff(gf, id) < 1e-12);
  }
}

TEST_CASE("reversion rejects vanishing linear coefficient") {
  SeriesXcd f(4);
  f[2] = 1.0;
  CHECK_THROWS_AS(series_reversion(f), std::domain_error);
}

TEST_CASE("binomial expansion of (1-cz)^(-2m)") {
  const double m = 0.75;
  const cd c(0.3, -0.2);
  const int n = 12;
  SeriesXcd base(n);
  base[0] = 1.0;
  base[1] = -c;
  SeriesXcd p = series_pow(base, -2.0 * m);
  double rising = 1.0;
  cd ck = 1.0;
  double fact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      rising *= 2.0 * m + (k - 1);
      ck *= c;
      fact *= k;
    }
    cd expected = (k == 0) ? cd(1.0) : rising * ck / fact;
    CHECK(std::abs(p[k] - expected) < 1e-12 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("exp(log f) roundtrip and zeroth power") {
  std::mt19937_64 eng(707);
  for (int trial = 0; trial < 10; ++trial) {
    SeriesXcd f = rand_series(eng, 10, 0.7);
    f[0] = 1.0;
    CHECK(max_abs_diff(series_exp(series_log(f)), f) < 1e-12);
    CHECK(max_abs_diff(series_pow(f, 0.0), SeriesXcd::one(10)) < 1e-15);
  }
}

TEST_CASE("log and pow reject constant terms away from 1") {
  SeriesXcd f = SeriesXcd::constant(cd(2.0), 4);
  CHECK_THROWS_AS(series_log(f), std::domain_error);
  CHECK_THROWS_AS(series_pow(f, 0.5), std::domain_error);
}

TEST_CASE("derivative and antiderivative") {
  SeriesXcd x(4);
  x[1] = cd(0.5, 1.0);
  x[2] = cd(-2.0, 0.25);
  SeriesXcd d = series_derivative(x);
  CHECK(std::abs(d[0] - x[1]) == 0.0);
  CHECK(std::abs(d[1] - 2.0 * x[2]) == 0.0);

  SeriesXcd th(1);
  th[0] = cd(1.0, -1.0);
  th[1] = cd(2.0, 3.0);
  SeriesXcd a = series_antiderivative(th);
  CHECK(std::abs(a[0]) == 0.0);
  CHECK(std::abs(a[1] - th[0]) == 0.0);
  CHECK(std::abs(a[2] - th[1] / 2.0) == 0.0);

  std::mt19937_64 eng(808);
  SeriesXcd f = rand_series(eng, 9);
  CHECK(max_abs_diff(series_derivative(series_antiderivative(f)), f) == 0.0);
}

TEST_CASE("matrix series inverse: identity and scalar-style example") {
  MatrixSeriesXcd one = MatrixSeriesXcd::identity(2, 5);
  MatrixSeriesXcd inv = matrix_series_inverse(one);
  for (int k = 0; k <= 5; ++k)
    CHECK((inv[k] - one[k]).cwiseAbs().maxCoeff() == 0.0);

  // coefficient 2 of (1 + g1 z + g2 z^2)^{-1} is -g2 + g1^2
  std::mt19937_64 eng(909);
  MatrixSeriesXcd g = MatrixSeriesXcd::identity(2, 4);
  for (int k = 1; k <= 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g[k](i, j) = rand_c(eng, 0.5);
  MatrixSeriesXcd h = matrix_series_inverse(g);
  Eigen::Matrix2cd expected = -g[2] + g[1] * g[1];
  CHECK((h[2] - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("matrix series inverse roundtrip, d=3 order 8") {
  std::mt19937_64 eng(1010);
  MatrixSeriesXcd g = MatrixSeriesXcd::identity(3, 8);
  for (int k = 1; k <= 8; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g[k](i, j) = rand_c(eng, 0.4);
  MatrixSeriesXcd h = matrix_series_inverse(g);
  MatrixSeriesXcd prod = g * h;
  MatrixSeriesXcd one = MatrixSeriesXcd::identity(3, 8);
  for (int k = 0; k <= 8; ++k)
    CHECK((prod[k] - one[k]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("matrix inverse coefficients match the signed multi-index sum exactly") {
  // Independent oracle: for G_0 = 1, coefficient n of G^{-1} is
  // sum over positive multi-indices (i_1..i_l) of order n of (-1)^l G_{i_1}..G_{i_l}.
  std::mt19937_64 eng(1111);
  const int n = 6, d = 2;
  MatrixSeriesXq g(d, n);
  for (int i = 0; i < d; ++i) g[0](i, i) = RationalComplex(1);
  for (int k = 1; k <= n; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g[k](i, j) = rand_q(eng);
  MatrixSeriesXq h = matrix_series_inverse(g);

  for (int ord = 1; ord <= n; ++ord) {
    DenseMat<RationalComplex> acc =
        DenseMat<RationalComplex>::Constant(d, d, RationalComplex());
    // compositions of ord encoded by cut masks
    for (unsigned mask = 0; mask < (1u << (ord - 1)); ++mask) {
      std::vector<int> parts;
      int run = 1;
      for (int pos = 0; pos < ord - 1; ++pos) {
        if (mask & (1u << pos)) {
          parts.push_back(run);
          run = 1;
        } else {
          ++run;
        }
      }
      parts.push_back(run);
      DenseMat<RationalComplex> term = DenseMat<RationalComplex>::Constant(d, d, RationalComplex());
      for (int i = 0; i < d; ++i) term(i, i) = RationalComplex(1);
      for (int p : parts) term = (term * g[p]).eval();
      if (parts.size() % 2 == 1) term = -term;
      acc += term;
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) CHECK(h[ord](i, j) == acc(i, j));
  }
}

TEST_CASE("noncommuting inverses: (GH)^{-1} = H^{-1} G^{-1}") {
  std::mt19937_64 eng(1212);
  MatrixSeriesXcd g = MatrixSeriesXcd::identity(2, 6), h = MatrixSeriesXcd::identity(2, 6);
  for (int k = 1; k <= 6; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        g[k](i, j) = rand_c(eng, 0.4);
        h[k](i, j) = rand_c(eng, 0.4);
      }
  MatrixSeriesXcd lhs = matrix_series_inverse(g * h);
  MatrixSeriesXcd rhs = matrix_series_inverse(h) * matrix_series_inverse(g);
  for (int k = 0; k <= 6; ++k) CHECK((lhs[k] - rhs[k]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("matrix series inverse rejects singular leading coefficient") {
  MatrixSeriesXcd g(2, 3);  // G_0 = 0
  CHECK_THROWS_AS(matrix_series_inverse(g), std::domain_error);
}
