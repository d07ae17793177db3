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

#ifndef CONFMEASURE_SERIES_HPP
#define CONFMEASURE_SERIES_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "confmeasure/rational.hpp"

namespace confmeasure {

/// Truncated power series c_0 + c_1 z + ... + c_N z^N.
///
/// The stored order N is the validity horizon: arithmetic results carry
/// order = min of the operand orders, and callers must not read beyond it.
/// Coefficients form a field (complex double or exact rational complex).
template <typename Scalar>
class PowerSeries {
 public:
  using Ops = ScalarOps<Scalar>;

  PowerSeries() : c_(1, Ops::zero()) {}
  explicit PowerSeries(int order) : c_(static_cast<size_t>(order) + 1, Ops::zero()) {
    assert(order >= 0);
  }
  explicit PowerSeries(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.assign(1, Ops::zero());
  }

  static PowerSeries zero(int order) { return PowerSeries(order); }
  static PowerSeries constant(Scalar value, int order) {
    PowerSeries s(order);
    s.c_[0] = std::move(value);
    return s;
  }
  static PowerSeries one(int order) { return constant(Ops::one(), order); }
  /// The series z (requires order >= 1).
  static PowerSeries identity(int order) {
    PowerSeries s(order);
    s.c_[1] = Ops::one();
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  Scalar& operator[](int k) { return c_[static_cast<size_t>(k)]; }
  const Scalar& operator[](int k) const { return c_[static_cast<size_t>(k)]; }
  /// Coefficient with zero-extension beyond the stored order.
  Scalar coeff(int k) const {
    return (k >= 0 && k <= order()) ? c_[static_cast<size_t>(k)] : Ops::zero();
  }
  const std::vector<Scalar>& coeffs() const { return c_; }

  /// Restrict or zero-extend to the given order.  Extending does not create
  /// information: the tail is zero and only valid for polynomial inputs.
  PowerSeries truncated(int new_order) const {
    PowerSeries out(new_order);
    int n = std::min(new_order, order());
    for (int k = 0; k <= n; ++k) out.c_[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)];
    return out;
  }

  bool is_zero() const {
    for (const Scalar& x : c_)
      if (!Ops::is_zero(x)) return false;
    return true;
  }

 private:
  std::vector<Scalar> c_;
};

using SeriesXcd = PowerSeries<std::complex<double>>;
using SeriesXq = PowerSeries<RationalComplex>;

template <typename S>
PowerSeries<S> operator+(const PowerSeries<S>& a, const PowerSeries<S>& b) {
  int n = std::min(a.order(), b.order());
  PowerSeries<S> out(n);
  for (int k = 0; k <= n; ++k) out[k] = a[k] + b[k];
  return out;
}

template <typename S>
PowerSeries<S> operator-(const PowerSeries<S>& a, const PowerSeries<S>& b) {
  int n = std::min(a.order(), b.order());
  PowerSeries<S> out(n);
  for (int k = 0; k <= n; ++k) out[k] = a[k] - b[k];
  return out;
}

template <typename S>
PowerSeries<S> operator-(const PowerSeries<S>& a) {
  PowerSeries<S> out(a.order());
  for (int k = 0; k <= a.order(); ++k) out[k] = -a[k];
  return out;
}

template <typename S>
PowerSeries<S> operator*(const S& c, const PowerSeries<S>& a) {
  PowerSeries<S> out(a.order());
  for (int k = 0; k <= a.order(); ++k) out[k] = c * a[k];
  return out;
}

/// Cauchy product truncated at min(a.order, b.order).  Terms are paired
/// symmetrically so that a*b and b*a agree bitwise in floating point.
template <typename S>
PowerSeries<S> operator*(const PowerSeries<S>& a, const PowerSeries<S>& b) {
  int n = std::min(a.order(), b.order());
  PowerSeries<S> out(n);
  for (int k = 0; k <= n; ++k) {
    S acc = ScalarOps<S>::zero();
    for (int i = 0; 2 * i < k; ++i) acc += a[i] * b[k - i] + a[k - i] * b[i];
    if (k % 2 == 0) acc += a[k / 2] * b[k / 2];
    out[k] = acc;
  }
  return out;
}

template <typename S>
PowerSeries<S> series_mul(const PowerSeries<S>& a, const PowerSeries<S>& b) {
  return a * b;
}

/// Formal quotient f/g; requires g_0 != 0.
template <typename S>
PowerSeries<S> series_div(const PowerSeries<S>& f, const PowerSeries<S>& g) {
  if (ScalarOps<S>::is_zero(g[0]))
    throw std::domain_error("series_div: divisor has vanishing constant term");
  int n = std::min(f.order(), g.order());
  PowerSeries<S> q(n);
  for (int k = 0; k <= n; ++k) {
    S acc = f.coeff(k);
    for (int j = 1; j <= k && j <= g.order(); ++j) acc -= g[j] * q[k - j];
    q[k] = acc / g[0];
  }
  return q;
}

template <typename S>
PowerSeries<S> operator/(const PowerSeries<S>& f, const PowerSeries<S>& g) {
  return series_div(f, g);
}

template <typename S>
PowerSeries<S> series_reciprocal(const PowerSeries<S>& g) {
  return series_div(PowerSeries<S>::one(g.order()), g);
}

/// Horner evaluation of a polynomial f at a series argument (no constraint
/// on the constant term of the argument).  Truncates at g.order().
template <typename S>
PowerSeries<S> compose_polynomial(const PowerSeries<S>& f, const PowerSeries<S>& g) {
  int n = g.order();
  PowerSeries<S> r = PowerSeries<S>::constant(f.coeff(f.order()), n);
  for (int k = f.order() - 1; k >= 0; --k) {
    r = r * g;
    r[0] += f[k];
  }
  return r;
}

/// Composition f(g(z)); requires g_0 = 0.  Exact for polynomial inputs
/// within the min of the two orders.
template <typename S>
PowerSeries<S> series_compose(const PowerSeries<S>& f, const PowerSeries<S>& g) {
  if (!ScalarOps<S>::is_zero(g[0]))
    throw std::domain_error("series_compose: inner series must vanish at 0");
  int n = std::min(f.order(), g.order());
  return compose_polynomial(f, g.truncated(n));
}

/// Derivative; valid one order lower than the input.
template <typename S>
PowerSeries<S> series_derivative(const PowerSeries<S>& f) {
  int n = std::max(f.order() - 1, 0);
  PowerSeries<S> out(n);
  for (int k = 0; k + 1 <= f.order() && k <= n; ++k)
    out[k] = ScalarOps<S>::fraction(k + 1, 1) * f[k + 1];
  return out;
}

/// Antiderivative with constant term 0; valid one order higher.
template <typename S>
PowerSeries<S> series_antiderivative(const PowerSeries<S>& f) {
  PowerSeries<S> out(f.order() + 1);
  for (int k = 0; k <= f.order(); ++k) out[k + 1] = f[k] / ScalarOps<S>::fraction(k + 1, 1);
  return out;
}

/// log f for f_0 = 1 (principal branch anchored at 1).
template <typename S>
PowerSeries<S> series_log(const PowerSeries<S>& f) {
  if (f[0] != ScalarOps<S>::one())
    throw std::domain_error("series_log: constant term must be 1");
  int n = f.order();
  PowerSeries<S> h(n);
  for (int k = 1; k <= n; ++k) {
    S acc = ScalarOps<S>::fraction(k, 1) * f[k];
    for (int j = 1; j < k; ++j) acc -= ScalarOps<S>::fraction(j, 1) * h[j] * f[k - j];
    h[k] = acc / ScalarOps<S>::fraction(k, 1);
  }
  return h;
}

/// exp f.  For rational coefficients the constant term must vanish; for
/// complex doubles any constant term is allowed (scalar prefactor).
template <typename S>
PowerSeries<S> series_exp(const PowerSeries<S>& f) {
  S prefactor = ScalarOps<S>::one();
  if (!ScalarOps<S>::is_zero(f[0])) {
    if constexpr (std::is_same_v<S, std::complex<double>>) {
      prefactor = std::exp(f[0]);
    } else {
      throw std::domain_error("series_exp: rational mode requires vanishing constant term");
    }
  }
  int n = f.order();
  PowerSeries<S> h(n);
  h[0] = ScalarOps<S>::one();
  for (int k = 1; k <= n; ++k) {
    S acc = ScalarOps<S>::zero();
    for (int j = 1; j <= k; ++j) acc += ScalarOps<S>::fraction(j, 1) * f.coeff(j) * h[k - j];
    h[k] = acc / ScalarOps<S>::fraction(k, 1);
  }
  return prefactor * h;
}

/// f^alpha = exp(alpha log f), principal branch; requires f_0 = 1.
template <typename S>
PowerSeries<S> series_pow(const PowerSeries<S>& f, const S& alpha) {
  if (f[0] != ScalarOps<S>::one())
    throw std::domain_error("series_pow: constant term must be 1");
  return series_exp(alpha * series_log(f));
}

inline SeriesXcd series_pow(const SeriesXcd& f, double alpha) {
  return series_pow(f, std::complex<double>(alpha, 0.0));
}

/// Integer power; negative exponents require f_0 != 0.
template <typename S>
PowerSeries<S> series_powi(const PowerSeries<S>& f, long k) {
  if (k < 0) return series_powi(series_reciprocal(f), -k);
  PowerSeries<S> acc = PowerSeries<S>::one(f.order());
  PowerSeries<S> base = f;
  unsigned long e = static_cast<unsigned long>(k);
  while (e != 0) {
    if (e & 1UL) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

/// Square root with s_0 = 1; requires f_0 = 1.
template <typename S>
PowerSeries<S> series_sqrt1(const PowerSeries<S>& f) {
  if (f[0] != ScalarOps<S>::one())
    throw std::domain_error("series_sqrt1: constant term must be 1");
  int n = f.order();
  PowerSeries<S> s(n);
  s[0] = ScalarOps<S>::one();
  const S half = ScalarOps<S>::fraction(1, 2);
  for (int k = 1; k <= n; ++k) {
    S acc = f.coeff(k);
    for (int j = 1; j < k; ++j) acc -= s[j] * s[k - j];
    s[k] = half * acc;
  }
  return s;
}

/// Compositional inverse: g with f(g(z)) = z + O(z^{N+1}).
/// Requires f_0 = 0, f_1 != 0.  Newton iteration with doubling precision.
template <typename S>
PowerSeries<S> series_reversion(const PowerSeries<S>& f) {
  if (!ScalarOps<S>::is_zero(f[0]))
    throw std::domain_error("series_reversion: constant term must vanish");
  if (ScalarOps<S>::is_zero(f.coeff(1)))
    throw std::domain_error("series_reversion: linear coefficient must not vanish");
  const int n = f.order();
  PowerSeries<S> fp = series_derivative(f).truncated(n);
  PowerSeries<S> g(std::min(1, n));
  if (n >= 1) g[1] = ScalarOps<S>::one() / f[1];
  int w = 1;
  int polish = 1;  // one extra full-order pass to settle rounding
  while (w < n || polish-- > 0) {
    w = std::min(2 * w, n);
    PowerSeries<S> gw = g.truncated(w);
    PowerSeries<S> err = series_compose(f.truncated(w), gw) - PowerSeries<S>::identity(w);
    PowerSeries<S> slope = series_compose(fp.truncated(w), gw);
    g = gw - series_div(err, slope);
  }
  return g.truncated(n);
}

inline double max_abs_diff(const SeriesXcd& a, const SeriesXcd& b) {
  int n = std::min(a.order(), b.order());
  double m = 0.0;
  for (int k = 0; k <= n; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

template <typename S>
bool exactly_equal(const PowerSeries<S>& a, const PowerSeries<S>& b) {
  int n = std::min(a.order(), b.order());
  for (int k = 0; k <= n; ++k)
    if (a[k] != b[k]) return false;
  return true;
}

inline SeriesXcd to_complex(const SeriesXq& a) {
  SeriesXcd out(a.order());
  for (int k = 0; k <= a.order(); ++k) out[k] = to_complex(a[k]);
  return out;
}

/// Horner evaluation of the truncated series at a point.
inline std::complex<double> evaluate(const SeriesXcd& f, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (int k = f.order(); k >= 0; --k) acc = acc * z + f[k];
  return acc;
}

}  // namespace confmeasure

#endif  // CONFMEASURE_SERIES_HPP
