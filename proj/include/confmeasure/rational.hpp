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

#ifndef CONFMEASURE_RATIONAL_HPP
#define CONFMEASURE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

namespace confmeasure {

/// Exact rational scalar for the exact-coefficient mode.
using Rational = boost::multiprecision::cpp_rational;

/// Complex number with exact rational real and imaginary parts.
///
/// Field operations only; no square roots, no transcendental functions.
struct RationalComplex {
  Rational re;
  Rational im;

  RationalComplex() : re(0), im(0) {}
  RationalComplex(long n) : re(n), im(0) {}  // NOLINT: implicit by design
  RationalComplex(Rational r) : re(std::move(r)), im(0) {}
  RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static RationalComplex fraction(long num, long den) {
    return RationalComplex(Rational(num) / Rational(den));
  }

  RationalComplex& operator+=(const RationalComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RationalComplex& operator-=(const RationalComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  RationalComplex& operator*=(const RationalComplex& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  RationalComplex& operator/=(const RationalComplex& o) {
    Rational d = o.re * o.re + o.im * o.im;
    Rational r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }
};

inline RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
inline RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
inline RationalComplex operator*(RationalComplex a, const RationalComplex& b) { return a *= b; }
inline RationalComplex operator/(RationalComplex a, const RationalComplex& b) { return a /= b; }
inline RationalComplex operator-(const RationalComplex& a) { return {-a.re, -a.im}; }
inline bool operator==(const RationalComplex& a, const RationalComplex& b) {
  return a.re == b.re && a.im == b.im;
}
inline bool operator!=(const RationalComplex& a, const RationalComplex& b) { return !(a == b); }

inline RationalComplex conj(const RationalComplex& a) { return {a.re, -a.im}; }
inline Rational abs2(const RationalComplex& a) { return a.re * a.re + a.im * a.im; }
inline const Rational& real(const RationalComplex& a) { return a.re; }
inline const Rational& imag(const RationalComplex& a) { return a.im; }

inline std::complex<double> to_complex(const RationalComplex& a) {
  return {static_cast<double>(a.re), static_cast<double>(a.im)};
}

inline std::ostream& operator<<(std::ostream& os, const RationalComplex& a) {
  return os << "(" << a.re << (a.im >= 0 ? "+" : "") << a.im << "i)";
}

/// Uniform interface over the two coefficient fields used by the series layer.
template <typename Scalar>
struct ScalarOps;

template <>
struct ScalarOps<std::complex<double>> {
  using Real = double;
  static std::complex<double> zero() { return {0.0, 0.0}; }
  static std::complex<double> one() { return {1.0, 0.0}; }
  static std::complex<double> fraction(long num, long den) {
    return {static_cast<double>(num) / static_cast<double>(den), 0.0};
  }
  static bool is_zero(const std::complex<double>& x) { return x == std::complex<double>(); }
  static std::complex<double> conjugate(const std::complex<double>& x) { return std::conj(x); }
  static Real magnitude2(const std::complex<double>& x) { return std::norm(x); }
};

template <>
struct ScalarOps<RationalComplex> {
  using Real = Rational;
  static RationalComplex zero() { return {}; }
  static RationalComplex one() { return RationalComplex(1); }
  static RationalComplex fraction(long num, long den) { return RationalComplex::fraction(num, den); }
  static bool is_zero(const RationalComplex& x) { return x.re == 0 && x.im == 0; }
  static RationalComplex conjugate(const RationalComplex& x) { return conj(x); }
  static Real magnitude2(const RationalComplex& x) { return abs2(x); }
};

}  // namespace confmeasure

namespace Eigen {

template <>
struct NumTraits<confmeasure::Rational> : GenericNumTraits<confmeasure::Rational> {
  typedef confmeasure::Rational Real;
  typedef confmeasure::Rational NonInteger;
  typedef confmeasure::Rational Nested;
  typedef confmeasure::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 40
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<confmeasure::RationalComplex> : GenericNumTraits<confmeasure::RationalComplex> {
  typedef confmeasure::Rational Real;
  typedef confmeasure::RationalComplex NonInteger;
  typedef confmeasure::RationalComplex Nested;
  typedef confmeasure::RationalComplex Literal;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 80,
    MulCost = 160
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // CONFMEASURE_RATIONAL_HPP
