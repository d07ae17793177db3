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

#ifndef CONFMEASURE_MATRIX_SERIES_HPP
#define CONFMEASURE_MATRIX_SERIES_HPP

#include <Eigen/Core>
#include <stdexcept>
#include <vector>

#include "confmeasure/rational.hpp"

namespace confmeasure {

template <typename Scalar>
using DenseMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Gauss-Jordan inverse over a generic field scalar.  Pivots on the entry
/// of largest squared magnitude; throws on a singular input.
template <typename S>
DenseMat<S> field_inverse(const DenseMat<S>& a) {
  using Ops = ScalarOps<S>;
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("field_inverse: square matrix required");
  DenseMat<S> m = a;
  DenseMat<S> inv = DenseMat<S>::Constant(n, n, Ops::zero());
  for (int i = 0; i < n; ++i) inv(i, i) = Ops::one();
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    typename Ops::Real best{};
    for (int r = col; r < n; ++r) {
      auto mag = Ops::magnitude2(m(r, col));
      if (!Ops::is_zero(m(r, col)) && (pivot < 0 || mag > best)) {
        pivot = r;
        best = mag;
      }
    }
    if (pivot < 0) throw std::domain_error("field_inverse: singular matrix");
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      inv.row(pivot).swap(inv.row(col));
    }
    S d = m(col, col);
    for (int c = 0; c < n; ++c) {
      m(col, c) = m(col, c) / d;
      inv(col, c) = inv(col, c) / d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || Ops::is_zero(m(r, col))) continue;
      S factor = m(r, col);
      for (int c = 0; c < n; ++c) {
        m(r, c) -= factor * m(col, c);
        inv(r, c) -= factor * inv(col, c);
      }
    }
  }
  return inv;
}

/// Truncated power series with square matrix coefficients G_0 + G_1 z + ...
template <typename Scalar>
class MatrixSeries {
 public:
  using Mat = DenseMat<Scalar>;

  MatrixSeries(int dim, int order)
      : dim_(dim), c_(static_cast<size_t>(order) + 1, Mat::Constant(dim, dim, ScalarOps<Scalar>::zero())) {}

  static MatrixSeries identity(int dim, int order) {
    MatrixSeries s(dim, order);
    for (int i = 0; i < dim; ++i) s.c_[0](i, i) = ScalarOps<Scalar>::one();
    return s;
  }

  int dim() const { return dim_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  Mat& operator[](int k) { return c_[static_cast<size_t>(k)]; }
  const Mat& operator[](int k) const { return c_[static_cast<size_t>(k)]; }
  Mat coeff(int k) const {
    return (k >= 0 && k <= order()) ? c_[static_cast<size_t>(k)]
                                    : Mat::Constant(dim_, dim_, ScalarOps<Scalar>::zero());
  }

  MatrixSeries truncated(int new_order) const {
    MatrixSeries out(dim_, new_order);
    int n = std::min(new_order, order());
    for (int k = 0; k <= n; ++k) out.c_[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)];
    return out;
  }

 private:
  int dim_;
  std::vector<Mat> c_;
};

template <typename S>
MatrixSeries<S> operator*(const MatrixSeries<S>& a, const MatrixSeries<S>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix series dimension mismatch");
  int n = std::min(a.order(), b.order());
  MatrixSeries<S> out(a.dim(), n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <typename S>
MatrixSeries<S> operator+(const MatrixSeries<S>& a, const MatrixSeries<S>& b) {
  int n = std::min(a.order(), b.order());
  MatrixSeries<S> out(a.dim(), n);
  for (int k = 0; k <= n; ++k) out[k] = a[k] + b[k];
  return out;
}

/// Multiplicative inverse of a matrix series; requires G_0 invertible.
/// Uses the recursive linear solve H_n = -G_0^{-1} sum_{k>=1} G_k H_{n-k}.
template <typename S>
MatrixSeries<S> matrix_series_inverse(const MatrixSeries<S>& g) {
  int n = g.order();
  MatrixSeries<S> h(g.dim(), n);
  DenseMat<S> g0inv = field_inverse<S>(g[0]);
  h[0] = g0inv;
  for (int k = 1; k <= n; ++k) {
    DenseMat<S> acc = DenseMat<S>::Constant(g.dim(), g.dim(), ScalarOps<S>::zero());
    for (int j = 1; j <= k; ++j) acc += g[j] * h[k - j];
    h[k] = -(g0inv * acc).eval();
  }
  return h;
}

using MatrixSeriesXcd = MatrixSeries<std::complex<double>>;
using MatrixSeriesXq = MatrixSeries<RationalComplex>;

}  // namespace confmeasure

#endif  // CONFMEASURE_MATRIX_SERIES_HPP
