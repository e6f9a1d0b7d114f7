// Copyright 2026 The drsub Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "drsub/densela.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "drsub/lattice.h"

namespace drsub {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("DenseMatrix: data length " +
                         std::to_string(data_.size()) + " != " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw std::invalid_argument("DenseMatrix: non-finite entry");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

std::vector<double> DenseMatrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) throw DimensionError("DenseMatrix::apply: length mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* row = data_.data() + r * cols_;
    double s = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) s += row[c] * x[c];
    y[r] = s;
  }
  return y;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: shape mismatch");
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double f = a(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += f * b(k, j);
    }
  }
  return out;
}

namespace {

template <typename Op>
DenseMatrix elementwise(const DenseMatrix& a, const DenseMatrix& b, Op op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix elementwise op: shape mismatch");
  }
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = op(a(r, c), b(r, c));
  }
  return out;
}

}  // namespace

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  return elementwise(a, b, std::minus<>());
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  return elementwise(a, b, std::plus<>());
}

double max_abs_entry(const DenseMatrix& m) { return max_abs(m.data()); }

DenseMatrix LuFactorization::lower() const {
  const std::size_t n = lu.rows();
  DenseMatrix l = DenseMatrix::identity(n);
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t c = 0; c < r; ++c) l(r, c) = lu(r, c);
  }
  return l;
}

DenseMatrix LuFactorization::upper() const {
  const std::size_t n = lu.rows();
  DenseMatrix u(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) u(r, c) = lu(r, c);
  }
  return u;
}

DenseMatrix LuFactorization::permutation() const {
  const std::size_t n = lu.rows();
  DenseMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = 1.0;
  return p;
}

std::vector<double> LuFactorization::solve(std::span<const double> rhs) const {
  const std::size_t n = lu.rows();
  if (rhs.size() != n) throw DimensionError("LU solve: length mismatch");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[perm[i]];
    for (std::size_t c = 0; c < i; ++c) s -= lu(i, c) * y[c];
    y[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = y[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= lu(i, c) * y[c];
    y[i] = s / lu(i, i);
  }
  return y;
}

LuFactorization lu_factor(const DenseMatrix& m) {
  if (!m.square()) throw DimensionError("lu_factor: matrix is not square");
  const std::size_t n = m.rows();
  LuFactorization f{m, std::vector<std::size_t>(n), 1};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  DenseMatrix& a = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(a(r, k)) > std::abs(a(piv, k))) piv = r;
    }
    if (std::abs(a(piv, k)) < kPivotThreshold) {
      throw SingularMatrixError("lu_factor: pivot " + std::to_string(k) +
                                " below threshold");
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(k, c));
      std::swap(f.perm[piv], f.perm[k]);
      f.parity = -f.parity;
    }
    const double inv = 1.0 / a(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double l = a(r, k) * inv;
      a(r, k) = l;
      if (l == 0.0) continue;
      for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= l * a(k, c);
    }
  }
  return f;
}

double log_det(const DenseMatrix& m) {
  LuFactorization f;
  try {
    f = lu_factor(m);
  } catch (const SingularMatrixError&) {
    throw NonpositiveDeterminantError("log_det: determinant is numerically zero");
  }
  int sign = f.parity;
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double u = f.lu(i, i);
    if (u < 0.0) sign = -sign;
    acc += std::log(std::abs(u));
  }
  if (sign < 0) throw NonpositiveDeterminantError("log_det: determinant is negative");
  return acc;
}

DenseMatrix solve(const DenseMatrix& m, const DenseMatrix& b) {
  if (!m.square() || b.rows() != m.rows()) {
    throw DimensionError("solve: incompatible shapes");
  }
  const LuFactorization f = lu_factor(m);
  DenseMatrix x(b.rows(), b.cols());
  std::vector<double> col(b.rows());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t r = 0; r < b.rows(); ++r) col[r] = b(r, c);
    const std::vector<double> sol = f.solve(col);
    for (std::size_t r = 0; r < b.rows(); ++r) x(r, c) = sol[r];
  }
  return x;
}

DenseMatrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_orthogonal: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r(i, j) = normal(rng);
  }
  DenseMatrix q = DenseMatrix::identity(n);
  std::vector<double> v(n);
  std::vector<double> diag(n);
  for (std::size_t k = 0; k < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm += r(i, k) * r(i, k);
    norm = std::sqrt(norm);
    const double alpha = r(k, k) > 0.0 ? -norm : norm;
    diag[k] = alpha;
    std::fill(v.begin(), v.end(), 0.0);
    for (std::size_t i = k; i < n; ++i) v[i] = r(i, k);
    v[k] -= alpha;
    double vnorm = 0.0;
    for (std::size_t i = k; i < n; ++i) vnorm += v[i] * v[i];
    if (vnorm == 0.0) continue;
    vnorm = std::sqrt(vnorm);
    for (std::size_t i = k; i < n; ++i) v[i] /= vnorm;
    // R <- H R on rows k..n-1.
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += v[i] * r(i, j);
      for (std::size_t i = k; i < n; ++i) r(i, j) -= 2.0 * s * v[i];
    }
    // Q <- Q H on columns k..n-1.
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k; j < n; ++j) s += q(i, j) * v[j];
      for (std::size_t j = k; j < n; ++j) q(i, j) -= 2.0 * s * v[j];
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (diag[k] < 0.0) {
      for (std::size_t i = 0; i < n; ++i) q(i, k) = -q(i, k);
    }
  }
  return q;
}

double symmetric_spectral_norm(const DenseMatrix& m, std::size_t max_iter,
                               double tol) {
  if (!m.square()) throw DimensionError("spectral norm: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 0.0;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = 1.0 + 0.1 * static_cast<double>((i * 7919) % 13) / 13.0;
  }
  double estimate = 0.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    const double vnorm = std::sqrt(dot(v, v));
    if (vnorm == 0.0) return 0.0;
    for (double& x : v) x /= vnorm;
    std::vector<double> w = m.apply(v);
    const double next = std::sqrt(dot(w, w));
    const bool done = std::abs(next - estimate) <= tol * std::max(1.0, next);
    estimate = next;
    v = std::move(w);
    if (done && it > 10) break;
  }
  return estimate;
}

void write_matrix(std::ostream& os, const DenseMatrix& m) {
  const auto old = os.precision();
  os.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << '\n';
  }
  os.precision(old);
}

DenseMatrix read_matrix(std::istream& is, std::size_t rows, std::size_t cols) {
  std::vector<double> data(rows * cols);
  for (double& v : data) {
    if (!(is >> v)) throw ParseError("matrix: truncated data");
  }
  return DenseMatrix(rows, cols, std::move(data));
}

}  // namespace drsub
