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

#ifndef DRSUB_DENSELA_H_
#define DRSUB_DENSELA_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace drsub {

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonpositiveDeterminantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPivotThreshold = 1e-12;

// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const std::vector<double>& data() const { return data_; }

  DenseMatrix transpose() const;
  std::vector<double> apply(std::span<const double> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
double max_abs_entry(const DenseMatrix& m);

// P * M = L * U with unit-diagonal L stored below the diagonal of `lu`.
struct LuFactorization {
  DenseMatrix lu;
  std::vector<std::size_t> perm;  // row i of P*M is row perm[i] of M
  int parity = 1;                 // determinant of P

  DenseMatrix lower() const;
  DenseMatrix upper() const;
  DenseMatrix permutation() const;
  std::vector<double> solve(std::span<const double> rhs) const;
};

// Throws SingularMatrixError when a pivot magnitude falls below
// kPivotThreshold.
LuFactorization lu_factor(const DenseMatrix& m);

// Log of a positive determinant. Throws NonpositiveDeterminantError when the
// determinant is negative or (numerically) zero.
double log_det(const DenseMatrix& m);

// X with M X = B.
DenseMatrix solve(const DenseMatrix& m, const DenseMatrix& b);

// Haar-distributed orthogonal matrix: QR of a standard Gaussian matrix with
// the signs of R's diagonal folded into Q.
DenseMatrix random_orthogonal(std::size_t n, std::uint64_t seed);

// Spectral radius of a symmetric matrix by power iteration.
double symmetric_spectral_norm(const DenseMatrix& m, std::size_t max_iter = 2000,
                               double tol = 1e-13);

void write_matrix(std::ostream& os, const DenseMatrix& m);
DenseMatrix read_matrix(std::istream& is, std::size_t rows, std::size_t cols);

}  // namespace drsub

#endif  // DRSUB_DENSELA_H_
