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

// Lattice operations on points of the unit box and the down-closed polytope
// representation {x : A x <= b, 0 <= x <= cap} with A >= 0, b >= 0.

#ifndef DRSUB_LATTICE_H_
#define DRSUB_LATTICE_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace drsub {

// A dense real vector. Iterates, gradients and LMO caps all use this type.
using Point = std::vector<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kFeasibilityTol = 1e-9;

Point join(std::span<const double> x, std::span<const double> y);
Point meet(std::span<const double> x, std::span<const double> y);
Point hadamard(std::span<const double> x, std::span<const double> y);

double dot(std::span<const double> x, std::span<const double> y);
double squared_distance(std::span<const double> x, std::span<const double> y);
double max_abs(std::span<const double> x);

// Max of x over the given indices; 0 for an empty index set.
double partial_max(std::span<const double> x,
                   std::span<const std::size_t> indices);

// Axis-aligned box [lower, upper].
struct Box {
  Point lower;
  Point upper;

  static Box unit(std::size_t n);
  std::size_t dim() const { return lower.size(); }
  bool contains(std::span<const double> x, double tol = kFeasibilityTol) const;
};

// Validates l <= u and equal lengths; throws DimensionError otherwise.
Box make_box(Point lower, Point upper);

// Partition of [n] into A and its complement. Indices are 0-based.
class IndexPartition {
 public:
  IndexPartition(std::size_t n, std::vector<std::size_t> set_a);

  std::size_t dim() const { return n_; }
  const std::vector<std::size_t>& set_a() const { return set_a_; }
  const std::vector<std::size_t>& complement() const { return complement_; }
  bool contains(std::size_t i) const { return member_[i]; }

  // 1 on A, 0 elsewhere.
  Point indicator() const;
  // 1 on the complement of A, 0 on A.
  Point complement_indicator() const;

 private:
  std::size_t n_;
  std::vector<std::size_t> set_a_;
  std::vector<std::size_t> complement_;
  std::vector<bool> member_;
};

class DownClosedPolytope {
 public:
  // Unit box in dimension n with no inequality rows.
  explicit DownClosedPolytope(std::size_t n);
  // `a` is row-major m x n. cap defaults to all ones when empty.
  DownClosedPolytope(std::size_t n, std::vector<double> a, Point b,
                     Point cap = {});

  std::size_t dim() const { return n_; }
  std::size_t rows() const { return b_.size(); }
  double a(std::size_t row, std::size_t col) const {
    return a_[row * n_ + col];
  }
  std::span<const double> row(std::size_t r) const {
    return {a_.data() + r * n_, n_};
  }
  const std::vector<double>& a_data() const { return a_; }
  const Point& b() const { return b_; }
  const Point& cap() const { return cap_; }

  // Same rows, cap replaced by min(cap, new_cap).
  DownClosedPolytope with_cap(std::span<const double> new_cap) const;

  // True when the only row is sum_i x_i <= b (a cardinality budget).
  bool is_cardinality() const;

  Point row_activity(std::span<const double> x) const;

  // Max squared distance between two feasible points, upper-bounded by the
  // box diagonal sum_i cap_i^2 (exact for the box itself).
  double diameter_bound() const;

 private:
  std::size_t n_;
  std::vector<double> a_;
  Point b_;
  Point cap_;
};

bool is_feasible(const DownClosedPolytope& p, std::span<const double> x,
                 double tol = kFeasibilityTol);

// Plain-text format: "n m", m rows of n coefficients, a line of m
// right-hand sides, a line of n caps.
void write_polytope(std::ostream& os, const DownClosedPolytope& p);
DownClosedPolytope read_polytope(std::istream& is);

}  // namespace drsub

#endif  // DRSUB_LATTICE_H_
