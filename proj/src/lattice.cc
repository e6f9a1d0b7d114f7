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

#include "drsub/lattice.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace drsub {
namespace {

void require_same_length(std::span<const double> x, std::span<const double> y,
                         const char* op) {
  if (x.size() != y.size()) {
    throw DimensionError(std::string(op) + ": length mismatch (" +
                         std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()) + ")");
  }
}

template <typename Op>
Point zip(std::span<const double> x, std::span<const double> y, const char* name,
          Op op) {
  require_same_length(x, y, name);
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = op(x[i], y[i]);
  return out;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double d) { return std::isfinite(d); });
}

}  // namespace

Point join(std::span<const double> x, std::span<const double> y) {
  return zip(x, y, "join", [](double a, double b) { return std::max(a, b); });
}

Point meet(std::span<const double> x, std::span<const double> y) {
  return zip(x, y, "meet", [](double a, double b) { return std::min(a, b); });
}

Point hadamard(std::span<const double> x, std::span<const double> y) {
  return zip(x, y, "hadamard", [](double a, double b) { return a * b; });
}

double dot(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double squared_distance(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y, "squared_distance");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double partial_max(std::span<const double> x,
                   std::span<const std::size_t> indices) {
  double m = 0.0;
  bool first = true;
  for (std::size_t i : indices) {
    if (i >= x.size()) throw DimensionError("partial_max: index out of range");
    m = first ? x[i] : std::max(m, x[i]);
    first = false;
  }
  return m;
}

Box Box::unit(std::size_t n) { return Box{Point(n, 0.0), Point(n, 1.0)}; }

bool Box::contains(std::span<const double> x, double tol) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
  }
  return true;
}

Box make_box(Point lower, Point upper) {
  if (lower.size() != upper.size()) {
    throw DimensionError("make_box: bound lengths differ");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) {
      throw std::invalid_argument("make_box: lower > upper at index " +
                                  std::to_string(i));
    }
  }
  return Box{std::move(lower), std::move(upper)};
}

IndexPartition::IndexPartition(std::size_t n, std::vector<std::size_t> set_a)
    : n_(n), set_a_(std::move(set_a)), member_(n, false) {
  std::sort(set_a_.begin(), set_a_.end());
  set_a_.erase(std::unique(set_a_.begin(), set_a_.end()), set_a_.end());
  for (std::size_t i : set_a_) {
    if (i >= n_) throw DimensionError("IndexPartition: index out of range");
    member_[i] = true;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (!member_[i]) complement_.push_back(i);
  }
}

Point IndexPartition::indicator() const {
  Point out(n_, 0.0);
  for (std::size_t i : set_a_) out[i] = 1.0;
  return out;
}

Point IndexPartition::complement_indicator() const {
  Point out(n_, 1.0);
  for (std::size_t i : set_a_) out[i] = 0.0;
  return out;
}

DownClosedPolytope::DownClosedPolytope(std::size_t n)
    : n_(n), cap_(n, 1.0) {}

DownClosedPolytope::DownClosedPolytope(std::size_t n, std::vector<double> a,
                                       Point b, Point cap)
    : n_(n), a_(std::move(a)), b_(std::move(b)), cap_(std::move(cap)) {
  if (cap_.empty()) cap_.assign(n_, 1.0);
  if (a_.size() != b_.size() * n_) {
    throw DimensionError("DownClosedPolytope: A has " +
                         std::to_string(a_.size()) + " entries, expected " +
                         std::to_string(b_.size() * n_));
  }
  if (cap_.size() != n_) {
    throw DimensionError("DownClosedPolytope: cap length differs from n");
  }
  if (!all_finite(a_) || !all_finite(b_) || !all_finite(cap_)) {
    throw std::invalid_argument("DownClosedPolytope: non-finite data");
  }
  if (std::any_of(a_.begin(), a_.end(), [](double v) { return v < 0.0; })) {
    throw std::invalid_argument("DownClosedPolytope: negative entry in A");
  }
  if (std::any_of(b_.begin(), b_.end(), [](double v) { return v < 0.0; })) {
    throw std::invalid_argument("DownClosedPolytope: negative entry in b");
  }
  if (std::any_of(cap_.begin(), cap_.end(),
                  [](double v) { return v < 0.0 || v > 1.0; })) {
    throw std::invalid_argument("DownClosedPolytope: cap outside [0,1]");
  }
}

DownClosedPolytope DownClosedPolytope::with_cap(
    std::span<const double> new_cap) const {
  if (new_cap.size() != n_) throw DimensionError("with_cap: length mismatch");
  Point cap(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    cap[i] = std::clamp(std::min(cap_[i], new_cap[i]), 0.0, 1.0);
  }
  return DownClosedPolytope(n_, a_, b_, std::move(cap));
}

bool DownClosedPolytope::is_cardinality() const {
  return rows() == 1 &&
         std::all_of(a_.begin(), a_.end(), [](double v) { return v == 1.0; });
}

Point DownClosedPolytope::row_activity(std::span<const double> x) const {
  if (x.size() != n_) throw DimensionError("row_activity: length mismatch");
  Point out(rows(), 0.0);
  for (std::size_t r = 0; r < rows(); ++r) out[r] = dot(row(r), x);
  return out;
}

double DownClosedPolytope::diameter_bound() const {
  double s = 0.0;
  for (double c : cap_) s += c * c;
  return s;
}

bool is_feasible(const DownClosedPolytope& p, std::span<const double> x,
                 double tol) {
  if (x.size() != p.dim()) {
    throw DimensionError("is_feasible: point length differs from polytope");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) return false;
    if (x[i] < -tol || x[i] > p.cap()[i] + tol) return false;
  }
  for (std::size_t r = 0; r < p.rows(); ++r) {
    if (dot(p.row(r), x) > p.b()[r] + tol) return false;
  }
  return true;
}

void write_polytope(std::ostream& os, const DownClosedPolytope& p) {
  const auto old_precision = os.precision();
  os.precision(std::numeric_limits<double>::max_digits10);
  const std::size_t n = p.dim();
  const std::size_t m = p.rows();
  os << n << ' ' << m << '\n';
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      os << (c ? " " : "") << p.a(r, c);
    }
    os << '\n';
  }
  for (std::size_t r = 0; r < m; ++r) os << (r ? " " : "") << p.b()[r];
  os << '\n';
  for (std::size_t c = 0; c < n; ++c) os << (c ? " " : "") << p.cap()[c];
  os << '\n';
  os.precision(old_precision);
}

DownClosedPolytope read_polytope(std::istream& is) {
  long long n = -1;
  long long m = -1;
  if (!(is >> n >> m) || n < 0 || m < 0) {
    throw ParseError("polytope: expected header \"n m\"");
  }
  auto read_values = [&is](std::size_t count, const char* what) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (!(is >> out[i])) {
        throw ParseError(std::string("polytope: truncated ") + what);
      }
    }
    return out;
  };
  const auto nn = static_cast<std::size_t>(n);
  const auto mm = static_cast<std::size_t>(m);
  std::vector<double> a = read_values(nn * mm, "constraint matrix");
  Point b = read_values(mm, "right-hand sides");
  Point cap = read_values(nn, "caps");
  return DownClosedPolytope(nn, std::move(a), std::move(b), std::move(cap));
}

}  // namespace drsub
