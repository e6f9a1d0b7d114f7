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

#include "drsub/objectives.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>

namespace drsub {

void Objective::check_dim(std::span<const double> x) const {
  if (x.size() != dim()) {
    throw DimensionError(name() + ": point has length " +
                         std::to_string(x.size()) + ", expected " +
                         std::to_string(dim()));
  }
}

FunctionObjective::FunctionObjective(std::size_t n, ValueFn f, GradFn g,
                                     std::optional<double> smoothness,
                                     std::string name)
    : n_(n),
      f_(std::move(f)),
      g_(std::move(g)),
      smoothness_(smoothness),
      name_(std::move(name)) {}

double FunctionObjective::value(std::span<const double> x) const {
  check_dim(x);
  return f_(x);
}

Point FunctionObjective::gradient(std::span<const double> x) const {
  check_dim(x);
  return g_(x);
}

// --- NQP -------------------------------------------------------------------

NqpInstance make_nqp(DenseMatrix hessian, Point linear) {
  if (!hessian.square() || hessian.rows() != linear.size()) {
    throw DimensionError("make_nqp: H must be n x n with n = |h|");
  }
  const std::size_t n = linear.size();
  DenseMatrix sym(n, n);
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      sym(i, j) = 0.5 * (hessian(i, j) + hessian(j, i));
      abs_sum += std::abs(sym(i, j));
    }
  }
  return NqpInstance{std::move(sym), std::move(linear), 0.5 * abs_sum};
}

ValueGrad nqp_eval_grad(const NqpInstance& inst, std::span<const double> x) {
  if (x.size() != inst.linear.size()) {
    throw DimensionError("nqp_eval_grad: length mismatch");
  }
  ValueGrad out;
  out.gradient = inst.hessian.apply(x);
  out.value = 0.5 * dot(x, out.gradient) + dot(inst.linear, x) + inst.offset;
  for (std::size_t i = 0; i < x.size(); ++i) out.gradient[i] += inst.linear[i];
  return out;
}

NqpObjective::NqpObjective(NqpInstance inst)
    : inst_(std::move(inst)),
      lipschitz_(symmetric_spectral_norm(inst_.hessian)) {
  if (!inst_.hessian.square() || inst_.hessian.rows() != inst_.linear.size()) {
    throw DimensionError("NqpObjective: H must be n x n with n = |h|");
  }
}

double NqpObjective::value(std::span<const double> x) const {
  return evaluate(x).value;
}

Point NqpObjective::gradient(std::span<const double> x) const {
  return evaluate(x).gradient;
}

ValueGrad NqpObjective::evaluate(std::span<const double> x) const {
  check_dim(x);
  return nqp_eval_grad(inst_, x);
}

// --- Regular coverage ----------------------------------------------------------

ValueGrad coverage_me_eval_grad(const CoverageInstance& inst,
                                std::span<const double> x) {
  if (inst.k < 1) throw std::invalid_argument("coverage: k must be >= 1");
  const auto k = static_cast<std::size_t>(inst.k);
  if (x.size() != 2 * k + 1) {
    throw DimensionError("coverage: point has length " +
                         std::to_string(x.size()) + ", expected 2k+1 = " +
                         std::to_string(2 * k + 1));
  }
  const double last = x[2 * k];
  double prod = 1.0;
  double sum_head = 0.0;
  std::size_t zeros = 0;
  double prod_nonzero = 1.0;  // product of (1 - x_i) over factors != 0
  for (std::size_t i = 0; i < k; ++i) {
    const double f = 1.0 - x[i];
    prod *= f;
    sum_head += x[i];
    if (f == 0.0) {
      ++zeros;
    } else {
      prod_nonzero *= f;
    }
  }
  ValueGrad out;
  out.value = static_cast<double>(k) + 1.0 - (1.0 - last) * prod -
              (1.0 - last) * (static_cast<double>(k) - sum_head) - sum_head -
              last;
  out.gradient.assign(2 * k + 1, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const double f = 1.0 - x[i];
    double others;
    if (zeros == 0) {
      others = prod_nonzero / f;
    } else if (zeros == 1 && f == 0.0) {
      others = prod_nonzero;
    } else {
      others = 0.0;
    }
    out.gradient[i] = (1.0 - last) * others - last;
  }
  out.gradient[2 * k] = prod + static_cast<double>(k) - sum_head - 1.0;
  return out;
}

double regular_coverage_setfn(int k, std::uint64_t subset) {
  if (k < 1) throw std::invalid_argument("coverage: k must be >= 1");
  const auto kk = static_cast<unsigned>(k);
  const unsigned n = 2 * kk + 1;
  if (n < 64 && (subset >> n) != 0) {
    throw std::invalid_argument("regular_coverage_setfn: subset outside [2k+1]");
  }
  const bool has_last = (subset >> (n - 1)) & 1u;
  int covered = 0;
  bool last_covered = has_last;
  for (unsigned i = 0; i < kk; ++i) {
    const bool in = (subset >> i) & 1u;
    if (in || has_last) ++covered;  // element i+1 lies in S_{i+1} and S_{2k+1}
    if (in) last_covered = true;    // S_{i+1} contains 2k+1
  }
  for (unsigned i = kk; i < 2 * kk; ++i) {
    if ((subset >> i) & 1u) ++covered;
  }
  if (last_covered) ++covered;
  return static_cast<double>(covered - std::popcount(subset));
}

CoverageObjective::CoverageObjective(CoverageInstance inst,
                                     std::optional<double> smoothness)
    : inst_(inst), smoothness_(smoothness) {
  if (inst_.k < 1) throw std::invalid_argument("coverage: k must be >= 1");
}

double CoverageObjective::value(std::span<const double> x) const {
  return coverage_me_eval_grad(inst_, x).value;
}

Point CoverageObjective::gradient(std::span<const double> x) const {
  return coverage_me_eval_grad(inst_, x).gradient;
}

ValueGrad CoverageObjective::evaluate(std::span<const double> x) const {
  return coverage_me_eval_grad(inst_, x);
}

// --- Brute-force multilinear extension ----------------------------------------

namespace {

// Subset probabilities under independent inclusion with probability x_j,
// for every coordinate except `skip` (pass n to skip none).
std::vector<double> subset_weights(std::span<const double> x, std::size_t skip) {
  const std::size_t n = x.size();
  std::vector<double> p(std::size_t{1} << n, 0.0);
  p[0] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == skip) continue;
    const std::size_t bit = std::size_t{1} << j;
    const double xj = x[j];
    for (std::size_t s = 0; s < bit; ++s) {
      const double w = p[s];
      if (w == 0.0) continue;
      p[s | bit] = w * xj;
      p[s] = w * (1.0 - xj);
    }
  }
  return p;
}

void check_table(const SetFunctionTable& table) {
  if (table.n > kMaxTableDim) {
    throw CapacityError("set function table: n = " + std::to_string(table.n) +
                        " exceeds " + std::to_string(kMaxTableDim));
  }
  if (table.values.size() != (std::size_t{1} << table.n)) {
    throw DimensionError("set function table: expected 2^n values");
  }
}

}  // namespace

SetFunctionTable make_table(std::size_t n,
                            const std::function<double(std::uint64_t)>& f) {
  if (n > kMaxTableDim) {
    throw CapacityError("make_table: n = " + std::to_string(n) + " exceeds " +
                        std::to_string(kMaxTableDim));
  }
  SetFunctionTable t{n, std::vector<double>(std::size_t{1} << n)};
  for (std::size_t s = 0; s < t.values.size(); ++s) t.values[s] = f(s);
  return t;
}

ValueGrad me_bruteforce_eval_grad(const SetFunctionTable& table,
                                  std::span<const double> x) {
  check_table(table);
  const std::size_t n = table.n;
  if (x.size() != n) throw DimensionError("me_bruteforce_eval_grad: length mismatch");
  ValueGrad out;
  {
    const std::vector<double> p = subset_weights(x, n);
    double acc = 0.0;
    for (std::size_t s = 0; s < p.size(); ++s) acc += p[s] * table.values[s];
    out.value = acc;
  }
  out.gradient.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double> p = subset_weights(x, i);
    const std::size_t bit = std::size_t{1} << i;
    double acc = 0.0;
    for (std::size_t s = 0; s < p.size(); ++s) {
      if (s & bit) continue;
      acc += p[s] * (table.values[s | bit] - table.values[s]);
    }
    out.gradient[i] = acc;
  }
  return out;
}

void write_table(std::ostream& os, const SetFunctionTable& table) {
  check_table(table);
  const auto old = os.precision();
  os.precision(std::numeric_limits<double>::max_digits10);
  os << table.n << '\n';
  for (std::size_t s = 0; s < table.values.size(); ++s) {
    os << s << ' ' << table.values[s] << '\n';
  }
  os.precision(old);
}

SetFunctionTable read_table(std::istream& is) {
  long long n = -1;
  if (!(is >> n) || n < 0) throw ParseError("set function table: expected n");
  if (static_cast<std::size_t>(n) > kMaxTableDim) {
    throw CapacityError("set function table: n = " + std::to_string(n) +
                        " exceeds " + std::to_string(kMaxTableDim));
  }
  SetFunctionTable t{static_cast<std::size_t>(n),
                     std::vector<double>(std::size_t{1} << n)};
  std::vector<bool> seen(t.values.size(), false);
  for (std::size_t line = 0; line < t.values.size(); ++line) {
    unsigned long long mask = 0;
    double value = 0.0;
    if (!(is >> mask >> value)) {
      throw ParseError("set function table: truncated at entry " +
                       std::to_string(line));
    }
    if (mask >= t.values.size() || seen[mask]) {
      throw ParseError("set function table: bad or repeated bitmask " +
                       std::to_string(mask));
    }
    seen[mask] = true;
    t.values[mask] = value;
  }
  return t;
}

MultilinearObjective::MultilinearObjective(SetFunctionTable table,
                                           std::optional<double> smoothness)
    : table_(std::move(table)), smoothness_(smoothness) {
  check_table(table_);
}

double MultilinearObjective::value(std::span<const double> x) const {
  check_dim(x);
  const std::vector<double> p = subset_weights(x, table_.n);
  double acc = 0.0;
  for (std::size_t s = 0; s < p.size(); ++s) acc += p[s] * table_.values[s];
  return acc;
}

Point MultilinearObjective::gradient(std::span<const double> x) const {
  return me_bruteforce_eval_grad(table_, x).gradient;
}

ValueGrad MultilinearObjective::evaluate(std::span<const double> x) const {
  return me_bruteforce_eval_grad(table_, x);
}

// --- Softmax DPP ---------------------------------------------------------------

namespace {

DenseMatrix dpp_matrix(const DenseMatrix& kernel, std::span<const double> x) {
  const std::size_t n = kernel.rows();
  if (x.size() != n) throw DimensionError("dpp: length mismatch");
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double k = kernel(i, j) - (i == j ? 1.0 : 0.0);
      m(i, j) = x[i] * k + (i == j ? 1.0 : 0.0);
    }
  }
  return m;
}

}  // namespace

ValueGrad dpp_eval_grad(const SoftmaxDppInstance& inst,
                        std::span<const double> x) {
  const DenseMatrix& l = inst.kernel;
  const std::size_t n = l.rows();
  const DenseMatrix m = dpp_matrix(l, x);
  LuFactorization f;
  try {
    f = lu_factor(m);
  } catch (const SingularMatrixError&) {
    throw NonpositiveDeterminantError("dpp: determinant is numerically zero");
  }
  ValueGrad out;
  int sign = f.parity;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = f.lu(i, i);
    if (u < 0.0) sign = -sign;
    out.value += std::log(std::abs(u));
  }
  if (sign < 0) throw NonpositiveDeterminantError("dpp: determinant is negative");

  // d/dx_i log det M = [(L - I) M^{-1}]_ii = row i of (L - I) times column i
  // of M^{-1}.
  out.gradient.assign(n, 0.0);
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = 1.0;
    const std::vector<double> col = f.solve(e);
    e[i] = 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += (l(i, j) - (i == j ? 1.0 : 0.0)) * col[j];
    }
    out.gradient[i] = acc;
  }
  return out;
}

DppObjective::DppObjective(SoftmaxDppInstance inst,
                           std::optional<double> smoothness)
    : inst_(std::move(inst)), smoothness_(smoothness) {
  if (!inst_.kernel.square()) throw DimensionError("dpp: kernel must be square");
}

double DppObjective::value(std::span<const double> x) const {
  check_dim(x);
  return log_det(dpp_matrix(inst_.kernel, x));
}

Point DppObjective::gradient(std::span<const double> x) const {
  return evaluate(x).gradient;
}

ValueGrad DppObjective::evaluate(std::span<const double> x) const {
  check_dim(x);
  return dpp_eval_grad(inst_, x);
}

// --- Revenue -------------------------------------------------------------------

ValueGrad revenue_eval_grad(const RevenueInstance& inst,
                            std::span<const double> x) {
  const std::size_t n = inst.n;
  if (x.size() != n) throw DimensionError("revenue: length mismatch");
  auto active = [&x](std::size_t t) { return x[t] > kRevenueZeroThreshold; };
  ValueGrad out;
  out.gradient.assign(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    out.gradient[t] = inst.beta * inst.self_weight[t] - inst.gamma;
    if (active(t)) {
      out.value += inst.beta * inst.self_weight[t] * x[t] - inst.gamma * x[t];
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (active(s)) continue;
    double inner = 0.0;
    for (const auto& [t, w] : inst.adjacency[s]) {
      if (active(t)) inner += x[t] * w;
    }
    out.value += inst.alpha * std::sqrt(inner);
    const double slope =
        inst.alpha / (2.0 * std::sqrt(std::max(inner, kRevenueSqrtFloor)));
    for (const auto& [t, w] : inst.adjacency[s]) out.gradient[t] += slope * w;
  }
  return out;
}

RevenueObjective::RevenueObjective(RevenueInstance inst) : inst_(std::move(inst)) {
  if (inst_.adjacency.size() != inst_.n || inst_.self_weight.size() != inst_.n) {
    throw DimensionError("revenue: adjacency/self weights must have n entries");
  }
}

double RevenueObjective::value(std::span<const double> x) const {
  return evaluate(x).value;
}

Point RevenueObjective::gradient(std::span<const double> x) const {
  return evaluate(x).gradient;
}

ValueGrad RevenueObjective::evaluate(std::span<const double> x) const {
  check_dim(x);
  return revenue_eval_grad(inst_, x);
}

// --- Smoothness ------------------------------------------------------------------

double estimate_smoothness(const Objective& obj, const Box& box,
                           std::size_t samples, std::uint64_t seed) {
  if (const auto* nqp = dynamic_cast<const NqpObjective*>(&obj)) {
    return symmetric_spectral_norm(nqp->instance().hessian);
  }
  if (samples < 2) throw std::invalid_argument("estimate_smoothness: samples < 2");
  if (box.dim() != obj.dim()) throw DimensionError("estimate_smoothness: box dimension");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = obj.dim();
  auto sample = [&]() {
    Point p(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = box.lower[i] + unit(rng) * (box.upper[i] - box.lower[i]);
    }
    return p;
  };
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Point x = sample();
    Point y;
    if (s % 2 == 0) {
      y = sample();
    } else {
      // Short-range pair: picks up local curvature that distant pairs average out.
      y = x;
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = std::clamp(x[i] + 1e-3 * (unit(rng) - 0.5), box.lower[i],
                          box.upper[i]);
      }
    }
    const double dist = std::sqrt(squared_distance(x, y));
    if (dist == 0.0) continue;
    const Point gx = obj.gradient(x);
    const Point gy = obj.gradient(y);
    best = std::max(best, std::sqrt(squared_distance(gx, gy)) / dist);
  }
  return kSmoothnessSafetyFactor * best;
}

}  // namespace drsub
