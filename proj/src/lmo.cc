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

#include "drsub/lmo.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace drsub {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-11;
constexpr int kDegenerateRunBeforeBland = 50;

enum class VarState { kBasic, kAtLower, kAtUpper };

// Dense bounded-variable simplex for  max c^T x  s.t.  T x + s = b,
// 0 <= x <= u, s >= 0, starting from the all-slack basis (feasible since
// b >= 0).
class BoundedSimplex {
 public:
  BoundedSimplex(std::size_t rows, std::size_t structurals)
      : m_(rows),
        k_(structurals),
        width_(structurals + rows),
        tableau_(rows * (structurals + rows), 0.0),
        beta_(rows, 0.0),
        basis_(rows),
        reduced_(structurals + rows, 0.0),
        upper_(structurals + rows, kInf),
        state_(structurals + rows, VarState::kAtLower) {
    for (std::size_t r = 0; r < m_; ++r) {
      basis_[r] = k_ + r;
      state_[k_ + r] = VarState::kBasic;
      at(r, k_ + r) = 1.0;
    }
  }

  double& at(std::size_t r, std::size_t c) { return tableau_[r * width_ + c]; }
  void set_rhs(std::size_t r, double v) { beta_[r] = v; }
  void set_objective(std::size_t j, double c) { reduced_[j] = c; }
  void set_upper(std::size_t j, double u) { upper_[j] = u; }

  // Returns false when the iteration limit is hit.
  bool run() {
    double scale = 0.0;
    for (std::size_t j = 0; j < k_; ++j) {
      scale = std::max(scale, std::abs(reduced_[j]));
    }
    const double dtol = 1e-11 * std::max(scale, 1e-300);
    const std::size_t limit = 100 * (width_ + 10);
    int degenerate_run = 0;
    for (std::size_t iter = 0; iter < limit; ++iter) {
      const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
      const std::size_t enter = choose_entering(dtol, bland);
      if (enter == kNone) return true;
      const double step = iterate(enter);
      degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;
    }
    return false;
  }

  // Value of structural variable j.
  double structural_value(std::size_t j) const {
    switch (state_[j]) {
      case VarState::kAtLower:
        return 0.0;
      case VarState::kAtUpper:
        return upper_[j];
      case VarState::kBasic:
        break;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] == j) return beta_[r];
    }
    return 0.0;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t choose_entering(double dtol, bool bland) const {
    std::size_t best = kNone;
    double best_score = 0.0;
    for (std::size_t j = 0; j < width_; ++j) {
      double score = 0.0;
      if (state_[j] == VarState::kAtLower && reduced_[j] > dtol) {
        score = reduced_[j];
      } else if (state_[j] == VarState::kAtUpper && reduced_[j] < -dtol) {
        score = -reduced_[j];
      } else {
        continue;
      }
      if (bland) return j;
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  // Performs one bound flip or pivot; returns the step length taken.
  double iterate(std::size_t enter) {
    const double dir = state_[enter] == VarState::kAtLower ? 1.0 : -1.0;
    double step = upper_[enter];
    std::size_t leave_row = kNone;
    bool leave_to_upper = false;
    for (std::size_t r = 0; r < m_; ++r) {
      const double alpha = dir * at(r, enter);
      if (std::abs(alpha) <= kPivotTol) continue;
      double limit;
      bool to_upper;
      if (alpha > 0.0) {
        limit = std::max(beta_[r], 0.0) / alpha;
        to_upper = false;
      } else {
        const double ub = upper_[basis_[r]];
        if (!std::isfinite(ub)) continue;
        limit = std::max(ub - beta_[r], 0.0) / -alpha;
        to_upper = true;
      }
      const bool better =
          limit < step - 1e-13 ||
          (limit <= step + 1e-13 && leave_row != kNone &&
           basis_[r] < basis_[leave_row]);
      if (better || (leave_row == kNone && limit < step)) {
        step = limit;
        leave_row = r;
        leave_to_upper = to_upper;
      }
    }
    for (std::size_t r = 0; r < m_; ++r) {
      beta_[r] -= dir * at(r, enter) * step;
    }
    if (leave_row == kNone) {
      // Bound flip of the entering variable.
      state_[enter] = dir > 0 ? VarState::kAtUpper : VarState::kAtLower;
      return step;
    }
    const double entering_value =
        (dir > 0 ? 0.0 : upper_[enter]) + dir * step;
    const std::size_t leaving = basis_[leave_row];
    state_[leaving] = leave_to_upper ? VarState::kAtUpper : VarState::kAtLower;
    pivot(leave_row, enter);
    basis_[leave_row] = enter;
    state_[enter] = VarState::kBasic;
    beta_[leave_row] = entering_value;
    return step;
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = at(row, col);
    double* prow = &tableau_[row * width_];
    for (std::size_t c = 0; c < width_; ++c) prow[c] /= p;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == row) continue;
      const double f = at(r, col);
      if (f == 0.0) continue;
      double* rr = &tableau_[r * width_];
      for (std::size_t c = 0; c < width_; ++c) rr[c] -= f * prow[c];
      rr[col] = 0.0;
    }
    const double f = reduced_[col];
    if (f != 0.0) {
      for (std::size_t c = 0; c < width_; ++c) reduced_[c] -= f * prow[c];
      reduced_[col] = 0.0;
    }
  }

  std::size_t m_;
  std::size_t k_;
  std::size_t width_;
  std::vector<double> tableau_;
  std::vector<double> beta_;
  std::vector<std::size_t> basis_;
  std::vector<double> reduced_;
  std::vector<double> upper_;
  std::vector<VarState> state_;
};

Point effective_cap(const DownClosedPolytope& p, std::span<const double> cap) {
  if (cap.size() != p.dim()) {
    throw DimensionError("solve_lmo: cap length differs from polytope");
  }
  Point out(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    out[i] = std::clamp(std::min(cap[i], p.cap()[i]), 0.0, 1.0);
  }
  return out;
}

// Pulls v back into the polytope after round-off: clamps to [0, cap] and
// scales toward the origin if a row is violated.
LmoStatus repair(const DownClosedPolytope& p, std::span<const double> cap,
                 Point& v) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::clamp(v[i], 0.0, cap[i]);
  double scale = 1.0;
  for (std::size_t r = 0; r < p.rows(); ++r) {
    const double act = dot(p.row(r), v);
    if (act > p.b()[r] + 1e-12) scale = std::min(scale, p.b()[r] / act);
  }
  if (scale < 1.0) {
    if (scale < 1.0 - 1e-6) return LmoStatus::kInfeasibleNumeric;
    for (double& x : v) x *= scale;
  }
  return LmoStatus::kOptimal;
}

// Solves a k x k system in place by Gaussian elimination with partial
// pivoting. Returns false when singular.
bool gauss_solve(std::vector<double>& a, std::vector<double>& rhs,
                 std::size_t k) {
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(a[r * k + col]) > std::abs(a[piv * k + col])) piv = r;
    }
    if (std::abs(a[piv * k + col]) < 1e-12) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(a[piv * k + c], a[col * k + c]);
      std::swap(rhs[piv], rhs[col]);
    }
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = a[r * k + col] / a[col * k + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < k; ++c) a[r * k + c] -= f * a[col * k + c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = k; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t c = i + 1; c < k; ++c) s -= a[i * k + c] * rhs[c];
    rhs[i] = s / a[i * k + i];
  }
  return true;
}

}  // namespace

LmoResult solve_lmo(const DownClosedPolytope& p, std::span<const double> g,
                    std::span<const double> cap) {
  const std::size_t n = p.dim();
  if (g.size() != n) {
    throw DimensionError("solve_lmo: gradient length differs from polytope");
  }
  const Point ucap = effective_cap(p, cap);
  if (p.is_cardinality()) return solve_cardinality_lmo(g, p.b()[0], ucap);

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i] > 0.0 && ucap[i] > 0.0) active.push_back(i);
  }
  LmoResult out;
  out.v.assign(n, 0.0);
  if (active.empty()) return out;

  const std::size_t m = p.rows();
  const std::size_t k = active.size();
  BoundedSimplex lp(m, k);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < k; ++j) lp.at(r, j) = p.a(r, active[j]);
    lp.set_rhs(r, p.b()[r]);
  }
  for (std::size_t j = 0; j < k; ++j) {
    lp.set_objective(j, g[active[j]]);
    lp.set_upper(j, ucap[active[j]]);
  }
  const bool finished = lp.run();
  for (std::size_t j = 0; j < k; ++j) out.v[active[j]] = lp.structural_value(j);
  out.status = repair(p, ucap, out.v);
  if (!finished) out.status = LmoStatus::kInfeasibleNumeric;
  out.value = dot(g, out.v);
  return out;
}

LmoResult solve_lmo(const DownClosedPolytope& p, std::span<const double> g) {
  return solve_lmo(p, g, p.cap());
}

LmoResult solve_cardinality_lmo(std::span<const double> g, double budget,
                                std::span<const double> cap) {
  if (g.size() != cap.size()) {
    throw DimensionError("solve_cardinality_lmo: length mismatch");
  }
  if (budget < 0.0) {
    throw std::invalid_argument("solve_cardinality_lmo: negative budget");
  }
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&g](std::size_t a, std::size_t b) { return g[a] > g[b]; });
  LmoResult out;
  out.v.assign(g.size(), 0.0);
  double remaining = budget;
  for (std::size_t i : order) {
    if (!(g[i] > 0.0) || remaining <= 0.0) break;
    const double take = std::min(std::clamp(cap[i], 0.0, 1.0), remaining);
    out.v[i] = take;
    remaining -= take;
  }
  out.value = dot(g, out.v);
  return out;
}

LmoResult brute_force_lmo(const DownClosedPolytope& p,
                          std::span<const double> g,
                          std::span<const double> cap) {
  const std::size_t n = p.dim();
  if (g.size() != n) throw DimensionError("brute_force_lmo: length mismatch");
  const Point ucap = effective_cap(p, cap);
  const std::size_t m = p.rows();
  // Constraint c: rows 0..m-1 are A-rows, then -v_i <= 0, then v_i <= cap_i.
  const std::size_t total = m + 2 * n;
  auto coeff = [&](std::size_t c, std::size_t j) -> double {
    if (c < m) return p.a(c, j);
    if (c < m + n) return c - m == j ? -1.0 : 0.0;
    return c - m - n == j ? 1.0 : 0.0;
  };
  auto rhs_of = [&](std::size_t c) -> double {
    if (c < m) return p.b()[c];
    if (c < m + n) return 0.0;
    return ucap[c - m - n];
  };

  LmoResult best;
  best.v.assign(n, 0.0);
  best.value = 0.0;
  if (n == 0) return best;
  std::vector<bool> pick(total, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n), true);
  std::vector<double> a(n * n);
  std::vector<double> rhs(n);
  do {
    std::size_t row = 0;
    for (std::size_t c = 0; c < total; ++c) {
      if (!pick[c]) continue;
      for (std::size_t j = 0; j < n; ++j) a[row * n + j] = coeff(c, j);
      rhs[row] = rhs_of(c);
      ++row;
    }
    if (!gauss_solve(a, rhs, n)) continue;
    bool ok = true;
    for (std::size_t c = 0; c < total && ok; ++c) {
      double act = 0.0;
      for (std::size_t j = 0; j < n; ++j) act += coeff(c, j) * rhs[j];
      ok = act <= rhs_of(c) + 1e-9;
    }
    if (!ok) continue;
    const double val = dot(g, rhs);
    if (val > best.value + 1e-12) {
      best.value = val;
      best.v = rhs;
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

std::vector<LmoSelftestCase> run_lmo_selftest(std::size_t instances,
                                              std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  auto ri = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  std::vector<LmoSelftestCase> cases;
  cases.reserve(instances);
  for (std::size_t t = 0; t < instances; ++t) {
    const auto n = static_cast<std::size_t>(ri(1, 6));
    const auto m = static_cast<std::size_t>(ri(0, 4));
    std::vector<double> a(n * m);
    for (double& v : a) v = ri(0, 8) / 4.0;
    Point b(m);
    for (double& v : b) v = ri(0, 12) / 4.0;
    Point cap(n);
    for (double& v : cap) v = ri(0, 4) / 4.0;
    Point g(n);
    for (double& v : g) v = ri(-8, 8) / 4.0;
    const DownClosedPolytope p(n, std::move(a), std::move(b));
    const LmoResult fast = solve_lmo(p, g, cap);
    const LmoResult ref = brute_force_lmo(p, g, cap);
    LmoSelftestCase c;
    c.n = n;
    c.m = m;
    c.simplex_value = fast.value;
    c.reference_value = ref.value;
    c.passed = fast.status == LmoStatus::kOptimal &&
               std::abs(fast.value - ref.value) <= tol &&
               is_feasible(p.with_cap(cap), fast.v, 1e-8);
    cases.push_back(c);
  }
  return cases;
}

}  // namespace drsub
