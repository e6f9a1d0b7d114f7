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

#include "drsub/algorithms.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "drsub/lmo.h"

namespace drsub {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kE = std::numbers::e;
constexpr int kMaxHalvings = 60;
constexpr double kArmijo = 1e-4;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Point clamped_cap(const DownClosedPolytope& p, std::span<const double> cap) {
  if (cap.size() != p.dim()) throw DimensionError("cap length differs from polytope");
  Point out(p.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::clamp(std::min(cap[i], p.cap()[i]), 0.0, 1.0);
  }
  return out;
}

void require_feasible(const DownClosedPolytope& p, std::span<const double> cap,
                      std::span<const double> x, const char* where) {
  if (!is_feasible(p.with_cap(cap), x, 1e-8)) {
    throw InfeasibleIterateError(std::string(where) + ": iterate left the polytope");
  }
}

// Records the optional per-iteration outputs.
void record(const AlgorithmOptions& opts, AlgorithmResult& r, std::size_t it,
            double value, std::span<const double> x) {
  if (opts.record_trajectory) r.trajectory.push_back({it, value});
  if (opts.record_iterates) r.iterates.emplace_back(x.begin(), x.end());
}

}  // namespace

void AidedFwConfig::validate() const {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("aided FW: theta must lie in [0,1]");
  }
  if (total_steps < 2) throw std::invalid_argument("aided FW: N must be >= 2");
  if (!(selection_probability >= 0.0 && selection_probability <= 1.0)) {
    throw std::invalid_argument("aided FW: selection probability must lie in [0,1]");
  }
}

std::size_t AidedFwConfig::phase_one_steps() const {
  return static_cast<std::size_t>(
      std::llround(theta * static_cast<double>(total_steps)));
}

double reduced_domain_cap() { return (3.0 - std::sqrt(5.0)) / 2.0; }

double reduced_domain_ratio(double m) { return (2.0 - m) * m / 2.0; }

double stationarity_gap(const Objective& obj, const DownClosedPolytope& p,
                        std::span<const double> x) {
  const Point g = obj.gradient(x);
  const LmoResult lmo = solve_lmo(p, g);
  return lmo.value - dot(g, x);
}

AlgorithmResult frank_wolfe_stationary(const Objective& obj,
                                       const DownClosedPolytope& p,
                                       std::span<const double> cap,
                                       double epsilon, std::size_t max_iter,
                                       const AlgorithmOptions& opts,
                                       std::optional<Point> start) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("frank_wolfe: epsilon must be > 0");
  if (obj.dim() != p.dim()) throw DimensionError("frank_wolfe: objective/polytope dimension");
  const auto t0 = Clock::now();
  const Point ucap = clamped_cap(p, cap);
  const std::optional<double> lipschitz = obj.smoothness();

  AlgorithmResult r;
  Point x = start ? std::move(*start) : Point(p.dim(), 0.0);
  if (x.size() != p.dim()) throw DimensionError("frank_wolfe: start point length");
  if (start && !is_feasible(p.with_cap(ucap), x, 1e-8)) {
    throw std::invalid_argument("frank_wolfe: start point is infeasible");
  }
  ValueGrad vg = obj.evaluate(x);
  record(opts, r, 0, vg.value, x);

  std::size_t it = 0;
  double gap = 0.0;
  Point trial(x.size());
  while (true) {
    const LmoResult lmo = solve_lmo(p, vg.gradient, ucap);
    gap = lmo.value - dot(vg.gradient, x);
    if (gap <= epsilon || it >= max_iter) break;

    Point d(x.size());
    double dd = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      d[i] = lmo.v[i] - x[i];
      dd += d[i] * d[i];
    }
    if (dd == 0.0) break;
    auto value_at = [&](double step) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + step * d[i];
      return obj.value(trial);
    };
    double step;
    int halvings = 0;
    if (lipschitz && *lipschitz > 0.0) {
      step = std::clamp(gap / (*lipschitz * dd), 0.0, 1.0);
      while (value_at(step) < vg.value && halvings < kMaxHalvings) {
        step *= 0.5;
        ++halvings;
      }
    } else {
      step = 1.0;
      while (value_at(step) < vg.value + kArmijo * step * gap &&
             halvings < kMaxHalvings) {
        step *= 0.5;
        ++halvings;
      }
    }
    if (halvings == kMaxHalvings) break;  // no ascent along d at working precision

    for (std::size_t i = 0; i < x.size(); ++i) x[i] += step * d[i];
    ++it;
    vg = obj.evaluate(x);
    if (opts.check_feasibility) require_feasible(p, ucap, x, "frank_wolfe");
    record(opts, r, it, vg.value, x);
  }

  r.x_final = std::move(x);
  r.value = vg.value;
  r.stationarity_gap = gap;
  r.iterations = it;
  r.converged = gap <= epsilon;
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

AlgorithmResult reduced_frank_wolfe(const Objective& obj,
                                    const DownClosedPolytope& p, double m,
                                    double epsilon, std::size_t max_iter,
                                    const AlgorithmOptions& opts) {
  if (!(m > 0.0 && m <= 1.0)) throw std::invalid_argument("reduced FW: m must lie in (0,1]");
  Point cap(p.dim());
  for (std::size_t i = 0; i < cap.size(); ++i) cap[i] = std::min(p.cap()[i], m);
  return frank_wolfe_stationary(obj, p, cap, epsilon, max_iter, opts);
}

AlgorithmResult two_phase_frank_wolfe(const Objective& obj,
                                      const DownClosedPolytope& p,
                                      double epsilon, std::size_t max_iter,
                                      const AlgorithmOptions& opts,
                                      const AlgorithmResult* phase_one) {
  const auto t0 = Clock::now();
  AlgorithmResult first = phase_one
                              ? *phase_one
                              : frank_wolfe_stationary(obj, p, p.cap(), epsilon,
                                                       max_iter, opts);
  Point cap2(p.dim());
  for (std::size_t i = 0; i < cap2.size(); ++i) {
    cap2[i] = std::clamp(1.0 - first.x_final[i], 0.0, 1.0);
  }
  AlgorithmResult second =
      frank_wolfe_stationary(obj, p, cap2, epsilon, max_iter, opts);

  AlgorithmResult r;
  r.iterations = first.iterations + second.iterations;
  r.converged = first.converged && second.converged;
  r.phases.push_back({"phase1", first.x_final, first.value});
  r.phases.push_back({"phase2", second.x_final, second.value});
  if (opts.record_trajectory) {
    r.trajectory = first.trajectory;
    for (const TrajectoryPoint& tp : second.trajectory) {
      r.trajectory.push_back({first.iterations + tp.iteration, tp.value});
    }
  }
  const bool keep_first = first.value >= second.value;
  r.x_final = keep_first ? first.x_final : second.x_final;
  r.value = keep_first ? first.value : second.value;
  r.stationarity_gap = stationarity_gap(obj, p, r.x_final);
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

AlgorithmResult measured_fw_variant(const Objective& obj,
                                    const DownClosedPolytope& p,
                                    std::size_t steps,
                                    const AlgorithmOptions& opts) {
  if (steps < 1) throw std::invalid_argument("measured FW: N must be >= 1");
  if (obj.dim() != p.dim()) throw DimensionError("measured FW: objective/polytope dimension");
  const auto t0 = Clock::now();
  const double step = 1.0 / static_cast<double>(steps);
  AlgorithmResult r;
  Point x(p.dim(), 0.0);
  ValueGrad vg = obj.evaluate(x);
  record(opts, r, 0, vg.value, x);
  Point weighted(x.size());
  for (std::size_t j = 0; j < steps; ++j) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      weighted[i] = vg.gradient[i] * (1.0 - x[i]);
    }
    const LmoResult lmo = solve_lmo(p, weighted);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += step * lmo.v[i] * (1.0 - x[i]);
    }
    vg = obj.evaluate(x);
    if (opts.check_feasibility) require_feasible(p, p.cap(), x, "measured FW");
    record(opts, r, j + 1, vg.value, x);
  }
  r.x_final = std::move(x);
  r.value = vg.value;
  r.iterations = steps;
  r.stationarity_gap = stationarity_gap(obj, p, r.x_final);
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

AlgorithmResult aided_fw_variant(const Objective& obj,
                                 const DownClosedPolytope& p,
                                 const AidedFwConfig& cfg, double epsilon,
                                 std::uint64_t seed, std::size_t max_iter,
                                 const AlgorithmOptions& opts,
                                 const AlgorithmResult* stationary) {
  cfg.validate();
  if (obj.dim() != p.dim()) throw DimensionError("aided FW: objective/polytope dimension");
  const auto t0 = Clock::now();
  const std::size_t n = p.dim();
  const AlgorithmResult y =
      stationary ? *stationary
                 : frank_wolfe_stationary(obj, p, p.cap(), epsilon, max_iter);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::size_t> set_a;
  for (std::size_t i = 0; i < n; ++i) {
    if (unit(rng) < y.x_final[i]) set_a.push_back(i);
  }
  const IndexPartition part(n, set_a);
  const Point outside_a = part.complement_indicator();

  const std::size_t total = cfg.total_steps;
  const std::size_t first_stage = std::min(cfg.phase_one_steps(), total);
  const double inv_n = 1.0 / static_cast<double>(total);
  const double step_restricted = 1.0 - std::exp(-inv_n);
  const double step_free = inv_n / std::exp(inv_n);

  AlgorithmResult r;
  Point x(n, 0.0);
  ValueGrad vg = obj.evaluate(x);
  record(opts, r, 0, vg.value, x);
  Point cap(n);
  for (std::size_t j = 0; j < total; ++j) {
    const bool restricted = j < first_stage;
    for (std::size_t i = 0; i < n; ++i) {
      cap[i] = std::clamp(1.0 - x[i], 0.0, 1.0) * (restricted ? outside_a[i] : 1.0);
    }
    const LmoResult lmo = solve_lmo(p, vg.gradient, cap);
    const double step = restricted ? step_restricted : step_free;
    for (std::size_t i = 0; i < n; ++i) x[i] += step * lmo.v[i];
    vg = obj.evaluate(x);
    if (opts.check_feasibility) require_feasible(p, p.cap(), x, "aided FW");
    record(opts, r, j + 1, vg.value, x);
  }

  r.phases.push_back({"stationary", y.x_final, y.value});
  r.phases.push_back({"variant", x, vg.value});
  r.sampled_set = part.set_a();
  r.iterations = y.iterations + total;
  r.converged = y.converged;
  r.seed = seed;
  bool pick_variant;
  if (cfg.selection == Selection::kBestOf) {
    pick_variant = vg.value >= y.value;
  } else {
    pick_variant = unit(rng) < cfg.selection_probability;
  }
  r.x_final = pick_variant ? x : y.x_final;
  r.value = pick_variant ? vg.value : y.value;
  r.stationarity_gap = stationarity_gap(obj, p, r.x_final);
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

double aided_ratio(double theta) {
  const double et = std::exp(theta);
  return ((2.0 - theta) * et - 1.0) / (kE + 3.0 * et - 3.0 - theta * et);
}

ThetaSolution optimize_theta(double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 1.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = aided_ratio(c);
  double fd = aided_ratio(d);
  while (hi - lo > tol) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = aided_ratio(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = aided_ratio(d);
    }
  }
  const double theta = 0.5 * (lo + hi);
  return {theta, aided_ratio(theta)};
}

double selection_probability(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("selection_probability: theta must lie in [0,1]");
  }
  const double et = std::exp(theta);
  return kE / (kE + et * (3.0 - theta) - 3.0);
}

double aided_coefficient_sum(std::size_t steps, double theta) {
  AidedFwConfig cfg;
  cfg.theta = theta;
  cfg.total_steps = steps;
  cfg.validate();
  const double n = static_cast<double>(steps);
  const auto n1 = static_cast<double>(std::min(cfg.phase_one_steps(), steps));
  const double n2 = n - n1;
  return n1 * (1.0 - std::exp(-1.0 / n)) + n2 / (n * std::exp(1.0 / n));
}

double error_budget(std::size_t steps, double theta, double diameter,
                    double smoothness) {
  if (steps < 1) throw std::invalid_argument("error_budget: N must be >= 1");
  if (diameter < 0.0 || smoothness < 0.0) {
    throw std::invalid_argument("error_budget: D and L must be >= 0");
  }
  const double n = static_cast<double>(steps);
  const double et = std::exp(theta);
  const double denom = 2.0 * (kE + et * (3.0 - theta) - 3.0);
  const double first = -std::expm1(-1.0 / n) * (et - 1.0);
  const double second = (kE - et) / (n * n * std::exp(1.0 / n) * std::expm1(1.0 / n));
  return diameter * smoothness / denom * (first + second);
}

std::size_t steps_for_epsilon(double epsilon, double theta, double diameter,
                              double smoothness) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("steps_for_epsilon: epsilon must be > 0");
  auto ok = [&](std::size_t n) {
    return error_budget(n, theta, diameter, smoothness) <= epsilon;
  };
  if (ok(1)) return 1;
  std::size_t lo = 1;  // budget(lo) > epsilon
  std::size_t hi = 2;
  while (!ok(hi)) {
    lo = hi;
    if (hi > (std::numeric_limits<std::size_t>::max() >> 2)) {
      throw std::overflow_error("steps_for_epsilon: epsilon too small");
    }
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace drsub
