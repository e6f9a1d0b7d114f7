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

#include "drsub/analysis.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drsub {
namespace {

double scaled_tol(double magnitude) { return kCheckTol * (1.0 + std::abs(magnitude)); }

double uniform(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

void require_box(const Objective& obj, const Box& box) {
  if (box.dim() != obj.dim()) throw DimensionError("check: box/objective dimension");
}

}  // namespace

void CheckReport::add(double slack) {
  ++trials;
  if (slack < 0.0) ++violations;
  worst_slack = std::min(worst_slack, slack);
}

void CheckReport::merge(const CheckReport& other) {
  trials += other.trials;
  violations += other.violations;
  skipped += other.skipped;
  worst_slack = std::min(worst_slack, other.worst_slack);
}

Point sample_in_box(const Box& box, std::mt19937_64& rng, double snap) {
  Point x(box.dim());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double l = box.lower[i];
    const double u = box.upper[i];
    const double r = uniform(rng);
    if (r < snap / 2) {
      x[i] = l;
    } else if (r < snap) {
      x[i] = u;
    } else {
      x[i] = l + uniform(rng) * (u - l);
    }
  }
  return x;
}

Point sample_feasible(const DownClosedPolytope& p, std::mt19937_64& rng) {
  Point y(p.dim());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = uniform(rng) * p.cap()[i];
  const Point act = p.row_activity(y);
  double scale = 1.0;
  for (std::size_t r = 0; r < act.size(); ++r) {
    if (act[r] > p.b()[r]) scale = std::min(scale, p.b()[r] / act[r]);
  }
  // A second uniform factor spreads samples away from the active facets.
  scale *= std::sqrt(uniform(rng));
  for (double& v : y) v *= scale;
  return y;
}

CheckReport check_lemma4(const Objective& obj, const Box& box,
                         std::size_t trials, std::uint64_t seed) {
  require_box(obj, box);
  CheckReport rep{.name = "lemma4", .seed = seed};
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const Point x = sample_in_box(box, rng);
    const Point y = sample_in_box(box, rng);
    double a_max = 0.0;
    double a_min = 1.0;
    bool any = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double w = box.upper[i] - box.lower[i];
      if (w <= 0.0) continue;
      const double a = (x[i] - box.lower[i]) / w;
      a_max = std::max(a_max, a);
      a_min = std::min(a_min, a);
      any = true;
    }
    if (!any) a_min = 0.0;
    const double fy = obj.value(y);
    const double join_slack =
        obj.value(join(x, y)) - (1.0 - a_max) * fy + scaled_tol(fy);
    const double meet_slack = obj.value(meet(x, y)) - a_min * fy + scaled_tol(fy);
    rep.add(std::min(join_slack, meet_slack));
  }
  return rep;
}

CheckReport check_lemma5(const Objective& obj, const Box& box,
                         std::size_t trials, std::uint64_t seed) {
  require_box(obj, box);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (box.upper[i] > box.lower[i]) free.push_back(i);
  }
  if (free.size() > kMaxCornerDim) {
    throw CapacityError("lemma5: " + std::to_string(free.size()) +
                        " free coordinates exceed " + std::to_string(kMaxCornerDim));
  }
  const std::size_t d = free.size();
  const std::size_t corners = std::size_t{1} << d;
  std::vector<double> corner_value(corners);
  Point c = box.lower;
  for (std::size_t mask = 0; mask < corners; ++mask) {
    for (std::size_t j = 0; j < d; ++j) {
      c[free[j]] = (mask >> j) & 1 ? box.upper[free[j]] : box.lower[free[j]];
    }
    corner_value[mask] = obj.value(c);
  }

  CheckReport rep{.name = "lemma5", .seed = seed};
  std::mt19937_64 rng(seed);
  std::vector<double> weight;
  weight.reserve(corners);
  for (std::size_t t = 0; t < trials; ++t) {
    const Point x = sample_in_box(box, rng);
    weight.assign(1, 1.0);
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t i = free[j];
      const double a = (x[i] - box.lower[i]) / (box.upper[i] - box.lower[i]);
      const std::size_t half = weight.size();
      weight.resize(2 * half);
      for (std::size_t m = 0; m < half; ++m) {
        weight[half + m] = weight[m] * a;
        weight[m] *= 1.0 - a;
      }
    }
    double rhs = 0.0;
    for (std::size_t m = 0; m < corners; ++m) rhs += weight[m] * corner_value[m];
    const double fx = obj.value(x);
    rep.add(fx - rhs + scaled_tol(fx));
  }
  return rep;
}

CheckReport check_lemma7(const Objective& obj, const DownClosedPolytope& p,
                         std::span<const double> x, double gap,
                         std::size_t trials, std::uint64_t seed) {
  if (x.size() != p.dim() || obj.dim() != p.dim()) {
    throw DimensionError("lemma7: dimension mismatch");
  }
  CheckReport rep{.name = "lemma7", .seed = seed};
  std::mt19937_64 rng(seed);
  const double fx = obj.value(x);
  const double allowance = 2.0 * fx + 2.0 * std::max(gap, 0.0) + scaled_tol(fx);
  for (std::size_t t = 0; t < trials; ++t) {
    const Point y = sample_feasible(p, rng);
    rep.add(allowance - obj.value(join(x, y)) - obj.value(meet(x, y)));
  }
  return rep;
}

CheckReport check_lemma14(const Objective& obj, std::span<const double> x,
                          std::span<const double> z, const IndexPartition& part) {
  if (x.size() != obj.dim() || z.size() != obj.dim() || part.dim() != obj.dim()) {
    throw DimensionError("lemma14: dimension mismatch");
  }
  CheckReport rep{.name = "lemma14"};
  const double ta = partial_max(x, part.set_a());
  const double tb = partial_max(x, part.complement());
  if (ta > tb) {
    ++rep.skipped;
    return rep;
  }
  const double fz = obj.value(z);
  const double fz_a = obj.value(join(z, part.indicator()));
  const double lhs = obj.value(join(x, z));
  rep.add(lhs - (1.0 - ta) * fz + (tb - ta) * fz_a + scaled_tol(fz));
  return rep;
}

CheckReport check_lemma14_suite(const Objective& obj,
                                const DownClosedPolytope& p, std::size_t trials,
                                std::uint64_t seed,
                                const std::vector<Point>* iterates) {
  const std::size_t n = obj.dim();
  CheckReport rep{.name = "lemma14", .seed = seed};
  std::mt19937_64 rng(seed);
  const Box unit = Box::unit(n);
  for (std::size_t t = 0; t < trials; ++t) {
    Point x;
    if (iterates && !iterates->empty()) {
      x = (*iterates)[rng() % iterates->size()];
    } else {
      x = sample_in_box(unit, rng);
    }
    std::vector<std::size_t> a;
    for (std::size_t i = 0; i < n; ++i) {
      if (uniform(rng) < 0.5) a.push_back(i);
    }
    IndexPartition part(n, a);
    if (partial_max(x, part.set_a()) > partial_max(x, part.complement())) {
      part = IndexPartition(n, part.complement());
    }
    const Point z = sample_feasible(p, rng);
    rep.merge(check_lemma14(obj, x, z, part));
  }
  return rep;
}

CheckReport check_dr_and_gradient(const Objective& obj, const Box& box,
                                  std::size_t trials, std::uint64_t seed,
                                  const GradientCheckOptions& opts) {
  require_box(obj, box);
  const std::size_t n = obj.dim();
  CheckReport rep{.name = "dr_gradient", .seed = seed};
  std::mt19937_64 rng(seed);
  std::vector<bool> pinned(n);
  Point probe(n);
  for (std::size_t t = 0; t < trials; ++t) {
    Point x(n);
    for (std::size_t i = 0; i < n; ++i) {
      pinned[i] = uniform(rng) < opts.pinned_fraction;
      const double w = box.upper[i] - box.lower[i];
      x[i] = pinned[i] ? box.lower[i]
                       : box.lower[i] + w * (opts.active_floor +
                                             (1.0 - opts.active_floor) * uniform(rng));
    }
    const ValueGrad vx = obj.evaluate(x);
    const double gnorm = max_abs(vx.gradient);

    // Central differences on coordinates whose stencil stays in the box.
    const double h = opts.fd_step;
    double fd_err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (pinned[i] || x[i] - h < box.lower[i] || x[i] + h > box.upper[i]) continue;
      probe = x;
      probe[i] = x[i] + h;
      const double up = obj.value(probe);
      probe[i] = x[i] - h;
      const double down = obj.value(probe);
      fd_err = std::max(fd_err, std::abs((up - down) / (2.0 * h) - vx.gradient[i]));
    }
    const double fd_slack = opts.fd_rel_tol - fd_err / (1.0 + gnorm);

    // Antitone gradient on a comparable pair x <= y.
    Point y = x;
    for (std::size_t i = 0; i < n; ++i) {
      if (!pinned[i]) y[i] = x[i] + uniform(rng) * (box.upper[i] - x[i]);
    }
    const Point gy = obj.gradient(y);
    double antitone = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      antitone = std::min(antitone, vx.gradient[i] - gy[i]);
    }
    const double antitone_slack = antitone + opts.antitone_tol * (1.0 + gnorm);

    // Concavity along a nonnegative direction.
    Point d(n, 0.0);
    double step = opts.second_diff_step;
    for (std::size_t i = 0; i < n; ++i) {
      if (pinned[i]) continue;
      d[i] = uniform(rng);
      if (d[i] > 0.0) step = std::min(step, (box.upper[i] - x[i]) / (2.0 * d[i]));
    }
    double second_slack = std::numeric_limits<double>::infinity();
    if (step > 1e-6) {
      Point x1 = x;
      Point x2 = x;
      for (std::size_t i = 0; i < n; ++i) {
        x1[i] += step * d[i];
        x2[i] += 2.0 * step * d[i];
      }
      const double second = obj.value(x2) - 2.0 * obj.value(x1) + vx.value;
      second_slack = opts.second_diff_tol * (1.0 + std::abs(vx.value)) - second;
    }
    rep.add(std::min({fd_slack, antitone_slack, second_slack}));
  }
  return rep;
}

RatioRecord worst_ratio_analytic(int k) {
  if (k < 1) throw std::invalid_argument("worst_ratio_analytic: k must be >= 1");
  const CoverageObjective obj(CoverageInstance{k});
  const std::size_t n = obj.dim();
  const DownClosedPolytope box(n);
  Point x(n, 1.0);
  x[n - 1] = 0.0;
  Point y(n, 0.0);
  y[n - 1] = 1.0;
  RatioRecord rec;
  rec.k = k;
  rec.gap_x = stationarity_gap(obj, box, x);
  rec.gap_y = stationarity_gap(obj, box, y);
  if (rec.gap_x > 1e-9 || rec.gap_y > 1e-9) {
    throw std::logic_error("worst_ratio_analytic: boundary pair is not stationary");
  }
  rec.ratio = obj.value(x) / obj.value(y);
  rec.argmax_coordinate = max_abs(x);
  return rec;
}

RatioRecord worst_ratio_search(int k, std::size_t restarts, std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("worst_ratio_search: restarts must be >= 1");
  const CoverageObjective obj(CoverageInstance{k});
  const std::size_t n = obj.dim();
  const DownClosedPolytope box(n);
  const Point ones(n, 1.0);
  std::mt19937_64 rng(seed);

  RatioRecord best = worst_ratio_analytic(k);
  double denom = static_cast<double>(k);  // F at the analytic y
  std::vector<Point> starts;
  for (std::size_t r = 1; r < restarts; ++r) {
    starts.push_back(sample_in_box(Box::unit(n), rng, 0.0));
    const AlgorithmResult y =
        frank_wolfe_stationary(obj, box, ones, 1e-9, 20000, {}, sample_in_box(Box::unit(n), rng, 0.0));
    denom = std::max(denom, y.value);
  }
  best.ratio = best.ratio * k / denom;

  constexpr double kRho = 100.0;
  constexpr std::size_t kSteps = 200;
  constexpr double kFdStep = 1e-6;
  auto penalized = [&](std::span<const double> x) {
    const ValueGrad vg = obj.evaluate(x);
    double pen = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      pen += vg.gradient[i] >= 0.0 ? vg.gradient[i] * (1.0 - x[i])
                                   : -vg.gradient[i] * x[i];
    }
    return vg.value + kRho * std::max(pen, 0.0);
  };

  Point grad(n);
  for (Point& x : starts) {
    for (std::size_t step = 0; step < kSteps; ++step) {
      Point probe = x;
      for (std::size_t i = 0; i < n; ++i) {
        const double lo = std::max(0.0, x[i] - kFdStep);
        const double hi = std::min(1.0, x[i] + kFdStep);
        probe[i] = hi;
        const double up = penalized(probe);
        probe[i] = lo;
        const double down = penalized(probe);
        probe[i] = x[i];
        grad[i] = hi > lo ? (up - down) / (hi - lo) : 0.0;
      }
      const double gmax = max_abs(grad);
      if (gmax == 0.0) break;
      const double eta = 0.05 / (1.0 + static_cast<double>(step) / 50.0) / gmax;
      for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i] - eta * grad[i], 0.0, 1.0);
    }
    // Ascent from x lands on a nearby stationary point.
    const AlgorithmResult repaired = frank_wolfe_stationary(obj, box, ones, 1e-9, 20000, {}, x);
    if (repaired.stationarity_gap > 1e-6) continue;
    const double ratio = repaired.value / denom;
    if (ratio < best.ratio) {
      best.ratio = ratio;
      best.argmax_coordinate =
          *std::max_element(repaired.x_final.begin(), repaired.x_final.end());
      best.gap_x = repaired.stationarity_gap;
    }
  }
  return best;
}

bool approximation_audit(const AlgorithmResult& result, double opt,
                         double ratio, double slack) {
  if (!(opt > 0.0)) throw std::invalid_argument("approximation_audit: opt must be > 0");
  return result.value >= (ratio - slack) * opt;
}

}  // namespace drsub
