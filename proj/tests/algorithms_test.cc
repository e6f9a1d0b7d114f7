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

#include <gtest/gtest.h>

#include <cmath>

#include "drsub/instances.h"

namespace drsub {
namespace {

// F(x) = sum x_i - x_i^2, concave with unique maximizer 1/2.
FunctionObjective concave(std::size_t n, std::optional<double> l = 2.0) {
  return FunctionObjective(
      n,
      [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v - v * v;
        return s;
      },
      [](std::span<const double> x) {
        Point g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = 1.0 - 2.0 * x[i];
        return g;
      },
      l);
}

FunctionObjective linear(std::size_t n, double slope) {
  return FunctionObjective(
      n,
      [slope](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += slope * v;
        return s;
      },
      [slope](std::span<const double> x) { return Point(x.size(), slope); }, 0.0);
}

Point worst_point(int k) {
  Point x(static_cast<std::size_t>(2 * k + 1), 1.0);
  x.back() = 0.0;
  return x;
}

Point best_point(int k) {
  Point y(static_cast<std::size_t>(2 * k + 1), 0.0);
  y.back() = 1.0;
  return y;
}

TEST(StationarityGap, AnalyticPointsOfCoverageInstance) {
  for (int k : {1, 3, 10}) {
    const CoverageObjective obj(CoverageInstance{k});
    const DownClosedPolytope box(obj.dim());
    EXPECT_NEAR(stationarity_gap(obj, box, worst_point(k)), 0.0, 1e-12);
    EXPECT_NEAR(stationarity_gap(obj, box, best_point(k)), 0.0, 1e-12);
  }
  const CoverageObjective obj(CoverageInstance{2});
  const DownClosedPolytope box(5);
  const Point x{0.1, 0.5, 0.3, 0.2, 0.7};
  EXPECT_EQ(stationarity_gap(obj, box, x), stationarity_gap(obj, box, x));
}

TEST(FrankWolfe, ConcaveReachesMaximizer) {
  for (bool with_l : {true, false}) {
    const FunctionObjective obj = with_l ? concave(1) : concave(1, std::nullopt);
    const DownClosedPolytope box(1);
    const AlgorithmResult r = frank_wolfe_stationary(obj, box, box.cap(), 1e-6, 10000);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.stationarity_gap, 1e-6);
    EXPECT_NEAR(r.x_final[0], 0.5, 1e-3);
  }
}

TEST(FrankWolfe, ZeroBudgetReturnsOrigin) {
  const FunctionObjective obj = concave(3);
  const DownClosedPolytope box(3);
  const AlgorithmResult r = frank_wolfe_stationary(obj, box, box.cap(), 1e-6, 0);
  EXPECT_EQ(r.x_final, Point(3, 0.0));
  EXPECT_DOUBLE_EQ(r.stationarity_gap, 3.0);
  EXPECT_FALSE(r.converged);
}

TEST(FrankWolfe, RejectsNonpositiveEpsilon) {
  const FunctionObjective obj = concave(2);
  const DownClosedPolytope box(2);
  EXPECT_THROW(frank_wolfe_stationary(obj, box, box.cap(), 0.0, 10), std::invalid_argument);
}

TEST(FrankWolfe, GapCertificateAndFeasibility) {
  const Problem prob = generate(GeneratorSpec{.family = Family::kNqp, .n = 20, .m = 4}, 9);
  AlgorithmOptions opts;
  opts.check_feasibility = true;
  const AlgorithmResult r =
      frank_wolfe_stationary(*prob.objective, prob.polytope, prob.polytope.cap(), 1e-4, 5000, opts);
  EXPECT_TRUE(is_feasible(prob.polytope, r.x_final, 1e-8));
  EXPECT_NEAR(r.stationarity_gap, stationarity_gap(*prob.objective, prob.polytope, r.x_final),
              1e-8);
}

TEST(FrankWolfe, Deterministic) {
  const Problem prob = generate(GeneratorSpec{.family = Family::kDpp, .n = 8, .m = 2}, 3);
  const AlgorithmResult a =
      frank_wolfe_stationary(*prob.objective, prob.polytope, prob.polytope.cap(), 1e-6, 2000);
  const AlgorithmResult b =
      frank_wolfe_stationary(*prob.objective, prob.polytope, prob.polytope.cap(), 1e-6, 2000);
  EXPECT_EQ(a.x_final, b.x_final);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(ReducedFrankWolfe, CapConstants) {
  const double m = reduced_domain_cap();
  EXPECT_NEAR(m, (3.0 - std::sqrt(5.0)) / 2.0, 1e-15);
  EXPECT_GE(reduced_domain_ratio(m), 0.309);
  EXPECT_NEAR(reduced_domain_ratio(m), (2.0 - m) * m / 2.0, 1e-15);
}

TEST(ReducedFrankWolfe, CoverageGuarantee) {
  const int k = 10;
  const CoverageObjective obj(CoverageInstance{k});
  const DownClosedPolytope box(obj.dim());
  const AlgorithmResult r = reduced_frank_wolfe(obj, box, reduced_domain_cap(), 1e-6, 100000);
  EXPECT_GE(r.value, 0.309 * k);
  for (double v : r.x_final) EXPECT_LE(v, reduced_domain_cap() + 1e-12);
}

TEST(ReducedFrankWolfe, UnitCapMatchesPlain) {
  const FunctionObjective obj = concave(3);
  const DownClosedPolytope p(3, {1, 1, 1}, {1.0});
  const AlgorithmResult a = reduced_frank_wolfe(obj, p, 1.0, 1e-7, 1000);
  const AlgorithmResult b = frank_wolfe_stationary(obj, p, p.cap(), 1e-7, 1000);
  EXPECT_EQ(a.x_final, b.x_final);
}

TEST(TwoPhase, ConcaveKeepsPhaseOne) {
  const FunctionObjective obj = concave(2);
  const DownClosedPolytope box(2);
  const AlgorithmResult r = two_phase_frank_wolfe(obj, box, 1e-6, 10000);
  ASSERT_EQ(r.phases.size(), 2u);
  EXPECT_EQ(r.phases[0].label, "phase1");
  EXPECT_EQ(r.phases[1].label, "phase2");
  EXPECT_EQ(r.x_final, r.phases[0].x);
  EXPECT_NEAR(r.value, 0.5, 1e-6);
}

TEST(TwoPhase, ValueIsBestOfPhases) {
  const Problem prob = generate(GeneratorSpec{.family = Family::kCoverage, .k = 4, .m = 2}, 5);
  const AlgorithmResult r = two_phase_frank_wolfe(*prob.objective, prob.polytope, 1e-5, 5000);
  EXPECT_EQ(r.value, std::max(r.phases[0].value, r.phases[1].value));
  for (std::size_t i = 0; i < r.x_final.size(); ++i) {
    EXPECT_LE(r.phases[1].x[i], 1.0 - r.phases[0].x[i] + 1e-9);
  }
}

TEST(MeasuredFw, LinearClosedForm) {
  const std::size_t n = 4;
  const FunctionObjective obj = linear(n, 1.0);
  const DownClosedPolytope box(n);
  const AlgorithmResult r = measured_fw_variant(obj, box, 100);
  const double expected = 1.0 - std::pow(1.0 - 0.01, 100);
  for (double v : r.x_final) EXPECT_NEAR(v, expected, 1e-12);
  EXPECT_NEAR(expected, 0.634, 1e-3);
}

TEST(MeasuredFw, NegativeGradientStaysAtOrigin) {
  const FunctionObjective obj = linear(3, -1.0);
  const AlgorithmResult r = measured_fw_variant(obj, DownClosedPolytope(3), 50);
  EXPECT_EQ(r.x_final, Point(3, 0.0));
}

TEST(MeasuredFw, EndpointBound) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Problem prob = generate(GeneratorSpec{.family = Family::kNqp, .n = 20, .m = 3}, s);
    const AlgorithmResult r = measured_fw_variant(*prob.objective, prob.polytope, 100);
    for (double v : r.x_final) EXPECT_LE(v, 1.0 - std::exp(-1.0) + 0.01);
    EXPECT_TRUE(is_feasible(prob.polytope, r.x_final, 1e-8));
  }
}

TEST(AidedFw, ConfigValidation) {
  AidedFwConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.phase_one_steps(), 37u);
  cfg.theta = 1.5;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.theta = 0.3;
  cfg.total_steps = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(AidedFw, PhaseOneKeepsSampledCoordinatesAtZero) {
  const Problem prob = generate(GeneratorSpec{.family = Family::kCoverage, .k = 3, .m = 2}, 2);
  AidedFwConfig cfg;
  cfg.total_steps = 50;
  AlgorithmOptions opts;
  opts.record_iterates = true;
  opts.check_feasibility = true;
  const AlgorithmResult r =
      aided_fw_variant(*prob.objective, prob.polytope, cfg, 1e-5, 17, 20000, opts);
  ASSERT_GE(r.iterates.size(), cfg.phase_one_steps());
  for (std::size_t j = 0; j < cfg.phase_one_steps(); ++j) {
    for (std::size_t i : r.sampled_set) EXPECT_EQ(r.iterates[j][i], 0.0);
  }
  ASSERT_EQ(r.phases.size(), 2u);
  EXPECT_EQ(r.phases[0].label, "stationary");
  EXPECT_EQ(r.phases[1].label, "variant");
  EXPECT_EQ(r.value, std::max(r.phases[0].value, r.phases[1].value));
}

TEST(AidedFw, DeterministicPerSeed) {
  const Problem prob = generate(GeneratorSpec{.family = Family::kNqp, .n = 15, .m = 3}, 4);
  const AidedFwConfig cfg;
  const AlgorithmResult a = aided_fw_variant(*prob.objective, prob.polytope, cfg, 1e-4, 99);
  const AlgorithmResult b = aided_fw_variant(*prob.objective, prob.polytope, cfg, 1e-4, 99);
  EXPECT_EQ(a.x_final, b.x_final);
  EXPECT_EQ(a.sampled_set, b.sampled_set);
  EXPECT_EQ(a.value, b.value);
}

TEST(AidedFw, RandomizedSelectionPicksAPhase) {
  const Problem prob = generate(GeneratorSpec{.family = Family::kNqp, .n = 10, .m = 2}, 6);
  AidedFwConfig cfg;
  cfg.selection = Selection::kRandomized;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const AlgorithmResult r = aided_fw_variant(*prob.objective, prob.polytope, cfg, 1e-4, s);
    EXPECT_TRUE(r.x_final == r.phases[0].x || r.x_final == r.phases[1].x);
  }
}

TEST(Theta, OptimumAndEndpoints) {
  const ThetaSolution s = optimize_theta();
  EXPECT_NEAR(s.theta_star, 0.372, 1e-3);
  EXPECT_NEAR(s.ratio, 0.385, 1e-3);
  EXPECT_NEAR(s.ratio, aided_ratio(s.theta_star), 1e-12);
  EXPECT_NEAR(selection_probability(s.theta_star), 0.77, 0.01);
  EXPECT_NEAR(aided_ratio(0.0), std::exp(-1.0), 1e-15);
  EXPECT_DOUBLE_EQ(selection_probability(0.0), 1.0);
  const double e = std::exp(1.0);
  EXPECT_NEAR(selection_probability(1.0), e / (3 * e - 3), 1e-15);
  EXPECT_NEAR(selection_probability(1.0), 0.5273, 1e-4);
}

TEST(Theta, CoefficientSumAtMostOne) {
  for (std::size_t n = 2; n <= 400; n += 7) {
    for (int t = 0; t <= 20; ++t) {
      EXPECT_LE(aided_coefficient_sum(n, t / 20.0), 1.0 + 1e-15) << n << " " << t;
    }
  }
}

TEST(ErrorBudget, ScalingAndLimits) {
  const double theta = optimize_theta().theta_star;
  EXPECT_EQ(error_budget(100, theta, 0.0, 5.0), 0.0);
  EXPECT_LT(error_budget(1000000, theta, 1.0, 1.0), 1e-5);
  for (std::size_t n : {10u, 50u, 100u, 1000u}) {
    EXPECT_LE(error_budget(2 * n, theta, 2.0, 3.0), 0.6 * error_budget(n, theta, 2.0, 3.0));
  }
  for (std::size_t n : {50u, 200u, 5000u}) {
    const double r = error_budget(n, theta, 2.0, 3.0) / error_budget(2 * n, theta, 2.0, 3.0);
    EXPECT_GE(r, 1.8);
    EXPECT_LE(r, 2.2);
  }
}

TEST(StepsForEpsilon, InvertsBudget) {
  const double theta = kDefaultTheta;
  EXPECT_EQ(steps_for_epsilon(error_budget(1, theta, 1.0, 1.0), theta, 1.0, 1.0), 1u);
  std::size_t previous = 0;
  for (double eps = 1e-1; eps > 1e-6; eps /= 2) {
    const std::size_t n = steps_for_epsilon(eps, theta, 1.0, 4.0);
    EXPECT_LE(error_budget(n, theta, 1.0, 4.0), eps);
    if (n > 1) {
      EXPECT_GT(error_budget(n - 1, theta, 1.0, 4.0), eps);
    }
    if (previous > 0) {
      EXPECT_LE(n, 2 * previous + 2);
    }
    previous = n;
  }
  EXPECT_THROW(steps_for_epsilon(0.0, theta, 1.0, 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace drsub
