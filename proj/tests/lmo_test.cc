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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace drsub {
namespace {

TEST(Lmo, BoxOnlySignRule) {
  const DownClosedPolytope box(3);
  const LmoResult r = solve_lmo(box, Point{1, -1, 0}, Point{1, 1, 1});
  EXPECT_EQ(r.v, (Point{1, 0, 0}));
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_EQ(r.status, LmoStatus::kOptimal);
}

TEST(Lmo, SingleRowPicksBestVertex) {
  // Vertices (0,0), (1,0), (0,1): value 2 at (1,0).
  const DownClosedPolytope p(2, {1, 1}, {1});
  const LmoResult r = solve_lmo(p, Point{2, 1});
  EXPECT_NEAR(r.v[0], 1.0, 1e-12);
  EXPECT_NEAR(r.v[1], 0.0, 1e-12);
  EXPECT_NEAR(r.value, 2.0, 1e-12);
}

TEST(Lmo, ZeroGradientReturnsOrigin) {
  const DownClosedPolytope p(3, {1, 2, 1}, {1});
  const LmoResult r = solve_lmo(p, Point{0, 0, 0});
  EXPECT_EQ(r.v, Point(3, 0.0));
  EXPECT_EQ(r.value, 0.0);
}

TEST(Lmo, CapIsRespected) {
  const DownClosedPolytope p(2, {1, 1}, {1.5});
  const LmoResult r = solve_lmo(p, Point{3, 1}, Point{0.25, 1});
  EXPECT_NEAR(r.v[0], 0.25, 1e-12);
  EXPECT_NEAR(r.v[1], 1.0, 1e-12);
}

TEST(Lmo, LengthMismatchThrows) {
  const DownClosedPolytope p(2);
  EXPECT_THROW(solve_lmo(p, Point{1, 2, 3}), DimensionError);
}

TEST(CardinalityLmo, Examples) {
  const Point cap(3, 1.0);
  EXPECT_EQ(solve_cardinality_lmo(Point{3, 2, 1}, 1.0, cap).v, (Point{1, 0, 0}));
  const LmoResult half = solve_cardinality_lmo(Point{3, 2, 1}, 1.5, cap);
  EXPECT_NEAR(half.v[0], 1.0, 1e-15);
  EXPECT_NEAR(half.v[1], 0.5, 1e-15);
  EXPECT_NEAR(half.v[2], 0.0, 1e-15);
  const LmoResult neg = solve_cardinality_lmo(Point{-1, -2}, 5.0, Point{1, 1});
  EXPECT_EQ(neg.v, (Point{0, 0}));
}

TEST(CardinalityLmo, AgreesWithGeneralSimplex) {
  // Two identical all-ones rows disable the fast path without changing P.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 7;
    Point g(n);
    for (double& v : g) v = u(rng);
    const double budget = 0.5 + static_cast<double>(t % 5);
    const DownClosedPolytope card(n, std::vector<double>(n, 1.0), Point{budget});
    const DownClosedPolytope doubled(n, std::vector<double>(2 * n, 1.0),
                                     Point{budget, budget});
    const double fast = solve_cardinality_lmo(g, budget, card.cap()).value;
    EXPECT_NEAR(fast, solve_lmo(card, g).value, 1e-12);
    EXPECT_NEAR(fast, solve_lmo(doubled, g).value, 1e-10);
  }
}

TEST(Lmo, AgreesWithVertexEnumeration) {
  const auto cases = run_lmo_selftest(300, 5);
  ASSERT_EQ(cases.size(), 300u);
  for (const LmoSelftestCase& c : cases) {
    EXPECT_TRUE(c.passed) << "n=" << c.n << " m=" << c.m << " simplex=" << c.simplex_value
                          << " reference=" << c.reference_value;
  }
}

TEST(Lmo, FeasibleAndConsistentOnRandomInstances) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 5 + t % 40;
    const std::size_t m = 1 + t % 12;
    std::vector<double> a(m * n);
    for (double& v : a) v = u(rng) < 0.2 ? 0.0 : u(rng);
    Point b(m);
    for (double& v : b) v = 0.05 * static_cast<double>(n) * u(rng);
    const DownClosedPolytope p(n, a, b);
    Point g(n);
    for (double& v : g) v = 2.0 * u(rng) - 0.5;
    const LmoResult r = solve_lmo(p, g);
    EXPECT_EQ(r.status, LmoStatus::kOptimal);
    EXPECT_TRUE(is_feasible(p, r.v, 1e-8));
    EXPECT_NEAR(r.value, dot(g, r.v), 1e-10 * (1.0 + std::abs(r.value)));
  }
}

TEST(Lmo, DegenerateRowsTerminate) {
  // Many parallel tight rows through the origin side of the box.
  const std::size_t n = 6;
  std::vector<double> a;
  Point b;
  for (int r = 0; r < 8; ++r) {
    for (std::size_t i = 0; i < n; ++i) a.push_back(r % 2 ? 1.0 : 0.5);
    b.push_back(r % 2 ? 1.0 : 0.5);
  }
  const DownClosedPolytope p(n, a, b);
  const LmoResult r = solve_lmo(p, Point{1, 1, 1, 1, 1, 1});
  EXPECT_EQ(r.status, LmoStatus::kOptimal);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_NEAR(brute_force_lmo(p, Point(n, 1.0), p.cap()).value, 1.0, 1e-12);
}

TEST(Lmo, Deterministic) {
  const DownClosedPolytope p(3, {1, 1, 1, 2, 0, 1}, {1, 1.5});
  const Point g{1, 1, 1};
  const LmoResult a = solve_lmo(p, g);
  const LmoResult b = solve_lmo(p, g);
  EXPECT_EQ(a.v, b.v);
  EXPECT_EQ(a.value, b.value);
}

}  // namespace
}  // namespace drsub
