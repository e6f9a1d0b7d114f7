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

#include "drsub/instances.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "drsub/analysis.h"

namespace drsub {
namespace {

TEST(GenNqp, DeterministicAndInRange) {
  const NqpProblem a = gen_nqp(12, 4, 7);
  const NqpProblem b = gen_nqp(12, 4, 7);
  EXPECT_EQ(a.instance.hessian.data(), b.instance.hessian.data());
  EXPECT_EQ(a.instance.linear, b.instance.linear);
  EXPECT_EQ(a.polytope.a_data(), b.polytope.a_data());
  EXPECT_EQ(a.polytope.b(), b.polytope.b());
  EXPECT_NE(gen_nqp(12, 4, 8).instance.linear, a.instance.linear);
  for (double h : a.instance.hessian.data()) {
    EXPECT_LE(h, 0.0);
    EXPECT_GE(h, -1.0);
  }
  for (double h : a.instance.linear) EXPECT_TRUE(h >= 0.0 && h <= 1.0);
  for (double v : a.polytope.a_data()) EXPECT_TRUE(v >= 0.0 && v <= 1.0);
  for (double v : a.polytope.b()) EXPECT_TRUE(v >= 0.0 && v <= 0.05 * 12);
}

TEST(GenNqp, NonnegativeOnFeasiblePoints) {
  const NqpProblem p = gen_nqp(30, 5, 1);
  const NqpObjective obj(p.instance);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 1000; ++t) EXPECT_GE(obj.value(sample_feasible(p.polytope, rng)), 0.0);
}

TEST(GenCoverage, ShapeAndOrigin) {
  const CoverageProblem p = gen_coverage(4, 2, 3);
  EXPECT_EQ(p.polytope.dim(), 9u);
  EXPECT_EQ(p.polytope.rows(), 2u);
  EXPECT_TRUE(is_feasible(p.polytope, Point(9, 0.0)));
  for (double v : p.polytope.b()) EXPECT_LE(v, 0.05 * 9);
  EXPECT_EQ(gen_coverage(4, 0, 3).polytope.rows(), 0u);
}

TEST(GenDpp, SpectrumAndSymmetry) {
  const DppProblem p = gen_dpp(8, 2, 5);
  const DenseMatrix& l = p.instance.kernel;
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) EXPECT_NEAR(l(i, j), l(j, i), 1e-12);
  }
  double sum = 0.0;
  for (double u : p.exponents) {
    EXPECT_GE(u, -0.5);
    EXPECT_LE(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(log_det(l), sum, 1e-8);
  const double lo = std::exp(-0.5);
  const double hi = std::exp(1.0);
  const double norm = symmetric_spectral_norm(l);
  EXPECT_LE(norm, hi + 1e-6);
  EXPECT_GE(norm, lo - 1e-6);
}

TEST(GenDpp, OffsetMakesValuesNonnegative) {
  const DppProblem p = gen_dpp(8, 2, 9);
  const DppObjective obj(p.instance);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    EXPECT_GE(obj.value(sample_in_box(Box::unit(8), rng)) + p.nonnegative_offset(), -1e-12);
  }
}

TEST(CoverageTable, SubmodularAndBudgetMax) {
  const SetFunctionTable t = gen_coverage_table(8, 4);
  ASSERT_EQ(t.values.size(), 256u);
  for (std::uint64_t s = 0; s < 256; ++s) {
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = i + 1; j < 8; ++j) {
        const std::uint64_t bi = std::uint64_t{1} << i;
        const std::uint64_t bj = std::uint64_t{1} << j;
        if ((s & bi) || (s & bj)) continue;
        EXPECT_LE(t.values[s | bi | bj] - t.values[s | bj], t.values[s | bi] - t.values[s] + 1e-12);
      }
    }
  }
  double best = 0.0;
  for (std::uint64_t s = 0; s < 256; ++s) {
    if (std::popcount(s) <= 3) best = std::max(best, t.values[s]);
  }
  EXPECT_EQ(table_max_with_budget(t, 3), best);
}

TEST(SyntheticGraph, PropertiesAndScale) {
  const Graph g = gen_synthetic_graph(2708, 5208, 1);
  EXPECT_EQ(g.n, 2708u);
  EXPECT_EQ(g.edges.size(), 5208u);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [u, v, w] : g.edges) {
    EXPECT_NE(u, v);
    EXPECT_TRUE(seen.insert({std::min(u, v), std::max(u, v)}).second);
    EXPECT_TRUE(w == 0.1 || w == 0.01 || w == 0.001);
  }
  EXPECT_DOUBLE_EQ(g.self_weight, 0.1);
  EXPECT_EQ(gen_synthetic_graph(5, 10, 2).edges.size(), 10u);
  EXPECT_THROW(gen_synthetic_graph(5, 11, 2), CapacityError);
}

TEST(EdgeList, ParsingRules) {
  std::istringstream two("0 1\n1 2\n");
  const Graph g = parse_edge_list(two, 1);
  EXPECT_EQ(g.n, 3u);
  EXPECT_EQ(g.edges.size(), 2u);

  std::istringstream commented("# header\n10 20\n# mid\n20 30\n20 10\n");
  const Graph h = parse_edge_list(commented, 1);
  EXPECT_EQ(h.n, 3u);
  EXPECT_EQ(h.edges.size(), 2u);  // 20 10 duplicates 10 20
  EXPECT_EQ(std::get<0>(h.edges[0]), 0u);
  EXPECT_EQ(std::get<1>(h.edges[0]), 1u);

  std::istringstream bad("0 1\n1 x\n");
  try {
    parse_edge_list(bad, 1, "bad.txt");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.txt:2"), std::string::npos);
  }
  std::istringstream empty("# nothing\n");
  EXPECT_THROW(parse_edge_list(empty, 1), ParseError);
  EXPECT_THROW(load_edge_list("/nonexistent/graph.txt", 1), ParseError);
}

TEST(Revenue, SingleEdgeMatchesHandValue) {
  Graph g;
  g.n = 2;
  g.edges = {{0, 1, 0.1}};
  const RevenueObjective obj(revenue_objective(g));
  EXPECT_NEAR(obj.value(Point{0, 1}), 10 * std::sqrt(0.1) + 1.0 - 0.5, 1e-12);
  EXPECT_NEAR(obj.value(Point{1, 1}), 1.0, 1e-12);

  Graph empty;
  empty.n = 3;
  const RevenueObjective lonely(revenue_objective(empty));
  EXPECT_NEAR(lonely.value(Point{0.5, 0.0, 1.0}), 10 * 0.1 * 1.5 - 0.5 * 1.5, 1e-12);
}

TEST(Family, NamesRoundTrip) {
  for (Family f : {Family::kNqp, Family::kCoverage, Family::kDpp, Family::kRevenueSynthetic,
                   Family::kRevenueFile}) {
    EXPECT_EQ(parse_family(family_name(f)), f);
  }
  EXPECT_THROW(parse_family("tsp"), std::invalid_argument);
}

TEST(Generate, SpecsProduceConsistentProblems) {
  GeneratorSpec nqp{.family = Family::kNqp, .n = 10, .m = 2};
  const Problem a = generate(nqp, 3);
  const Problem b = generate(nqp, 3);
  const Point x(10, 0.05);
  EXPECT_EQ(a.objective->value(x), b.objective->value(x));
  EXPECT_EQ(a.polytope.b(), b.polytope.b());

  GeneratorSpec rev{.family = Family::kRevenueSynthetic, .n = 50, .budget = 5, .edges = 100};
  const Problem r = generate(rev, 1);
  EXPECT_EQ(r.objective->dim(), 50u);
  EXPECT_TRUE(r.polytope.is_cardinality());

  GeneratorSpec missing{.family = Family::kCoverage};
  EXPECT_THROW(missing.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace drsub
