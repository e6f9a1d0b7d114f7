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

// Seeded random instances for the four objective families and edge-list
// ingestion for the revenue model. Everything here is a pure function of its
// arguments; the same seed always yields the same instance.

#ifndef DRSUB_INSTANCES_H_
#define DRSUB_INSTANCES_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "drsub/lattice.h"
#include "drsub/objectives.h"

namespace drsub {

struct NqpProblem {
  NqpInstance instance;
  DownClosedPolytope polytope;
};

struct CoverageProblem {
  CoverageInstance instance;
  DownClosedPolytope polytope;
};

struct DppProblem {
  SoftmaxDppInstance instance;
  Point exponents;  // u_i, so that L has eigenvalues e^{u_i}
  DownClosedPolytope polytope;

  // Constant c with F + c >= 0 on the unit cube: every principal minor of L
  // is at least min(1, min_i e^{u_i})^n.
  double nonnegative_offset() const;
};

// Random m x n constraint block: A_ij ~ U[0,1], b_r ~ U[0, b_max].
DownClosedPolytope random_polytope(std::size_t n, std::size_t m, double b_max,
                                   std::mt19937_64& rng);

// H_ij ~ U[-1,0] (then symmetrized), h_i ~ U[0,1], b_r ~ U[0, 0.05 n].
NqpProblem gen_nqp(std::size_t n, std::size_t m, std::uint64_t seed);
// Example-1 objective; b_r ~ U[0, 0.05 (2k+1)]. m = 0 gives the unit box.
CoverageProblem gen_coverage(int k, std::size_t m, std::uint64_t seed);
// L = V diag(e^{u}) V^T with u_i ~ U[-0.5, 1] and V random orthogonal;
// b_r ~ U[0, 0.05 n].
DppProblem gen_dpp(std::size_t n, std::size_t m, std::uint64_t seed);

// f(S) = C1(S) + C2([n] \ S) with C1, C2 weighted coverage functions over a
// 12-element universe (each element of [n] covers each universe item with
// probability 0.3, item weights U[0,1]). Nonnegative, submodular and, for
// most seeds, non-monotone.
SetFunctionTable gen_coverage_table(std::size_t n, std::uint64_t seed);

// max f(S) over |S| <= budget, by enumeration.
double table_max_with_budget(const SetFunctionTable& table, std::size_t budget);

struct Graph {
  std::size_t n = 0;
  std::vector<std::tuple<std::size_t, std::size_t, double>> edges;  // (u, v, w)
  double self_weight = 0.1;  // w_tt
};

inline constexpr double kEdgeWeights[] = {0.1, 0.01, 0.001};

// Distinct undirected edges chosen uniformly; weights uniform over
// kEdgeWeights. Throws CapacityError when edge_count > n(n-1)/2.
Graph gen_synthetic_graph(std::size_t n, std::size_t edge_count,
                          std::uint64_t seed);

// Whitespace-separated "u v" pairs. '#' lines and blank lines are skipped,
// self-loops are dropped, duplicate undirected edges keep their first
// occurrence, node ids are relabeled densely in order of first appearance.
// Weights are drawn from kEdgeWeights with `seed`. Throws ParseError (with the
// line number) on malformed input and when no edge is present.
Graph load_edge_list(const std::string& path, std::uint64_t seed);
Graph parse_edge_list(std::istream& is, std::uint64_t seed,
                      const std::string& source = "<stream>");

// Undirected edges contribute w to both w_st and w_ts.
RevenueInstance revenue_objective(const Graph& g, double alpha = 10.0,
                                  double beta = 10.0, double gamma = 0.5);

enum class Family { kNqp, kCoverage, kDpp, kRevenueSynthetic, kRevenueFile };

Family parse_family(const std::string& name);
std::string family_name(Family f);

struct GeneratorSpec {
  Family family = Family::kNqp;
  std::size_t n = 0;        // dimension, or node count for synthetic graphs
  int k = 0;                // coverage only
  std::size_t m = 0;        // constraint rows
  double budget = 0.0;      // revenue: > 0 selects sum_i x_i <= budget
  double b_fraction = 0.1;  // revenue rows: b_r = b_fraction * n
  std::size_t edges = 0;    // synthetic graphs
  std::string path;         // edge-list file
  double alpha = 10.0;
  double beta = 10.0;
  double gamma = 0.5;

  // Throws std::invalid_argument when a required size is missing.
  void validate() const;
};

struct Problem {
  std::unique_ptr<Objective> objective;
  DownClosedPolytope polytope;
};

Problem generate(const GeneratorSpec& spec, std::uint64_t seed);

}  // namespace drsub

#endif  // DRSUB_INSTANCES_H_
