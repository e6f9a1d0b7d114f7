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

// Randomized validators for the lattice inequalities that the algorithms'
// guarantees rest on, and the worst-stationary-point study for the regular
// coverage instance.
//
// Every check reports a slack per trial: (right-hand allowance) minus
// (observed left-hand excess). A trial is a violation when its slack is
// negative. Value comparisons use an absolute tolerance of 1e-8 scaled by
// 1 + |F| so that objectives with large offsets (quadratics) are not
// penalized for rounding.

#ifndef DRSUB_ANALYSIS_H_
#define DRSUB_ANALYSIS_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "drsub/algorithms.h"
#include "drsub/lattice.h"
#include "drsub/objectives.h"

namespace drsub {

struct CheckReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t skipped = 0;  // precondition not met (lemma 14 only)
  double worst_slack = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;

  bool passed() const { return violations == 0; }
  // Folds one trial's slack into the report.
  void add(double slack);
  void merge(const CheckReport& other);
};

struct RatioRecord {
  int k = 1;
  double ratio = 1.0;
  double argmax_coordinate = 0.0;  // max_i x_i of the bad point
  double gap_x = 0.0;
  double gap_y = 0.0;
};

inline constexpr double kCheckTol = 1e-8;
inline constexpr std::size_t kMaxCornerDim = 12;

// Sampling helpers shared with tests. Coordinates are snapped to a bound with
// probability `snap` to exercise the boundary.
Point sample_in_box(const Box& box, std::mt19937_64& rng, double snap = 0.1);
// Uniform point in the cap box scaled down until every row holds.
Point sample_feasible(const DownClosedPolytope& p, std::mt19937_64& rng);

// F(x v y) >= (1 - a) F(y) and F(x ^ y) >= b F(y) with a, b the max and min of
// (x_i - l_i) / (u_i - l_i). Requires F >= 0 on the box.
CheckReport check_lemma4(const Objective& obj, const Box& box,
                         std::size_t trials, std::uint64_t seed);

// F(x) >= sum_S F(l on S^c, u on S) prod_{i in S} a_i prod_{j not in S}(1 - a_j).
// Coordinates with l_i = u_i are fixed; throws CapacityError when more than
// kMaxCornerDim coordinates are free.
CheckReport check_lemma5(const Objective& obj, const Box& box,
                         std::size_t trials, std::uint64_t seed);

// 2F(x) + 2 gap >= F(x v y) + F(x ^ y) for random feasible y.
CheckReport check_lemma7(const Objective& obj, const DownClosedPolytope& p,
                         std::span<const double> x, double gap,
                         std::size_t trials, std::uint64_t seed);

// F(x v z) >= (1 - tA) F(z) - (tB - tA) F(z v 1_A) with tA, tB the maxima of
// x over A and its complement. A case with tA > tB is skipped.
CheckReport check_lemma14(const Objective& obj, std::span<const double> x,
                          std::span<const double> z, const IndexPartition& part);

// Randomized lemma-14 cases: x drawn from `iterates` when given, otherwise at
// random; A random, replaced by its complement when needed for tA <= tB;
// z feasible in P.
CheckReport check_lemma14_suite(const Objective& obj,
                                const DownClosedPolytope& p, std::size_t trials,
                                std::uint64_t seed,
                                const std::vector<Point>* iterates = nullptr);

struct GradientCheckOptions {
  double fd_step = 1e-5;
  double fd_rel_tol = 1e-5;
  double antitone_tol = 1e-7;
  double second_diff_step = 1e-3;
  double second_diff_tol = 1e-8;
  // Fraction of coordinates pinned at their lower bound in both points.
  // The revenue objective is only smooth on a fixed zero set.
  double pinned_fraction = 0.0;
  // Free coordinates are drawn from [l + f (u - l), u]; keeps the revenue
  // model's square roots away from zero.
  double active_floor = 0.0;
};

// Central finite differences against the gradient at interior points,
// grad F(x) >= grad F(y) for x <= y, and nonpositive second differences
// along nonnegative directions.
CheckReport check_dr_and_gradient(const Objective& obj, const Box& box,
                                  std::size_t trials, std::uint64_t seed,
                                  const GradientCheckOptions& opts = {});

// The boundary pair x = 1_{[2k]}, y = 1_{2k+1}. Throws std::logic_error when
// either stationarity gap exceeds 1e-9.
RatioRecord worst_ratio_analytic(int k);

// Multi-start penalized minimization of F(x) / max F(y) over stationary x.
// Restart 0 is the analytic pair.
RatioRecord worst_ratio_search(int k, std::size_t restarts, std::uint64_t seed);

// result.value >= (ratio - slack) * opt.
bool approximation_audit(const AlgorithmResult& result, double opt,
                         double ratio, double slack);

}  // namespace drsub

#endif  // DRSUB_ANALYSIS_H_
