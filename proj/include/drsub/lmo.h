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

// Linear maximization oracle: argmax <g, v> over {A v <= b, 0 <= v <= cap}.

#ifndef DRSUB_LMO_H_
#define DRSUB_LMO_H_

#include <cstdint>
#include <iosfwd>
#include <span>

#include "drsub/lattice.h"

namespace drsub {

enum class LmoStatus { kOptimal, kInfeasibleNumeric };

struct LmoResult {
  Point v;
  double value = 0.0;
  LmoStatus status = LmoStatus::kOptimal;
};

// Primal simplex with bounded variables. Entering variable by largest reduced
// cost (lowest index on ties), switching to Bland's rule after a run of
// degenerate pivots; leaving variable by minimum ratio, lowest index on ties.
// Coordinates with g_i <= 0 or cap_i == 0 are fixed at zero up front: with
// A >= 0 they can always be lowered without losing feasibility or value.
// `cap` is clamped to p.cap().
LmoResult solve_lmo(const DownClosedPolytope& p, std::span<const double> g,
                    std::span<const double> cap);
LmoResult solve_lmo(const DownClosedPolytope& p, std::span<const double> g);

// Greedy fractional knapsack for sum_i v_i <= budget with unit weights.
LmoResult solve_cardinality_lmo(std::span<const double> g, double budget,
                                std::span<const double> cap);

// Reference oracle: enumerates every basic solution of the n x n active-set
// systems drawn from the A-rows, v >= 0 and v <= cap. Exponential; intended
// for n <= 8.
LmoResult brute_force_lmo(const DownClosedPolytope& p,
                          std::span<const double> g,
                          std::span<const double> cap);

struct LmoSelftestCase {
  std::size_t n = 0;
  std::size_t m = 0;
  double simplex_value = 0.0;
  double reference_value = 0.0;
  bool passed = false;
};

// Random rational instances (n <= 6, m <= 4) comparing solve_lmo against
// brute_force_lmo at the given value tolerance.
std::vector<LmoSelftestCase> run_lmo_selftest(std::size_t instances,
                                              std::uint64_t seed,
                                              double tol = 1e-8);

}  // namespace drsub

#endif  // DRSUB_LMO_H_
