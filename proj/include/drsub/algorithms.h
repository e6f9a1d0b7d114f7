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

// Projection-free algorithms for max F(x) over a down-closed polytope, all
// driven by the linear maximization oracle:
//
//   frank_wolfe_stationary   plain Frank-Wolfe to an eps-stationary point
//   reduced_frank_wolfe      the same inside P ∩ [0, m]^n
//   two_phase_frank_wolfe    stationary x in P, then y in P ∧ (1 - x)
//   measured_fw_variant      measured continuous greedy, N steps
//   aided_fw_variant         stationary y, random set A drawn from y, then a
//                            two-stage measured greedy that keeps A at zero
//                            for the first round(theta N) steps
//
// plus the scalar machinery behind the aided variant's guarantee.

#ifndef DRSUB_ALGORITHMS_H_
#define DRSUB_ALGORITHMS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drsub/lattice.h"
#include "drsub/objectives.h"

namespace drsub {

class InfeasibleIterateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct TrajectoryPoint {
  std::size_t iteration = 0;
  double value = 0.0;
};

// A named intermediate solution, e.g. the two points of the two-phase method.
struct PhaseResult {
  std::string label;
  Point x;
  double value = 0.0;
};

struct AlgorithmResult {
  Point x_final;
  double value = 0.0;
  double stationarity_gap = 0.0;
  std::size_t iterations = 0;
  bool converged = true;  // false when an iteration budget ran out
  std::vector<TrajectoryPoint> trajectory;
  std::vector<Point> iterates;  // only with AlgorithmOptions::record_iterates
  std::vector<PhaseResult> phases;
  std::vector<std::size_t> sampled_set;  // aided variant: the set A
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;
};

struct AlgorithmOptions {
  bool record_trajectory = false;
  bool record_iterates = false;
  // Verify every iterate against the polytope (1e-8) and throw
  // InfeasibleIterateError on failure.
  bool check_feasibility = false;
};

enum class Selection { kBestOf, kRandomized };

inline constexpr double kDefaultTheta = 0.372;
inline constexpr double kDefaultSelectionProbability = 0.77;

struct AidedFwConfig {
  double theta = kDefaultTheta;
  std::size_t total_steps = 100;  // N
  Selection selection = Selection::kBestOf;
  double selection_probability = kDefaultSelectionProbability;

  // Throws std::invalid_argument if out of range.
  void validate() const;
  std::size_t phase_one_steps() const;  // round(theta * N)
};

struct ThetaSolution {
  double theta_star = 0.0;
  double ratio = 0.0;
};

// (3 - sqrt 5) / 2, the cap that maximizes (2 - m) m / 2 subject to
// (1 - m)^2 >= m.
double reduced_domain_cap();
double reduced_domain_ratio(double m);

// max_{y in P} <grad F(x), y - x>.
double stationarity_gap(const Objective& obj, const DownClosedPolytope& p,
                        std::span<const double> x);

// Frank-Wolfe with the short step clamp(gap / (L |d|^2), 0, 1) when the
// objective reports L (halved while the value would drop), otherwise
// backtracking from 1 with an Armijo test. Runs over {v in P : v <= cap}.
// `start` must be feasible for that set; defaults to the origin.
AlgorithmResult frank_wolfe_stationary(const Objective& obj,
                                       const DownClosedPolytope& p,
                                       std::span<const double> cap,
                                       double epsilon, std::size_t max_iter,
                                       const AlgorithmOptions& opts = {},
                                       std::optional<Point> start = std::nullopt);

AlgorithmResult reduced_frank_wolfe(const Objective& obj,
                                    const DownClosedPolytope& p, double m,
                                    double epsilon, std::size_t max_iter,
                                    const AlgorithmOptions& opts = {});

// `phase_one` may supply an already computed stationary point of P; the
// phases are recorded as "phase1" and "phase2".
AlgorithmResult two_phase_frank_wolfe(const Objective& obj,
                                      const DownClosedPolytope& p,
                                      double epsilon, std::size_t max_iter,
                                      const AlgorithmOptions& opts = {},
                                      const AlgorithmResult* phase_one = nullptr);

AlgorithmResult measured_fw_variant(const Objective& obj,
                                    const DownClosedPolytope& p,
                                    std::size_t steps,
                                    const AlgorithmOptions& opts = {});

// The stationary point y comes from `stationary` when given, otherwise from
// frank_wolfe_stationary(P, epsilon, max_iter). Phases are recorded as
// "stationary" (y) and "variant" (x(1)).
AlgorithmResult aided_fw_variant(const Objective& obj,
                                 const DownClosedPolytope& p,
                                 const AidedFwConfig& cfg, double epsilon,
                                 std::uint64_t seed,
                                 std::size_t max_iter = 100000,
                                 const AlgorithmOptions& opts = {},
                                 const AlgorithmResult* stationary = nullptr);

// ((2 - t) e^t - 1) / (e + 3 e^t - 3 - t e^t).
double aided_ratio(double theta);
// Golden-section maximization of aided_ratio on [0, 1].
ThetaSolution optimize_theta(double tol = 1e-10);
// e / (e + e^theta (3 - theta) - 3).
double selection_probability(double theta);

// Coefficient sum N1 (1 - e^{-1/N}) + N2 / (N e^{1/N}) of the aided variant's
// iterate as a combination of LMO points.
double aided_coefficient_sum(std::size_t steps, double theta);

// Discretization error DL / (2(e + e^theta (3 - theta) - 3)) *
//   [(1 - e^{-1/N})(e^theta - 1) + (e - e^theta) / (N^2 e^{1/N} (e^{1/N} - 1))].
double error_budget(std::size_t steps, double theta, double diameter,
                    double smoothness);
// Smallest N with error_budget(N) <= epsilon.
std::size_t steps_for_epsilon(double epsilon, double theta, double diameter,
                              double smoothness);

}  // namespace drsub

#endif  // DRSUB_ALGORITHMS_H_
