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

// drsub command line.
//
//   drsub run <config>                      experiment -> CSV
//   drsub check [--trials K] [--seed S]     lemma suite, one line per report
//   drsub ratio --k K [--search --restarts R --seed S]
//   drsub theta                             optimal theta and its ratio
//   drsub lmo-selftest [--instances N] [--seed S]
//
// Exit status: 0 success, 1 a suite or trial failed, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "drsub/algorithms.h"
#include "drsub/analysis.h"
#include "drsub/harness.h"
#include "drsub/lmo.h"

namespace {

constexpr int kUsageError = 2;

int cmd_run(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    std::cerr << "drsub: config not found: " << path << "\n";
    return kUsageError;
  }
  drsub::ExperimentConfig cfg;
  try {
    cfg = drsub::load_config(path);
  } catch (const std::exception& e) {
    std::cerr << "drsub: " << e.what() << "\n";
    return kUsageError;
  }
  const drsub::ExperimentResult res = drsub::run_experiment(cfg);
  if (cfg.output_path.empty()) {
    drsub::emit_csv(std::cout, res.records, res.summary);
  } else {
    drsub::emit_csv(cfg.output_path, res.records, res.summary);
    for (const drsub::SummaryStats& s : res.summary) {
      std::printf("%-16s mean=%.10g std=%.10g n=%zu\n", s.algorithm.c_str(), s.mean,
                  s.std, s.count);
    }
  }
  int status = 0;
  for (const drsub::TrialRecord& r : res.records) {
    if (!r.ok) {
      std::cerr << "trial " << r.trial << " " << r.algorithm << " failed: " << r.error
                << "\n";
      status = 1;
    }
  }
  return status;
}

int cmd_check(std::size_t trials, std::uint64_t seed) {
  int status = 0;
  for (const drsub::CheckReport& r : drsub::run_check_suite(trials, seed)) {
    std::printf("%s trials=%zu violations=%zu worst_slack=%.3g\n", r.name.c_str(),
                r.trials, r.violations, r.worst_slack);
    if (!r.passed()) status = 1;
  }
  return status;
}

int cmd_ratio(int k, bool search, std::size_t restarts, std::uint64_t seed) {
  const drsub::RatioRecord rec = search ? drsub::worst_ratio_search(k, restarts, seed)
                                        : drsub::worst_ratio_analytic(k);
  std::printf("ratio=%.10g gap_x=%.10g gap_y=%.10g", rec.ratio, rec.gap_x, rec.gap_y);
  if (search) std::printf(" max_x=%.10g", rec.argmax_coordinate);
  std::printf("\n");
  return 0;
}

int cmd_theta() {
  const drsub::ThetaSolution s = drsub::optimize_theta();
  std::printf("theta=%.10g ratio=%.10g p=%.10g\n", s.theta_star, s.ratio,
              drsub::selection_probability(s.theta_star));
  return 0;
}

int cmd_lmo_selftest(std::size_t instances, std::uint64_t seed) {
  std::size_t failures = 0;
  for (const drsub::LmoSelftestCase& c : drsub::run_lmo_selftest(instances, seed)) {
    if (!c.passed) {
      ++failures;
      std::printf("mismatch n=%zu m=%zu simplex=%.17g reference=%.17g\n", c.n, c.m,
                  c.simplex_value, c.reference_value);
    }
  }
  std::printf("lmo-selftest instances=%zu failures=%zu\n", instances, failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-monotone DR-submodular maximization over down-closed polytopes"};
  app.require_subcommand(1);

  std::string config;
  auto* run = app.add_subcommand("run", "Run an experiment config and write CSV");
  run->add_option("config", config, "Config file")->required();

  std::size_t trials = 200;
  std::uint64_t seed = 1;
  auto* check = app.add_subcommand("check", "Run the lemma property suite");
  check->add_option("--trials", trials, "Trials per check")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "Master seed");

  int k = 10;
  bool search = false;
  std::size_t restarts = 10;
  std::uint64_t ratio_seed = 1;
  auto* ratio = app.add_subcommand("ratio", "Worst stationary point ratio on the coverage instance");
  ratio->add_option("--k", k, "Instance size")->required()->check(CLI::PositiveNumber);
  ratio->add_flag("--search", search, "Numerical search instead of the analytic pair");
  ratio->add_option("--restarts", restarts, "Search restarts")->check(CLI::PositiveNumber);
  ratio->add_option("--seed", ratio_seed, "Search seed");

  auto* theta = app.add_subcommand("theta", "Optimal theta for the aided variant");

  std::size_t instances = 200;
  std::uint64_t lmo_seed = 1;
  auto* lmo = app.add_subcommand("lmo-selftest", "Compare the simplex LMO to vertex enumeration");
  lmo->add_option("--instances", instances, "Random instances")->check(CLI::PositiveNumber);
  lmo->add_option("--seed", lmo_seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*run) return cmd_run(config);
    if (*check) return cmd_check(trials, seed);
    if (*ratio) return cmd_ratio(k, search, restarts, ratio_seed);
    if (*theta) return cmd_theta();
    if (*lmo) return cmd_lmo_selftest(instances, lmo_seed);
  } catch (const std::exception& e) {
    std::cerr << "drsub: " << e.what() << "\n";
    return 1;
  }
  return kUsageError;
}
