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

// Experiment driver: config parsing, seeded trials, summary statistics, CSV.
//
// Config files are line oriented:
//
//   # comment
//   family = nqp
//   n = 100
//   m = 10
//   trials = 10
//   seed = 7
//   output = nqp.csv
//
//   [frank_wolfe]
//   [aided_fw]
//   theta = 0.372
//
// Top-level keys precede the first section. Each section names one algorithm
// row and may override its parameters. See README.md for the full key list.

#ifndef DRSUB_HARNESS_H_
#define DRSUB_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "drsub/analysis.h"
#include "drsub/instances.h"

namespace drsub {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Output rows, one per configured section:
//   frank_wolfe     stationary point of P
//   two_phase_fw    best of the two phases
//   two_phase_fw_2  the second phase alone (stationary in P ^ (1 - x))
//   reduced_fw      stationary point of P ^ [0, m]^n
//   measured_fw     measured continuous greedy
//   aided_fw        aided variant with its configured selection rule
//   aided_fw_2      the aided variant's own iterate x(1)
const std::vector<std::string>& known_algorithms();

struct AlgorithmSpec {
  std::string name;
  std::map<std::string, std::string> params;
};

struct ExperimentConfig {
  GeneratorSpec generator;
  std::vector<AlgorithmSpec> algorithms;
  std::size_t trials = 10;       // T
  std::size_t iterations = 100;  // N
  std::uint64_t master_seed = 0;
  std::string output_path;
  double epsilon = 1e-6;
  std::size_t max_iter = 10000;
  std::size_t threads = 1;
  // Wall-clock times make the CSV nondeterministic, so they are written as 0
  // unless enabled.
  bool timing = false;

  void validate() const;
};

ExperimentConfig parse_config(std::istream& is, const std::string& source = "<config>");
// Relative edge-list paths resolve against the config file's directory.
ExperimentConfig load_config(const std::string& path);

struct TrialRecord {
  std::size_t trial = 0;
  std::string algorithm;
  double value = 0.0;
  double gap = 0.0;
  double elapsed = 0.0;
  std::uint64_t seed = 0;
  bool ok = true;
  std::string error;
};

struct SummaryStats {
  std::string algorithm;
  double mean = 0.0;
  double std = 0.0;  // population std over successful trials
  std::size_t count = 0;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // trial-major, config order within a trial
  std::vector<SummaryStats> summary;
};

// Seed for trial t; splitmix64 finalizer over (master, t).
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t t);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::vector<SummaryStats> summarize(const std::vector<TrialRecord>& records);

// Header "trial,algorithm,value,gap,elapsed_s,seed", one row per record with
// 10 significant digits, then "# algorithm,mean,std" and one "# ..." row per
// algorithm. Failed trials print nan and are left out of the summary.
void emit_csv(std::ostream& os, const std::vector<TrialRecord>& records,
              const std::vector<SummaryStats>& stats);
// Throws std::runtime_error naming the path on I/O failure.
void emit_csv(const std::string& path, const std::vector<TrialRecord>& records,
              const std::vector<SummaryStats>& stats);

// Lemma suite over quadratic (n=30), coverage (k=3), DPP (n=8) and
// brute-force multilinear (n=8) instances. Report names are
// "<family>/<check>".
std::vector<CheckReport> run_check_suite(std::size_t trials, std::uint64_t seed);

}  // namespace drsub

#endif  // DRSUB_HARNESS_H_
