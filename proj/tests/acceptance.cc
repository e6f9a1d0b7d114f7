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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "drsub/algorithms.h"
#include "drsub/analysis.h"
#include "drsub/harness.h"
#include "drsub/instances.h"
#include "drsub/lmo.h"
#include "drsub/objectives.h"

namespace drsub {
namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void closed_form_fidelity() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k : {1, 2}) {
    const CoverageInstance inst{k};
    const SetFunctionTable table = make_table(
        inst.dim(), [k](std::uint64_t s) { return regular_coverage_setfn(k, s); });
    for (int t = 0; t < 100; ++t) {
      Point x(inst.dim());
      for (double& v : x) v = u(rng);
      const ValueGrad a = coverage_me_eval_grad(inst, x);
      const ValueGrad b = me_bruteforce_eval_grad(table, x);
      worst = std::max(worst, std::abs(a.value - b.value));
      for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, std::abs(a.gradient[i] - b.gradient[i]));
      }
    }
  }
  report(1, "closed form vs brute force", worst <= 1e-9, fmt("max error %.3g", worst));
}

void analytic_ratios() {
  bool ok = true;
  std::string detail;
  const std::map<int, double> table = {{10, 0.1000}, {20, 0.0500}, {30, 0.0333}, {50, 0.0200}};
  for (const auto& [k, expected] : table) {
    const RatioRecord r = worst_ratio_analytic(k);
    const double rounded = std::round(r.ratio * 1e4) / 1e4;
    ok = ok && r.ratio * k == 1.0 && r.gap_x <= 1e-9 && r.gap_y <= 1e-9 &&
         std::abs(rounded - expected) < 1e-12;
    detail += "k=" + std::to_string(k) + fmt(":%.4f ", r.ratio);
  }
  report(2, "analytic worst ratio", ok, detail);
}

void theta_constants() {
  const ThetaSolution s = optimize_theta();
  const double p = selection_probability(s.theta_star);
  const bool ok = std::abs(s.theta_star - 0.372) <= 1e-3 && std::abs(s.ratio - 0.385) <= 1e-3 &&
                  std::abs(p - 0.77) <= 1e-2;
  report(3, "theta constants", ok,
         fmt("theta=%.6f", s.theta_star) + fmt(" ratio=%.6f", s.ratio) + fmt(" p=%.4f", p));
}

void reduced_domain() {
  bool ok = true;
  std::string detail;
  for (int k : {5, 10, 20}) {
    const CoverageObjective obj(CoverageInstance{k});
    const AlgorithmResult r =
        reduced_frank_wolfe(obj, DownClosedPolytope(obj.dim()), reduced_domain_cap(), 1e-6, 1000000);
    ok = ok && r.value >= 0.309 * k;
    detail += "k=" + std::to_string(k) + fmt(":%.4fk ", r.value / k);
  }
  report(4, "reduced-domain guarantee", ok, detail);
}

void aided_audit() {
  const std::size_t n = 8;
  const DownClosedPolytope card(n, std::vector<double>(n, 1.0), Point{3.0});
  AidedFwConfig cfg;
  cfg.theta = 0.372;
  cfg.total_steps = 200;
  cfg.selection = Selection::kBestOf;
  double worst = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < 20; ++s) {
    const SetFunctionTable table = gen_coverage_table(n, 1000 + s);
    const double opt = table_max_with_budget(table, 3);
    const MultilinearObjective obj(table);
    const AlgorithmResult r = aided_fw_variant(obj, card, cfg, 1e-6, s, 100000);
    worst = std::min(worst, r.value / opt);
  }
  report(5, "aided variant audit", worst >= 0.385 - 0.02, fmt("worst value/OPT %.4f", worst));
}

void lemma_suite() {
  std::size_t total = 0;
  std::size_t violations = 0;
  std::size_t min_trials = std::numeric_limits<std::size_t>::max();
  std::string failed;
  for (const CheckReport& r : run_check_suite(200, 1)) {
    total += r.trials;
    violations += r.violations;
    min_trials = std::min(min_trials, r.trials + r.skipped);
    if (!r.passed()) failed += " " + r.name;
  }
  report(6, "lemma suite", violations == 0 && min_trials >= 200,
         "checks=" + std::to_string(total) + " violations=" + std::to_string(violations) +
             " min_trials=" + std::to_string(min_trials) + failed);
}

void measured_endpoint() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Family f = s % 2 == 0 ? Family::kNqp : Family::kCoverage;
    GeneratorSpec spec{.family = f, .n = 30, .k = 5, .m = 3};
    const Problem prob = generate(spec, s);
    const AlgorithmResult r = measured_fw_variant(*prob.objective, prob.polytope, 100);
    for (double v : r.x_final) worst = std::max(worst, v);
  }
  const double bound = 1.0 - std::exp(-1.0) + 0.01;
  report(7, "measured variant endpoint", worst <= bound,
         fmt("max coordinate %.6f", worst) + fmt(" bound %.6f", bound));
}

void discretization_budget() {
  const double theta = optimize_theta().theta_star;
  bool ok = true;
  double lo = 1e300;
  double hi = 0.0;
  for (std::size_t n = 50; n <= 51200; n *= 2) {
    const double r = error_budget(n, theta, 3.0, 2.0) / error_budget(2 * n, theta, 3.0, 2.0);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  ok = lo >= 1.8 && hi <= 2.2;
  for (double eps = 1.0; eps > 1e-7; eps /= 3.0) {
    const std::size_t n = steps_for_epsilon(eps, theta, 3.0, 2.0);
    ok = ok && error_budget(n, theta, 3.0, 2.0) <= eps &&
         (n == 1 || error_budget(n - 1, theta, 3.0, 2.0) > eps);
  }
  report(8, "discretization budget", ok, fmt("ratio range [%.4f,", lo) + fmt(" %.4f]", hi));
}

void lmo_agreement() {
  std::size_t failures = 0;
  for (const LmoSelftestCase& c : run_lmo_selftest(200, 7, 1e-8)) failures += c.passed ? 0 : 1;
  report(9, "LMO vs vertex enumeration", failures == 0,
         "200 instances, " + std::to_string(failures) + " mismatches");
}

std::map<std::string, double> means(const ExperimentResult& r) {
  std::map<std::string, double> out;
  for (const SummaryStats& s : r.summary) out[s.algorithm] = s.mean;
  return out;
}

void qualitative_replication() {
  bool ok = true;
  std::string detail;
  for (std::size_t m : {10u, 30u, 50u}) {
    ExperimentConfig cfg;
    cfg.generator = GeneratorSpec{.family = Family::kNqp, .n = 100, .m = m};
    for (const std::string& a : known_algorithms()) cfg.algorithms.push_back({a, {}});
    cfg.trials = 10;
    cfg.iterations = 100;
    cfg.master_seed = 2024;
    cfg.max_iter = 20000;
    const auto mu = means(run_experiment(cfg));
    const double fw = mu.at("frank_wolfe");
    for (const auto& [name, v] : mu) {
      if (fw < v - 0.01 * std::abs(v)) {
        ok = false;
        detail += " " + name + ">fw@m=" + std::to_string(m);
      }
    }
    detail += " m=" + std::to_string(m) + fmt(" fw=%.4f", fw) +
              fmt(" measured=%.4f", mu.at("measured_fw"));
  }

  // Coverage k = 10: per trial, FW below 0.95k is flagged as constraint-bound.
  const int k = 10;
  ExperimentConfig cov;
  cov.generator = GeneratorSpec{.family = Family::kCoverage, .k = k, .m = 2};
  cov.algorithms = {{"frank_wolfe", {}}, {"aided_fw_2", {}}};
  cov.trials = 10;
  cov.master_seed = 2024;
  const ExperimentResult res = run_experiment(cov);
  std::size_t flagged = 0;
  std::size_t checked = 0;
  double worst_rel = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < cov.trials; ++t) {
    const double fw = res.records[2 * t].value;
    const double aided = res.records[2 * t + 1].value;
    worst_rel = std::min(worst_rel, aided / fw);
    if (fw < 0.95 * k) {
      ++flagged;
      continue;
    }
    ++checked;
    ok = ok && aided > 0.309 * k;
  }
  detail += " coverage: flagged=" + std::to_string(flagged) + " checked=" +
            std::to_string(checked) + fmt(" min x(1)/fw=%.4f", worst_rel);
  report(10, "qualitative replication", ok, detail);
}

void determinism() {
  ExperimentConfig cfg;
  cfg.generator = GeneratorSpec{.family = Family::kDpp, .n = 10, .m = 3};
  for (const std::string& a : known_algorithms()) cfg.algorithms.push_back({a, {}});
  cfg.trials = 4;
  cfg.master_seed = 77;
  cfg.max_iter = 2000;
  auto csv = [](const ExperimentConfig& c) {
    const ExperimentResult r = run_experiment(c);
    std::ostringstream os;
    emit_csv(os, r.records, r.summary);
    return os.str();
  };
  const std::string a = csv(cfg);
  const std::string b = csv(cfg);
  cfg.threads = 4;
  const std::string c = csv(cfg);
  report(11, "determinism", a == b && a == c,
         std::to_string(a.size()) + " bytes, repeat and threaded runs identical");
}

}  // namespace
}  // namespace drsub

int main() {
  using namespace drsub;
  const auto start = std::chrono::steady_clock::now();
  closed_form_fidelity();
  analytic_ratios();
  theta_constants();
  reduced_domain();
  aided_audit();
  lemma_suite();
  measured_endpoint();
  discretization_budget();
  lmo_agreement();
  qualitative_replication();
  determinism();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d failure(s), %.1f s\n", g_failures, secs);
  return g_failures == 0 ? 0 : 1;
}
