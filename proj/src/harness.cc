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

#include "drsub/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "drsub/algorithms.h"

namespace drsub {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& where) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size() && std::isfinite(d)) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError(where + ": expected a number, got '" + v + "'");
}

std::uint64_t to_uint(const std::string& v, const std::string& where) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] != '-') {
      const unsigned long long u = std::stoull(v, &used);
      if (used == v.size()) return u;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError(where + ": expected a nonnegative integer, got '" + v + "'");
}

bool to_bool(const std::string& v, const std::string& where) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(where + ": expected on/off, got '" + v + "'");
}

const std::set<std::string>& section_keys() {
  static const std::set<std::string> keys = {"epsilon", "max_iter", "steps", "m_cap",
                                             "theta", "selection", "probability"};
  return keys;
}

void apply_top_level(ExperimentConfig& cfg, const std::string& key,
                     const std::string& value, const std::string& where) {
  GeneratorSpec& g = cfg.generator;
  if (key == "family") {
    try {
      g.family = parse_family(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  } else if (key == "n") {
    g.n = to_uint(value, where);
  } else if (key == "k") {
    g.k = static_cast<int>(to_uint(value, where));
  } else if (key == "m") {
    g.m = to_uint(value, where);
  } else if (key == "budget") {
    g.budget = to_double(value, where);
  } else if (key == "b_fraction") {
    g.b_fraction = to_double(value, where);
  } else if (key == "edges") {
    g.edges = to_uint(value, where);
  } else if (key == "path") {
    g.path = value;
  } else if (key == "alpha") {
    g.alpha = to_double(value, where);
  } else if (key == "beta") {
    g.beta = to_double(value, where);
  } else if (key == "gamma") {
    g.gamma = to_double(value, where);
  } else if (key == "trials") {
    cfg.trials = to_uint(value, where);
  } else if (key == "iterations") {
    cfg.iterations = to_uint(value, where);
  } else if (key == "seed") {
    cfg.master_seed = to_uint(value, where);
  } else if (key == "output") {
    cfg.output_path = value;
  } else if (key == "epsilon") {
    cfg.epsilon = to_double(value, where);
  } else if (key == "max_iter") {
    cfg.max_iter = to_uint(value, where);
  } else if (key == "threads") {
    cfg.threads = to_uint(value, where);
  } else if (key == "timing") {
    cfg.timing = to_bool(value, where);
  } else {
    throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

// Per-row parameters with the experiment-wide fallbacks.
struct RowParams {
  double epsilon;
  std::size_t max_iter;
  std::size_t steps;
  double m_cap;
  AidedFwConfig aided;

  std::string key() const {
    std::ostringstream os;
    os.precision(17);
    os << epsilon << '|' << max_iter << '|' << steps << '|' << m_cap << '|'
       << aided.theta << '|' << static_cast<int>(aided.selection) << '|'
       << aided.selection_probability;
    return os.str();
  }
};

RowParams row_params(const ExperimentConfig& cfg, const AlgorithmSpec& spec) {
  RowParams p{cfg.epsilon, cfg.max_iter, cfg.iterations, reduced_domain_cap(), {}};
  p.aided.total_steps = cfg.iterations;
  const std::string where = "[" + spec.name + "]";
  for (const auto& [k, v] : spec.params) {
    if (k == "epsilon") {
      p.epsilon = to_double(v, where);
    } else if (k == "max_iter") {
      p.max_iter = to_uint(v, where);
    } else if (k == "steps") {
      p.steps = to_uint(v, where);
      p.aided.total_steps = p.steps;
    } else if (k == "m_cap") {
      p.m_cap = to_double(v, where);
    } else if (k == "theta") {
      p.aided.theta = to_double(v, where);
    } else if (k == "probability") {
      p.aided.selection_probability = to_double(v, where);
    } else if (k == "selection") {
      if (v == "best_of") {
        p.aided.selection = Selection::kBestOf;
      } else if (v == "randomized") {
        p.aided.selection = Selection::kRandomized;
      } else {
        throw ConfigError(where + ": selection must be best_of or randomized");
      }
    }
  }
  return p;
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::vector<TrialRecord> run_trial(const ExperimentConfig& cfg, std::size_t t) {
  const std::uint64_t seed = trial_seed(cfg.master_seed, t);
  std::vector<TrialRecord> out;
  auto fail_all = [&](const std::string& why) {
    for (const AlgorithmSpec& a : cfg.algorithms) {
      out.push_back({t, a.name, std::nan(""), std::nan(""), 0.0, seed, false, why});
    }
  };

  std::optional<Problem> prob;
  try {
    prob.emplace(generate(cfg.generator, seed));
  } catch (const std::exception& e) {
    fail_all(e.what());
    return out;
  }
  const Objective& obj = *prob->objective;
  const DownClosedPolytope& poly = prob->polytope;

  // Shared within the trial so that every two-phase and aided row builds on
  // the same stationary point, as do the "_2" rows on their parent runs.
  std::map<std::string, AlgorithmResult> stationary;
  std::map<std::string, AlgorithmResult> two_phase;
  std::map<std::string, AlgorithmResult> aided;
  auto get_stationary = [&](const RowParams& p) -> const AlgorithmResult& {
    std::ostringstream os;
    os.precision(17);
    os << p.epsilon << '|' << p.max_iter;
    const std::string key = os.str();
    auto it = stationary.find(key);
    if (it == stationary.end()) {
      it = stationary
               .emplace(key, frank_wolfe_stationary(obj, poly, poly.cap(), p.epsilon,
                                                    p.max_iter))
               .first;
    }
    return it->second;
  };

  for (const AlgorithmSpec& spec : cfg.algorithms) {
    TrialRecord rec{t, spec.name, 0.0, 0.0, 0.0, seed, true, {}};
    const double start = now_seconds();
    try {
      const RowParams p = row_params(cfg, spec);
      const std::string& name = spec.name;
      if (name == "frank_wolfe") {
        const AlgorithmResult& r = get_stationary(p);
        rec.value = r.value;
        rec.gap = r.stationarity_gap;
      } else if (name == "two_phase_fw" || name == "two_phase_fw_2") {
        auto it = two_phase.find(p.key());
        if (it == two_phase.end()) {
          const AlgorithmResult& x = get_stationary(p);
          it = two_phase
                   .emplace(p.key(), two_phase_frank_wolfe(obj, poly, p.epsilon,
                                                           p.max_iter, {}, &x))
                   .first;
        }
        const AlgorithmResult& r = it->second;
        if (name == "two_phase_fw") {
          rec.value = r.value;
          rec.gap = r.stationarity_gap;
        } else {
          const PhaseResult& y = r.phases.at(1);
          Point cap(poly.dim());
          const Point& x = r.phases.at(0).x;
          for (std::size_t i = 0; i < cap.size(); ++i) cap[i] = std::clamp(1.0 - x[i], 0.0, 1.0);
          rec.value = y.value;
          rec.gap = stationarity_gap(obj, poly.with_cap(cap), y.x);
        }
      } else if (name == "reduced_fw") {
        const AlgorithmResult r = reduced_frank_wolfe(obj, poly, p.m_cap, p.epsilon, p.max_iter);
        rec.value = r.value;
        rec.gap = r.stationarity_gap;
      } else if (name == "measured_fw") {
        const AlgorithmResult r = measured_fw_variant(obj, poly, p.steps);
        rec.value = r.value;
        rec.gap = r.stationarity_gap;
      } else if (name == "aided_fw" || name == "aided_fw_2") {
        auto it = aided.find(p.key());
        if (it == aided.end()) {
          const AlgorithmResult& y = get_stationary(p);
          it = aided
                   .emplace(p.key(), aided_fw_variant(obj, poly, p.aided, p.epsilon,
                                                      trial_seed(seed, 1), p.max_iter,
                                                      {}, &y))
                   .first;
        }
        const AlgorithmResult& r = it->second;
        if (name == "aided_fw") {
          rec.value = r.value;
          rec.gap = r.stationarity_gap;
        } else {
          const PhaseResult& x1 = r.phases.at(1);
          rec.value = x1.value;
          rec.gap = stationarity_gap(obj, poly, x1.x);
        }
      } else {
        throw ConfigError("unknown algorithm '" + name + "'");
      }
      if (!std::isfinite(rec.value)) throw std::runtime_error("non-finite objective value");
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
      rec.value = std::nan("");
      rec.gap = std::nan("");
    }
    rec.elapsed = cfg.timing ? now_seconds() - start : 0.0;
    out.push_back(std::move(rec));
  }
  return out;
}

std::string fmt10(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names = {
      "frank_wolfe", "two_phase_fw", "two_phase_fw_2", "reduced_fw",
      "measured_fw", "aided_fw",     "aided_fw_2"};
  return names;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (algorithms.empty()) throw ConfigError("no algorithm sections");
  try {
    generator.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto& known = known_algorithms();
  for (const AlgorithmSpec& a : algorithms) {
    if (std::find(known.begin(), known.end(), a.name) == known.end()) {
      throw ConfigError("unknown algorithm '" + a.name + "'");
    }
    try {
      row_params(*this, a).aided.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("[" + a.name + "]: " + e.what());
    }
  }
}

ExperimentConfig parse_config(std::istream& is, const std::string& source) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  AlgorithmSpec* section = nullptr;
  std::set<std::string> seen;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(where + ": unterminated section header");
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (!seen.insert(name).second) {
        throw ConfigError(where + ": duplicate section [" + name + "]");
      }
      cfg.algorithms.push_back({name, {}});
      section = &cfg.algorithms.back();
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(where + ": empty key or value");
    if (section) {
      if (!section_keys().contains(key)) {
        throw ConfigError(where + ": unknown algorithm key '" + key + "'");
      }
      section->params[key] = value;
    } else {
      apply_top_level(cfg, key, value, where);
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open config");
  ExperimentConfig cfg = parse_config(in, path);
  if (!cfg.generator.path.empty()) {
    std::filesystem::path p(cfg.generator.path);
    if (p.is_relative()) {
      cfg.generator.path = (std::filesystem::path(path).parent_path() / p).string();
    }
  }
  return cfg;
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t t) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(master ^ mix(t));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<TrialRecord>> per_trial(cfg.trials);
  const std::size_t workers = std::min(cfg.threads, cfg.trials);
  if (workers <= 1) {
    for (std::size_t t = 0; t < cfg.trials; ++t) per_trial[t] = run_trial(cfg, t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < cfg.trials; t = next++) {
          per_trial[t] = run_trial(cfg, t);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  ExperimentResult res;
  for (auto& rows : per_trial) {
    for (TrialRecord& r : rows) res.records.push_back(std::move(r));
  }
  res.summary = summarize(res.records);
  return res;
}

std::vector<SummaryStats> summarize(const std::vector<TrialRecord>& records) {
  std::vector<SummaryStats> out;
  std::vector<std::vector<double>> values;
  for (const TrialRecord& r : records) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const SummaryStats& s) { return s.algorithm == r.algorithm; });
    if (it == out.end()) {
      out.push_back({r.algorithm});
      values.emplace_back();
      it = out.end() - 1;
    }
    if (r.ok) values[it - out.begin()].push_back(r.value);
  }
  for (std::size_t a = 0; a < out.size(); ++a) {
    const std::vector<double>& v = values[a];
    out[a].count = v.size();
    if (v.empty()) {
      out[a].mean = std::nan("");
      out[a].std = std::nan("");
      continue;
    }
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    out[a].mean = mean;
    out[a].std = std::sqrt(var / static_cast<double>(v.size()));
  }
  return out;
}

void emit_csv(std::ostream& os, const std::vector<TrialRecord>& records,
              const std::vector<SummaryStats>& stats) {
  os << "trial,algorithm,value,gap,elapsed_s,seed\n";
  for (const TrialRecord& r : records) {
    os << r.trial << ',' << r.algorithm << ',' << fmt10(r.ok ? r.value : std::nan(""))
       << ',' << fmt10(r.ok ? r.gap : std::nan("")) << ',' << fmt10(r.elapsed) << ','
       << r.seed << '\n';
  }
  if (records.empty()) return;
  os << "# algorithm,mean,std\n";
  for (const SummaryStats& s : stats) {
    os << "# " << s.algorithm << ',' << fmt10(s.mean) << ',' << fmt10(s.std) << '\n';
  }
}

void emit_csv(const std::string& path, const std::vector<TrialRecord>& records,
              const std::vector<SummaryStats>& stats) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  emit_csv(out, records, stats);
  out.flush();
  if (!out) throw std::runtime_error(path + ": write failed");
}

std::vector<CheckReport> run_check_suite(std::size_t trials, std::uint64_t seed) {
  std::vector<CheckReport> reports;
  std::uint64_t counter = 0;
  auto next_seed = [&] { return trial_seed(seed, counter++); };

  // `nonneg` is the objective shifted to be nonnegative where the lemma
  // requires it; equal to `obj` for the naturally nonnegative families.
  auto run_family = [&](const std::string& family, const Objective& obj,
                        const Objective& nonneg, const DownClosedPolytope& poly,
                        const GradientCheckOptions& grad_opts) {
    const std::size_t n = obj.dim();
    const Box unit = Box::unit(n);
    auto push = [&](CheckReport r) {
      r.name = family + "/" + r.name;
      reports.push_back(std::move(r));
    };

    push(check_lemma4(nonneg, unit, trials, next_seed()));

    // Random sub-box; beyond kMaxCornerDim coordinates the rest are frozen.
    std::mt19937_64 rng(next_seed());
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Point lo(n);
    Point hi(n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t i = order[j];
      lo[i] = 0.5 * u01(rng);
      hi[i] = j < kMaxCornerDim ? lo[i] + (1.0 - lo[i]) * (0.2 + 0.8 * u01(rng)) : lo[i];
    }
    push(check_lemma5(obj, make_box(lo, hi), trials, next_seed()));

    const AlgorithmResult x = frank_wolfe_stationary(obj, poly, poly.cap(), 1e-7, 50000);
    push(check_lemma7(obj, poly, x.x_final, x.stationarity_gap, trials, next_seed()));

    AidedFwConfig cfg;
    cfg.total_steps = 50;
    AlgorithmOptions opts;
    opts.record_iterates = true;
    const AlgorithmResult aided =
        aided_fw_variant(nonneg, poly, cfg, 1e-6, next_seed(), 50000, opts, &x);
    CheckReport l14 = check_lemma14_suite(nonneg, poly, trials - trials / 2, next_seed(),
                                          &aided.iterates);
    l14.merge(check_lemma14_suite(nonneg, poly, trials / 2, next_seed()));
    push(l14);

    push(check_dr_and_gradient(obj, unit, trials, next_seed(), grad_opts));
  };

  {
    const NqpProblem p = gen_nqp(30, 5, next_seed());
    const NqpObjective obj(p.instance);
    run_family("nqp", obj, obj, p.polytope, {});
  }
  {
    const CoverageProblem p = gen_coverage(3, 2, next_seed());
    const CoverageObjective obj(p.instance);
    run_family("coverage", obj, obj, p.polytope, {});
  }
  {
    const DppProblem p = gen_dpp(8, 2, next_seed());
    const DppObjective obj(p.instance);
    const ShiftedObjective shifted(obj, p.nonnegative_offset());
    run_family("dpp", obj, shifted, p.polytope, {});
  }
  {
    const MultilinearObjective obj(gen_coverage_table(8, next_seed()));
    const DownClosedPolytope card(8, std::vector<double>(8, 1.0), Point{3.0});
    run_family("multilinear", obj, obj, card, {});
  }
  {
    // The revenue model is DR-submodular only on a fixed zero set.
    const Graph g = gen_synthetic_graph(40, 120, next_seed());
    const RevenueObjective obj(revenue_objective(g));
    GradientCheckOptions opts;
    opts.pinned_fraction = 0.3;
    opts.active_floor = 0.05;
    CheckReport r = check_dr_and_gradient(obj, Box::unit(obj.dim()), trials, next_seed(), opts);
    r.name = "revenue/" + r.name;
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace drsub
