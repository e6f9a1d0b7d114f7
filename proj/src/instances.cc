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

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "drsub/densela.h"

namespace drsub {
namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double sample_edge_weight(std::mt19937_64& rng) {
  return kEdgeWeights[std::uniform_int_distribution<int>(0, 2)(rng)];
}

std::uint64_t pair_key(std::size_t u, std::size_t v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

}  // namespace

double DppProblem::nonnegative_offset() const {
  double lowest = 0.0;
  for (double u : exponents) lowest = std::min(lowest, u);
  return -lowest * static_cast<double>(exponents.size());
}

DownClosedPolytope random_polytope(std::size_t n, std::size_t m, double b_max,
                                   std::mt19937_64& rng) {
  if (m == 0) return DownClosedPolytope(n);
  std::vector<double> a(m * n);
  for (double& v : a) v = uniform(rng, 0.0, 1.0);
  Point b(m);
  for (double& v : b) v = uniform(rng, 0.0, b_max);
  return DownClosedPolytope(n, std::move(a), std::move(b));
}

NqpProblem gen_nqp(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0 || m == 0) throw std::invalid_argument("gen_nqp: n and m must be >= 1");
  std::mt19937_64 rng(seed);
  DenseMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h(i, j) = uniform(rng, -1.0, 0.0);
  }
  Point lin(n);
  for (double& v : lin) v = uniform(rng, 0.0, 1.0);
  DownClosedPolytope p = random_polytope(n, m, 0.05 * static_cast<double>(n), rng);
  return {make_nqp(std::move(h), std::move(lin)), std::move(p)};
}

CoverageProblem gen_coverage(int k, std::size_t m, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("gen_coverage: k must be >= 1");
  CoverageInstance inst{k};
  std::mt19937_64 rng(seed);
  const std::size_t n = inst.dim();
  return {inst, random_polytope(n, m, 0.05 * static_cast<double>(n), rng)};
}

DppProblem gen_dpp(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0 || m == 0) throw std::invalid_argument("gen_dpp: n and m must be >= 1");
  std::mt19937_64 rng(seed);
  Point u(n);
  for (double& v : u) v = uniform(rng, -0.5, 1.0);
  const DenseMatrix q = random_orthogonal(n, rng());
  DenseMatrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < n; ++c) s += q(i, c) * std::exp(u[c]) * q(j, c);
      l(i, j) = s;
      l(j, i) = s;
    }
  }
  DownClosedPolytope p = random_polytope(n, m, 0.05 * static_cast<double>(n), rng);
  return {SoftmaxDppInstance{std::move(l)}, std::move(u), std::move(p)};
}

SetFunctionTable gen_coverage_table(std::size_t n, std::uint64_t seed) {
  constexpr std::size_t kUniverse = 12;
  std::mt19937_64 rng(seed);
  auto system = [&] {
    std::vector<std::uint32_t> covers(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t u = 0; u < kUniverse; ++u) {
        if (uniform(rng, 0.0, 1.0) < 0.3) covers[i] |= 1u << u;
      }
    }
    Point w(kUniverse);
    for (double& v : w) v = uniform(rng, 0.0, 1.0);
    return std::make_pair(covers, w);
  };
  const auto [c1, w1] = system();
  const auto [c2, w2] = system();
  auto covered = [&](const std::vector<std::uint32_t>& covers, const Point& w,
                     std::uint64_t mask) {
    std::uint32_t hit = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1) hit |= covers[i];
    }
    double s = 0.0;
    for (std::size_t u = 0; u < kUniverse; ++u) {
      if ((hit >> u) & 1) s += w[u];
    }
    return s;
  };
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  return make_table(n, [&](std::uint64_t mask) {
    return covered(c1, w1, mask) + covered(c2, w2, full & ~mask);
  });
}

double table_max_with_budget(const SetFunctionTable& table, std::size_t budget) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < table.values.size(); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) <= budget) {
      best = std::max(best, table.values[mask]);
    }
  }
  return best;
}

Graph gen_synthetic_graph(std::size_t n, std::size_t edge_count,
                          std::uint64_t seed) {
  const std::size_t total = n < 2 ? 0 : n * (n - 1) / 2;
  if (edge_count > total) {
    throw CapacityError("gen_synthetic_graph: " + std::to_string(edge_count) +
                        " edges exceed n(n-1)/2 = " + std::to_string(total));
  }
  std::mt19937_64 rng(seed);
  Graph g;
  g.n = n;
  g.edges.reserve(edge_count);
  if (2 * edge_count > total) {
    // Dense request: shuffle the full pair list instead of rejecting.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(total);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    }
    std::shuffle(pairs.begin(), pairs.end(), rng);
    for (std::size_t e = 0; e < edge_count; ++e) {
      g.edges.emplace_back(pairs[e].first, pairs[e].second, sample_edge_weight(rng));
    }
    return g;
  }
  std::unordered_set<std::uint64_t> seen;
  std::uniform_int_distribution<std::size_t> node(0, n - 1);
  while (g.edges.size() < edge_count) {
    const std::size_t u = node(rng);
    const std::size_t v = node(rng);
    if (u == v || !seen.insert(pair_key(u, v)).second) continue;
    g.edges.emplace_back(std::min(u, v), std::max(u, v), sample_edge_weight(rng));
  }
  return g;
}

Graph parse_edge_list(std::istream& is, std::uint64_t seed,
                      const std::string& source) {
  std::mt19937_64 rng(seed);
  std::unordered_map<std::uint64_t, std::size_t> relabel;
  std::unordered_set<std::uint64_t> seen;
  Graph g;
  auto id = [&](std::uint64_t raw) {
    auto [it, inserted] = relabel.emplace(raw, relabel.size());
    return it->second;
  };
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long a = -1;
    long long b = -1;
    if (!(ls >> a >> b) || a < 0 || b < 0) {
      throw ParseError(source + ":" + std::to_string(lineno) +
                       ": expected two nonnegative node ids");
    }
    if (a == b) continue;
    const std::size_t u = id(static_cast<std::uint64_t>(a));
    const std::size_t v = id(static_cast<std::uint64_t>(b));
    if (!seen.insert(pair_key(u, v)).second) continue;
    g.edges.emplace_back(u, v, sample_edge_weight(rng));
  }
  if (g.edges.empty()) throw ParseError(source + ": no edges");
  g.n = relabel.size();
  return g;
}

Graph load_edge_list(const std::string& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  return parse_edge_list(in, seed, path);
}

RevenueInstance revenue_objective(const Graph& g, double alpha, double beta,
                                  double gamma) {
  RevenueInstance inst;
  inst.n = g.n;
  inst.adjacency.resize(g.n);
  inst.self_weight.assign(g.n, g.self_weight);
  inst.alpha = alpha;
  inst.beta = beta;
  inst.gamma = gamma;
  for (const auto& [u, v, w] : g.edges) {
    if (u >= g.n || v >= g.n) throw DimensionError("revenue: edge endpoint out of range");
    if (!(w >= 0.0)) throw std::invalid_argument("revenue: negative edge weight");
    inst.adjacency[u].emplace_back(v, w);
    inst.adjacency[v].emplace_back(u, w);
  }
  return inst;
}

Family parse_family(const std::string& name) {
  if (name == "nqp") return Family::kNqp;
  if (name == "coverage") return Family::kCoverage;
  if (name == "dpp") return Family::kDpp;
  if (name == "revenue-synthetic") return Family::kRevenueSynthetic;
  if (name == "revenue-file") return Family::kRevenueFile;
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::kNqp: return "nqp";
    case Family::kCoverage: return "coverage";
    case Family::kDpp: return "dpp";
    case Family::kRevenueSynthetic: return "revenue-synthetic";
    case Family::kRevenueFile: return "revenue-file";
  }
  return "unknown";
}

void GeneratorSpec::validate() const {
  switch (family) {
    case Family::kNqp:
    case Family::kDpp:
      if (n == 0 || m == 0) throw std::invalid_argument(family_name(family) + ": n and m must be >= 1");
      break;
    case Family::kCoverage:
      if (k < 1) throw std::invalid_argument("coverage: k must be >= 1");
      break;
    case Family::kRevenueSynthetic:
      if (n == 0) throw std::invalid_argument("revenue-synthetic: n must be >= 1");
      [[fallthrough]];
    case Family::kRevenueFile:
      if (family == Family::kRevenueFile && path.empty()) {
        throw std::invalid_argument("revenue-file: path is required");
      }
      if (budget <= 0.0 && (m == 0 || b_fraction <= 0.0)) {
        throw std::invalid_argument("revenue: need budget > 0 or m >= 1 rows");
      }
      break;
  }
}

Problem generate(const GeneratorSpec& spec, std::uint64_t seed) {
  spec.validate();
  switch (spec.family) {
    case Family::kNqp: {
      NqpProblem p = gen_nqp(spec.n, spec.m, seed);
      return {std::make_unique<NqpObjective>(std::move(p.instance)), std::move(p.polytope)};
    }
    case Family::kCoverage: {
      CoverageProblem p = gen_coverage(spec.k, spec.m, seed);
      return {std::make_unique<CoverageObjective>(p.instance), std::move(p.polytope)};
    }
    case Family::kDpp: {
      DppProblem p = gen_dpp(spec.n, spec.m, seed);
      return {std::make_unique<DppObjective>(std::move(p.instance)), std::move(p.polytope)};
    }
    case Family::kRevenueSynthetic:
    case Family::kRevenueFile: {
      std::mt19937_64 rng(seed);
      const Graph g = spec.family == Family::kRevenueFile
                          ? load_edge_list(spec.path, rng())
                          : gen_synthetic_graph(spec.n, spec.edges, rng());
      auto obj = std::make_unique<RevenueObjective>(
          revenue_objective(g, spec.alpha, spec.beta, spec.gamma));
      if (spec.budget > 0.0) {
        DownClosedPolytope p(g.n, std::vector<double>(g.n, 1.0), Point{spec.budget});
        return {std::move(obj), std::move(p)};
      }
      std::vector<double> a(spec.m * g.n);
      for (double& v : a) v = uniform(rng, 0.0, 1.0);
      Point b(spec.m, spec.b_fraction * static_cast<double>(g.n));
      return {std::move(obj), DownClosedPolytope(g.n, std::move(a), std::move(b))};
    }
  }
  throw std::invalid_argument("generate: unknown family");
}

}  // namespace drsub
