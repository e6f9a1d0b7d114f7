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

// DR-submodular objective families: non-monotone quadratics, the regular
// coverage multilinear extension, brute-force multilinear extensions of set
// function tables, the softmax extension of a DPP, and the social-network
// revenue model.

#ifndef DRSUB_OBJECTIVES_H_
#define DRSUB_OBJECTIVES_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "drsub/densela.h"
#include "drsub/lattice.h"

namespace drsub {

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct ValueGrad {
  double value = 0.0;
  Point gradient;
};

// Evaluation contract shared by every objective. Implementations are
// immutable and safe to evaluate concurrently.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dim() const = 0;
  virtual std::string name() const = 0;
  virtual double value(std::span<const double> x) const = 0;
  virtual Point gradient(std::span<const double> x) const = 0;
  virtual ValueGrad evaluate(std::span<const double> x) const {
    return {value(x), gradient(x)};
  }
  // Gradient Lipschitz constant, when known.
  virtual std::optional<double> smoothness() const { return std::nullopt; }

 protected:
  void check_dim(std::span<const double> x) const;
};

// Adapts a pair of callables; used for ad hoc objectives in tests and tools.
class FunctionObjective final : public Objective {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using GradFn = std::function<Point(std::span<const double>)>;

  FunctionObjective(std::size_t n, ValueFn f, GradFn g,
                    std::optional<double> smoothness = std::nullopt,
                    std::string name = "function");

  std::size_t dim() const override { return n_; }
  std::string name() const override { return name_; }
  double value(std::span<const double> x) const override;
  Point gradient(std::span<const double> x) const override;
  std::optional<double> smoothness() const override { return smoothness_; }

 private:
  std::size_t n_;
  ValueFn f_;
  GradFn g_;
  std::optional<double> smoothness_;
  std::string name_;
};

// Constant shift of another objective. Gradients are unchanged.
class ShiftedObjective final : public Objective {
 public:
  ShiftedObjective(const Objective& base, double offset)
      : base_(base), offset_(offset) {}

  std::size_t dim() const override { return base_.dim(); }
  std::string name() const override { return base_.name() + "+shift"; }
  double value(std::span<const double> x) const override {
    return base_.value(x) + offset_;
  }
  Point gradient(std::span<const double> x) const override {
    return base_.gradient(x);
  }
  ValueGrad evaluate(std::span<const double> x) const override {
    ValueGrad vg = base_.evaluate(x);
    vg.value += offset_;
    return vg;
  }
  std::optional<double> smoothness() const override {
    return base_.smoothness();
  }

 private:
  const Objective& base_;
  double offset_;
};

// ---------------------------------------------------------------------------
// Non-monotone quadratic: F(x) = 1/2 x^T H x + h^T x + c with H <= 0.

struct NqpInstance {
  DenseMatrix hessian;  // symmetric, entries <= 0
  Point linear;         // h >= 0
  double offset = 0.0;  // c
};

// Symmetrizes H and sets c = 1/2 sum |H_ij|.
NqpInstance make_nqp(DenseMatrix hessian, Point linear);

class NqpObjective final : public Objective {
 public:
  explicit NqpObjective(NqpInstance inst);

  std::size_t dim() const override { return inst_.linear.size(); }
  std::string name() const override { return "nqp"; }
  double value(std::span<const double> x) const override;
  Point gradient(std::span<const double> x) const override;
  ValueGrad evaluate(std::span<const double> x) const override;
  std::optional<double> smoothness() const override { return lipschitz_; }

  const NqpInstance& instance() const { return inst_; }

 private:
  NqpInstance inst_;
  double lipschitz_;
};

ValueGrad nqp_eval_grad(const NqpInstance& inst, std::span<const double> x);

// ---------------------------------------------------------------------------
// Regular coverage |U_{i in X} S_i| - |X| on the (2k+1)-element system with
// S_i = {i, 2k+1} (i <= k), S_i = {i} (k < i <= 2k), S_{2k+1} = {1..k, 2k+1}.

struct CoverageInstance {
  int k = 1;
  std::size_t dim() const { return static_cast<std::size_t>(2 * k + 1); }
};

ValueGrad coverage_me_eval_grad(const CoverageInstance& inst,
                                std::span<const double> x);

// Set function value for a subset given as a bitmask (bit i = element i+1).
double regular_coverage_setfn(int k, std::uint64_t subset);

class CoverageObjective final : public Objective {
 public:
  explicit CoverageObjective(CoverageInstance inst,
                             std::optional<double> smoothness = std::nullopt);

  std::size_t dim() const override { return inst_.dim(); }
  std::string name() const override { return "coverage"; }
  double value(std::span<const double> x) const override;
  Point gradient(std::span<const double> x) const override;
  ValueGrad evaluate(std::span<const double> x) const override;
  std::optional<double> smoothness() const override { return smoothness_; }

  const CoverageInstance& instance() const { return inst_; }

 private:
  CoverageInstance inst_;
  std::optional<double> smoothness_;
};

// ---------------------------------------------------------------------------
// Multilinear extension by exhaustive summation over 2^n subsets.

inline constexpr std::size_t kMaxTableDim = 20;

struct SetFunctionTable {
  std::size_t n = 0;
  std::vector<double> values;  // indexed by subset bitmask
};

// Throws CapacityError when n > kMaxTableDim.
SetFunctionTable make_table(std::size_t n,
                            const std::function<double(std::uint64_t)>& f);

ValueGrad me_bruteforce_eval_grad(const SetFunctionTable& table,
                                  std::span<const double> x);

// Text format: first line n, then 2^n lines "bitmask value".
void write_table(std::ostream& os, const SetFunctionTable& table);
SetFunctionTable read_table(std::istream& is);

class MultilinearObjective final : public Objective {
 public:
  explicit MultilinearObjective(SetFunctionTable table,
                                std::optional<double> smoothness = std::nullopt);

  std::size_t dim() const override { return table_.n; }
  std::string name() const override { return "multilinear"; }
  double value(std::span<const double> x) const override;
  Point gradient(std::span<const double> x) const override;
  ValueGrad evaluate(std::span<const double> x) const override;
  std::optional<double> smoothness() const override { return smoothness_; }

  const SetFunctionTable& table() const { return table_; }

 private:
  SetFunctionTable table_;
  std::optional<double> smoothness_;
};

// ---------------------------------------------------------------------------
// Softmax extension of a DPP: F(x) = log det(diag(x)(L - I) + I).

struct SoftmaxDppInstance {
  DenseMatrix kernel;  // L, symmetric positive semidefinite
};

// Gradient is diag((L - I) M^{-1}) with M = diag(x)(L - I) + I.
ValueGrad dpp_eval_grad(const SoftmaxDppInstance& inst,
                        std::span<const double> x);

class DppObjective final : public Objective {
 public:
  explicit DppObjective(SoftmaxDppInstance inst,
                        std::optional<double> smoothness = std::nullopt);

  std::size_t dim() const override { return inst_.kernel.rows(); }
  std::string name() const override { return "dpp"; }
  double value(std::span<const double> x) const override;
  Point gradient(std::span<const double> x) const override;
  ValueGrad evaluate(std::span<const double> x) const override;
  std::optional<double> smoothness() const override { return smoothness_; }

  const SoftmaxDppInstance& instance() const { return inst_; }

 private:
  SoftmaxDppInstance inst_;
  std::optional<double> smoothness_;
};

// ---------------------------------------------------------------------------
// Revenue maximization on a weighted network:
//   F(x) = alpha sum_{s: x_s = 0} sqrt(sum_{t: x_t != 0} x_t w_st)
//        + beta sum_{t: x_t != 0} w_tt x_t - gamma sum_{t: x_t != 0} x_t.

inline constexpr double kRevenueZeroThreshold = 1e-9;
// Floor on the inner sum when differentiating sqrt at a node with no active
// neighbours; keeps the frozen-set gradient finite at the origin.
inline constexpr double kRevenueSqrtFloor = 1e-6;

struct RevenueInstance {
  std::size_t n = 0;
  // Symmetric adjacency in compressed rows: neighbours of s with w_st.
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency;
  Point self_weight;  // w_tt
  double alpha = 10.0;
  double beta = 10.0;
  double gamma = 0.5;
};

// Coordinates with x_s <= kRevenueZeroThreshold form the "zero" index set.
// The gradient holds that set fixed at x.
ValueGrad revenue_eval_grad(const RevenueInstance& inst,
                            std::span<const double> x);

class RevenueObjective final : public Objective {
 public:
  explicit RevenueObjective(RevenueInstance inst);

  std::size_t dim() const override { return inst_.n; }
  std::string name() const override { return "revenue"; }
  double value(std::span<const double> x) const override;
  Point gradient(std::span<const double> x) const override;
  ValueGrad evaluate(std::span<const double> x) const override;

  const RevenueInstance& instance() const { return inst_; }

 private:
  RevenueInstance inst_;
};

// ---------------------------------------------------------------------------

// Max over sampled pairs in `box` of |grad F(x) - grad F(y)| / |x - y| times
// 1.5. Quadratics return the exact spectral norm of H instead.
double estimate_smoothness(const Objective& obj, const Box& box,
                           std::size_t samples, std::uint64_t seed);

inline constexpr double kSmoothnessSafetyFactor = 1.5;

}  // namespace drsub

#endif  // DRSUB_OBJECTIVES_H_
