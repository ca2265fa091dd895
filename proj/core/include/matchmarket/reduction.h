// Copyright 2026 The matchmarket Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MATCHMARKET_REDUCTION_H_
#define MATCHMARKET_REDUCTION_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "matchmarket/auditors.h"
#include "matchmarket/io.h"
#include "matchmarket/market.h"
#include "matchmarket/matrix.h"
#include "matchmarket/rational.h"

namespace matchmarket {

// Where an agent or good of the modified instance comes from.
struct IndexTag {
  enum class Kind { kCopy, kAwesome, kInterpolating, kDummy };
  Kind kind = Kind::kCopy;
  int original = -1;  // kCopy: index in the base instance
  int pair_first = -1;   // kInterpolating: the pair {first, second}, first <
  int pair_second = -1;  // second, interpolated from first toward second
  int step = -1;         // kInterpolating: 0-based position along the path

  friend bool operator==(const IndexTag&, const IndexTag&) = default;
};
std::string ToString(IndexTag::Kind kind);

// The blown-up instance I' built from a one-sided base instance I:
//   goods:  k copies of every base good (good-major), then k/n awesome goods
//   agents: k copies of every base agent (agent-major), then the
//           interpolating agents of every pair i < i', then dummies.
// Copies and interpolating agents value awesome goods at 2; dummies value
// every good at 1.
struct ModifiedInstance {
  Instance base;
  Rational eps;
  std::int64_t k = 1;
  Instance modified;
  std::vector<IndexTag> agent_tags;
  std::vector<IndexTag> good_tags;
  // True for the k = 1 stand-ins used to exercise the pipeline on
  // arbitrary instances; the size-dependent bounds do not apply to them.
  bool surrogate = false;

  std::size_t n() const { return base.size(); }
  std::size_t n_prime() const { return modified.size(); }
  bool IsDummy(std::size_t agent) const {
    return agent_tags[agent].kind == IndexTag::Kind::kDummy;
  }
};

// Requires a one-sided base with utilities in [0, 1], eps in (0, 1],
// n | k and k >= n^3 / eps, and at most k/n interpolating agents in total.
// Interpolation between i and i' walks the good types in index order,
// moving the coordinate toward u_i' in steps of eps (the last step of a
// coordinate may be shorter); both endpoints are excluded. Throws
// PreconditionError otherwise.
ModifiedInstance BuildModified(const Instance& base, const Rational& eps,
                               std::int64_t k);

// k = 1 stand-in: I' = I with every index tagged as a copy of itself.
ModifiedInstance MakeSurrogate(const Instance& instance);

// Pareto weights, prices, per-agent dual values and budgets certifying that
// an allocation on I' is a competitive equilibrium.
struct PriceSystem {
  std::vector<Rational> alpha;
  std::vector<Rational> p;  // per good
  std::vector<Rational> q;  // per agent
  std::vector<Rational> b;  // b_i = alpha_i u_i.x_i - q_i
  // All four vectors above have been divided by this (the largest budget of
  // a non-dummy agent before normalization).
  Rational scale;
};

// Recovers alpha from the Pareto program, takes the price-maximal optimal
// dual (p, q) of max sum_i alpha_i u_i.y_i over P_PM, sets the budgets and
// normalizes. Then checks, for every agent, that x_i costs exactly b_i and
// is optimal among bundles of at most one unit with cost <= b_i.
//
// Throws NotParetoOptimal if x is not Pareto-optimal, PreconditionError if
// `require_envy_free` and x has envy, and PreconditionError if any
// certificate check fails or no non-dummy budget is positive.
PriceSystem ExtractPricesBudgets(const ModifiedInstance& minst,
                                 const RationalMatrix& x,
                                 bool require_envy_free = true);

struct Contraction {
  RationalMatrix x;           // n x n
  std::vector<Rational> p;    // n
  bool copy_prices_differ = false;  // p is then the mean over the copies
};

// x-hat_ij = (1/k) * sum of x over copies of i times copies of j (the
// average over the copies of i of the mass they receive from copies of j).
// Awesome goods and interpolating/dummy agents are dropped.
Contraction Contract(const ModifiedInstance& minst, const RationalMatrix& x,
                     const std::vector<Rational>& prices);

struct BudgetSpread {
  Rational max_budget;  // over non-dummy agents
  Rational min_budget;
  Rational spread;
  Rational spread_bound;  // 5 eps n^4
  Rational max_alpha;     // over non-dummy agents
  Rational alpha_bound;   // 5 n^2
  bool bounds_apply = true;  // false on surrogates
  bool spread_ok = true;
  bool alpha_ok = true;
};

BudgetSpread BudgetSpreadDiagnostic(const PriceSystem& prices,
                                    const ModifiedInstance& minst);

struct ReductionRun {
  PriceSystem prices;
  BudgetSpread spread;
  Contraction contraction;
  Rational tolerance;  // 3/n
  HzVerdict verdict;
};

// Extract, contract and verify (x-hat, p-hat) as a 3/n-approximate HZ
// equilibrium of the base instance.
ReductionRun RunReduction(const ModifiedInstance& minst,
                          const RationalMatrix& x);

// Provenance sidecar: base instance, eps, k, surrogate flag and every tag.
Json ProvenanceToJson(const ModifiedInstance& minst);
// Rebuilds the modified instance from a provenance document and checks the
// tags against the rebuilt ones. Throws ParseError on mismatch.
ModifiedInstance ModifiedFromProvenance(const Json& provenance);

}  // namespace matchmarket

#endif  // MATCHMARKET_REDUCTION_H_
