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

#ifndef MATCHMARKET_AUDITORS_H_
#define MATCHMARKET_AUDITORS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matchmarket/market.h"
#include "matchmarket/matrix.h"
#include "matchmarket/rational.h"

namespace matchmarket {

// A non-negative ratio that may be +infinity. 0/0 is 1 and positive/0 is
// +infinity.
struct Ratio {
  bool infinite = false;
  Rational value;

  static Ratio Of(const Rational& numerator, const Rational& denominator);
  double ToDouble() const;
  std::string ToString() const;  // "p/q" or "inf"

  friend bool operator==(const Ratio&, const Ratio&) = default;
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);
};

// ---------------------------------------------------------------------------
// Envy.

struct EnvyPair {
  std::size_t agent = 0;
  std::size_t other = 0;
  Rational own;    // agent's utility for their own bundle
  Rational cross;  // agent's utility for other's bundle
  Ratio ratio;     // cross / own
};

struct SideEnvy {
  std::vector<EnvyPair> pairs;  // every ordered pair, agent-major
  Ratio max_ratio{false, Rational(0)};
  std::size_t max_agent = 0;
  std::size_t max_other = 0;
  bool envy_free() const { return max_ratio <= Ratio{false, Rational(1)}; }
};

struct EnvyReport {
  SideEnvy side_a;
  std::optional<SideEnvy> side_b;  // B-agents, on two-sided instances
  Ratio max_ratio{false, Rational(0)};
  bool envy_free = true;
};

// On two-sided instances B-agent j's bundle is column j, valued by w_j.
EnvyReport ComputeEnvyReport(const Instance& instance, const RationalMatrix& x);

// ---------------------------------------------------------------------------
// Pareto optimality.

enum class ParetoVerdict { kParetoOptimal, kDominated };
std::string ToString(ParetoVerdict verdict);

struct ParetoCertificate {
  ParetoVerdict verdict = ParetoVerdict::kParetoOptimal;
  Rational welfare;       // total utility of x (both sides)
  Rational best_welfare;  // optimum of the improvement program
  // When dominated: an optimal vertex y of the improvement program and the
  // agents it strictly improves (B-agent indices in improved_b).
  std::optional<RationalMatrix> improvement;
  std::vector<std::size_t> improved_a;
  std::vector<std::size_t> improved_b;

  bool pareto_optimal() const {
    return verdict == ParetoVerdict::kParetoOptimal;
  }
};

// Maximizes total utility over allocations y that give every agent at
// least their utility under x. Dominated iff the optimum exceeds the
// welfare of x.
ParetoCertificate CheckPareto(const Instance& instance,
                              const RationalMatrix& x);

struct WeakParetoResult {
  bool weakly_pareto_optimal = true;
  Rational t;  // largest uniform improvement available to every agent
  std::optional<RationalMatrix> improvement;
};

// max t s.t. every agent's utility under y is at least theirs under x plus
// t, t >= 0. Weakly Pareto-optimal iff the optimum is 0.
WeakParetoResult CheckWeakPareto(const Instance& instance,
                                 const RationalMatrix& x);

enum class ParetoMode { kStrict, kWeak };

struct ParetoWeights {
  std::vector<Rational> alpha;  // A-side weights
  std::vector<Rational> beta;   // B-side weights (two-sided only)
  Rational phi_at_x;            // weighted welfare of x
  Rational phi_max;             // max of the weighted welfare over P_PM
};

// Welfare weights for which x maximizes
//   phi(y) = sum_i alpha_i u_i.y_i + sum_j beta_j w_j.y_j
// over all allocations, read off the duals of the (weak) Pareto program:
// strict mode returns alpha_i = 1 - a_i > 0 from the duals a_i <= 0 of the
// utility rows; weak mode returns the non-negative duals of the rows of the
// max-t program (sum >= 1). The result is re-verified by solving the
// weighted-welfare LP; NotParetoOptimal is thrown if x is not (weakly)
// Pareto-optimal or verification fails.
ParetoWeights RecoverParetoWeights(const Instance& instance,
                                   const RationalMatrix& x, ParetoMode mode);

// Weighted welfare of x.
Rational WeightedWelfare(const Instance& instance, const RationalMatrix& x,
                         const std::vector<Rational>& alpha,
                         const std::vector<Rational>& beta);

// ---------------------------------------------------------------------------
// Justified envy (two-sided).

struct JustifiedEnvyPair {
  std::size_t agent = 0;
  std::size_t other = 0;
  Rational own;
  // Utility of agent for the part of other's bundle held by partners who
  // weakly prefer agent to other.
  Rational justified;
  Rational cross;       // full utility of agent for other's bundle
  Rational slack;       // own - justified; negative means justified envy
  bool universally_preferred = false;  // every partner weakly prefers agent
  bool justified_envy() const { return slack.sign() < 0; }
  bool strong() const { return universally_preferred && own < cross; }
};

struct SideJef {
  std::vector<JustifiedEnvyPair> pairs;  // every ordered pair, agent-major
  bool jef() const;
  bool weak_jef() const;
};

struct JefReport {
  SideJef side_a;
  SideJef side_b;
  bool jef = true;
  bool weak_jef = true;
};

// B-side pairs mirror the A-side formula with the roles of u and w
// swapped. Throws PreconditionError on one-sided instances.
JefReport ComputeJefReport(const Instance& instance, const RationalMatrix& x);

// ---------------------------------------------------------------------------
// Budget-constrained demand and HZ verification.

enum class UnitConstraint {
  kExact,   // sum_j y_j = 1
  kAtMost,  // sum_j y_j <= 1
};

struct BestBundle {
  bool feasible = false;  // kExact is infeasible when every price > budget
  Rational value;
  std::vector<Rational> bundle;
};

// max u.y s.t. p.y <= budget, the unit constraint, y >= 0.
BestBundle ComputeBestBundle(std::span<const Rational> utilities,
                             std::span<const Rational> prices,
                             const Rational& budget, UnitConstraint unit);

enum class HzClause {
  kAgentMass,  // sum_j x_ij in [1 - eps, 1]
  kGoodMass,   // sum_i x_ij in [1 - eps, 1]
  kBudget,     // p.x_i <= 1
  kUtility,    // u_i.x_i >= best exact-unit bundle - eps
  kCheapness,  // x_i is a cheapest bundle with its utility (exact only)
};
std::string ToString(HzClause clause);

struct HzClauseResult {
  HzClause clause;
  bool satisfied = true;
  // Smallest slack over the agents or goods the clause ranges over
  // (negative means violated) and where it was attained.
  Rational worst_slack;
  std::size_t worst_index = 0;
};

struct HzVerdict {
  Rational eps;
  std::vector<Rational> agent_mass;
  std::vector<Rational> good_mass;
  std::vector<Rational> spending;
  std::vector<Rational> utility;
  // Best exact-unit bundle value at budget 1; nullopt when infeasible, in
  // which case the utility clause holds vacuously for that agent.
  std::vector<std::optional<Rational>> best_value;
  // Exact verification only: cheapest cost among unit bundles with at least
  // the agent's utility.
  std::vector<Rational> min_cost;
  std::vector<HzClauseResult> clauses;

  bool satisfied() const;
  std::vector<HzClause> violated() const;
};

// eps-approximate HZ equilibrium check (four clauses).
HzVerdict VerifyApproxHz(const Instance& instance, const RationalMatrix& x,
                         const std::vector<Rational>& prices,
                         const Rational& eps);

// Exact HZ equilibrium check: x doubly stochastic, budgets, utility
// maximality and cheapness.
HzVerdict VerifyExactHz(const Instance& instance, const RationalMatrix& x,
                        const std::vector<Rational>& prices);

}  // namespace matchmarket

#endif  // MATCHMARKET_AUDITORS_H_
