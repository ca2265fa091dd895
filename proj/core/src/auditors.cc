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

#include "matchmarket/auditors.h"

#include <limits>
#include <string>
#include <utility>

#include "matchmarket/errors.h"
#include "matchmarket/linear_program.h"
#include "matchmarket/polytopes.h"

namespace matchmarket {
namespace {

void RequireAllocationShape(const Instance& instance,
                            const RationalMatrix& x) {
  if (x.rows() != instance.size() || x.cols() != instance.size()) {
    throw StructuralError("allocation is " + std::to_string(x.rows()) + "x" +
                          std::to_string(x.cols()) + ", instance has n = " +
                          std::to_string(instance.size()));
  }
}

SideEnvy EnvyOfSide(std::size_t n, const auto& value) {
  SideEnvy side;
  bool first = true;
  for (std::size_t a = 0; a < n; ++a) {
    const Rational own = value(a, a);
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      EnvyPair pair{a, b, own, value(a, b), {}};
      pair.ratio = Ratio::Of(pair.cross, pair.own);
      if (first || pair.ratio > side.max_ratio) {
        side.max_ratio = pair.ratio;
        side.max_agent = a;
        side.max_other = b;
        first = false;
      }
      side.pairs.push_back(std::move(pair));
    }
  }
  if (first) side.max_ratio = Ratio{false, Rational(1)};
  return side;
}

Rational TotalWelfare(const Instance& instance, const RationalMatrix& x) {
  Rational total;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    total += ValueOfRow(instance.u, i, x, i);
    if (instance.two_sided()) total += ValueOfColumn(*instance.w, i, x, i);
  }
  return total;
}

// Objective of the unit-weight improvement program.
RationalMatrix UnitWelfare(const Instance& instance) {
  const std::size_t n = instance.size();
  return WelfareObjective(instance, std::vector<Rational>(n, Rational(1)),
                          instance.two_sided()
                              ? std::vector<Rational>(n, Rational(1))
                              : std::vector<Rational>());
}

struct ParetoProgram {
  LinearProgram lp;
  std::size_t first_utility_row = 0;
  std::size_t t_var = 0;
};

// Rows: 2n assignment rows, then u_i.y_i (- t) >= u_i.x_i for each A-agent,
// then w_j.y_j (- t) >= w_j.x_j for each B-agent.
ParetoProgram BuildParetoProgram(const Instance& instance,
                                 const RationalMatrix& x, bool with_t) {
  const std::size_t n = instance.size();
  ParetoProgram program;
  LinearProgram& lp = program.lp;
  AddPerfectMatchingBlock(lp, n);
  if (with_t) {
    program.t_var = lp.AddVariable(Rational(1));
  } else {
    const RationalMatrix c = UnitWelfare(instance);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) lp.set_cost(i * n + j, c(i, j));
    }
  }
  program.first_utility_row = lp.num_constraints();
  for (std::size_t i = 0; i < n; ++i) {
    SparseRow row = RowUtilityTerms(instance.u, i, i);
    if (with_t) row.emplace_back(program.t_var, Rational(-1));
    lp.AddSparseConstraint(row, Relation::kGreaterEqual,
                           ValueOfRow(instance.u, i, x, i));
  }
  if (instance.two_sided()) {
    for (std::size_t j = 0; j < n; ++j) {
      SparseRow row = ColumnUtilityTerms(*instance.w, j, j);
      if (with_t) row.emplace_back(program.t_var, Rational(-1));
      lp.AddSparseConstraint(row, Relation::kGreaterEqual,
                             ValueOfColumn(*instance.w, j, x, j));
    }
  }
  return program;
}

LPSolution SolveOrThrow(const LinearProgram& lp, const char* what) {
  LPSolution solution = SolveLP(lp);
  if (!solution.optimal()) {
    throw NotParetoOptimal(std::string(what) + " is " +
                           ToString(solution.status) +
                           "; the allocation is not a valid matching");
  }
  return solution;
}

std::vector<Rational> ToVector(std::span<const Rational> values) {
  return {values.begin(), values.end()};
}

}  // namespace

Ratio Ratio::Of(const Rational& numerator, const Rational& denominator) {
  if (denominator.is_zero()) {
    return numerator.is_zero() ? Ratio{false, Rational(1)}
                               : Ratio{true, Rational(0)};
  }
  return Ratio{false, numerator / denominator};
}

double Ratio::ToDouble() const {
  return infinite ? std::numeric_limits<double>::infinity() : value.ToDouble();
}

std::string Ratio::ToString() const {
  return infinite ? "inf" : value.ToString();
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
  if (a.infinite || b.infinite) {
    return static_cast<int>(a.infinite) <=> static_cast<int>(b.infinite);
  }
  return a.value <=> b.value;
}

EnvyReport ComputeEnvyReport(const Instance& instance,
                             const RationalMatrix& x) {
  RequireAllocationShape(instance, x);
  const std::size_t n = instance.size();
  EnvyReport report;
  report.side_a = EnvyOfSide(n, [&](std::size_t a, std::size_t b) {
    return ValueOfRow(instance.u, a, x, b);
  });
  report.max_ratio = report.side_a.max_ratio;
  if (instance.two_sided()) {
    report.side_b = EnvyOfSide(n, [&](std::size_t a, std::size_t b) {
      return ValueOfColumn(*instance.w, a, x, b);
    });
    if (report.side_b->max_ratio > report.max_ratio) {
      report.max_ratio = report.side_b->max_ratio;
    }
  }
  report.envy_free = report.max_ratio <= Ratio{false, Rational(1)};
  return report;
}

std::string ToString(ParetoVerdict verdict) {
  return verdict == ParetoVerdict::kParetoOptimal ? "pareto-optimal"
                                                  : "dominated";
}

ParetoCertificate CheckPareto(const Instance& instance,
                              const RationalMatrix& x) {
  RequireAllocationShape(instance, x);
  const std::size_t n = instance.size();
  const ParetoProgram program = BuildParetoProgram(instance, x, false);
  const LPSolution solution = SolveOrThrow(program.lp, "improvement program");

  ParetoCertificate cert;
  cert.welfare = TotalWelfare(instance, x);
  cert.best_welfare = solution.objective_value;
  if (cert.best_welfare <= cert.welfare) return cert;

  cert.verdict = ParetoVerdict::kDominated;
  RationalMatrix y = AllocationFromPrimal(solution.primal, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (ValueOfRow(instance.u, i, y, i) > ValueOfRow(instance.u, i, x, i)) {
      cert.improved_a.push_back(i);
    }
    if (instance.two_sided() && ValueOfColumn(*instance.w, i, y, i) >
                                    ValueOfColumn(*instance.w, i, x, i)) {
      cert.improved_b.push_back(i);
    }
  }
  cert.improvement = std::move(y);
  return cert;
}

WeakParetoResult CheckWeakPareto(const Instance& instance,
                                 const RationalMatrix& x) {
  RequireAllocationShape(instance, x);
  const ParetoProgram program = BuildParetoProgram(instance, x, true);
  const LPSolution solution = SolveOrThrow(program.lp, "weak Pareto program");
  WeakParetoResult result;
  result.t = solution.objective_value;
  if (result.t.sign() > 0) {
    result.weakly_pareto_optimal = false;
    result.improvement = AllocationFromPrimal(solution.primal, instance.size());
  }
  return result;
}

Rational WeightedWelfare(const Instance& instance, const RationalMatrix& x,
                         const std::vector<Rational>& alpha,
                         const std::vector<Rational>& beta) {
  const RationalMatrix c = WelfareObjective(instance, alpha, beta);
  Rational total;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) total += c(i, j) * x(i, j);
  }
  return total;
}

ParetoWeights RecoverParetoWeights(const Instance& instance,
                                   const RationalMatrix& x, ParetoMode mode) {
  RequireAllocationShape(instance, x);
  if (!IsDoublyStochastic(x)) {
    throw NotParetoOptimal("allocation is not exactly doubly stochastic");
  }
  const std::size_t n = instance.size();
  const bool weak = mode == ParetoMode::kWeak;
  const ParetoProgram program = BuildParetoProgram(instance, x, weak);
  const LPSolution solution = SolveOrThrow(
      program.lp, weak ? "weak Pareto program" : "improvement program");

  if (weak ? solution.objective_value.sign() > 0
           : solution.objective_value > TotalWelfare(instance, x)) {
    throw NotParetoOptimal(
        weak ? "every agent can be improved simultaneously"
             : "allocation is Pareto-dominated");
  }

  ParetoWeights weights;
  auto weight_of = [&](std::size_t row) {
    const Rational& dual = solution.dual[row];
    return weak ? -dual : Rational(1) - dual;
  };
  for (std::size_t i = 0; i < n; ++i) {
    weights.alpha.push_back(weight_of(program.first_utility_row + i));
  }
  if (instance.two_sided()) {
    for (std::size_t j = 0; j < n; ++j) {
      weights.beta.push_back(weight_of(program.first_utility_row + n + j));
    }
  }

  Rational weight_sum;
  for (const Rational& a : weights.alpha) {
    if (a.sign() < 0 || (!weak && a.sign() == 0)) {
      throw NotParetoOptimal("recovered weight " + a.ToString() +
                             " has the wrong sign");
    }
    weight_sum += a;
  }
  for (const Rational& b : weights.beta) {
    if (b.sign() < 0 || (!weak && b.sign() == 0)) {
      throw NotParetoOptimal("recovered weight " + b.ToString() +
                             " has the wrong sign");
    }
    weight_sum += b;
  }
  if (weight_sum.sign() <= 0) {
    throw NotParetoOptimal("recovered weights are all zero");
  }

  const PolytopeSolution best = OptimizeOverPolytope(
      instance, Polytope::kPerfectMatching,
      WelfareObjective(instance, weights.alpha, weights.beta));
  weights.phi_at_x = WeightedWelfare(instance, x, weights.alpha, weights.beta);
  weights.phi_max = best.value;
  if (!best.optimal() || weights.phi_at_x != weights.phi_max) {
    throw NotParetoOptimal("allocation does not maximize the recovered "
                           "weighted welfare (" +
                           weights.phi_at_x.ToString() + " < " +
                           weights.phi_max.ToString() + ")");
  }
  return weights;
}

bool SideJef::jef() const {
  for (const JustifiedEnvyPair& p : pairs) {
    if (p.justified_envy()) return false;
  }
  return true;
}

bool SideJef::weak_jef() const {
  for (const JustifiedEnvyPair& p : pairs) {
    if (p.strong()) return false;
  }
  return true;
}

JefReport ComputeJefReport(const Instance& instance,
                           const RationalMatrix& x) {
  if (!instance.two_sided()) {
    throw PreconditionError("justified envy needs a two-sided instance");
  }
  RequireAllocationShape(instance, x);
  const std::size_t n = instance.size();
  const RationalMatrix& u = instance.u;
  const RationalMatrix& w = *instance.w;

  // pref(a, partner, b): does partner weakly prefer a to b? value(a, k):
  // a's utility for entry k of the bundle of `owner`.
  auto side = [n](auto pref, auto value, auto own_value) {
    SideJef out;
    for (std::size_t a = 0; a < n; ++a) {
      const Rational own = own_value(a);
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        JustifiedEnvyPair pair;
        pair.agent = a;
        pair.other = b;
        pair.own = own;
        pair.universally_preferred = true;
        for (std::size_t k = 0; k < n; ++k) {
          const Rational v = value(a, b, k);
          pair.cross += v;
          if (pref(k, a, b)) {
            pair.justified += v;
          } else {
            pair.universally_preferred = false;
          }
        }
        pair.slack = pair.own - pair.justified;
        out.pairs.push_back(std::move(pair));
      }
    }
    return out;
  };

  JefReport report;
  report.side_a = side(
      [&](std::size_t j, std::size_t a, std::size_t b) {
        return w(j, a) >= w(j, b);
      },
      [&](std::size_t a, std::size_t b, std::size_t j) {
        return u(a, j) * x(b, j);
      },
      [&](std::size_t a) { return ValueOfRow(u, a, x, a); });
  report.side_b = side(
      [&](std::size_t i, std::size_t a, std::size_t b) {
        return u(i, a) >= u(i, b);
      },
      [&](std::size_t a, std::size_t b, std::size_t i) {
        return w(a, i) * x(i, b);
      },
      [&](std::size_t a) { return ValueOfColumn(w, a, x, a); });
  report.jef = report.side_a.jef() && report.side_b.jef();
  report.weak_jef = report.side_a.weak_jef() && report.side_b.weak_jef();
  return report;
}

BestBundle ComputeBestBundle(std::span<const Rational> utilities,
                             std::span<const Rational> prices,
                             const Rational& budget, UnitConstraint unit) {
  if (utilities.size() != prices.size()) {
    throw StructuralError("utility and price vectors differ in length");
  }
  for (const Rational& p : prices) {
    if (p.sign() < 0) throw PreconditionError("prices must be non-negative");
  }
  if (budget.sign() < 0) throw PreconditionError("budget must be non-negative");

  const std::size_t m = utilities.size();
  LinearProgram lp(Sense::kMaximize);
  for (std::size_t j = 0; j < m; ++j) lp.AddVariable(utilities[j]);
  lp.AddConstraint(std::vector<Rational>(m, Rational(1)),
                   unit == UnitConstraint::kExact ? Relation::kEqual
                                                  : Relation::kLessEqual,
                   Rational(1));
  lp.AddConstraint(ToVector(prices), Relation::kLessEqual, budget);
  LPSolution solution = SolveLP(lp);

  BestBundle best;
  if (!solution.optimal()) return best;
  best.feasible = true;
  best.value = std::move(solution.objective_value);
  best.bundle = std::move(solution.primal);
  return best;
}

std::string ToString(HzClause clause) {
  switch (clause) {
    case HzClause::kAgentMass:
      return "agent-mass";
    case HzClause::kGoodMass:
      return "good-mass";
    case HzClause::kBudget:
      return "budget";
    case HzClause::kUtility:
      return "utility";
    case HzClause::kCheapness:
      return "cheapness";
  }
  return "unknown";
}

bool HzVerdict::satisfied() const {
  for (const HzClauseResult& c : clauses) {
    if (!c.satisfied) return false;
  }
  return true;
}

std::vector<HzClause> HzVerdict::violated() const {
  std::vector<HzClause> out;
  for (const HzClauseResult& c : clauses) {
    if (!c.satisfied) out.push_back(c.clause);
  }
  return out;
}

namespace {

class ClauseTracker {
 public:
  explicit ClauseTracker(HzClause clause) { result_.clause = clause; }
  void Observe(const Rational& slack, std::size_t index) {
    if (!seen_ || slack < result_.worst_slack) {
      result_.worst_slack = slack;
      result_.worst_index = index;
      seen_ = true;
    }
  }
  HzClauseResult Finish() {
    result_.satisfied = result_.worst_slack.sign() >= 0;
    return result_;
  }

 private:
  HzClauseResult result_;
  bool seen_ = false;
};

HzVerdict VerifyHz(const Instance& instance, const RationalMatrix& x,
                   const std::vector<Rational>& prices, const Rational& eps,
                   bool exact) {
  RequireAllocationShape(instance, x);
  const std::size_t n = instance.size();
  if (prices.size() != n) {
    throw StructuralError("expected " + std::to_string(n) + " prices, got " +
                          std::to_string(prices.size()));
  }
  for (const Rational& p : prices) {
    if (p.sign() < 0) throw PreconditionError("prices must be non-negative");
  }

  HzVerdict verdict;
  verdict.eps = eps;
  verdict.agent_mass.assign(n, Rational(0));
  verdict.good_mass.assign(n, Rational(0));
  verdict.spending.assign(n, Rational(0));
  Rational most_negative;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      verdict.agent_mass[i] += x(i, j);
      verdict.good_mass[j] += x(i, j);
      verdict.spending[i] += prices[j] * x(i, j);
      most_negative = Min(most_negative, x(i, j));
    }
  }

  const Rational one(1);
  ClauseTracker agent_mass(HzClause::kAgentMass);
  ClauseTracker good_mass(HzClause::kGoodMass);
  ClauseTracker budget(HzClause::kBudget);
  ClauseTracker utility(HzClause::kUtility);
  ClauseTracker cheapness(HzClause::kCheapness);
  for (std::size_t i = 0; i < n; ++i) {
    agent_mass.Observe(Min(verdict.agent_mass[i] - (one - eps),
                           one - verdict.agent_mass[i]),
                       i);
    good_mass.Observe(Min(verdict.good_mass[i] - (one - eps),
                          one - verdict.good_mass[i]),
                      i);
    budget.Observe(one - verdict.spending[i], i);

    const std::span<const Rational> u_row = instance.u.row(i);
    verdict.utility.push_back(ValueOfRow(instance.u, i, x, i));
    const BestBundle best =
        ComputeBestBundle(u_row, prices, one, UnitConstraint::kExact);
    if (best.feasible) {
      verdict.best_value.push_back(best.value);
      utility.Observe(verdict.utility[i] - best.value + eps, i);
    } else {
      verdict.best_value.push_back(std::nullopt);
      utility.Observe(Rational(0), i);
    }

    if (exact) {
      LinearProgram lp(Sense::kMinimize);
      for (std::size_t j = 0; j < n; ++j) lp.AddVariable(prices[j]);
      lp.AddConstraint(std::vector<Rational>(n, one), Relation::kEqual, one);
      lp.AddConstraint(ToVector(u_row), Relation::kGreaterEqual,
                       verdict.utility[i]);
      const LPSolution cheapest = SolveLP(lp);
      // Infeasible only when x_i itself is not a unit bundle, which the mass
      // clauses already report.
      verdict.min_cost.push_back(cheapest.optimal()
                                     ? cheapest.objective_value
                                     : verdict.spending[i]);
      cheapness.Observe(verdict.min_cost[i] - verdict.spending[i], i);
    }
  }
  if (exact && most_negative.sign() < 0) {
    agent_mass.Observe(most_negative, 0);
  }

  verdict.clauses = {agent_mass.Finish(), good_mass.Finish(), budget.Finish(),
                     utility.Finish()};
  if (exact) verdict.clauses.push_back(cheapness.Finish());
  return verdict;
}

}  // namespace

HzVerdict VerifyApproxHz(const Instance& instance, const RationalMatrix& x,
                         const std::vector<Rational>& prices,
                         const Rational& eps) {
  if (eps.sign() < 0) throw PreconditionError("eps must be non-negative");
  return VerifyHz(instance, x, prices, eps, false);
}

HzVerdict VerifyExactHz(const Instance& instance, const RationalMatrix& x,
                        const std::vector<Rational>& prices) {
  return VerifyHz(instance, x, prices, Rational(0), true);
}

}  // namespace matchmarket
