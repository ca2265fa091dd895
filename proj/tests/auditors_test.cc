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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "matchmarket/assignment.h"
#include "matchmarket/errors.h"
#include "matchmarket/generators.h"
#include "test_util.h"

namespace matchmarket {
namespace {

using testing::ColumnValue;
using testing::RowValue;

RationalMatrix Uniform(std::size_t n) {
  return RationalMatrix(n, n, Rational(1, static_cast<long>(n)));
}

Instance Diagonal() { return Instance::OneSided(RationalMatrix::Identity(2)); }

// The allocation every envy-free allocation of the asymmetric
// counterexample is forced into: each A-agent spreads 1/3 over every
// B-agent.
RationalMatrix ForcedCounterexampleAllocation() { return Uniform(3); }

// True iff y gives every agent at least their utility under x.
bool WeaklyDominates(const Instance& inst, const RationalMatrix& y,
                     const RationalMatrix& x, bool* strict) {
  *strict = false;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const Rational uy = RowValue(inst.u, i, y, i), ux = RowValue(inst.u, i, x, i);
    if (uy < ux) return false;
    if (uy > ux) *strict = true;
    if (inst.w) {
      const Rational wy = ColumnValue(*inst.w, i, y, i);
      const Rational wx = ColumnValue(*inst.w, i, x, i);
      if (wy < wx) return false;
      if (wy > wx) *strict = true;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

TEST(EnvyReportTest, EnvyTightIdentityHasRatioTwo) {
  const Instance inst = Generate({Family::kEnvyTight});
  const EnvyReport report = ComputeEnvyReport(inst, RationalMatrix::Identity(2));
  EXPECT_FALSE(report.envy_free);
  EXPECT_EQ(report.max_ratio, (Ratio{false, Rational(2)}));
  EXPECT_EQ(report.side_a.max_agent, 1u);
  EXPECT_EQ(report.side_a.max_other, 0u);
  EXPECT_FALSE(report.side_b.has_value());
}

TEST(EnvyReportTest, UniformIsEnvyFree) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const Instance inst = Instance::TwoSided(testing::RandomGridMatrix(n, 5, rng),
                                             testing::RandomGridMatrix(n, 5, rng));
    const EnvyReport report = ComputeEnvyReport(inst, Uniform(n));
    EXPECT_TRUE(report.envy_free);
    EXPECT_LE(report.max_ratio, (Ratio{false, Rational(1)}));
    ASSERT_TRUE(report.side_b.has_value());
  }
}

TEST(EnvyReportTest, IdentityOnDiagonalIsEnvyFree) {
  const EnvyReport report = ComputeEnvyReport(Diagonal(), RationalMatrix::Identity(2));
  EXPECT_TRUE(report.envy_free);
  EXPECT_EQ(report.max_ratio, (Ratio{false, Rational(0)}));
}

TEST(EnvyReportTest, ZeroDenominatorConventions) {
  // Agent 0 values nothing: 0/0 = 1. Agent 1 gets a good it values at 0
  // while valuing agent 0's good: positive/0 = infinity.
  const Instance inst =
      Instance::OneSided(RationalMatrix::FromRows({{0, 0}, {1, 0}}));
  const EnvyReport report = ComputeEnvyReport(inst, RationalMatrix::Identity(2));
  ASSERT_EQ(report.side_a.pairs.size(), 2u);
  EXPECT_EQ(report.side_a.pairs[0].ratio, (Ratio{false, Rational(1)}));
  EXPECT_TRUE(report.side_a.pairs[1].ratio.infinite);
  EXPECT_TRUE(report.max_ratio.infinite);
  EXPECT_EQ(report.max_ratio.ToString(), "inf");
  EXPECT_EQ(Ratio::Of(Rational(0), Rational(0)), (Ratio{false, Rational(1)}));
  EXPECT_TRUE(Ratio::Of(Rational(3), Rational(0)).infinite);
}

TEST(EnvyReportTest, MatchesIndependentRatio) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const Instance inst = Instance::OneSided(testing::RandomGridMatrix(n, 10, rng));
    const RationalMatrix x = testing::RandomDoublyStochastic(n, 3, rng);
    const EnvyReport report = ComputeEnvyReport(inst, x);
    const double expected = testing::MaxEnvyRatio(inst.u, ToDouble(x));
    EXPECT_DOUBLE_EQ(report.max_ratio.ToDouble(), expected);
    EXPECT_EQ(report.envy_free, expected <= 1.0);
  }
}

TEST(EnvyReportTest, TwoSidedReportsColumns) {
  // B-agent 0 values A-agent 1, but is matched with A-agent 0.
  const Instance inst = Instance::TwoSided(RationalMatrix::Identity(2),
                                           RationalMatrix::FromRows({{0, 1}, {0, 0}}));
  const EnvyReport report = ComputeEnvyReport(inst, RationalMatrix::Identity(2));
  EXPECT_TRUE(report.side_a.envy_free());
  ASSERT_TRUE(report.side_b.has_value());
  EXPECT_TRUE(report.side_b->max_ratio.infinite);
  EXPECT_FALSE(report.envy_free);
}

// ---------------------------------------------------------------------------

TEST(ParetoTest, ForcedCounterexampleAllocationIsDominated) {
  const Instance inst = Generate({Family::kAsymCe});
  const RationalMatrix x = ForcedCounterexampleAllocation();
  // The forced structure: both A-agents 1 and 2 hold 1/3 of B-agent 4.
  EXPECT_EQ(x(0, 0), Rational(1, 3));
  EXPECT_EQ(x(1, 0), Rational(1, 3));
  const ParetoCertificate cert = CheckPareto(inst, x);
  ASSERT_EQ(cert.verdict, ParetoVerdict::kDominated);
  ASSERT_TRUE(cert.improvement.has_value());
  EXPECT_TRUE(testing::ExactlyDoublyStochastic(*cert.improvement));
  bool strict = false;
  EXPECT_TRUE(WeaklyDominates(inst, *cert.improvement, x, &strict));
  EXPECT_TRUE(strict);
  EXPECT_FALSE(cert.improved_a.empty() && cert.improved_b.empty());
  EXPECT_GT(cert.best_welfare, cert.welfare);

  // A dominating allocation that raises agent 1 from 1/3 to 2/3.
  const Rational t(1, 3), s(1, 6), h(1, 2);
  const RationalMatrix y = RationalMatrix::FromRows(
      {{Rational(2, 3), s, s}, {t, t, t}, {Rational(0), h, h}});
  ASSERT_TRUE(testing::ExactlyDoublyStochastic(y));
  EXPECT_EQ(RowValue(inst.u, 0, y, 0), Rational(2, 3));
  EXPECT_TRUE(WeaklyDominates(inst, y, x, &strict));
  EXPECT_TRUE(strict);
}

TEST(ParetoTest, WelfareMaximizersArePareto) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const Instance inst = Instance::OneSided(testing::RandomGridMatrix(n, 4, rng));
    Permutation best;
    Rational best_value(-1);
    for (const Permutation& p : testing::AllPermutations(n)) {
      const Rational v = testing::PermutationWeight(inst.u, p);
      if (v > best_value) {
        best_value = v;
        best = p;
      }
    }
    const ParetoCertificate cert = CheckPareto(inst, testing::PermutationMatrix(best));
    EXPECT_TRUE(cert.pareto_optimal());
    EXPECT_EQ(cert.welfare, best_value);
  }
}

TEST(ParetoTest, IdentityOnDiagonal) {
  EXPECT_TRUE(CheckPareto(Diagonal(), RationalMatrix::Identity(2)).pareto_optimal());
  EXPECT_FALSE(CheckPareto(Diagonal(), Uniform(2)).pareto_optimal());
}

// On 2x2 instances allocations are [[t, 1-t], [1-t, t]] and utilities are
// linear in t, so for t on the 1/4 grid the grid contains a dominating
// allocation whenever any exists.
TEST(ParetoTest, AgreesWithGridSearchOnTwoByTwo) {
  std::mt19937_64 rng(7);
  auto alloc = [](const Rational& t) {
    return RationalMatrix::FromRows({{t, Rational(1) - t}, {Rational(1) - t, t}});
  };
  int dominated = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const RationalMatrix u = testing::RandomGridMatrix(2, 3, rng);
    const Instance inst =
        trial % 2 ? Instance::TwoSided(u, testing::RandomGridMatrix(2, 3, rng))
                  : Instance::OneSided(u);
    for (int a = 0; a <= 4; ++a) {
      const RationalMatrix x = alloc(Rational(a, 4));
      bool grid_dominated = false;
      for (int b = 0; b <= 4 && !grid_dominated; ++b) {
        bool strict = false;
        grid_dominated = WeaklyDominates(inst, alloc(Rational(b, 4)), x, &strict) && strict;
      }
      const ParetoCertificate cert = CheckPareto(inst, x);
      EXPECT_EQ(cert.verdict == ParetoVerdict::kDominated, grid_dominated)
          << "trial " << trial << " t = " << a << "/4";
      dominated += grid_dominated;
    }
  }
  EXPECT_GT(dominated, 0);
}

TEST(WeakParetoTest, ParetoImpliesWeakPareto) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const Instance inst = Instance::TwoSided(testing::RandomGridMatrix(n, 4, rng),
                                             testing::RandomGridMatrix(n, 4, rng));
    for (const Permutation& p : testing::AllPermutations(n)) {
      const RationalMatrix x = testing::PermutationMatrix(p);
      if (CheckPareto(inst, x).pareto_optimal()) {
        EXPECT_TRUE(CheckWeakPareto(inst, x).weakly_pareto_optimal);
      }
    }
  }
}

TEST(WeakParetoTest, ZeroRowMakesEverythingWeaklyOptimal) {
  std::mt19937_64 rng(10);
  RationalMatrix u = testing::RandomGridMatrix(4, 5, rng);
  for (std::size_t j = 0; j < 4; ++j) u(2, j) = Rational(0);
  const Instance inst = Instance::OneSided(u);
  for (int trial = 0; trial < 10; ++trial) {
    const WeakParetoResult r =
        CheckWeakPareto(inst, testing::RandomDoublyStochastic(4, 3, rng));
    EXPECT_TRUE(r.weakly_pareto_optimal);
    EXPECT_EQ(r.t, Rational(0));
  }
}

TEST(WeakParetoTest, UniformOnDiagonalIsWeaklyDominated) {
  const WeakParetoResult r = CheckWeakPareto(Diagonal(), Uniform(2));
  EXPECT_FALSE(r.weakly_pareto_optimal);
  EXPECT_EQ(r.t, Rational(1, 2));
  ASSERT_TRUE(r.improvement.has_value());
  EXPECT_EQ(*r.improvement, RationalMatrix::Identity(2));
}

// ---------------------------------------------------------------------------

// Brute-force maximum of phi over the vertices of P_PM.
Rational MaxPhi(const Instance& inst, const std::vector<Rational>& alpha,
                const std::vector<Rational>& beta) {
  Rational best(-1);
  for (const Permutation& p : testing::AllPermutations(inst.size())) {
    best = Max(best, WeightedWelfare(inst, testing::PermutationMatrix(p), alpha, beta));
  }
  return best;
}

TEST(ParetoWeightsTest, DiagonalIdentityHasUnitWeights) {
  const ParetoWeights w =
      RecoverParetoWeights(Diagonal(), RationalMatrix::Identity(2), ParetoMode::kStrict);
  EXPECT_EQ(w.alpha, (std::vector<Rational>{1, 1}));
  EXPECT_EQ(w.phi_at_x, w.phi_max);
}

TEST(ParetoWeightsTest, RoundTripFromWeightedMaximizer) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> pick(1, 16);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const bool two = trial % 3 == 0;
    const Instance inst =
        two ? Instance::TwoSided(testing::RandomGridMatrix(n, 6, rng),
                                 testing::RandomGridMatrix(n, 6, rng))
            : Instance::OneSided(testing::RandomGridMatrix(n, 6, rng));
    std::vector<Rational> alpha(n), beta;
    for (auto& a : alpha) a = Rational(pick(rng), 8);
    if (trial == 0) alpha = {Rational(1), Rational(2)};
    if (two) {
      beta.resize(n);
      for (auto& b : beta) b = Rational(pick(rng), 8);
    }
    RationalMatrix weights(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        weights(i, j) = alpha[i] * inst.u(i, j);
        if (two) weights(i, j) += beta[j] * (*inst.w)(j, i);
      }
    }
    const RationalMatrix x =
        testing::PermutationMatrix(MaxWeightPerfectMatching(weights).perm);
    const ParetoWeights w = RecoverParetoWeights(inst, x, ParetoMode::kStrict);
    for (const Rational& a : w.alpha) EXPECT_GT(a.sign(), 0);
    for (const Rational& b : w.beta) EXPECT_GT(b.sign(), 0);
    EXPECT_EQ(w.beta.size(), two ? n : 0u);
    EXPECT_EQ(WeightedWelfare(inst, x, w.alpha, w.beta), MaxPhi(inst, w.alpha, w.beta));
    EXPECT_EQ(w.phi_at_x, w.phi_max);
  }
}

TEST(ParetoWeightsTest, ForcedCounterexampleIsRejected) {
  EXPECT_THROW(RecoverParetoWeights(Generate({Family::kAsymCe}),
                                    ForcedCounterexampleAllocation(),
                                    ParetoMode::kStrict),
               NotParetoOptimal);
}

TEST(ParetoWeightsTest, WeakModeOnWeaklyOptimalAllocation) {
  // Agent 1 values nothing, so any allocation is weakly optimal; giving
  // agent 0 its worse good is not Pareto-optimal.
  const Instance inst = Instance::OneSided(RationalMatrix::FromRows({{2, 1}, {0, 0}}));
  const RationalMatrix x = RationalMatrix::FromRows({{0, 1}, {1, 0}});
  EXPECT_FALSE(CheckPareto(inst, x).pareto_optimal());
  EXPECT_THROW(RecoverParetoWeights(inst, x, ParetoMode::kStrict), NotParetoOptimal);
  const ParetoWeights w = RecoverParetoWeights(inst, x, ParetoMode::kWeak);
  Rational total;
  for (const Rational& a : w.alpha) {
    EXPECT_GE(a.sign(), 0);
    total += a;
  }
  EXPECT_GT(total.sign(), 0);
  EXPECT_EQ(WeightedWelfare(inst, x, w.alpha, w.beta), MaxPhi(inst, w.alpha, w.beta));
}

// ---------------------------------------------------------------------------

// Integral matching p is stable iff no (a, b) prefer each other to their
// partners; inverse[b] is b's partner.
bool Stable(const Instance& inst, const Permutation& p) {
  const std::size_t n = p.size();
  Permutation inverse(n);
  for (std::size_t a = 0; a < n; ++a) inverse[p[a]] = static_cast<int>(a);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (inst.u(a, b) > inst.u(a, p[a]) &&
          (*inst.w)(b, a) > (*inst.w)(b, inverse[b])) {
        return false;
      }
    }
  }
  return true;
}

// Distinct utilities so that preferences are strict.
Instance StrictTwoSided(std::size_t n, std::mt19937_64& rng) {
  auto draw = [&] {
    std::vector<long> values(n * n);
    std::iota(values.begin(), values.end(), 1);
    std::shuffle(values.begin(), values.end(), rng);
    RationalMatrix m(n, n);
    for (std::size_t k = 0; k < n * n; ++k) m(k / n, k % n) = Rational(values[k]);
    return m;
  };
  RationalMatrix u = draw();
  return Instance::TwoSided(std::move(u), draw());
}

TEST(JefReportTest, UniformIsJef) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const Instance inst = Instance::TwoSided(testing::RandomGridMatrix(n, 5, rng),
                                             testing::RandomGridMatrix(n, 5, rng));
    const JefReport r = ComputeJefReport(inst, Uniform(n));
    EXPECT_TRUE(r.jef);
    EXPECT_TRUE(r.weak_jef);
  }
}

TEST(JefReportTest, IntegralMatchingIsJefIffStable) {
  std::mt19937_64 rng(14);
  int stable = 0, unstable = 0;
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 3 + trial % 2;
    const Instance inst = StrictTwoSided(n, rng);
    for (const Permutation& p : testing::AllPermutations(n)) {
      const JefReport r = ComputeJefReport(inst, testing::PermutationMatrix(p));
      const bool s = Stable(inst, p);
      EXPECT_EQ(r.jef, s);
      if (r.jef) {
        EXPECT_TRUE(r.weak_jef);
      }
      (s ? stable : unstable)++;
    }
  }
  EXPECT_GT(stable, 0);
  EXPECT_GT(unstable, 0);
}

TEST(JefReportTest, JefImpliesWeakJef) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const Instance inst = Instance::TwoSided(testing::RandomGridMatrix(n, 3, rng),
                                             testing::RandomGridMatrix(n, 3, rng));
    const JefReport r =
        ComputeJefReport(inst, testing::RandomDoublyStochastic(n, 2, rng));
    if (r.jef) {
      EXPECT_TRUE(r.weak_jef);
    }
    EXPECT_EQ(r.jef, r.side_a.jef() && r.side_b.jef());
  }
}

TEST(JefReportTest, SlackMatchesDefinition) {
  std::mt19937_64 rng(16);
  const std::size_t n = 4;
  const Instance inst = Instance::TwoSided(testing::RandomGridMatrix(n, 3, rng),
                                           testing::RandomGridMatrix(n, 3, rng));
  const RationalMatrix x = testing::RandomDoublyStochastic(n, 3, rng);
  const JefReport r = ComputeJefReport(inst, x);
  for (const JustifiedEnvyPair& pair : r.side_a.pairs) {
    const std::size_t a = pair.agent, o = pair.other;
    Rational justified;
    bool all = true;
    for (std::size_t b = 0; b < n; ++b) {
      if ((*inst.w)(b, a) >= (*inst.w)(b, o)) {
        justified += inst.u(a, b) * x(o, b);
      } else {
        all = false;
      }
    }
    EXPECT_EQ(pair.own, RowValue(inst.u, a, x, a));
    EXPECT_EQ(pair.justified, justified);
    EXPECT_EQ(pair.slack, pair.own - justified);
    EXPECT_EQ(pair.universally_preferred, all);
  }
  EXPECT_THROW(ComputeJefReport(Diagonal(), RationalMatrix::Identity(2)),
               PreconditionError);
}

// ---------------------------------------------------------------------------

std::vector<Rational> V(std::initializer_list<Rational> v) { return v; }

TEST(BestBundleTest, Examples) {
  auto value = [](std::vector<Rational> u, std::vector<Rational> p, Rational b,
                  UnitConstraint unit) {
    return ComputeBestBundle(u, p, b, unit);
  };
  BestBundle r = value(V({2, 1}), V({1, 1}), Rational(1), UnitConstraint::kExact);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.value, Rational(2));
  r = value(V({2, 1}), V({3, 1}), Rational(1), UnitConstraint::kExact);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.value, Rational(1));
  r = value(V({2, 1}), V({1, 2}), Rational(0), UnitConstraint::kAtMost);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.value, Rational(0));
  r = value(V({2, 1}), V({2, 3}), Rational(1), UnitConstraint::kExact);
  EXPECT_FALSE(r.feasible);
  // Mixing: budget 1, prices (2, 0) -> half of the expensive good.
  r = value(V({2, 1}), V({2, 0}), Rational(1), UnitConstraint::kExact);
  EXPECT_EQ(r.value, Rational(3, 2));
}

// ---------------------------------------------------------------------------

bool Holds(const HzVerdict& v, HzClause clause) {
  for (const HzClauseResult& c : v.clauses) {
    if (c.clause == clause) return c.satisfied;
  }
  ADD_FAILURE() << "clause missing: " << ToString(clause);
  return false;
}

TEST(ApproxHzTest, IdenticalUniformUnitPrices) {
  const Instance inst = Generate({Family::kIdentical, 3});
  const HzVerdict v = VerifyApproxHz(inst, Uniform(3), V({1, 1, 1}), Rational(0));
  EXPECT_TRUE(v.satisfied());
  EXPECT_EQ(v.clauses.size(), 4u);
  for (const HzClauseResult& c : v.clauses) EXPECT_EQ(c.worst_slack, Rational(0));
}

TEST(ApproxHzTest, DoublePricesBreakTheBudget) {
  const Instance inst = Generate({Family::kIdentical, 3});
  const HzVerdict v = VerifyApproxHz(inst, Uniform(3), V({2, 2, 2}), Rational(0));
  EXPECT_EQ(v.violated(), std::vector<HzClause>{HzClause::kBudget});
  EXPECT_EQ(v.spending[0], Rational(2));
}

TEST(ApproxHzTest, RowMassBelowTolerance) {
  const Instance inst = Generate({Family::kIdentical, 2});
  const Rational eps(1, 10);
  const Rational low = Rational(1) - Rational(2) * eps;
  // Row 0 carries 1 - 2 eps; columns stay within [1 - eps, 1].
  const RationalMatrix x = RationalMatrix::FromRows(
      {{low / Rational(2), low / Rational(2)}, {Rational(1, 2), Rational(1, 2)}});
  const HzVerdict v = VerifyApproxHz(inst, x, V({0, 0}), eps);
  EXPECT_FALSE(Holds(v, HzClause::kAgentMass));
  EXPECT_TRUE(Holds(v, HzClause::kGoodMass));
  EXPECT_TRUE(Holds(v, HzClause::kBudget));
}

TEST(ExactHzTest, Examples) {
  const Instance identical = Generate({Family::kIdentical, 3});
  EXPECT_TRUE(VerifyExactHz(identical, Uniform(3), V({1, 1, 1})).satisfied());

  const HzVerdict diag = VerifyExactHz(Diagonal(), RationalMatrix::Identity(2), V({0, 0}));
  EXPECT_TRUE(diag.satisfied());
  EXPECT_EQ(diag.clauses.size(), 5u);

  const Instance tight = Generate({Family::kEnvyTight});
  const HzVerdict v = VerifyExactHz(tight, RationalMatrix::Identity(2), V({1, 1}));
  EXPECT_FALSE(v.satisfied());
  EXPECT_FALSE(Holds(v, HzClause::kUtility));
  ASSERT_TRUE(v.best_value[1].has_value());
  EXPECT_EQ(*v.best_value[1], Rational(2));
  for (const HzClauseResult& c : v.clauses) {
    if (c.clause == HzClause::kUtility) {
      EXPECT_EQ(c.worst_index, 1u);
    }
  }
}

TEST(ExactHzTest, ExactEquilibriaPassTheApproximateCheck) {
  // Diagonal-dominant instances: the identity with zero prices is an HZ
  // equilibrium whenever every agent's own good is its favourite.
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 4;
    RationalMatrix u = testing::RandomGridMatrix(n, 5, rng);
    for (std::size_t i = 0; i < n; ++i) u(i, i) = Rational(2);
    const Instance inst = Instance::OneSided(u);
    const std::vector<Rational> prices(n, Rational(0));
    const RationalMatrix x = RationalMatrix::Identity(n);
    ASSERT_TRUE(VerifyExactHz(inst, x, prices).satisfied());
    EXPECT_TRUE(VerifyApproxHz(inst, x, prices, Rational(0)).satisfied());
  }
}

TEST(ClauseNamesTest, Distinct) {
  std::set<std::string> names;
  for (HzClause c : {HzClause::kAgentMass, HzClause::kGoodMass, HzClause::kBudget,
                     HzClause::kUtility, HzClause::kCheapness}) {
    names.insert(ToString(c));
  }
  EXPECT_EQ(names.size(), 5u);
}

}  // namespace
}  // namespace matchmarket
