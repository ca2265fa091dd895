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

#include "matchmarket/linear_program.h"

#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "matchmarket/assignment.h"
#include "matchmarket/errors.h"
#include "simplex_session.h"
#include "test_util.h"

namespace matchmarket {
namespace {

// Checks an optimal solution against its own certificate: primal
// feasibility, dual signs, dual feasibility (reduced costs), complementary
// slackness and strong duality, all exactly.
void ExpectCertificate(const LinearProgram& lp, const LPSolution& s) {
  ASSERT_TRUE(s.optimal());
  const bool max = lp.sense() == Sense::kMaximize;
  const std::size_t m = lp.num_constraints();
  const std::size_t n = lp.num_variables();
  ASSERT_EQ(s.primal.size(), n);
  ASSERT_EQ(s.dual.size(), m);
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.bounds()[j] == VarBound::kNonNegative) {
      EXPECT_GE(s.primal[j].sign(), 0);
    }
  }
  Rational primal_value, dual_value;
  for (std::size_t j = 0; j < n; ++j) primal_value += lp.objective()[j] * s.primal[j];
  for (std::size_t r = 0; r < m; ++r) {
    Rational lhs;
    for (std::size_t j = 0; j < n; ++j) lhs += lp.rows()[r][j] * s.primal[j];
    const int sign = s.dual[r].sign() * (max ? 1 : -1);
    switch (lp.relations()[r]) {
      case Relation::kLessEqual:
        EXPECT_LE(lhs, lp.rhs()[r]);
        EXPECT_GE(sign, 0);
        break;
      case Relation::kGreaterEqual:
        EXPECT_GE(lhs, lp.rhs()[r]);
        EXPECT_LE(sign, 0);
        break;
      case Relation::kEqual:
        EXPECT_EQ(lhs, lp.rhs()[r]);
        break;
    }
    if (lhs != lp.rhs()[r]) {
      EXPECT_TRUE(s.dual[r].is_zero()) << "row " << r;
    }
    dual_value += lp.rhs()[r] * s.dual[r];
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational reduced = lp.objective()[j];
    for (std::size_t r = 0; r < m; ++r) reduced -= lp.rows()[r][j] * s.dual[r];
    if (lp.bounds()[j] == VarBound::kFree) {
      EXPECT_TRUE(reduced.is_zero()) << "variable " << j;
    } else {
      EXPECT_LE(reduced.sign() * (max ? 1 : -1), 0) << "variable " << j;
      if (!s.primal[j].is_zero()) {
        EXPECT_TRUE(reduced.is_zero());
      }
    }
  }
  EXPECT_EQ(primal_value, s.objective_value);
  EXPECT_EQ(dual_value, s.objective_value);
}

LinearProgram AssignmentLp(const RationalMatrix& w) {
  const std::size_t n = w.rows();
  LinearProgram lp(Sense::kMaximize);
  lp.AddVariables(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) lp.set_cost(i * n + j, w(i, j));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<std::size_t, Rational>> row, col;
    for (std::size_t j = 0; j < n; ++j) {
      row.emplace_back(i * n + j, Rational(1));
      col.emplace_back(j * n + i, Rational(1));
    }
    lp.AddSparseConstraint(row, Relation::kEqual, Rational(1));
    lp.AddSparseConstraint(col, Relation::kEqual, Rational(1));
  }
  return lp;
}

TEST(LinearProgramTest, OneVariableBox) {
  LinearProgram lp(Sense::kMaximize);
  lp.AddVariable(Rational(1));
  lp.AddConstraint({Rational(1)}, Relation::kLessEqual, Rational(1));
  const LPSolution s = SolveLP(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_EQ(s.objective_value, Rational(1));
  EXPECT_EQ(s.dual[0], Rational(1));
  ExpectCertificate(lp, s);
}

TEST(LinearProgramTest, TwoByTwoAssignment) {
  const RationalMatrix w = RationalMatrix::FromRows({{2, 1}, {1, 2}});
  const LinearProgram lp = AssignmentLp(w);
  const LPSolution s = SolveLP(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_EQ(s.objective_value, Rational(4));
  EXPECT_EQ(s.primal, (std::vector<Rational>{1, 0, 0, 1}));
  EXPECT_EQ(MaxWeightPerfectMatching(w).value, Rational(4));
  ExpectCertificate(lp, s);
}

TEST(LinearProgramTest, Infeasible) {
  LinearProgram lp(Sense::kMaximize);
  lp.AddVariable(Rational(1));
  lp.AddConstraint({Rational(1)}, Relation::kLessEqual, Rational(-1));
  EXPECT_EQ(SolveLP(lp).status, LPStatus::kInfeasible);
}

TEST(LinearProgramTest, Unbounded) {
  LinearProgram lp(Sense::kMaximize);
  lp.AddVariable(Rational(1));
  lp.AddConstraint({Rational(1)}, Relation::kGreaterEqual, Rational(1));
  EXPECT_EQ(SolveLP(lp).status, LPStatus::kUnbounded);
}

TEST(LinearProgramTest, FreeVariableAndMinimization) {
  // min x + 2y  s.t.  x - y >= -3,  y >= 1,  x free.
  LinearProgram lp(Sense::kMinimize);
  lp.AddVariable(Rational(1), VarBound::kFree);
  lp.AddVariable(Rational(2));
  lp.AddConstraint({Rational(1), Rational(-1)}, Relation::kGreaterEqual,
                   Rational(-3));
  lp.AddConstraint({Rational(0), Rational(1)}, Relation::kGreaterEqual,
                   Rational(1));
  const LPSolution s = SolveLP(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_EQ(s.primal[0], Rational(-2));
  EXPECT_EQ(s.primal[1], Rational(1));
  EXPECT_EQ(s.objective_value, Rational(0));
  ExpectCertificate(lp, s);
}

TEST(LinearProgramTest, NegativeRightHandSides) {
  // max -x - y  s.t.  -x - y <= -2,  x - y = -1/2.
  LinearProgram lp(Sense::kMaximize);
  lp.AddVariable(Rational(-1));
  lp.AddVariable(Rational(-1));
  lp.AddConstraint({Rational(-1), Rational(-1)}, Relation::kLessEqual,
                   Rational(-2));
  lp.AddConstraint({Rational(1), Rational(-1)}, Relation::kEqual,
                   Rational(-1, 2));
  const LPSolution s = SolveLP(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_EQ(s.primal[0], Rational(3, 4));
  EXPECT_EQ(s.primal[1], Rational(5, 4));
  ExpectCertificate(lp, s);
}

TEST(LinearProgramTest, BealeCyclingExampleTerminates) {
  LinearProgram lp(Sense::kMaximize);
  lp.AddVariable(Rational(3, 4));
  lp.AddVariable(Rational(-150));
  lp.AddVariable(Rational(1, 50));
  lp.AddVariable(Rational(-6));
  lp.AddConstraint({Rational(1, 4), Rational(-60), Rational(-1, 25), Rational(9)},
                   Relation::kLessEqual, Rational(0));
  lp.AddConstraint({Rational(1, 2), Rational(-90), Rational(-1, 50), Rational(3)},
                   Relation::kLessEqual, Rational(0));
  lp.AddConstraint({Rational(0), Rational(0), Rational(1), Rational(0)},
                   Relation::kLessEqual, Rational(1));
  const LPSolution s = SolveLP(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_EQ(s.objective_value, Rational(1, 20));
  ExpectCertificate(lp, s);
}

TEST(LinearProgramTest, RedundantEqualityRows) {
  LinearProgram lp(Sense::kMaximize);
  lp.AddVariable(Rational(1));
  lp.AddVariable(Rational(1));
  lp.AddConstraint({Rational(1), Rational(1)}, Relation::kEqual, Rational(1));
  lp.AddConstraint({Rational(2), Rational(2)}, Relation::kEqual, Rational(2));
  const LPSolution s = SolveLP(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_EQ(s.objective_value, Rational(1));
  ExpectCertificate(lp, s);
}

TEST(LinearProgramTest, RowWidthMismatchIsStructural) {
  LinearProgram lp(Sense::kMaximize);
  lp.AddVariable(Rational(1));
  EXPECT_THROW(lp.AddConstraint({Rational(1), Rational(1)},
                                Relation::kLessEqual, Rational(1)),
               StructuralError);
}

TEST(LinearProgramTest, AssignmentValueMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const RationalMatrix w = testing::RandomGridMatrix(n, 7, rng);
    Rational best;
    for (const Permutation& p : testing::AllPermutations(n)) {
      best = Max(best, testing::PermutationWeight(w, p));
    }
    const LinearProgram lp = AssignmentLp(w);
    const LPSolution s = SolveLP(lp);
    ASSERT_TRUE(s.optimal());
    EXPECT_EQ(s.objective_value, best);
    ExpectCertificate(lp, s);
  }
}

// Random bounded programs with mixed relations: every optimum carries a
// valid certificate and reruns are identical.
TEST(LinearProgramTest, RandomProgramsCarryCertificates) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-4, 6);
  std::uniform_int_distribution<int> rel(0, 2);
  int optimal = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const std::size_t m = 1 + trial % 4;
    LinearProgram lp(trial % 2 ? Sense::kMaximize : Sense::kMinimize);
    for (std::size_t j = 0; j < n; ++j) {
      lp.AddVariable(Rational(coef(rng), 1 + trial % 3),
                     j == 0 && trial % 3 == 0 ? VarBound::kFree
                                              : VarBound::kNonNegative);
    }
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<Rational> row(n);
      for (auto& v : row) v = Rational(coef(rng));
      lp.AddConstraint(row, static_cast<Relation>(rel(rng)),
                       Rational(coef(rng)));
    }
    // Box so that every feasible program is bounded.
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> row(n, Rational(0));
      row[j] = Rational(1);
      lp.AddConstraint(row, Relation::kLessEqual, Rational(10));
      if (lp.bounds()[j] == VarBound::kFree) {
        lp.AddConstraint(row, Relation::kGreaterEqual, Rational(-10));
      }
    }
    const LPSolution s = SolveLP(lp);
    ASSERT_NE(s.status, LPStatus::kUnbounded);
    if (!s.optimal()) continue;
    ++optimal;
    ExpectCertificate(lp, s);
    const LPSolution again = SolveLP(lp);
    EXPECT_EQ(again.primal, s.primal);
    EXPECT_EQ(again.dual, s.dual);
  }
  EXPECT_GT(optimal, 20);
}

// Appending rows to a solved program and re-optimizing reaches the optimum
// of the program solved from scratch with all rows.
TEST(SimplexSessionTest, AppendedRowsMatchFromScratch) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-3, 5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + trial % 4;
    const RationalMatrix w = testing::RandomGridMatrix(n, 5, rng);
    LinearProgram lp = AssignmentLp(w);
    internal::SimplexSession session(lp);
    ASSERT_TRUE(session.Solve().optimal());
    LPSolution last;
    bool feasible = true;
    for (int cut = 0; cut < 3 && feasible; ++cut) {
      std::vector<std::pair<std::size_t, Rational>> terms;
      for (std::size_t v = 0; v < n * n; ++v) {
        const int c = coef(rng);
        if (c != 0) terms.emplace_back(v, Rational(c));
      }
      const Rational rhs(coef(rng), 4);
      session.AddGreaterEqualRow(terms, rhs);
      lp.AddSparseConstraint(terms, Relation::kGreaterEqual, rhs);
      last = session.Reoptimize();
      const LPSolution scratch = SolveLP(lp);
      ASSERT_EQ(last.status, scratch.status);
      feasible = last.optimal();
      if (feasible) {
        EXPECT_EQ(last.objective_value, scratch.objective_value);
        ExpectCertificate(lp, last);
      }
    }
  }
}

TEST(SimplexSessionTest, InfeasibleAppendedRow) {
  LinearProgram lp = AssignmentLp(RationalMatrix::FromRows({{1, 0}, {0, 1}}));
  internal::SimplexSession session(lp);
  ASSERT_TRUE(session.Solve().optimal());
  session.AddGreaterEqualRow({{0, Rational(1)}}, Rational(2));
  EXPECT_EQ(session.Reoptimize().status, LPStatus::kInfeasible);
}

}  // namespace
}  // namespace matchmarket
