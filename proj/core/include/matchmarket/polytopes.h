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

#ifndef MATCHMARKET_POLYTOPES_H_
#define MATCHMARKET_POLYTOPES_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "matchmarket/linear_program.h"
#include "matchmarket/market.h"
#include "matchmarket/matrix.h"
#include "matchmarket/rational.h"

namespace matchmarket {

// Feasible regions for allocations x (n x n, variable x(i, j) has LP index
// i * n + j).
enum class Polytope {
  kPerfectMatching,  // doubly-stochastic matrices
  // kPerfectMatching plus u_i.x_i >= u_i.x_i' for all i != i', and on
  // two-sided instances w_j.x_j >= w_j.x_j' as well.
  kEnvyFree,
  // kPerfectMatching plus u_i.x_i >= sum_{j : w_ji >= w_ji'} u_ij x_i'j and
  // the mirrored B-side rows. Two-sided instances only.
  kJustifiedEnvyFree,
};

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

// Coefficients of u_agent . x_owner over the LP variables.
SparseRow RowUtilityTerms(const RationalMatrix& u, std::size_t agent,
                          std::size_t owner);
// Coefficients of w_agent . x_col(owner) = sum_i w(agent, i) x(i, owner).
SparseRow ColumnUtilityTerms(const RationalMatrix& w, std::size_t agent,
                             std::size_t owner);

// Appends n^2 non-negative variables (zero cost) and the 2n unit row and
// column equalities. Returns the index of the first variable.
std::size_t AddPerfectMatchingBlock(LinearProgram& lp, std::size_t n);

// One linear inequality `terms >= 0` cutting out part of a polytope.
struct Cut {
  SparseRow terms;
};
// All envy / justified-envy rows of `polytope` (empty for
// kPerfectMatching). Throws PreconditionError for kJustifiedEnvyFree on a
// one-sided instance.
std::vector<Cut> PolytopeCuts(const Instance& instance, Polytope polytope);

// Value of `terms` at the allocation x.
Rational EvaluateRow(const SparseRow& terms, const RationalMatrix& x);

RationalMatrix AllocationFromPrimal(const std::vector<Rational>& primal,
                                    std::size_t n, std::size_t offset = 0);

// Weighted welfare objective: c(i, j) = alpha_i u_ij + beta_j w_ji (the
// beta term only on two-sided instances; empty beta means zero).
RationalMatrix WelfareObjective(const Instance& instance,
                                const std::vector<Rational>& alpha,
                                const std::vector<Rational>& beta);

struct PolytopeSolution {
  LPStatus status = LPStatus::kInfeasible;
  RationalMatrix x;  // an exact vertex of the polytope when optimal
  Rational value;
  std::size_t cuts_used = 0;
  std::size_t rounds = 0;
  bool optimal() const { return status == LPStatus::kOptimal; }
};

// Optimizes sum_ij objective(i, j) x(i, j) over `polytope`. Envy rows are
// generated lazily: the LP over the perfect-matching polytope is re-solved
// with every violated row added until its optimal vertex satisfies all of
// them, which makes that vertex a vertex of the full polytope.
PolytopeSolution OptimizeOverPolytope(const Instance& instance,
                                      Polytope polytope,
                                      const RationalMatrix& objective,
                                      Sense sense = Sense::kMaximize);

}  // namespace matchmarket

#endif  // MATCHMARKET_POLYTOPES_H_
