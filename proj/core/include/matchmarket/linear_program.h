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

#ifndef MATCHMARKET_LINEAR_PROGRAM_H_
#define MATCHMARKET_LINEAR_PROGRAM_H_

#include <cstddef>
#include <string>
#include <vector>

#include "matchmarket/rational.h"

namespace matchmarket {

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class VarBound { kNonNegative, kFree };

// A dense linear program over the rationals:
//
//   optimize  objective . x
//   s.t.      rows[r] . x  (relations[r])  rhs[r]
//             x_j >= 0 or x_j free
class LinearProgram {
 public:
  LinearProgram() = default;
  explicit LinearProgram(Sense sense) : sense_(sense) {}

  // Returns the index of the new variable. Existing rows are zero-extended.
  std::size_t AddVariable(Rational cost = Rational(0),
                          VarBound bound = VarBound::kNonNegative);
  std::size_t AddVariables(std::size_t count,
                           VarBound bound = VarBound::kNonNegative);

  // `coefficients` must have one entry per variable.
  std::size_t AddConstraint(std::vector<Rational> coefficients,
                            Relation relation, Rational rhs);

  // Sparse convenience form: (variable, coefficient) pairs.
  std::size_t AddSparseConstraint(
      const std::vector<std::pair<std::size_t, Rational>>& terms,
      Relation relation, Rational rhs);

  void set_sense(Sense sense) { sense_ = sense; }
  void set_cost(std::size_t var, Rational cost);

  Sense sense() const { return sense_; }
  std::size_t num_variables() const { return objective_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }
  const std::vector<Rational>& objective() const { return objective_; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const std::vector<Rational>& rhs() const { return rhs_; }
  const std::vector<VarBound>& bounds() const { return bounds_; }

  // Throws StructuralError if any row width disagrees with the variable
  // count.
  void Validate() const;

 private:
  Sense sense_ = Sense::kMaximize;
  std::vector<Rational> objective_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Relation> relations_;
  std::vector<Rational> rhs_;
  std::vector<VarBound> bounds_;
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

std::string ToString(LPStatus status);

// Dual values follow the sensitivity convention: dual[r] is the rate of
// change of the optimal value with respect to rhs[r]. Under maximization
// that makes duals of <= rows non-negative and duals of >= rows
// non-positive (reversed under minimization), and strong duality reads
// objective . primal == rhs . dual exactly.
struct LPSolution {
  LPStatus status = LPStatus::kInfeasible;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  Rational objective_value;
  std::size_t pivots = 0;

  bool optimal() const { return status == LPStatus::kOptimal; }
};

// Two-phase dense tableau simplex with Bland's rule. Exact and
// deterministic; the primal is a basic (vertex) solution.
LPSolution SolveLP(const LinearProgram& lp);

}  // namespace matchmarket

#endif  // MATCHMARKET_LINEAR_PROGRAM_H_
