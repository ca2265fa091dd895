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

#include "matchmarket/polytopes.h"

#include <string>

#include "matchmarket/errors.h"
#include "simplex_session.h"

namespace matchmarket {

SparseRow RowUtilityTerms(const RationalMatrix& u, std::size_t agent,
                          std::size_t owner) {
  const std::size_t n = u.cols();
  SparseRow terms;
  for (std::size_t j = 0; j < n; ++j) {
    if (!u(agent, j).is_zero()) terms.emplace_back(owner * n + j, u(agent, j));
  }
  return terms;
}

SparseRow ColumnUtilityTerms(const RationalMatrix& w, std::size_t agent,
                             std::size_t owner) {
  const std::size_t n = w.cols();
  SparseRow terms;
  for (std::size_t i = 0; i < n; ++i) {
    if (!w(agent, i).is_zero()) terms.emplace_back(i * n + owner, w(agent, i));
  }
  return terms;
}

std::size_t AddPerfectMatchingBlock(LinearProgram& lp, std::size_t n) {
  const std::size_t first = lp.AddVariables(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    SparseRow row;
    for (std::size_t j = 0; j < n; ++j) row.emplace_back(first + i * n + j, 1);
    lp.AddSparseConstraint(row, Relation::kEqual, Rational(1));
  }
  for (std::size_t j = 0; j < n; ++j) {
    SparseRow col;
    for (std::size_t i = 0; i < n; ++i) col.emplace_back(first + i * n + j, 1);
    lp.AddSparseConstraint(col, Relation::kEqual, Rational(1));
  }
  return first;
}

namespace {

// own - other, merging equal indices.
SparseRow Difference(const SparseRow& own, const SparseRow& other) {
  SparseRow out = own;
  for (const auto& [var, coef] : other) out.emplace_back(var, -coef);
  return out;
}

void AddEnvyCuts(const RationalMatrix& u, std::vector<Cut>& cuts) {
  const std::size_t n = u.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t other = 0; other < n; ++other) {
      if (other == i) continue;
      cuts.push_back(
          {Difference(RowUtilityTerms(u, i, i), RowUtilityTerms(u, i, other))});
    }
  }
}

void AddColumnEnvyCuts(const RationalMatrix& w, std::vector<Cut>& cuts) {
  const std::size_t n = w.rows();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t other = 0; other < n; ++other) {
      if (other == j) continue;
      cuts.push_back({Difference(ColumnUtilityTerms(w, j, j),
                                 ColumnUtilityTerms(w, j, other))});
    }
  }
}

}  // namespace

std::vector<Cut> PolytopeCuts(const Instance& instance, Polytope polytope) {
  std::vector<Cut> cuts;
  const std::size_t n = instance.size();
  switch (polytope) {
    case Polytope::kPerfectMatching:
      break;
    case Polytope::kEnvyFree:
      AddEnvyCuts(instance.u, cuts);
      if (instance.two_sided()) AddColumnEnvyCuts(*instance.w, cuts);
      break;
    case Polytope::kJustifiedEnvyFree: {
      if (!instance.two_sided()) {
        throw PreconditionError(
            "justified envy-freeness needs a two-sided instance");
      }
      const RationalMatrix& u = instance.u;
      const RationalMatrix& w = *instance.w;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t other = 0; other < n; ++other) {
          if (other == i) continue;
          SparseRow row = RowUtilityTerms(u, i, i);
          for (std::size_t j = 0; j < n; ++j) {
            if (w(j, i) >= w(j, other) && !u(i, j).is_zero()) {
              row.emplace_back(other * n + j, -u(i, j));
            }
          }
          cuts.push_back({std::move(row)});
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t other = 0; other < n; ++other) {
          if (other == j) continue;
          SparseRow row = ColumnUtilityTerms(w, j, j);
          for (std::size_t i = 0; i < n; ++i) {
            if (u(i, j) >= u(i, other) && !w(j, i).is_zero()) {
              row.emplace_back(i * n + other, -w(j, i));
            }
          }
          cuts.push_back({std::move(row)});
        }
      }
      break;
    }
  }
  return cuts;
}

Rational EvaluateRow(const SparseRow& terms, const RationalMatrix& x) {
  const std::size_t n = x.cols();
  Rational total;
  for (const auto& [var, coef] : terms) total += coef * x(var / n, var % n);
  return total;
}

RationalMatrix AllocationFromPrimal(const std::vector<Rational>& primal,
                                    std::size_t n, std::size_t offset) {
  RationalMatrix x(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) x(i, j) = primal[offset + i * n + j];
  }
  return x;
}

RationalMatrix WelfareObjective(const Instance& instance,
                                const std::vector<Rational>& alpha,
                                const std::vector<Rational>& beta) {
  const std::size_t n = instance.size();
  if (alpha.size() != n || (!beta.empty() && beta.size() != n)) {
    throw StructuralError("welfare weights must have one entry per agent");
  }
  RationalMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      c(i, j) = alpha[i] * instance.u(i, j);
      if (instance.two_sided() && !beta.empty()) {
        c(i, j) += beta[j] * (*instance.w)(j, i);
      }
    }
  }
  return c;
}

PolytopeSolution OptimizeOverPolytope(const Instance& instance,
                                      Polytope polytope,
                                      const RationalMatrix& objective,
                                      Sense sense) {
  const std::size_t n = instance.size();
  if (objective.rows() != n || objective.cols() != n) {
    throw StructuralError("objective shape does not match the instance");
  }
  const std::vector<Cut> cuts = PolytopeCuts(instance, polytope);
  std::vector<char> active(cuts.size(), 0);

  LinearProgram lp(sense);
  AddPerfectMatchingBlock(lp, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) lp.set_cost(i * n + j, objective(i, j));
  }

  // Rounds after the first keep the tableau and re-optimize with dual
  // simplex.
  internal::SimplexSession session(lp);
  PolytopeSolution result;
  bool first = true;
  while (true) {
    ++result.rounds;
    LPSolution solution = first ? session.Solve() : session.Reoptimize();
    first = false;
    result.status = solution.status;
    if (!solution.optimal()) return result;
    RationalMatrix x = AllocationFromPrimal(solution.primal, n);
    bool added = false;
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      if (active[c] || EvaluateRow(cuts[c].terms, x).sign() >= 0) continue;
      session.AddGreaterEqualRow(cuts[c].terms, Rational(0));
      active[c] = 1;
      ++result.cuts_used;
      added = true;
    }
    if (!added) {
      result.x = std::move(x);
      result.value = std::move(solution.objective_value);
      return result;
    }
  }
}

}  // namespace matchmarket
