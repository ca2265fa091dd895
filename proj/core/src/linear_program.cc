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

#include <gmp.h>

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "matchmarket/errors.h"
#include "simplex_session.h"

namespace matchmarket {

std::size_t LinearProgram::AddVariable(Rational cost, VarBound bound) {
  objective_.push_back(std::move(cost));
  bounds_.push_back(bound);
  for (auto& row : rows_) row.emplace_back(0);
  return objective_.size() - 1;
}

std::size_t LinearProgram::AddVariables(std::size_t count, VarBound bound) {
  const std::size_t first = objective_.size();
  objective_.resize(first + count);
  bounds_.resize(first + count, bound);
  for (auto& row : rows_) row.resize(first + count);
  return first;
}

std::size_t LinearProgram::AddConstraint(std::vector<Rational> coefficients,
                                         Relation relation, Rational rhs) {
  if (coefficients.size() != objective_.size()) {
    throw StructuralError("constraint has " +
                          std::to_string(coefficients.size()) +
                          " coefficients but the program has " +
                          std::to_string(objective_.size()) + " variables");
  }
  rows_.push_back(std::move(coefficients));
  relations_.push_back(relation);
  rhs_.push_back(std::move(rhs));
  return rows_.size() - 1;
}

std::size_t LinearProgram::AddSparseConstraint(
    const std::vector<std::pair<std::size_t, Rational>>& terms,
    Relation relation, Rational rhs) {
  std::vector<Rational> row(objective_.size());
  for (const auto& [var, coef] : terms) {
    if (var >= row.size()) {
      throw StructuralError("constraint references variable " +
                            std::to_string(var) + " of " +
                            std::to_string(row.size()));
    }
    row[var] += coef;
  }
  return AddConstraint(std::move(row), relation, std::move(rhs));
}

void LinearProgram::set_cost(std::size_t var, Rational cost) {
  if (var >= objective_.size()) {
    throw StructuralError("cost index out of range");
  }
  objective_[var] = std::move(cost);
}

void LinearProgram::Validate() const {
  const std::size_t n = objective_.size();
  if (bounds_.size() != n) throw StructuralError("bounds/objective mismatch");
  if (relations_.size() != rows_.size() || rhs_.size() != rows_.size()) {
    throw StructuralError("relations/rhs/rows length mismatch");
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != n) {
      throw StructuralError("row " + std::to_string(r) + " has width " +
                            std::to_string(rows_[r].size()) + ", expected " +
                            std::to_string(n));
    }
  }
}

std::string ToString(LPStatus status) {
  switch (status) {
    case LPStatus::kOptimal:
      return "Optimal";
    case LPStatus::kInfeasible:
      return "Infeasible";
    case LPStatus::kUnbounded:
      return "Unbounded";
  }
  return "Unknown";
}

namespace {

// Dense tableau over mpq_class. Rows 0..m-1 are constraints, each stored as
// its column coefficients followed by the rhs; the two cost rows hold
// reduced costs c_j - c_B B^-1 A_j and, in the rhs slot, minus the current
// objective value.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows),
        n_(cols),
        a_(rows, std::vector<mpq_class>(cols + 1)),
        phase1_(cols + 1),
        phase2_(cols + 1),
        basis_(rows, 0),
        is_artificial_(cols, false) {}

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  mpq_class& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  mpq_class& rhs(std::size_t r) { return a_[r][n_]; }
  std::vector<mpq_class>& row(std::size_t r) { return a_[r]; }
  std::vector<mpq_class>& phase1() { return phase1_; }
  std::vector<mpq_class>& phase2() { return phase2_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::vector<bool>& artificial() { return is_artificial_; }

  // Appends an all-zero column and returns its index.
  std::size_t AddColumn() {
    for (auto& r : a_) r.insert(r.end() - 1, mpq_class(0));
    phase1_.insert(phase1_.end() - 1, mpq_class(0));
    phase2_.insert(phase2_.end() - 1, mpq_class(0));
    is_artificial_.push_back(false);
    return n_++;
  }

  // Appends `row` (cols + 1 entries) with the given basic column. The
  // caller must have eliminated the other basic columns from it.
  void AddRow(std::vector<mpq_class> row, std::size_t basic) {
    a_.push_back(std::move(row));
    basis_.push_back(basic);
    ++m_;
  }

  void Pivot(std::size_t p, std::size_t e, bool update_phase1) {
    std::vector<mpq_class>& prow = a_[p];
    mpq_class inv;
    mpq_inv(inv.get_mpq_t(), prow[e].get_mpq_t());
    nonzero_.clear();
    for (std::size_t k = 0; k <= n_; ++k) {
      if (mpq_sgn(prow[k].get_mpq_t()) != 0) {
        mpq_mul(prow[k].get_mpq_t(), prow[k].get_mpq_t(), inv.get_mpq_t());
        nonzero_.push_back(k);
      }
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (r != p) Eliminate(a_[r], prow, e);
    }
    if (update_phase1) Eliminate(phase1_, prow, e);
    Eliminate(phase2_, prow, e);
    basis_[p] = e;
    ++pivots_;
  }

  // row -= row[e] * (row p), for a row p that has already been normalized.
  void EliminateWith(std::vector<mpq_class>& row, std::size_t p,
                     std::size_t e) {
    nonzero_.clear();
    for (std::size_t k = 0; k <= n_; ++k) {
      if (mpq_sgn(a_[p][k].get_mpq_t()) != 0) nonzero_.push_back(k);
    }
    Eliminate(row, a_[p], e);
  }

  std::size_t pivots() const { return pivots_; }

 private:
  void Eliminate(std::vector<mpq_class>& row,
                 const std::vector<mpq_class>& prow, std::size_t e) {
    if (mpq_sgn(row[e].get_mpq_t()) == 0) return;
    mpq_set(factor_.get_mpq_t(), row[e].get_mpq_t());
    for (std::size_t k : nonzero_) {
      mpq_mul(tmp_.get_mpq_t(), factor_.get_mpq_t(), prow[k].get_mpq_t());
      mpq_sub(row[k].get_mpq_t(), row[k].get_mpq_t(), tmp_.get_mpq_t());
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<std::vector<mpq_class>> a_;
  std::vector<mpq_class> phase1_;
  std::vector<mpq_class> phase2_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_artificial_;
  std::vector<std::size_t> nonzero_;
  mpq_class factor_;
  mpq_class tmp_;
  std::size_t pivots_ = 0;
};

// Bland's rule: lowest-index improving column, then among the minimum-ratio
// rows the one whose basic variable has the lowest index.
bool ChooseEntering(Tableau& t, const std::vector<mpq_class>& costs,
                    std::size_t& entering) {
  for (std::size_t j = 0; j < t.cols(); ++j) {
    if (t.artificial()[j]) continue;
    if (mpq_sgn(costs[j].get_mpq_t()) > 0) {
      entering = j;
      return true;
    }
  }
  return false;
}

bool ChooseLeaving(Tableau& t, std::size_t entering, std::size_t& leaving) {
  bool found = false;
  mpq_class best;
  mpq_class ratio;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const mpq_class& coef = t.at(r, entering);
    if (mpq_sgn(coef.get_mpq_t()) <= 0) continue;
    mpq_div(ratio.get_mpq_t(), t.rhs(r).get_mpq_t(), coef.get_mpq_t());
    if (!found) {
      found = true;
      best = ratio;
      leaving = r;
      continue;
    }
    const int c = mpq_cmp(ratio.get_mpq_t(), best.get_mpq_t());
    if (c < 0 || (c == 0 && t.basis()[r] < t.basis()[leaving])) {
      best = ratio;
      leaving = r;
    }
  }
  return found;
}

// Dual simplex with the smallest-index rule on both sides: the infeasible
// row whose basic variable has the lowest index leaves, and among the
// columns attaining the minimum ratio the lowest index enters.
bool ChooseDualLeaving(Tableau& t, std::size_t& leaving) {
  bool found = false;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (mpq_sgn(t.rhs(r).get_mpq_t()) >= 0) continue;
    if (!found || t.basis()[r] < t.basis()[leaving]) {
      leaving = r;
      found = true;
    }
  }
  return found;
}

bool ChooseDualEntering(Tableau& t, std::size_t leaving,
                        std::size_t& entering) {
  bool found = false;
  mpq_class best;
  mpq_class ratio;
  for (std::size_t k = 0; k < t.cols(); ++k) {
    if (t.artificial()[k]) continue;
    const mpq_class& coef = t.at(leaving, k);
    if (mpq_sgn(coef.get_mpq_t()) >= 0) continue;
    mpq_div(ratio.get_mpq_t(), t.phase2()[k].get_mpq_t(), coef.get_mpq_t());
    if (!found || mpq_cmp(ratio.get_mpq_t(), best.get_mpq_t()) < 0) {
      best = ratio;
      entering = k;
      found = true;
    }
  }
  return found;
}

}  // namespace

namespace internal {

struct SimplexSession::State {
  explicit State(const LinearProgram& lp);

  void Run(LPSolution& solution);
  LPSolution Extract();

  bool maximize;
  std::size_t n;  // structural variables
  std::vector<Rational> objective;
  std::vector<std::size_t> pos_col;
  std::vector<long> neg_col;
  // Per row: sign applied to make the rhs non-negative (-1 for appended
  // rows, which are stored as -a.x + s = -rhs) and the column of its
  // identity/slack variable.
  std::vector<int> flip;
  std::vector<std::size_t> identity_col;
  Tableau t;
  bool optimal = false;
};

SimplexSession::State::State(const LinearProgram& lp)
    : maximize(lp.sense() == Sense::kMaximize),
      n(lp.num_variables()),
      objective(lp.objective()),
      t(0, 0) {
  lp.Validate();
  const std::size_t m = lp.num_constraints();

  // Column layout: split structural columns (free variables get a negative
  // part), then one slack/surplus per inequality, then one artificial per
  // >= or = row.
  pos_col.resize(n);
  neg_col.assign(n, -1);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (lp.bounds()[j] == VarBound::kFree) neg_col[j] = static_cast<long>(cols++);
  }
  flip.assign(m, 1);
  std::vector<Relation> rel(m);
  for (std::size_t r = 0; r < m; ++r) {
    rel[r] = lp.relations()[r];
    if (lp.rhs()[r].sign() < 0) {
      flip[r] = -1;
      if (rel[r] == Relation::kLessEqual) {
        rel[r] = Relation::kGreaterEqual;
      } else if (rel[r] == Relation::kGreaterEqual) {
        rel[r] = Relation::kLessEqual;
      }
    }
  }
  std::vector<long> slack_col(m, -1);
  for (std::size_t r = 0; r < m; ++r) {
    if (rel[r] != Relation::kEqual) slack_col[r] = static_cast<long>(cols++);
  }
  identity_col.resize(m);
  std::vector<long> art_col(m, -1);
  for (std::size_t r = 0; r < m; ++r) {
    if (rel[r] == Relation::kLessEqual) {
      identity_col[r] = static_cast<std::size_t>(slack_col[r]);
    } else {
      art_col[r] = static_cast<long>(cols++);
      identity_col[r] = static_cast<std::size_t>(art_col[r]);
    }
  }

  t = Tableau(m, cols);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = lp.rows()[r];
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j].is_zero()) continue;
      mpq_class v = row[j].mpq();
      if (flip[r] < 0) v = -v;
      t.at(r, pos_col[j]) = v;
      if (neg_col[j] >= 0) t.at(r, static_cast<std::size_t>(neg_col[j])) = -v;
    }
    if (slack_col[r] >= 0) {
      t.at(r, static_cast<std::size_t>(slack_col[r])) =
          rel[r] == Relation::kLessEqual ? 1 : -1;
    }
    if (art_col[r] >= 0) {
      t.at(r, static_cast<std::size_t>(art_col[r])) = 1;
      t.artificial()[static_cast<std::size_t>(art_col[r])] = true;
    }
    t.rhs(r) = flip[r] < 0 ? mpq_class(-lp.rhs()[r].mpq()) : lp.rhs()[r].mpq();
    t.basis()[r] = identity_col[r];
  }

  // Internally always maximize.
  for (std::size_t j = 0; j < n; ++j) {
    mpq_class c = lp.objective()[j].mpq();
    if (!maximize) c = -c;
    t.phase2()[pos_col[j]] = c;
    if (neg_col[j] >= 0) t.phase2()[static_cast<std::size_t>(neg_col[j])] = -c;
  }

  for (std::size_t r = 0; r < m; ++r) {
    if (art_col[r] < 0) continue;
    // Artificial columns keep reduced cost -1 + 1 = 0.
    for (std::size_t k = 0; k < cols; ++k) {
      if (!t.artificial()[k]) t.phase1()[k] += t.at(r, k);
    }
    t.phase1()[cols] += t.rhs(r);
  }
}

void SimplexSession::State::Run(LPSolution& solution) {
  const std::size_t m = t.rows();
  const std::size_t cols = t.cols();
  std::size_t entering = 0;
  std::size_t leaving = 0;
  bool any_artificial = false;
  for (std::size_t k = 0; k < cols; ++k) any_artificial |= t.artificial()[k];
  if (any_artificial) {
    while (ChooseEntering(t, t.phase1(), entering)) {
      if (!ChooseLeaving(t, entering, leaving)) break;  // cannot happen
      t.Pivot(leaving, entering, /*update_phase1=*/true);
    }
    // phase1 rhs holds -(phase-1 objective) = sum of artificials.
    if (mpq_sgn(t.phase1()[cols].get_mpq_t()) != 0) {
      solution.status = LPStatus::kInfeasible;
      return;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (!t.artificial()[t.basis()[r]]) continue;
      for (std::size_t k = 0; k < cols; ++k) {
        if (t.artificial()[k]) continue;
        if (mpq_sgn(t.at(r, k).get_mpq_t()) != 0) {
          t.Pivot(r, k, /*update_phase1=*/false);
          break;
        }
      }
      // Otherwise the row is redundant and its artificial stays basic at 0.
    }
  }

  while (ChooseEntering(t, t.phase2(), entering)) {
    if (!ChooseLeaving(t, entering, leaving)) {
      solution.status = LPStatus::kUnbounded;
      return;
    }
    t.Pivot(leaving, entering, /*update_phase1=*/false);
  }
  solution.status = LPStatus::kOptimal;
}

LPSolution SimplexSession::State::Extract() {
  const std::size_t m = t.rows();
  std::vector<mpq_class> column_value(t.cols());
  for (std::size_t r = 0; r < m; ++r) column_value[t.basis()[r]] = t.rhs(r);

  LPSolution solution;
  solution.status = LPStatus::kOptimal;
  solution.primal.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    mpq_class v = column_value[pos_col[j]];
    if (neg_col[j] >= 0) v -= column_value[static_cast<std::size_t>(neg_col[j])];
    solution.primal[j] = Rational(std::move(v));
  }
  solution.dual.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    // Reduced cost of the identity column e_r is -y_r.
    mpq_class y = -t.phase2()[identity_col[r]];
    if (flip[r] < 0) y = -y;
    if (!maximize) y = -y;
    solution.dual[r] = Rational(std::move(y));
  }
  Rational value;
  for (std::size_t j = 0; j < n; ++j) {
    if (!objective[j].is_zero() && !solution.primal[j].is_zero()) {
      value += objective[j] * solution.primal[j];
    }
  }
  solution.objective_value = std::move(value);
  solution.pivots = t.pivots();
  return solution;
}

SimplexSession::SimplexSession(const LinearProgram& lp)
    : state_(std::make_unique<State>(lp)) {}

SimplexSession::~SimplexSession() = default;

LPSolution SimplexSession::Solve() {
  LPSolution solution;
  state_->Run(solution);
  state_->optimal = solution.optimal();
  if (!state_->optimal) {
    solution.pivots = state_->t.pivots();
    return solution;
  }
  return state_->Extract();
}

void SimplexSession::AddGreaterEqualRow(
    const std::vector<std::pair<std::size_t, Rational>>& terms,
    const Rational& rhs) {
  State& s = *state_;
  if (!s.optimal) throw Error("appending a row needs an optimal basis");
  Tableau& t = s.t;
  const std::size_t slack = t.AddColumn();
  std::vector<mpq_class> row(t.cols() + 1);
  for (const auto& [var, coef] : terms) {
    if (var >= s.n) throw StructuralError("row references a missing variable");
    row[s.pos_col[var]] -= coef.mpq();
    if (s.neg_col[var] >= 0) {
      row[static_cast<std::size_t>(s.neg_col[var])] += coef.mpq();
    }
  }
  row[slack] = 1;
  row[t.cols()] = -rhs.mpq();
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const std::size_t basic = t.basis()[r];
    if (mpq_sgn(row[basic].get_mpq_t()) != 0) t.EliminateWith(row, r, basic);
  }
  t.AddRow(std::move(row), slack);
  s.flip.push_back(-1);
  s.identity_col.push_back(slack);
}

LPSolution SimplexSession::Reoptimize() {
  State& s = *state_;
  if (!s.optimal) throw Error("reoptimizing needs a dual feasible basis");
  Tableau& t = s.t;
  LPSolution solution;
  std::size_t leaving = 0;
  std::size_t entering = 0;
  while (ChooseDualLeaving(t, leaving)) {
    if (!ChooseDualEntering(t, leaving, entering)) {
      s.optimal = false;
      solution.status = LPStatus::kInfeasible;
      solution.pivots = t.pivots();
      return solution;
    }
    t.Pivot(leaving, entering, /*update_phase1=*/false);
  }
  s.Run(solution);  // primal clean-up; normally no pivots
  s.optimal = solution.optimal();
  if (!s.optimal) {
    solution.pivots = t.pivots();
    return solution;
  }
  return s.Extract();
}

}  // namespace internal

LPSolution SolveLP(const LinearProgram& lp) {
  return internal::SimplexSession(lp).Solve();
}

}  // namespace matchmarket
