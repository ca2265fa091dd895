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

#include "matchmarket/nash.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "matchmarket/assignment.h"
#include "matchmarket/errors.h"
#include "matchmarket/generators.h"

namespace matchmarket {
namespace {

// The objective restricted to agents with a non-zero utility row.
class NashObjective {
 public:
  NashObjective(const Instance& instance, double delta)
      : n_(instance.size()),
        delta_(delta),
        u_(ToDouble(instance.u)),
        two_sided_(instance.two_sided()) {
    if (two_sided_) w_ = ToDouble(*instance.w);
    active_a_ = ActiveRows(u_);
    if (two_sided_) active_b_ = ActiveRows(w_);
    if (active_a_.empty() && active_b_.empty()) {
      throw PreconditionError("every agent has an all-zero utility row");
    }
  }

  std::size_t n() const { return n_; }

  // Utilities of both sides at x; B-side entries stored after the A-side.
  std::vector<double> Utilities(const DoubleMatrix& x) const {
    std::vector<double> values(two_sided_ ? 2 * n_ : n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        values[i] += u_(i, j) * x(i, j);
        if (two_sided_) values[n_ + j] += w_(j, i) * x(i, j);
      }
    }
    return values;
  }

  std::vector<double> UtilitiesOfMatching(const Permutation& perm) const {
    std::vector<double> values(two_sided_ ? 2 * n_ : n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      values[i] = u_(i, perm[i]);
      if (two_sided_) values[n_ + perm[i]] = w_(perm[i], i);
    }
    return values;
  }

  double Value(const std::vector<double>& utilities) const {
    double total = 0.0;
    for (std::size_t i : active_a_) total += std::log(utilities[i] + delta_);
    for (std::size_t j : active_b_) {
      total += std::log(utilities[n_ + j] + delta_);
    }
    return total;
  }

  DoubleMatrix Gradient(const std::vector<double>& utilities) const {
    DoubleMatrix g(n_, n_, 0.0);
    for (std::size_t i : active_a_) {
      const double scale = 1.0 / (utilities[i] + delta_);
      for (std::size_t j = 0; j < n_; ++j) g(i, j) += u_(i, j) * scale;
    }
    for (std::size_t j : active_b_) {
      const double scale = 1.0 / (utilities[n_ + j] + delta_);
      for (std::size_t i = 0; i < n_; ++i) g(i, j) += w_(j, i) * scale;
    }
    return g;
  }

  // d/ds of the objective at x + s (v - x), given utilities at x and the
  // per-agent change in utility along the segment.
  double Slope(const std::vector<double>& utilities,
               const std::vector<double>& change, double s) const {
    double total = 0.0;
    for (std::size_t i : active_a_) {
      total += change[i] / (utilities[i] + s * change[i] + delta_);
    }
    for (std::size_t j : active_b_) {
      const std::size_t k = n_ + j;
      total += change[k] / (utilities[k] + s * change[k] + delta_);
    }
    return total;
  }

 private:
  static std::vector<std::size_t> ActiveRows(const DoubleMatrix& m) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m(i, j) > 0.0) {
          rows.push_back(i);
          break;
        }
      }
    }
    return rows;
  }

  std::size_t n_;
  double delta_;
  DoubleMatrix u_;
  DoubleMatrix w_;
  bool two_sided_;
  std::vector<std::size_t> active_a_;
  std::vector<std::size_t> active_b_;
};

std::vector<double> Change(const std::vector<double>& at_x,
                           const std::vector<double>& at_v) {
  std::vector<double> change(at_x.size());
  for (std::size_t k = 0; k < at_x.size(); ++k) change[k] = at_v[k] - at_x[k];
  return change;
}

// Maximizer of the objective on x + s d, s in [0, max_step].
double LineSearch(const NashObjective& objective,
                  const std::vector<double>& utilities,
                  const std::vector<double>& change, double max_step,
                  int steps) {
  if (objective.Slope(utilities, change, max_step) >= 0.0) return max_step;
  double lo = 0.0;
  double hi = max_step;
  for (int k = 0; k < steps; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (objective.Slope(utilities, change, mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Convex combination of matchings.
class ActiveSet {
 public:
  explicit ActiveSet(std::size_t n) {
    for (std::size_t shift = 0; shift < n; ++shift) {
      Permutation perm(n);
      for (std::size_t i = 0; i < n; ++i) {
        perm[i] = static_cast<int>((i + shift) % n);
      }
      Add(perm, 1.0 / static_cast<double>(n));
    }
  }

  void Add(const Permutation& perm, double weight) {
    auto [it, inserted] = index_.try_emplace(perm, vertices_.size());
    if (inserted) {
      vertices_.push_back({perm, weight});
    } else {
      vertices_[it->second].weight += weight;
    }
  }

  // Index of the active matching with the smallest gradient value.
  std::size_t Worst(const DoubleMatrix& gradient) const {
    std::size_t worst = 0;
    double worst_value = 0.0;
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
      double value = 0.0;
      const Permutation& perm = vertices_[k].perm;
      for (std::size_t i = 0; i < perm.size(); ++i) {
        value += gradient(i, perm[i]);
      }
      if (k == 0 || value < worst_value) {
        worst = k;
        worst_value = value;
      }
    }
    return worst;
  }

  const Permutation& perm(std::size_t k) const { return vertices_[k].perm; }
  double weight(std::size_t k) const { return vertices_[k].weight; }

  // Moves `amount` of weight off vertex k, dropping it once exhausted.
  void Shift(std::size_t k, double amount, bool drop) {
    if (!drop) {
      vertices_[k].weight -= amount;
      return;
    }
    index_.erase(vertices_[k].perm);
    if (k + 1 != vertices_.size()) {
      vertices_[k] = std::move(vertices_.back());
      index_[vertices_[k].perm] = k;
    }
    vertices_.pop_back();
  }

 private:
  struct Vertex {
    Permutation perm;
    double weight;
  };
  std::vector<Vertex> vertices_;
  std::map<Permutation, std::size_t> index_;
};

void Fill(NashResult& result, const NashObjective& objective,
          const std::vector<double>& utilities, bool two_sided) {
  const std::size_t n = objective.n();
  result.utilities_a.assign(utilities.begin(), utilities.begin() + n);
  if (two_sided) {
    result.utilities_b.assign(utilities.begin() + n, utilities.end());
  }
  result.log_welfare = objective.Value(utilities);
}

}  // namespace

std::string ToString(StepRule rule) {
  return rule == StepRule::kLineSearch ? "line-search" : "harmonic";
}

StepRule ParseStepRule(const std::string& text) {
  if (text == "line-search") return StepRule::kLineSearch;
  if (text == "harmonic") return StepRule::kHarmonic;
  throw ParseError("unknown step rule \"" + text +
                   "\" (expected line-search or harmonic)");
}

std::string ToString(FrankWolfeVariant variant) {
  return variant == FrankWolfeVariant::kVanilla ? "vanilla" : "pairwise";
}

FrankWolfeVariant ParseFrankWolfeVariant(const std::string& text) {
  if (text == "vanilla") return FrankWolfeVariant::kVanilla;
  if (text == "pairwise") return FrankWolfeVariant::kPairwise;
  throw ParseError("unknown Frank-Wolfe variant \"" + text +
                   "\" (expected vanilla or pairwise)");
}

void NashConfig::Validate() const {
  if (!(tolerance > 0.0)) throw PreconditionError("tolerance must be > 0");
  if (!(delta >= 0.0)) throw PreconditionError("delta must be >= 0");
  if (max_iterations < 0) {
    throw PreconditionError("max_iterations must be >= 0");
  }
}

NashResult SolveNash(const Instance& instance, const NashConfig& config) {
  config.Validate();
  instance.Validate();
  const NashObjective objective(instance, config.delta);
  const std::size_t n = instance.size();

  NashResult result;
  result.x = DoubleMatrix(n, n, 1.0 / static_cast<double>(n));
  std::vector<double> utilities = objective.Utilities(result.x);
  if (config.record_trace) {
    result.log_welfare_trace.push_back(objective.Value(utilities));
  }

  const bool pairwise = config.variant == FrankWolfeVariant::kPairwise &&
                        config.step_rule == StepRule::kLineSearch;
  ActiveSet active(pairwise ? n : 0);

  for (int t = 0;; ++t) {
    const DoubleMatrix gradient = objective.Gradient(utilities);
    const DoubleMatching vertex = MaxWeightPerfectMatching(gradient);
    const std::vector<double> at_vertex =
        objective.UtilitiesOfMatching(vertex.perm);
    const std::vector<double> toward = Change(utilities, at_vertex);
    result.gap = std::max(0.0, objective.Slope(utilities, toward, 0.0));
    result.iterations = t;
    if (result.gap <= config.tolerance) {
      result.converged = true;
      break;
    }
    if (t >= config.max_iterations) break;

    if (pairwise) {
      const std::size_t away = active.Worst(gradient);
      const Permutation away_perm = active.perm(away);
      const double max_step = active.weight(away);
      const std::vector<double> change =
          Change(objective.UtilitiesOfMatching(away_perm), at_vertex);
      const double step = LineSearch(objective, utilities, change, max_step,
                                     config.bisection_steps);
      for (std::size_t i = 0; i < n; ++i) {
        result.x(i, away_perm[i]) -= step;
        result.x(i, vertex.perm[i]) += step;
      }
      for (std::size_t k = 0; k < utilities.size(); ++k) {
        utilities[k] += step * change[k];
      }
      active.Shift(away, step, step == max_step);
      active.Add(vertex.perm, step);
    } else {
      const double step = config.step_rule == StepRule::kLineSearch
                              ? LineSearch(objective, utilities, toward, 1.0,
                                           config.bisection_steps)
                              : 2.0 / (t + 2.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) result.x(i, j) *= 1.0 - step;
        result.x(i, vertex.perm[i]) += step;
      }
      for (std::size_t k = 0; k < utilities.size(); ++k) {
        utilities[k] += step * toward[k];
      }
    }
    if (config.record_trace) {
      result.log_welfare_trace.push_back(objective.Value(utilities));
    }
  }
  // Recompute from x to shed the drift of the incremental updates.
  Fill(result, objective, objective.Utilities(result.x), instance.two_sided());
  return result;
}

double NashGap(const Instance& instance, const DoubleMatrix& x, double delta) {
  const NashObjective objective(instance, delta);
  if (x.rows() != instance.size() || x.cols() != instance.size()) {
    throw StructuralError("allocation shape does not match the instance");
  }
  const std::vector<double> utilities = objective.Utilities(x);
  const DoubleMatching vertex =
      MaxWeightPerfectMatching(objective.Gradient(utilities));
  const std::vector<double> change =
      Change(utilities, objective.UtilitiesOfMatching(vertex.perm));
  return std::max(0.0, objective.Slope(utilities, change, 0.0));
}

RationalMatrix Rationalize(const DoubleMatrix& x, std::int64_t denominator) {
  if (!x.is_square()) throw NotDoublyStochastic("allocation must be square");
  if (denominator < 1) throw PreconditionError("denominator must be >= 1");
  const std::size_t n = x.rows();
  const Rational zero(0);
  const Rational one(1);

  RationalMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(x(i, j))) {
        throw NotDoublyStochastic("allocation has a non-finite entry");
      }
      r(i, j) = Max(zero, Rational::RoundToGrid(x(i, j), denominator));
    }
  }

  auto trim = [&](bool rows) {
    for (std::size_t a = 0; a < n; ++a) {
      Rational sum;
      for (std::size_t b = 0; b < n; ++b) sum += rows ? r(a, b) : r(b, a);
      Rational surplus = sum - one;
      for (std::size_t b = 0; b < n && surplus.sign() > 0; ++b) {
        Rational& entry = rows ? r(a, b) : r(b, a);
        const Rational take = Min(entry, surplus);
        entry -= take;
        surplus -= take;
      }
    }
  };
  trim(true);
  trim(false);

  std::vector<Rational> row_need(n, one);
  std::vector<Rational> col_need(n, one);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      row_need[i] -= r(i, j);
      col_need[j] -= r(i, j);
    }
  }
  auto fill = [&](bool support_only) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n && row_need[i].sign() > 0; ++j) {
        if (col_need[j].sign() <= 0) continue;
        if (support_only && !(x(i, j) > 0.0)) continue;
        const Rational add = Min(row_need[i], col_need[j]);
        r(i, j) += add;
        row_need[i] -= add;
        col_need[j] -= add;
      }
    }
  };
  fill(true);
  fill(false);
  if (!IsDoublyStochastic(r)) {
    throw NotDoublyStochastic("exact repair failed");
  }
  return r;
}

IcExperimentResult RunIcExperiment(int n, const NashConfig& config) {
  if (n < 2) throw PreconditionError("ic experiment needs n >= 2");
  const Instance truthful = Generate({Family::kIc, n});
  Instance lying = truthful;
  for (int j = 0; j < n; ++j) lying.u(0, j) = truthful.u(1, j);

  IcExperimentResult out;
  out.n = n;
  out.truthful = SolveNash(truthful, config);
  out.lying = SolveNash(lying, config);
  out.truthful_utility =
      ValueOfRow(truthful.u, 0, out.truthful.x, 0);
  out.lying_utility = ValueOfRow(truthful.u, 0, out.lying.x, 0);
  out.ratio = out.lying_utility / out.truthful_utility;
  return out;
}

}  // namespace matchmarket
