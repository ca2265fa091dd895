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

#ifndef MATCHMARKET_NASH_H_
#define MATCHMARKET_NASH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "matchmarket/market.h"
#include "matchmarket/matrix.h"

namespace matchmarket {

enum class StepRule {
  kLineSearch,  // bisection on the directional derivative
  kHarmonic,    // 2 / (t + 2)
};
std::string ToString(StepRule rule);
// Accepts "line-search" and "harmonic".
StepRule ParseStepRule(const std::string& text);

enum class FrankWolfeVariant {
  kVanilla,   // move toward the oracle vertex
  kPairwise,  // move weight from the worst active vertex to the oracle vertex
};
std::string ToString(FrankWolfeVariant variant);
// Accepts "vanilla" and "pairwise".
FrankWolfeVariant ParseFrankWolfeVariant(const std::string& text);

struct NashConfig {
  double tolerance = 1e-9;  // stop once the Frank-Wolfe gap is this small
  int max_iterations = 200000;
  double delta = 1e-12;  // guard inside the logarithms
  StepRule step_rule = StepRule::kLineSearch;
  // The harmonic step rule always runs the vanilla variant.
  FrankWolfeVariant variant = FrankWolfeVariant::kPairwise;
  int bisection_steps = 50;
  // Keep log_welfare_trace (one entry per iteration).
  bool record_trace = false;

  // Throws PreconditionError on tolerance <= 0, delta < 0 or
  // max_iterations < 0.
  void Validate() const;
};

struct NashResult {
  DoubleMatrix x;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> utilities_a;  // u_i . x_i
  std::vector<double> utilities_b;  // w_j . x_j (two-sided only)
  // sum of log(utility + delta) over the agents in the objective.
  double log_welfare = 0.0;
  std::vector<double> log_welfare_trace;
};

// Maximizes sum_i log(u_i.x_i + delta) (plus sum_j log(w_j.x_j + delta) on
// two-sided instances) over the doubly-stochastic matrices by conditional
// gradient, starting from the uniform allocation (the average of the n
// cyclic shifts). The linear maximization step is a maximum-weight perfect
// matching on the gradient; the pairwise variant additionally tracks the
// matchings x is a combination of. Agents whose
// utility row is all zero are left out of the objective. Throws
// PreconditionError if no agent has a positive utility.
NashResult SolveNash(const Instance& instance, const NashConfig& config = {});

// Frank-Wolfe gap max_v grad F(x).(v - x) of the objective above at x.
double NashGap(const Instance& instance, const DoubleMatrix& x,
               double delta = 1e-12);

// Rounds every entry to the nearest multiple of 1/denominator and repairs
// the sums exactly: surplus is removed from the rows and then the columns
// of the rounded support, and the remaining row/column deficits are filled
// greedily, first on the original support and then in index order. The
// output is exactly doubly stochastic with all denominators dividing
// `denominator`. Throws NotDoublyStochastic if x is not square or the
// repair fails.
RationalMatrix Rationalize(const DoubleMatrix& x, std::int64_t denominator);

struct IcExperimentResult {
  int n = 0;
  double truthful_utility = 0.0;  // agent 0's true utility, truthful report
  double lying_utility = 0.0;     // agent 0's true utility after mimicking
  double ratio = 0.0;             // lying / truthful
  NashResult truthful;
  NashResult lying;
};

// On the ic family, solves the Nash program once with agent 0's true
// utilities and once with agent 0 reporting the utilities of the others.
IcExperimentResult RunIcExperiment(int n, const NashConfig& config = {});

}  // namespace matchmarket

#endif  // MATCHMARKET_NASH_H_
