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

#ifndef MATCHMARKET_SEARCH_H_
#define MATCHMARKET_SEARCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "matchmarket/market.h"
#include "matchmarket/matrix.h"
#include "matchmarket/rational.h"

namespace matchmarket {

enum class WeightDistribution {
  kUniform,     // uniform on (0, 1]
  kLogUniform,  // 2^(-16 u) with u uniform on [0, 1)
};
std::string ToString(WeightDistribution distribution);
// Accepts "uniform" and "log-uniform".
WeightDistribution ParseWeightDistribution(const std::string& text);

struct SearchConfig {
  int trials = 100;
  std::uint64_t seed = 0;
  WeightDistribution distribution = WeightDistribution::kUniform;
  // Worker threads. The outcome does not depend on this.
  int jobs = 1;

  // Throws PreconditionError unless trials >= 1 and jobs >= 1.
  void Validate() const;
};

// Weights are multiples of 2^-16 in (0, 1].
inline constexpr long kWeightDenominator = 1L << 16;

struct TrialRecord {
  int trial = 0;
  std::vector<Rational> alpha;
  std::vector<Rational> beta;  // two-sided only
  Rational lp_value;
  std::size_t cuts = 0;  // envy rows that had to be added
  std::string verdict;   // audit outcome of the vertex
  bool passed = false;
};

struct SearchResult {
  bool found = false;
  int trial = -1;  // index of the first successful trial
  RationalMatrix x;
  // Every trial up to and including the successful one (all trials when
  // nothing was found), in trial order.
  std::vector<TrialRecord> log;
};

// The weights of trial t depend only on (seed, t).
void DrawTrialWeights(const SearchConfig& config, int trial, std::size_t n,
                      bool two_sided, std::vector<Rational>& alpha,
                      std::vector<Rational>& beta);

// Per trial: draw positive weights, take an optimal vertex of the weighted
// welfare over the envy-free polytope (both sides on two-sided instances)
// and return it if it is Pareto-optimal. Not finding one is not a proof of
// non-existence.
SearchResult SearchEfpo(const Instance& instance, const SearchConfig& config);

// Same over the justified-envy-free polytope; a vertex passes when it is
// weakly Pareto-optimal. Two-sided instances only.
SearchResult SearchJefWeakPo(const Instance& instance,
                             const SearchConfig& config);

// From an envy-free and Pareto-optimal allocation, recovers welfare weights
// for which it is optimal over all allocations and returns an optimal
// vertex of the same weighted welfare over the envy-free polytope. The
// vertex is envy-free and Pareto-optimal. Throws PreconditionError if the
// witness has envy and NotParetoOptimal if it is not Pareto-optimal.
RationalMatrix EfpoVertexFromWitness(const Instance& instance,
                                     const RationalMatrix& witness);

}  // namespace matchmarket

#endif  // MATCHMARKET_SEARCH_H_
