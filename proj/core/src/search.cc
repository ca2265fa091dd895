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

#include "matchmarket/search.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <thread>

#include "matchmarket/auditors.h"
#include "matchmarket/errors.h"
#include "matchmarket/polytopes.h"
#include "rng.h"

namespace matchmarket {
namespace {

Rational DrawWeight(std::mt19937_64& rng, WeightDistribution distribution) {
  if (distribution == WeightDistribution::kUniform) {
    const auto k = internal::UniformBelow(rng, kWeightDenominator) + 1;
    return Rational(static_cast<long>(k), kWeightDenominator);
  }
  const double value = std::exp2(-16.0 * internal::UniformUnit(rng));
  return Max(Rational(1, kWeightDenominator),
             Rational::RoundToGrid(value, kWeightDenominator));
}

struct TrialOutcome {
  TrialRecord record;
  RationalMatrix x;
};

// Runs trials in increasing order on `config.jobs` threads and keeps the
// lowest successful one. Every trial below it is guaranteed to have run.
SearchResult RunTrials(const SearchConfig& config,
                       const std::function<TrialOutcome(int)>& trial_fn) {
  std::vector<std::optional<TrialOutcome>> outcomes(config.trials);
  std::atomic<int> next{0};
  std::atomic<int> best{config.trials};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    while (true) {
      const int t = next.fetch_add(1);
      if (t >= config.trials || t > best.load()) return;
      try {
        TrialOutcome outcome = trial_fn(t);
        const bool passed = outcome.record.passed;
        outcomes[t] = std::move(outcome);
        if (passed) {
          int current = best.load();
          while (t < current && !best.compare_exchange_weak(current, t)) {
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        best.store(-1);
        return;
      }
    }
  };
  const int jobs = std::min(config.jobs, config.trials);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (std::thread& thread : threads) thread.join();
  }
  if (error) std::rethrow_exception(error);

  SearchResult result;
  const int last = std::min(best.load(), config.trials - 1);
  for (int t = 0; t <= last; ++t) {
    result.log.push_back(outcomes[t]->record);
  }
  if (best.load() < config.trials) {
    result.found = true;
    result.trial = best.load();
    result.x = std::move(outcomes[result.trial]->x);
  }
  return result;
}

SearchResult SearchOver(const Instance& instance, const SearchConfig& config,
                        Polytope polytope, bool weak) {
  config.Validate();
  instance.Validate();
  const std::size_t n = instance.size();
  return RunTrials(config, [&](int t) {
    TrialOutcome out;
    out.record.trial = t;
    DrawTrialWeights(config, t, n, instance.two_sided(), out.record.alpha,
                     out.record.beta);
    const PolytopeSolution vertex = OptimizeOverPolytope(
        instance, polytope,
        WelfareObjective(instance, out.record.alpha, out.record.beta));
    if (!vertex.optimal()) {
      // The uniform allocation always lies in these polytopes.
      throw Error("fairness polytope reported " + ToString(vertex.status));
    }
    out.record.lp_value = vertex.value;
    out.record.cuts = vertex.cuts_used;
    if (weak) {
      out.record.passed = CheckWeakPareto(instance, vertex.x).weakly_pareto_optimal;
      out.record.verdict =
          out.record.passed ? "weakly-pareto-optimal" : "not-weakly-pareto-optimal";
    } else {
      const ParetoCertificate cert = CheckPareto(instance, vertex.x);
      out.record.passed = cert.pareto_optimal();
      out.record.verdict = ToString(cert.verdict);
    }
    out.x = vertex.x;
    return out;
  });
}

}  // namespace

std::string ToString(WeightDistribution distribution) {
  return distribution == WeightDistribution::kUniform ? "uniform"
                                                      : "log-uniform";
}

WeightDistribution ParseWeightDistribution(const std::string& text) {
  if (text == "uniform") return WeightDistribution::kUniform;
  if (text == "log-uniform") return WeightDistribution::kLogUniform;
  throw ParseError("unknown weight distribution \"" + text +
                   "\" (expected uniform or log-uniform)");
}

void SearchConfig::Validate() const {
  if (trials < 1) throw PreconditionError("trials must be >= 1");
  if (jobs < 1) throw PreconditionError("jobs must be >= 1");
}

void DrawTrialWeights(const SearchConfig& config, int trial, std::size_t n,
                      bool two_sided, std::vector<Rational>& alpha,
                      std::vector<Rational>& beta) {
  std::mt19937_64 rng(
      internal::SplitMix64(config.seed + static_cast<std::uint64_t>(trial)));
  alpha.clear();
  beta.clear();
  for (std::size_t i = 0; i < n; ++i) {
    alpha.push_back(DrawWeight(rng, config.distribution));
  }
  if (two_sided) {
    for (std::size_t j = 0; j < n; ++j) {
      beta.push_back(DrawWeight(rng, config.distribution));
    }
  }
}

SearchResult SearchEfpo(const Instance& instance, const SearchConfig& config) {
  return SearchOver(instance, config, Polytope::kEnvyFree, false);
}

SearchResult SearchJefWeakPo(const Instance& instance,
                             const SearchConfig& config) {
  if (!instance.two_sided()) {
    throw PreconditionError("JEF search needs a two-sided instance");
  }
  return SearchOver(instance, config, Polytope::kJustifiedEnvyFree, true);
}

RationalMatrix EfpoVertexFromWitness(const Instance& instance,
                                     const RationalMatrix& witness) {
  const EnvyReport envy = ComputeEnvyReport(instance, witness);
  if (!envy.envy_free) {
    throw PreconditionError("witness rejected: envy ratio " +
                            envy.max_ratio.ToString() + " > 1");
  }
  const ParetoWeights weights =
      RecoverParetoWeights(instance, witness, ParetoMode::kStrict);
  const PolytopeSolution vertex = OptimizeOverPolytope(
      instance, Polytope::kEnvyFree,
      WelfareObjective(instance, weights.alpha, weights.beta));
  if (!vertex.optimal() || vertex.value != weights.phi_at_x) {
    throw Error("envy-free optimum differs from the witness welfare");
  }
  if (!CheckPareto(instance, vertex.x).pareto_optimal()) {
    throw Error("envy-free vertex is not Pareto-optimal");
  }
  return vertex.x;
}

}  // namespace matchmarket
