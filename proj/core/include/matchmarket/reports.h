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

#ifndef MATCHMARKET_REPORTS_H_
#define MATCHMARKET_REPORTS_H_

#include <string>
#include <vector>

#include "matchmarket/auditors.h"
#include "matchmarket/io.h"
#include "matchmarket/matrix.h"
#include "matchmarket/nash.h"
#include "matchmarket/rational.h"
#include "matchmarket/reduction.h"
#include "matchmarket/search.h"

namespace matchmarket {

// JSON renderings of audit, solver and reduction results. Every exact
// quantity `key` is written as a "p/q" string together with a float mirror
// under `key + "_float"`.

void PutRational(Json& object, const std::string& key, const Rational& r);
void PutRationals(Json& object, const std::string& key,
                  const std::vector<Rational>& values);
void PutRationalMatrix(Json& object, const std::string& key,
                       const RationalMatrix& m);
void PutRatio(Json& object, const std::string& key, const Ratio& r);

// `with_pairs` adds every ordered pair; otherwise only the maxima.
Json EnvyReportToJson(const EnvyReport& report, bool with_pairs);
Json ParetoCertificateToJson(const ParetoCertificate& certificate);
Json WeakParetoToJson(const WeakParetoResult& result);
Json ParetoWeightsToJson(const ParetoWeights& weights);
Json JefReportToJson(const JefReport& report, bool with_pairs);
Json HzVerdictToJson(const HzVerdict& verdict);

Json PriceSystemToJson(const PriceSystem& prices);
Json ContractionToJson(const Contraction& contraction);
Json BudgetSpreadToJson(const BudgetSpread& spread);
Json ReductionRunToJson(const ReductionRun& run);

// Gap, iterations, utilities and log welfare; not the allocation itself.
Json NashMetricsToJson(const NashResult& result);
Json IcExperimentToJson(const IcExperimentResult& result);

// Outcome plus the per-trial log.
Json SearchResultToJson(const SearchResult& result);

}  // namespace matchmarket

#endif  // MATCHMARKET_REPORTS_H_
