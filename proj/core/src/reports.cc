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

#include "matchmarket/reports.h"

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace matchmarket {
namespace {

Json Indices(const std::vector<std::size_t>& values) {
  Json out = Json::array();
  for (std::size_t v : values) out.push_back(v);
  return out;
}

Json FloatOf(double value) {
  // JSON has no infinity; the exact field already says "inf".
  if (value == std::numeric_limits<double>::infinity()) return nullptr;
  return value;
}

Json SideEnvyToJson(const SideEnvy& side, bool with_pairs) {
  Json out = Json::object();
  out["envy_free"] = side.envy_free();
  PutRatio(out, "max_ratio", side.max_ratio);
  out["max_agent"] = side.max_agent;
  out["max_other"] = side.max_other;
  if (with_pairs) {
    Json pairs = Json::array();
    for (const EnvyPair& pair : side.pairs) {
      Json p = Json::object();
      p["agent"] = pair.agent;
      p["other"] = pair.other;
      PutRational(p, "own", pair.own);
      PutRational(p, "cross", pair.cross);
      PutRatio(p, "ratio", pair.ratio);
      pairs.push_back(std::move(p));
    }
    out["pairs"] = std::move(pairs);
  }
  return out;
}

Json SideJefToJson(const SideJef& side, bool with_pairs) {
  Json out = Json::object();
  out["jef"] = side.jef();
  out["weak_jef"] = side.weak_jef();
  Json violations = Json::array();
  Json pairs = Json::array();
  for (const JustifiedEnvyPair& pair : side.pairs) {
    Json p = Json::object();
    p["agent"] = pair.agent;
    p["other"] = pair.other;
    PutRational(p, "own", pair.own);
    PutRational(p, "justified", pair.justified);
    PutRational(p, "cross", pair.cross);
    PutRational(p, "slack", pair.slack);
    p["universally_preferred"] = pair.universally_preferred;
    p["justified_envy"] = pair.justified_envy();
    p["strong"] = pair.strong();
    if (pair.justified_envy() || pair.strong()) violations.push_back(p);
    if (with_pairs) pairs.push_back(std::move(p));
  }
  out["violations"] = std::move(violations);
  if (with_pairs) out["pairs"] = std::move(pairs);
  return out;
}

}  // namespace

void PutRational(Json& object, const std::string& key, const Rational& r) {
  object[key] = r.ToString();
  object[key + "_float"] = r.ToDouble();
}

void PutRationals(Json& object, const std::string& key,
                  const std::vector<Rational>& values) {
  Json exact = Json::array();
  Json mirror = Json::array();
  for (const Rational& r : values) {
    exact.push_back(r.ToString());
    mirror.push_back(r.ToDouble());
  }
  object[key] = std::move(exact);
  object[key + "_float"] = std::move(mirror);
}

void PutRationalMatrix(Json& object, const std::string& key,
                       const RationalMatrix& m) {
  object[key] = RationalMatrixToJson(m);
  object[key + "_float"] = DoubleMatrixToJson(ToDouble(m));
}

void PutRatio(Json& object, const std::string& key, const Ratio& r) {
  object[key] = r.ToString();
  object[key + "_float"] = FloatOf(r.ToDouble());
}

Json EnvyReportToJson(const EnvyReport& report, bool with_pairs) {
  Json out = Json::object();
  out["envy_free"] = report.envy_free;
  PutRatio(out, "max_ratio", report.max_ratio);
  out["side_a"] = SideEnvyToJson(report.side_a, with_pairs);
  if (report.side_b) out["side_b"] = SideEnvyToJson(*report.side_b, with_pairs);
  return out;
}

Json ParetoCertificateToJson(const ParetoCertificate& certificate) {
  Json out = Json::object();
  out["verdict"] = ToString(certificate.verdict);
  out["pareto_optimal"] = certificate.pareto_optimal();
  PutRational(out, "welfare", certificate.welfare);
  PutRational(out, "best_welfare", certificate.best_welfare);
  if (certificate.improvement) {
    PutRationalMatrix(out, "improvement", *certificate.improvement);
    out["improved_a"] = Indices(certificate.improved_a);
    out["improved_b"] = Indices(certificate.improved_b);
  }
  return out;
}

Json WeakParetoToJson(const WeakParetoResult& result) {
  Json out = Json::object();
  out["weakly_pareto_optimal"] = result.weakly_pareto_optimal;
  PutRational(out, "t", result.t);
  if (result.improvement) {
    PutRationalMatrix(out, "improvement", *result.improvement);
  }
  return out;
}

Json ParetoWeightsToJson(const ParetoWeights& weights) {
  Json out = Json::object();
  PutRationals(out, "alpha", weights.alpha);
  if (!weights.beta.empty()) PutRationals(out, "beta", weights.beta);
  PutRational(out, "phi_at_x", weights.phi_at_x);
  PutRational(out, "phi_max", weights.phi_max);
  return out;
}

Json JefReportToJson(const JefReport& report, bool with_pairs) {
  Json out = Json::object();
  out["jef"] = report.jef;
  out["weak_jef"] = report.weak_jef;
  out["side_a"] = SideJefToJson(report.side_a, with_pairs);
  out["side_b"] = SideJefToJson(report.side_b, with_pairs);
  return out;
}

Json HzVerdictToJson(const HzVerdict& verdict) {
  Json out = Json::object();
  out["satisfied"] = verdict.satisfied();
  PutRational(out, "eps", verdict.eps);
  Json clauses = Json::array();
  for (const HzClauseResult& clause : verdict.clauses) {
    Json c = Json::object();
    c["clause"] = ToString(clause.clause);
    c["satisfied"] = clause.satisfied;
    PutRational(c, "worst_slack", clause.worst_slack);
    c["worst_index"] = clause.worst_index;
    clauses.push_back(std::move(c));
  }
  out["clauses"] = std::move(clauses);
  Json violated = Json::array();
  for (HzClause clause : verdict.violated()) violated.push_back(ToString(clause));
  out["violated"] = std::move(violated);
  PutRationals(out, "agent_mass", verdict.agent_mass);
  PutRationals(out, "good_mass", verdict.good_mass);
  PutRationals(out, "spending", verdict.spending);
  PutRationals(out, "utility", verdict.utility);
  Json best = Json::array();
  for (const auto& value : verdict.best_value) {
    best.push_back(value ? Json(value->ToString()) : Json(nullptr));
  }
  out["best_value"] = std::move(best);
  if (!verdict.min_cost.empty()) PutRationals(out, "min_cost", verdict.min_cost);
  return out;
}

Json PriceSystemToJson(const PriceSystem& prices) {
  Json out = Json::object();
  PutRationals(out, "alpha", prices.alpha);
  PutRationals(out, "p", prices.p);
  PutRationals(out, "q", prices.q);
  PutRationals(out, "b", prices.b);
  PutRational(out, "scale", prices.scale);
  return out;
}

Json ContractionToJson(const Contraction& contraction) {
  Json out = Json::object();
  PutRationalMatrix(out, "x", contraction.x);
  PutRationals(out, "p", contraction.p);
  out["copy_prices_differ"] = contraction.copy_prices_differ;
  return out;
}

Json BudgetSpreadToJson(const BudgetSpread& spread) {
  Json out = Json::object();
  PutRational(out, "max_budget", spread.max_budget);
  PutRational(out, "min_budget", spread.min_budget);
  PutRational(out, "spread", spread.spread);
  PutRational(out, "spread_bound", spread.spread_bound);
  PutRational(out, "max_alpha", spread.max_alpha);
  PutRational(out, "alpha_bound", spread.alpha_bound);
  out["bounds_apply"] = spread.bounds_apply;
  out["spread_ok"] = spread.spread_ok;
  out["alpha_ok"] = spread.alpha_ok;
  return out;
}

Json ReductionRunToJson(const ReductionRun& run) {
  Json out = Json::object();
  out["prices"] = PriceSystemToJson(run.prices);
  out["spread"] = BudgetSpreadToJson(run.spread);
  out["contraction"] = ContractionToJson(run.contraction);
  PutRational(out, "tolerance", run.tolerance);
  out["verdict"] = HzVerdictToJson(run.verdict);
  return out;
}

Json NashMetricsToJson(const NashResult& result) {
  Json out = Json::object();
  out["converged"] = result.converged;
  out["gap"] = result.gap;
  out["iterations"] = result.iterations;
  out["log_welfare"] = result.log_welfare;
  out["utilities_a"] = result.utilities_a;
  if (!result.utilities_b.empty()) out["utilities_b"] = result.utilities_b;
  if (!result.log_welfare_trace.empty()) {
    out["log_welfare_trace"] = result.log_welfare_trace;
  }
  return out;
}

Json IcExperimentToJson(const IcExperimentResult& result) {
  Json out = Json::object();
  out["n"] = result.n;
  out["truthful_utility"] = result.truthful_utility;
  out["lying_utility"] = result.lying_utility;
  out["ratio"] = result.ratio;
  out["bound"] = (2.0 * result.n - 1.0) / result.n;
  out["truthful"] = NashMetricsToJson(result.truthful);
  out["lying"] = NashMetricsToJson(result.lying);
  return out;
}

Json SearchResultToJson(const SearchResult& result) {
  Json out = Json::object();
  out["found"] = result.found;
  out["trial"] = result.trial;
  out["trials_run"] = result.log.size();
  Json log = Json::array();
  for (const TrialRecord& record : result.log) {
    Json r = Json::object();
    r["trial"] = record.trial;
    PutRationals(r, "alpha", record.alpha);
    if (!record.beta.empty()) PutRationals(r, "beta", record.beta);
    PutRational(r, "lp_value", record.lp_value);
    r["cuts"] = record.cuts;
    r["verdict"] = record.verdict;
    r["passed"] = record.passed;
    log.push_back(std::move(r));
  }
  out["log"] = std::move(log);
  return out;
}

}  // namespace matchmarket
