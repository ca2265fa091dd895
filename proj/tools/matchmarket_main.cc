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

// matchmarket: command-line front end. One artifact per file; every output
// document carries a "manifest" describing the run that produced it.
//
// Exit codes: 0 success, 1 domain failure (nothing found, audit violated
// under --strict, failed precondition), 2 usage or parse error.

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "matchmarket/auditors.h"
#include "matchmarket/bvn.h"
#include "matchmarket/errors.h"
#include "matchmarket/generators.h"
#include "matchmarket/io.h"
#include "matchmarket/market.h"
#include "matchmarket/nash.h"
#include "matchmarket/reduction.h"
#include "matchmarket/reports.h"
#include "matchmarket/search.h"

#ifndef MATCHMARKET_VERSION
#define MATCHMARKET_VERSION "0.0.0"
#endif

namespace matchmarket {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// A failure that maps to exit code 1 after its message is printed.
class DomainFailure : public Error {
 public:
  using Error::Error;
};

// Subcommand, input/output paths and every numeric parameter. Insertion
// ordered so equal runs serialize byte-identically.
class Manifest {
 public:
  explicit Manifest(std::string subcommand)
      : json_(Json::object()) {
    json_["tool"] = "matchmarket";
    json_["version"] = MATCHMARKET_VERSION;
    json_["subcommand"] = std::move(subcommand);
    json_["inputs"] = Json::object();
    json_["outputs"] = Json::object();
    json_["params"] = Json::object();
  }

  void Input(const std::string& name, const std::string& path) {
    json_["inputs"][name] = path;
  }
  void Output(const std::string& name, const std::string& path) {
    json_["outputs"][name] = path;
  }
  template <typename T>
  void Param(const std::string& name, const T& value) {
    json_["params"][name] = value;
  }
  const Json& json() const { return json_; }

 private:
  Json json_;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

Json ReadJson(const std::string& path) {
  try {
    return ParseJson(ReadFile(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

template <typename Fn>
auto Parsed(const std::string& path, Fn fn) {
  try {
    return fn(ReadJson(path));
  } catch (const ParseError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw ParseError(path + ": " + what);
  }
}

Instance ReadInstance(const std::string& path) {
  return Parsed(path, [](const Json& j) { return InstanceFromJson(j); });
}

AllocationDocument ReadAllocation(const std::string& path) {
  return Parsed(path, [](const Json& j) { return AllocationFromJson(j); });
}

// Accepts a bare array of prices or any object with a "p" array (price
// systems and contraction reports).
std::vector<Rational> ReadPrices(const std::string& path) {
  return Parsed(path, [](const Json& j) {
    const Json& array = j.is_object() && j.contains("p") ? j.at("p") : j;
    if (!array.is_array()) throw ParseError("expected a price array");
    std::vector<Rational> prices;
    for (std::size_t i = 0; i < array.size(); ++i) {
      prices.push_back(
          RationalFromJson(array[i], "p[" + std::to_string(i) + "]"));
    }
    return prices;
  });
}

// Explicit --out wins; otherwise MATCHMARKET_OUT_DIR/<fallback>; otherwise
// stdout (empty path).
std::string ResolveOut(const std::string& explicit_path,
                       const std::string& fallback) {
  if (!explicit_path.empty()) return explicit_path;
  const char* dir = std::getenv("MATCHMARKET_OUT_DIR");
  if (dir == nullptr || *dir == '\0' || fallback.empty()) return "";
  return (std::filesystem::path(dir) / fallback).string();
}

// "dir/name.json" -> "dir/name.<suffix>.json" for secondary outputs; stays
// empty (stdout) when the primary output is stdout.
std::string Sibling(const std::string& primary, const std::string& suffix) {
  if (primary.empty()) return "";
  std::filesystem::path p(primary);
  const std::string ext = p.has_extension() ? p.extension().string() : ".json";
  p.replace_filename(p.stem().string() + "." + suffix + ext);
  return p.string();
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

void WriteJson(const std::string& path, Json doc, const Manifest& manifest) {
  doc["manifest"] = manifest.json();
  WriteText(path, doc.dump(2) + "\n");
}

void Note(const std::string& out_path, const std::string& line) {
  // With stdout carrying the document, the summary goes to stderr.
  (out_path.empty() ? std::cerr : std::cout) << line << "\n";
}

// Envy, Pareto and JEF audits need exact input; float allocations are
// converted entry by entry without rounding.
RationalMatrix ExactAllocation(const AllocationDocument& doc) {
  return doc.AsRational();
}

void CheckSize(const Instance& instance, const RationalMatrix& x) {
  if (x.rows() != instance.size()) {
    throw ParseError("allocation size " + std::to_string(x.rows()) +
                     " does not match instance size " +
                     std::to_string(instance.size()));
  }
}

// ---------------------------------------------------------------------------

struct GenOptions {
  std::string family;
  int n = 0;
  std::uint64_t seed = 0;
  bool two_sided = false;
  int grid = 10;
  std::string out;
};

void SetupGen(CLI::App& app, std::function<int()>& run) {
  auto opt = std::make_shared<GenOptions>();
  CLI::App* sub = app.add_subcommand("gen", "Generate an instance file");
  sub->add_option("--family", opt->family,
                  "random | ic | envy-tight | asym-ce | sym-ce | jef-envy | "
                  "identical")
      ->required();
  sub->add_option("--n", opt->n, "Size (0 = family default)");
  sub->add_option("--seed", opt->seed, "Random family seed");
  sub->add_flag("--two-sided", opt->two_sided, "Random family: draw w too");
  sub->add_option("--grid", opt->grid, "Random family: utility grid 1/grid");
  sub->add_option("--out", opt->out, "Instance file");
  sub->callback([opt, &run] {
    run = [opt] {
      FamilySpec spec;
      spec.family = ParseFamily(opt->family);
      spec.n = opt->n;
      spec.seed = opt->seed;
      spec.two_sided = opt->two_sided;
      spec.grid = opt->grid;
      const Instance instance = Generate(spec);
      Manifest m("gen");
      m.Param("family", ToString(spec.family));
      m.Param("n", instance.size());
      m.Param("seed", opt->seed);
      m.Param("two_sided", opt->two_sided);
      m.Param("grid", opt->grid);
      const std::string out = ResolveOut(opt->out, "instance.json");
      m.Output("instance", out);
      WriteJson(out, InstanceToJson(instance), m);
      Note(out, "generated " + ToString(spec.family) + " instance, n = " +
                    std::to_string(instance.size()));
      return kExitOk;
    };
  });
}

struct NashOptions {
  std::string in;
  double tol = 1e-9;
  int max_iter = 200000;
  double delta = 1e-12;
  std::string step = "line-search";
  std::string variant = "pairwise";
  std::int64_t rationalize = 0;
  bool trace = false;
  std::string out;
  std::string metrics;
};

void SetupNash(CLI::App& app, std::function<int()>& run) {
  auto opt = std::make_shared<NashOptions>();
  CLI::App* sub =
      app.add_subcommand("nash", "Maximize Nash welfare by Frank-Wolfe");
  sub->add_option("--in", opt->in, "Instance file")->required();
  sub->add_option("--tol", opt->tol, "Frank-Wolfe gap tolerance");
  sub->add_option("--max-iter", opt->max_iter, "Iteration cap");
  sub->add_option("--delta", opt->delta, "Guard inside the logarithms");
  sub->add_option("--step", opt->step, "line-search | harmonic");
  sub->add_option("--variant", opt->variant, "pairwise | vanilla");
  sub->add_option("--rationalize", opt->rationalize,
                  "Emit an exact allocation on the 1/D grid");
  sub->add_flag("--trace", opt->trace, "Record the log-welfare trace");
  sub->add_option("--out", opt->out, "Allocation file");
  sub->add_option("--metrics", opt->metrics, "Metrics file");
  sub->callback([opt, &run] {
    run = [opt] {
      const Instance instance = ReadInstance(opt->in);
      NashConfig config;
      config.tolerance = opt->tol;
      config.max_iterations = opt->max_iter;
      config.delta = opt->delta;
      config.step_rule = ParseStepRule(opt->step);
      config.variant = ParseFrankWolfeVariant(opt->variant);
      config.record_trace = opt->trace;
      config.Validate();
      const NashResult result = SolveNash(instance, config);

      Manifest m("nash");
      m.Input("instance", opt->in);
      m.Param("tol", opt->tol);
      m.Param("max_iter", opt->max_iter);
      m.Param("delta", opt->delta);
      m.Param("step", ToString(config.step_rule));
      m.Param("variant", ToString(config.variant));
      m.Param("rationalize", opt->rationalize);
      const std::string out = ResolveOut(opt->out, "nash_allocation.json");
      const std::string metrics =
          opt->metrics.empty() ? Sibling(out, "metrics") : opt->metrics;
      m.Output("allocation", out);
      m.Output("metrics", metrics);

      AllocationDocument doc;
      if (opt->rationalize > 0) {
        doc.x = Rationalize(result.x, opt->rationalize);
      } else {
        doc.x = result.x;
      }
      WriteJson(out, AllocationToJson(doc), m);
      if (!metrics.empty()) WriteJson(metrics, NashMetricsToJson(result), m);
      std::ostringstream line;
      line << "nash: gap " << result.gap << ", " << result.iterations
           << " iterations, " << (result.converged ? "converged" : "not converged");
      Note(out, line.str());
      return result.converged ? kExitOk : kExitDomain;
    };
  });
}

struct AuditOptions {
  std::string in;
  std::string alloc;
  std::string checks = "all";
  std::string feasibility_tol = "0";
  bool pairs = false;
  bool strict = false;
  std::string out;
};

void SetupAudit(CLI::App& app, std::function<int()>& run) {
  auto opt = std::make_shared<AuditOptions>();
  CLI::App* sub = app.add_subcommand("audit", "Audit an allocation");
  sub->add_option("--in", opt->in, "Instance file")->required();
  sub->add_option("--alloc", opt->alloc, "Allocation file")->required();
  sub->add_option("--checks", opt->checks,
                  "Comma list of ef, po, wpo, jef, weights, feasibility or "
                  "all");
  sub->add_option("--feasibility-tol", opt->feasibility_tol,
                  "Allowed deviation of row/column sums (p/q)");
  sub->add_flag("--pairs", opt->pairs, "List every ordered pair");
  sub->add_flag("--strict", opt->strict, "Exit 1 on any violation");
  sub->add_option("--out", opt->out, "Report file");
  sub->callback([opt, &run] {
    run = [opt] {
      const Instance instance = ReadInstance(opt->in);
      const RationalMatrix x = ExactAllocation(ReadAllocation(opt->alloc));
      CheckSize(instance, x);

      std::set<std::string> checks;
      std::stringstream list(opt->checks);
      for (std::string item; std::getline(list, item, ',');) {
        if (item.empty()) continue;
        static const std::set<std::string> kKnown = {
            "ef", "po", "wpo", "jef", "weights", "feasibility", "all"};
        if (!kKnown.count(item)) throw CLI::ValidationError("--checks", item);
        checks.insert(item);
      }
      const bool all = checks.count("all") > 0;
      auto wants = [&](const char* name) { return all || checks.count(name); };

      Json report = Json::object();
      bool ok = true;
      std::ostringstream line;
      if (wants("feasibility")) {
        const AllocationReport feasibility = ValidateAllocation(
            instance, x, Rational::FromString(opt->feasibility_tol));
        report["feasibility"] = Json::object();
        report["feasibility"]["valid"] = feasibility.valid();
        report["feasibility"]["tolerance"] = opt->feasibility_tol;
        Json violations = Json::array();
        for (const AllocationViolation& v : feasibility.violations) {
          Json j = Json::object();
          j["kind"] = ToString(v.kind);
          j["row"] = v.row;
          j["col"] = v.col;
          PutRational(j, "value", v.value);
          violations.push_back(std::move(j));
        }
        report["feasibility"]["violations"] = std::move(violations);
        ok &= feasibility.valid();
      }
      if (wants("ef")) {
        const EnvyReport envy = ComputeEnvyReport(instance, x);
        report["envy"] = EnvyReportToJson(envy, opt->pairs);
        ok &= envy.envy_free;
        line << "max envy ratio " << envy.max_ratio.ToDouble() << " ("
             << envy.max_ratio.ToString() << "); ";
      }
      if (wants("po")) {
        const ParetoCertificate pareto = CheckPareto(instance, x);
        report["pareto"] = ParetoCertificateToJson(pareto);
        ok &= pareto.pareto_optimal();
        line << ToString(pareto.verdict) << "; ";
      }
      if (wants("wpo") && instance.two_sided()) {
        const WeakParetoResult weak = CheckWeakPareto(instance, x);
        report["weak_pareto"] = WeakParetoToJson(weak);
        ok &= weak.weakly_pareto_optimal;
        line << (weak.weakly_pareto_optimal ? "weakly pareto-optimal"
                                            : "weakly dominated")
             << "; ";
      }
      if (wants("jef") && instance.two_sided()) {
        const JefReport jef = ComputeJefReport(instance, x);
        report["jef"] = JefReportToJson(jef, opt->pairs);
        ok &= jef.jef;
        line << (jef.jef ? "jef" : "justified envy") << "; ";
      }
      if (wants("weights")) {
        try {
          report["weights"] =
              ParetoWeightsToJson(RecoverParetoWeights(instance, x, ParetoMode::kStrict));
        } catch (const NotParetoOptimal& e) {
          report["weights"] = Json::object();
          report["weights"]["error"] = e.what();
          ok = false;
        }
      }
      report["ok"] = ok;

      Manifest m("audit");
      m.Input("instance", opt->in);
      m.Input("allocation", opt->alloc);
      m.Param("checks", opt->checks);
      m.Param("feasibility_tol", opt->feasibility_tol);
      m.Param("pairs", opt->pairs);
      m.Param("strict", opt->strict);
      const std::string out = ResolveOut(opt->out, "audit.json");
      m.Output("report", out);
      WriteJson(out, std::move(report), m);
      Note(out, "audit: " + line.str() + (ok ? "ok" : "violations found"));
      return opt->strict && !ok ? kExitDomain : kExitOk;
    };
  });
}

struct BvnOptions {
  std::string alloc;
  std::int64_t rationalize = 0;
  std::string out;
};

void SetupBvn(CLI::App& app, std::function<int()>& run) {
  auto opt = std::make_shared<BvnOptions>();
  CLI::App* sub = app.add_subcommand(
      "bvn", "Decompose an exact allocation into a lottery over matchings");
  sub->add_option("--alloc", opt->alloc, "Allocation file")->required();
  sub->add_option("--rationalize", opt->rationalize,
                  "Round a float allocation to the 1/D grid first");
  sub->add_option("--out", opt->out, "Lottery file");
  sub->callback([opt, &run] {
    run = [opt] {
      const AllocationDocument doc = ReadAllocation(opt->alloc);
      RationalMatrix x;
      if (!doc.exact() && opt->rationalize > 0) {
        x = Rationalize(doc.AsDouble(), opt->rationalize);
      } else {
        x = doc.AsRational();
      }
      const Lottery lottery = DecomposeBirkhoff(x);
      Manifest m("bvn");
      m.Input("allocation", opt->alloc);
      m.Param("rationalize", opt->rationalize);
      const std::string out = ResolveOut(opt->out, "lottery.json");
      m.Output("lottery", out);
      WriteJson(out, LotteryToJson(lottery), m);
      Note(out, "bvn: " + std::to_string(lottery.matchings.size()) +
                    " matchings");
      return kExitOk;
    };
  });
}

struct ReduceBuildOptions {
  std::string in;
  std::string eps = "1/2";
  std::int64_t k = 0;
  bool surrogate = false;
  std::string out;
  std::string provenance;
};

void SetupReduceBuild(CLI::App& app, std::function<int()>& run) {
  auto opt = std::make_shared<ReduceBuildOptions>();
  CLI::App* sub = app.add_subcommand(
      "reduce-build", "Build the modified instance and its provenance");
  sub->add_option("--in", opt->in, "One-sided base instance")->required();
  sub->add_option("--eps", opt->eps, "Interpolation step (p/q)");
  sub->add_option("--k", opt->k, "Copies per agent and good");
  sub->add_flag("--surrogate", opt->surrogate, "k = 1 stand-in");
  sub->add_option("--out", opt->out, "Modified instance file");
  sub->add_option("--provenance", opt->provenance, "Provenance file");
  sub->callback([opt, &run] {
    run = [opt] {
      const Instance base = ReadInstance(opt->in);
      ModifiedInstance minst;
      if (opt->surrogate) {
        minst = MakeSurrogate(base);
      } else {
        if (opt->k <= 0) throw CLI::RequiredError("--k");
        minst = BuildModified(base, Rational::FromString(opt->eps), opt->k);
      }
      Manifest m("reduce-build");
      m.Input("instance", opt->in);
      m.Param("eps", minst.eps.ToString());
      m.Param("k", minst.k);
      m.Param("surrogate", minst.surrogate);
      const std::string out = ResolveOut(opt->out, "modified.json");
      if (out.empty()) {
        throw CLI::RequiredError("--out (the provenance needs a file)");
      }
      const std::string prov =
          opt->provenance.empty() ? Sibling(out, "provenance") : opt->provenance;
      m.Output("instance", out);
      m.Output("provenance", prov);
      WriteJson(out, InstanceToJson(minst.modified), m);
      if (!prov.empty()) WriteJson(prov, ProvenanceToJson(minst), m);
      Note(out, "reduce-build: n' = " + std::to_string(minst.n_prime()));
      return kExitOk;
    };
  });
}

struct ReduceOptions {
  std::string provenance;
  std::string alloc;
  std::string prices;
  bool allow_envy = false;
  bool strict = false;
  std::string out;
};

ModifiedInstance ReadProvenance(const std::string& path) {
  return Parsed(path,
                [](const Json& j) { return ModifiedFromProvenance(j); });
}

RationalMatrix ReadModifiedAllocation(const ModifiedInstance& minst,
                                      const std::string& path) {
  const RationalMatrix x = ReadAllocation(path).AsRational();
  CheckSize(minst.modified, x);
  return x;
}

void SetupReduceExtract(CLI::App& app, std::function<int()>& run) {
  auto opt = std::make_shared<ReduceOptions>();
  CLI::App* sub = app.add_subcommand(
      "reduce-extract", "Recover Pareto weights, prices and budgets");
  sub->add_option("--provenance", opt->provenance, "Provenance file")
      ->required();
  sub->add_option("--alloc", opt->alloc, "EF+PO allocation on I'")->required();
  sub->add_flag("--allow-envy", opt->allow_envy, "Skip the envy precondition");
  sub->add_option("--out", opt->out, "Price system file");
  sub->callback([opt, &run] {
    run = [opt] {
      const ModifiedInstance minst = ReadProvenance(opt->provenance);
      const RationalMatrix x = ReadModifiedAllocation(minst, opt->alloc);
      const PriceSystem prices = ExtractPricesBudgets(minst, x, !opt->allow_envy);
      Json doc = PriceSystemToJson(prices);
      doc["spread"] = BudgetSpreadToJson(BudgetSpreadDiagnostic(prices, minst));
      Manifest m("reduce-extract");
      m.Input("provenance", opt->provenance);
      m.Input("allocation", opt->alloc);
      m.Param("allow_envy", opt->allow_envy);
      const std::string out = ResolveOut(opt->out, "prices.json");
      m.Output("prices", out);
      WriteJson(out, std::move(doc), m);
      Note(out, "reduce-extract: scale " + prices.scale.ToString());
      return kExitOk;
    };
  });
}

void SetupReduceContract(CLI::App& app, std::function<int()>& run) {
  auto opt = std::make_shared<ReduceOptions>();
  CLI::App* sub = app.add_subcommand(
      "reduce-contract", "Contract an allocation and prices on I' to I");
  sub->add_option("--provenance", opt->provenance, "Provenance file")
      ->required();
  sub->add_option("--alloc", opt->alloc, "Allocation on I'")->required();
  sub->add_option("--prices", opt->prices, "Prices on I' (price system)")
      ->required();
  sub->add_option("--out", opt->out, "Contraction file (also an allocation)");
  sub->callback([opt, &run] {
    run = [opt] {
      const ModifiedInstance minst = ReadProvenance(opt->provenance);
      const RationalMatrix x = ReadModifiedAllocation(minst, opt->alloc);
      const Contraction c = Contract(minst, x, ReadPrices(opt->prices));
      Json doc = ContractionToJson(c);
      doc["exact"] = true;
      Manifest m("reduce-contract");
      m.Input("provenance", opt->provenance);
      m.Input("allocation", opt->alloc);
      m.Input("prices", opt->prices);
      const std::string out = ResolveOut(opt->out, "contraction.json");
      m.Output("contraction", out);
      WriteJson(out, std::move(doc), m);
      Note(out, std::string("reduce-contract: ") +
                    (c.copy_prices_differ ? "copy prices differ"
                                          : "copy prices agree"));
      return kExitOk;
    };
  });
}

void SetupReduceRun(CLI::App& app, std::function<int()>& run) {
  auto opt = std::make_shared<ReduceOptions>();
  CLI::App* sub = app.add_subcommand(
      "reduce-run", "Extract, contract and verify as approximate HZ");
  sub->add_option("--provenance", opt->provenance, "Provenance file")
      ->required();
  sub->add_option("--alloc", opt->alloc, "EF+PO allocation on I'")->required();
  sub->add_flag("--strict", opt->strict, "Exit 1 if the verdict fails");
  sub->add_option("--out", opt->out, "Run report");
  sub->callback([opt, &run] {
    run = [opt] {
      const ModifiedInstance minst = ReadProvenance(opt->provenance);
      const RationalMatrix x = ReadModifiedAllocation(minst, opt->alloc);
      const ReductionRun result = RunReduction(minst, x);
      Manifest m("reduce-run");
      m.Input("provenance", opt->provenance);
      m.Input("allocation", opt->alloc);
      m.Param("strict", opt->strict);
      const std::string out = ResolveOut(opt->out, "reduction.json");
      m.Output("report", out);
      WriteJson(out, ReductionRunToJson(result), m);
      const bool ok = result.verdict.satisfied();
      Note(out, "reduce-run: tolerance " + result.tolerance.ToString() + ", " +
                    (ok ? "approximate HZ holds" : "verdict violated"));
      return opt->strict && !ok ? kExitDomain : kExitOk;
    };
  });
}

struct VerifyHzOptions {
  std::string in;
  std::string alloc;
  std::string prices;
  std::string eps;
  bool strict = false;
  std::string out;
};

void SetupVerifyHz(CLI::App& app, std::function<int()>& run) {
  auto opt = std::make_shared<VerifyHzOptions>();
  CLI::App* sub = app.add_subcommand(
      "verify-hz", "Check an allocation and prices for HZ equilibrium");
  sub->add_option("--in", opt->in, "One-sided instance")->required();
  sub->add_option("--alloc", opt->alloc, "Allocation file")->required();
  sub->add_option("--prices", opt->prices, "Price array or price system")
      ->required();
  sub->add_option("--eps", opt->eps,
                  "Approximation (p/q); exact verification when omitted");
  sub->add_flag("--strict", opt->strict, "Exit 1 if a clause fails");
  sub->add_option("--out", opt->out, "Verdict file");
  sub->callback([opt, &run] {
    run = [opt] {
      const Instance instance = ReadInstance(opt->in);
      const RationalMatrix x = ReadAllocation(opt->alloc).AsRational();
      CheckSize(instance, x);
      const std::vector<Rational> prices = ReadPrices(opt->prices);
      const HzVerdict verdict =
          opt->eps.empty()
              ? VerifyExactHz(instance, x, prices)
              : VerifyApproxHz(instance, x, prices,
                               Rational::FromString(opt->eps));
      Manifest m("verify-hz");
      m.Input("instance", opt->in);
      m.Input("allocation", opt->alloc);
      m.Input("prices", opt->prices);
      m.Param("mode", opt->eps.empty() ? "exact" : "approx");
      if (!opt->eps.empty()) m.Param("eps", opt->eps);
      m.Param("strict", opt->strict);
      const std::string out = ResolveOut(opt->out, "hz.json");
      m.Output("verdict", out);
      WriteJson(out, HzVerdictToJson(verdict), m);
      std::string violated;
      for (HzClause c : verdict.violated()) violated += " " + ToString(c);
      Note(out, verdict.satisfied() ? "verify-hz: all clauses hold"
                                    : "verify-hz: violated" + violated);
      return opt->strict && !verdict.satisfied() ? kExitDomain : kExitOk;
    };
  });
}

struct SearchOptions {
  std::string in;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string distribution = "uniform";
  int jobs = 1;
  std::string out;
  std::string log;
};

void AddSearch(CLI::App& parent, const std::string& name,
               const std::string& description, bool jef,
               std::function<int()>& run) {
  auto opt = std::make_shared<SearchOptions>();
  CLI::App* sub = parent.add_subcommand(name, description);
  sub->add_option("--in", opt->in, "Instance file")->required();
  sub->add_option("--trials", opt->trials, "Number of weight draws");
  sub->add_option("--seed", opt->seed, "Seed");
  sub->add_option("--distribution", opt->distribution,
                  "uniform | log-uniform");
  sub->add_option("--jobs", opt->jobs, "Worker threads");
  sub->add_option("--out", opt->out, "Allocation file (on success)");
  sub->add_option("--log", opt->log, "Search log file");
  sub->callback([opt, jef, name, &run] {
    run = [opt, jef, name] {
      const Instance instance = ReadInstance(opt->in);
      SearchConfig config;
      config.trials = opt->trials;
      config.seed = opt->seed;
      config.distribution = ParseWeightDistribution(opt->distribution);
      config.jobs = opt->jobs;
      config.Validate();
      const SearchResult result = jef ? SearchJefWeakPo(instance, config)
                                      : SearchEfpo(instance, config);
      Manifest m("search " + name);
      m.Input("instance", opt->in);
      m.Param("trials", opt->trials);
      m.Param("seed", opt->seed);
      m.Param("distribution", ToString(config.distribution));
      // --jobs does not change the outcome and is left out of the manifest
      // so that serial and parallel runs produce identical files.
      const std::string out =
          ResolveOut(opt->out, "search_" + name + "_allocation.json");
      const std::string log = opt->log.empty() ? Sibling(out, "log") : opt->log;
      m.Output("allocation", out);
      m.Output("log", log);
      if (!log.empty()) WriteJson(log, SearchResultToJson(result), m);
      if (!result.found) {
        std::cout << "search " << name << ": NotFound after "
                  << result.log.size() << " trials\n";
        return kExitDomain;
      }
      AllocationDocument doc;
      doc.x = result.x;
      WriteJson(out, AllocationToJson(doc), m);
      Note(out, "search " + name + ": found at trial " +
                    std::to_string(result.trial));
      return kExitOk;
    };
  });
}

void SetupSearch(CLI::App& app, std::function<int()>& run) {
  CLI::App* sub = app.add_subcommand("search", "Randomized vertex search");
  sub->require_subcommand(1);
  AddSearch(*sub, "efpo", "Envy-free and Pareto-optimal vertex", false, run);
  AddSearch(*sub, "jef", "Justified-envy-free and weakly Pareto-optimal vertex",
            true, run);
}

struct IcOptions {
  std::vector<int> n = {2, 4, 10, 100};
  double tol = 1e-9;
  std::string out;
  std::string csv;
};

void SetupIc(CLI::App& app, std::function<int()>& run) {
  auto opt = std::make_shared<IcOptions>();
  CLI::App* sub = app.add_subcommand(
      "ic-exp", "Gain from misreporting in the Nash program");
  sub->add_option("--n", opt->n, "Sizes")->delimiter(',');
  sub->add_option("--tol", opt->tol, "Frank-Wolfe gap tolerance");
  sub->add_option("--out", opt->out, "Report file");
  sub->add_option("--csv", opt->csv, "CSV file (n, truthful, lying, ratio)");
  sub->callback([opt, &run] {
    run = [opt] {
      NashConfig config;
      config.tolerance = opt->tol;
      config.Validate();
      Json rows = Json::array();
      std::ostringstream csv;
      csv << "n,truthful_utility,lying_utility,ratio,bound\n";
      csv.precision(17);
      for (int n : opt->n) {
        const IcExperimentResult r = RunIcExperiment(n, config);
        rows.push_back(IcExperimentToJson(r));
        csv << n << ',' << r.truthful_utility << ',' << r.lying_utility << ','
            << r.ratio << ',' << (2.0 * n - 1.0) / n << "\n";
      }
      Manifest m("ic-exp");
      m.Param("n", opt->n);
      m.Param("tol", opt->tol);
      const std::string out = ResolveOut(opt->out, "ic.json");
      m.Output("report", out);
      if (!opt->csv.empty()) m.Output("csv", opt->csv);
      Json doc = Json::object();
      doc["experiments"] = std::move(rows);
      WriteJson(out, std::move(doc), m);
      if (!opt->csv.empty()) WriteText(opt->csv, csv.str());
      Note(out, "ic-exp: " + std::to_string(opt->n.size()) + " sizes");
      return kExitOk;
    };
  });
}

struct ValidateOptions {
  std::string kind;
  std::string file;
};

// Parses, re-serializes and re-parses; the two parses must agree.
void SetupValidate(CLI::App& app, std::function<int()>& run) {
  auto opt = std::make_shared<ValidateOptions>();
  CLI::App* sub = app.add_subcommand(
      "validate", "Check that an artifact parses and round-trips");
  sub->add_option("--kind", opt->kind,
                  "instance | allocation | lottery | provenance")
      ->required()
      ->check(CLI::IsMember({"instance", "allocation", "lottery", "provenance"}));
  sub->add_option("file", opt->file, "Artifact")->required();
  sub->callback([opt, &run] {
    run = [opt] {
      const Json doc = ReadJson(opt->file);
      bool same = false;
      if (opt->kind == "instance") {
        const Instance a = InstanceFromJson(doc);
        const Instance b = InstanceFromJson(ParseJson(InstanceToJson(a).dump()));
        same = a.u == b.u && a.w == b.w && a.agents == b.agents &&
               a.goods == b.goods;
      } else if (opt->kind == "allocation") {
        const AllocationDocument a = AllocationFromJson(doc);
        const AllocationDocument b =
            AllocationFromJson(ParseJson(AllocationToJson(a).dump()));
        same = a.exact() == b.exact() && a.x == b.x;
      } else if (opt->kind == "lottery") {
        const Lottery a = LotteryFromJson(doc);
        const Lottery b = LotteryFromJson(ParseJson(LotteryToJson(a).dump()));
        same = a.matchings == b.matchings && a.weights == b.weights;
      } else {
        const ModifiedInstance a = ModifiedFromProvenance(doc);
        const Json again = ProvenanceToJson(a);
        same = ProvenanceToJson(ModifiedFromProvenance(again)) == again;
      }
      if (!same) throw DomainFailure(opt->file + ": round trip differs");
      std::cout << opt->file << ": valid " << opt->kind << "\n";
      return kExitOk;
    };
  });
}

}  // namespace

int Main(int argc, char** argv) {
  CLI::App app{"Cardinal-utility matching markets: Nash bargaining, audits, "
               "lotteries and the HZ reduction"};
  app.set_version_flag("--version", MATCHMARKET_VERSION);
  app.require_subcommand(1);
  std::function<int()> run;
  SetupGen(app, run);
  SetupNash(app, run);
  SetupAudit(app, run);
  SetupBvn(app, run);
  SetupReduceBuild(app, run);
  SetupReduceExtract(app, run);
  SetupReduceContract(app, run);
  SetupReduceRun(app, run);
  SetupVerifyHz(app, run);
  SetupSearch(app, run);
  SetupIc(app, run);
  SetupValidate(app, run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  try {
    return run ? run() : kExitUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace matchmarket

int main(int argc, char** argv) { return matchmarket::Main(argc, argv); }
