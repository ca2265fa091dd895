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

#include "matchmarket/reduction.h"

#include <optional>
#include <string>
#include <utility>

#include "matchmarket/errors.h"
#include "matchmarket/polytopes.h"

namespace matchmarket {
namespace {

IndexTag CopyTag(int original) {
  IndexTag tag;
  tag.kind = IndexTag::Kind::kCopy;
  tag.original = original;
  return tag;
}

IndexTag PlainTag(IndexTag::Kind kind) {
  IndexTag tag;
  tag.kind = kind;
  return tag;
}

std::vector<std::vector<Rational>> InterpolationPath(
    std::span<const Rational> from, std::span<const Rational> to,
    const Rational& eps) {
  std::vector<std::vector<Rational>> points;
  std::vector<Rational> current(from.begin(), from.end());
  for (std::size_t t = 0; t < current.size(); ++t) {
    while (current[t] != to[t]) {
      if (current[t] < to[t]) {
        current[t] = Min(current[t] + eps, to[t]);
      } else {
        current[t] = Max(current[t] - eps, to[t]);
      }
      points.push_back(current);
    }
  }
  if (!points.empty()) points.pop_back();  // equals `to`
  return points;
}

void RequireAllocation(const ModifiedInstance& minst,
                       const RationalMatrix& x) {
  const std::size_t m = minst.n_prime();
  if (x.rows() != m || x.cols() != m) {
    throw StructuralError("allocation is " + std::to_string(x.rows()) + "x" +
                          std::to_string(x.cols()) +
                          ", modified instance has n' = " + std::to_string(m));
  }
}

// Componentwise largest p with p_j <= v_ij and
// p_j - p_j' <= v_ij - v_ij' for every j in the support of x_i.
std::vector<Rational> PriceMaximalDual(const RationalMatrix& v,
                                       const RationalMatrix& x) {
  const std::size_t m = v.rows();
  Matrix<std::optional<Rational>> edge(m, m);  // edge(from, to)
  std::vector<std::optional<Rational>> dist(m);
  auto tighten = [](std::optional<Rational>& slot, const Rational& value) {
    if (!slot || value < *slot) slot = value;
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (x(i, j).sign() <= 0) continue;
      tighten(dist[j], v(i, j));
      for (std::size_t other = 0; other < m; ++other) {
        if (other != j) tighten(edge(other, j), v(i, j) - v(i, other));
      }
    }
  }
  for (std::size_t round = 0;; ++round) {
    bool changed = false;
    for (std::size_t from = 0; from < m; ++from) {
      if (!dist[from]) continue;
      for (std::size_t to = 0; to < m; ++to) {
        if (!edge(from, to)) continue;
        const Rational candidate = *dist[from] + *edge(from, to);
        if (!dist[to] || candidate < *dist[to]) {
          dist[to] = candidate;
          changed = true;
        }
      }
    }
    if (!changed) break;
    if (round > m) {
      throw NotParetoOptimal(
          "price constraints are inconsistent; x does not maximize the "
          "weighted welfare");
    }
  }
  std::vector<Rational> p(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (!dist[j]) throw NotDoublyStochastic("a good is not allocated");
    p[j] = *dist[j];
  }
  return p;
}

}  // namespace

std::string ToString(IndexTag::Kind kind) {
  switch (kind) {
    case IndexTag::Kind::kCopy:
      return "copy";
    case IndexTag::Kind::kAwesome:
      return "awesome";
    case IndexTag::Kind::kInterpolating:
      return "interpolating";
    case IndexTag::Kind::kDummy:
      return "dummy";
  }
  return "unknown";
}

ModifiedInstance BuildModified(const Instance& base, const Rational& eps,
                               std::int64_t k) {
  base.Validate();
  if (base.two_sided()) {
    throw PreconditionError("the reduction needs a one-sided instance");
  }
  const std::int64_t n = static_cast<std::int64_t>(base.size());
  if (n == 0) throw PreconditionError("base instance is empty");
  if (eps.sign() <= 0 || eps > Rational(1)) {
    throw PreconditionError("eps must lie in (0, 1], got " + eps.ToString());
  }
  if (k < 1 || k % n != 0) {
    throw PreconditionError("k = " + std::to_string(k) +
                            " must be a positive multiple of n = " +
                            std::to_string(n));
  }
  if (Rational(k) * eps < Rational(n * n * n)) {
    throw PreconditionError("k = " + std::to_string(k) +
                            " is below n^3 / eps = " +
                            (Rational(n * n * n) / eps).ToString());
  }
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      if (base.u(i, j) > Rational(1)) {
        throw PreconditionError("utility u[" + std::to_string(i) + "][" +
                                std::to_string(j) + "] = " +
                                base.u(i, j).ToString() +
                                " exceeds 1; rescale the instance first");
      }
    }
  }

  ModifiedInstance minst;
  minst.base = base;
  FillDefaultNames(minst.base);
  minst.eps = eps;
  minst.k = k;
  const std::int64_t awesome = k / n;
  const std::size_t m = static_cast<std::size_t>(k * n + awesome);
  const std::size_t copies = static_cast<std::size_t>(k * n);

  std::vector<std::vector<Rational>> rows;
  auto extend = [&](std::span<const Rational> types, const Rational& extra) {
    std::vector<Rational> row;
    row.reserve(m);
    for (std::size_t t = 0; t < types.size(); ++t) {
      for (std::int64_t c = 0; c < k; ++c) row.push_back(types[t]);
    }
    for (std::int64_t c = 0; c < awesome; ++c) row.push_back(extra);
    return row;
  };

  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t c = 0; c < k; ++c) {
      rows.push_back(extend(base.u.row(i), Rational(2)));
      minst.agent_tags.push_back(CopyTag(static_cast<int>(i)));
      minst.modified.agents.push_back(minst.base.agents[i] + "#" +
                                      std::to_string(c));
    }
  }
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t b = a + 1; b < n; ++b) {
      const auto path = InterpolationPath(base.u.row(a), base.u.row(b), eps);
      for (std::size_t s = 0; s < path.size(); ++s) {
        rows.push_back(extend(path[s], Rational(2)));
        IndexTag tag = PlainTag(IndexTag::Kind::kInterpolating);
        tag.pair_first = static_cast<int>(a);
        tag.pair_second = static_cast<int>(b);
        tag.step = static_cast<int>(s);
        minst.agent_tags.push_back(tag);
        minst.modified.agents.push_back("interp(" + std::to_string(a) + "," +
                                        std::to_string(b) + ")#" +
                                        std::to_string(s));
      }
    }
  }
  const std::size_t interpolating = rows.size() - copies;
  if (interpolating > static_cast<std::size_t>(awesome)) {
    throw PreconditionError(
        std::to_string(interpolating) +
        " interpolating agents exceed the k/n = " + std::to_string(awesome) +
        " awesome goods; increase k");
  }
  while (rows.size() < m) {
    rows.push_back(std::vector<Rational>(m, Rational(1)));
    minst.agent_tags.push_back(PlainTag(IndexTag::Kind::kDummy));
    minst.modified.agents.push_back("dummy#" +
                                    std::to_string(rows.size() - 1));
  }

  for (std::int64_t j = 0; j < n; ++j) {
    for (std::int64_t c = 0; c < k; ++c) {
      minst.good_tags.push_back(CopyTag(static_cast<int>(j)));
      minst.modified.goods.push_back(minst.base.goods[j] + "#" +
                                     std::to_string(c));
    }
  }
  for (std::int64_t c = 0; c < awesome; ++c) {
    minst.good_tags.push_back(PlainTag(IndexTag::Kind::kAwesome));
    minst.modified.goods.push_back("awesome#" + std::to_string(c));
  }
  minst.modified.u = RationalMatrix::FromRows(rows);
  minst.modified.Validate();
  return minst;
}

ModifiedInstance MakeSurrogate(const Instance& instance) {
  instance.Validate();
  if (instance.two_sided()) {
    throw PreconditionError("the reduction needs a one-sided instance");
  }
  ModifiedInstance minst;
  minst.base = instance;
  FillDefaultNames(minst.base);
  minst.modified = minst.base;
  minst.eps = Rational(1);
  minst.k = 1;
  minst.surrogate = true;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    minst.agent_tags.push_back(CopyTag(static_cast<int>(i)));
    minst.good_tags.push_back(CopyTag(static_cast<int>(i)));
  }
  return minst;
}

PriceSystem ExtractPricesBudgets(const ModifiedInstance& minst,
                                 const RationalMatrix& x,
                                 bool require_envy_free) {
  RequireAllocation(minst, x);
  const Instance& inst = minst.modified;
  const std::size_t m = inst.size();
  if (require_envy_free) {
    const EnvyReport envy = ComputeEnvyReport(inst, x);
    if (!envy.envy_free) {
      throw PreconditionError(
          "allocation is not envy-free on the modified instance: agent " +
          std::to_string(envy.side_a.max_agent) + " envies agent " +
          std::to_string(envy.side_a.max_other) + " by a factor of " +
          envy.max_ratio.ToString());
    }
  }

  PriceSystem ps;
  ps.alpha = RecoverParetoWeights(inst, x, ParetoMode::kStrict).alpha;
  RationalMatrix v(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) v(i, j) = ps.alpha[i] * inst.u(i, j);
  }
  ps.p = PriceMaximalDual(v, x);

  Rational dual_objective;
  Rational primal_objective;
  for (std::size_t i = 0; i < m; ++i) {
    Rational q = v(i, 0) - ps.p[0];
    for (std::size_t j = 1; j < m; ++j) q = Max(q, v(i, j) - ps.p[j]);
    Rational own;
    for (std::size_t j = 0; j < m; ++j) {
      own += v(i, j) * x(i, j);
      if (x(i, j).sign() > 0 && q + ps.p[j] != v(i, j)) {
        throw PreconditionError("complementary slackness fails at (" +
                                std::to_string(i) + ", " + std::to_string(j) +
                                ")");
      }
    }
    ps.b.push_back(own - q);
    dual_objective += q;
    primal_objective += own;
    ps.q.push_back(std::move(q));
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (ps.p[j].sign() < 0) {
      throw PreconditionError("extracted price of good " + std::to_string(j) +
                              " is negative");
    }
    dual_objective += ps.p[j];
  }
  if (dual_objective != primal_objective) {
    throw PreconditionError("extracted duals are not optimal");
  }

  std::optional<Rational> scale;
  for (std::size_t i = 0; i < m; ++i) {
    if (!minst.IsDummy(i) && (!scale || ps.b[i] > *scale)) scale = ps.b[i];
  }
  if (!scale || scale->sign() <= 0) {
    throw PreconditionError("no non-dummy agent has a positive budget");
  }
  ps.scale = *scale;
  for (auto* values : {&ps.alpha, &ps.p, &ps.q, &ps.b}) {
    for (Rational& value : *values) value /= ps.scale;
  }

  for (std::size_t i = 0; i < m; ++i) {
    Rational spending;
    for (std::size_t j = 0; j < m; ++j) spending += ps.p[j] * x(i, j);
    const BestBundle best = ComputeBestBundle(inst.u.row(i), ps.p, ps.b[i],
                                              UnitConstraint::kAtMost);
    if (spending != ps.b[i] || !best.feasible ||
        best.value != ValueOfRow(inst.u, i, x, i)) {
      throw PreconditionError("agent " + std::to_string(i) +
                              " is not buying an optimal bundle at the "
                              "extracted prices");
    }
  }
  return ps;
}

Contraction Contract(const ModifiedInstance& minst, const RationalMatrix& x,
                     const std::vector<Rational>& prices) {
  RequireAllocation(minst, x);
  const std::size_t n = minst.n();
  if (prices.size() != minst.n_prime()) {
    throw StructuralError("expected " + std::to_string(minst.n_prime()) +
                          " prices, got " + std::to_string(prices.size()));
  }
  Contraction out;
  out.x = RationalMatrix(n, n);
  out.p.assign(n, Rational(0));
  std::vector<std::optional<Rational>> first_price(n);
  std::vector<std::int64_t> copies(n, 0);
  for (std::size_t a = 0; a < minst.n_prime(); ++a) {
    const IndexTag& agent = minst.agent_tags[a];
    if (agent.kind != IndexTag::Kind::kCopy) continue;
    for (std::size_t g = 0; g < minst.n_prime(); ++g) {
      const IndexTag& good = minst.good_tags[g];
      if (good.kind == IndexTag::Kind::kCopy) {
        out.x(agent.original, good.original) += x(a, g);
      }
    }
  }
  for (std::size_t g = 0; g < minst.n_prime(); ++g) {
    const IndexTag& good = minst.good_tags[g];
    if (good.kind != IndexTag::Kind::kCopy) continue;
    out.p[good.original] += prices[g];
    ++copies[good.original];
    if (!first_price[good.original]) {
      first_price[good.original] = prices[g];
    } else if (*first_price[good.original] != prices[g]) {
      out.copy_prices_differ = true;
    }
  }
  const Rational k(static_cast<long>(minst.k));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.x(i, j) /= k;
    out.p[i] /= Rational(static_cast<long>(copies[i]));
  }
  return out;
}

BudgetSpread BudgetSpreadDiagnostic(const PriceSystem& prices,
                                    const ModifiedInstance& minst) {
  BudgetSpread out;
  bool first = true;
  for (std::size_t i = 0; i < minst.n_prime(); ++i) {
    if (minst.IsDummy(i)) continue;
    if (first) {
      out.max_budget = out.min_budget = prices.b[i];
      out.max_alpha = prices.alpha[i];
      first = false;
    } else {
      out.max_budget = Max(out.max_budget, prices.b[i]);
      out.min_budget = Min(out.min_budget, prices.b[i]);
      out.max_alpha = Max(out.max_alpha, prices.alpha[i]);
    }
  }
  out.spread = out.max_budget - out.min_budget;
  const Rational n(static_cast<long>(minst.n()));
  out.spread_bound = Rational(5) * minst.eps * n * n * n * n;
  out.alpha_bound = Rational(5) * n * n;
  out.bounds_apply = !minst.surrogate;
  if (out.bounds_apply) {
    out.spread_ok = out.spread <= out.spread_bound;
    out.alpha_ok = out.max_alpha <= out.alpha_bound;
  }
  return out;
}

ReductionRun RunReduction(const ModifiedInstance& minst,
                          const RationalMatrix& x) {
  ReductionRun run;
  run.prices = ExtractPricesBudgets(minst, x, true);
  run.spread = BudgetSpreadDiagnostic(run.prices, minst);
  run.contraction = Contract(minst, x, run.prices.p);
  run.tolerance = Rational(3) / Rational(static_cast<long>(minst.n()));
  run.verdict = VerifyApproxHz(minst.base, run.contraction.x,
                               run.contraction.p, run.tolerance);
  return run;
}

namespace {

Json TagToJson(const IndexTag& tag) {
  Json out;
  out["kind"] = ToString(tag.kind);
  if (tag.kind == IndexTag::Kind::kCopy) out["of"] = tag.original;
  if (tag.kind == IndexTag::Kind::kInterpolating) {
    out["pair"] = {tag.pair_first, tag.pair_second};
    out["step"] = tag.step;
  }
  return out;
}

}  // namespace

Json ProvenanceToJson(const ModifiedInstance& minst) {
  Json out;
  out["base"] = InstanceToJson(minst.base);
  out["eps"] = RationalToJson(minst.eps);
  out["k"] = minst.k;
  out["surrogate"] = minst.surrogate;
  Json agents = Json::array();
  for (const IndexTag& tag : minst.agent_tags) agents.push_back(TagToJson(tag));
  Json goods = Json::array();
  for (const IndexTag& tag : minst.good_tags) goods.push_back(TagToJson(tag));
  out["agent_tags"] = std::move(agents);
  out["good_tags"] = std::move(goods);
  return out;
}

ModifiedInstance ModifiedFromProvenance(const Json& provenance) {
  if (!provenance.is_object() || !provenance.contains("base") ||
      !provenance.contains("k")) {
    throw ParseError("provenance needs \"base\" and \"k\"");
  }
  const Instance base = InstanceFromJson(provenance.at("base"));
  const bool surrogate = provenance.value("surrogate", false);
  ModifiedInstance minst;
  try {
    if (surrogate) {
      minst = MakeSurrogate(base);
    } else {
      if (!provenance.contains("eps") ||
          !provenance.at("k").is_number_integer()) {
        throw ParseError("provenance needs \"eps\" and an integer \"k\"");
      }
      minst = BuildModified(base,
                            RationalFromJson(provenance.at("eps"), "eps"),
                            provenance.at("k").get<std::int64_t>());
    }
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("provenance parameters: ") + e.what());
  }
  const Json expected = ProvenanceToJson(minst);
  for (const char* key : {"agent_tags", "good_tags"}) {
    if (provenance.contains(key) && provenance.at(key) != expected.at(key)) {
      throw ParseError(std::string("provenance \"") + key +
                       "\" does not match the rebuilt instance");
    }
  }
  return minst;
}

}  // namespace matchmarket
