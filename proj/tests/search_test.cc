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

#include <vector>

#include "gtest/gtest.h"
#include "matchmarket/auditors.h"
#include "matchmarket/errors.h"
#include "matchmarket/generators.h"
#include "matchmarket/polytopes.h"
#include "test_util.h"

namespace matchmarket {
namespace {

void ExpectEfpo(const Instance& inst, const RationalMatrix& x) {
  ASSERT_TRUE(testing::ExactlyDoublyStochastic(x));
  EXPECT_TRUE(ComputeEnvyReport(inst, x).envy_free);
  EXPECT_TRUE(CheckPareto(inst, x).pareto_optimal());
}

void ExpectJefWeakPo(const Instance& inst, const RationalMatrix& x) {
  ASSERT_TRUE(testing::ExactlyDoublyStochastic(x));
  EXPECT_TRUE(ComputeJefReport(inst, x).jef);
  EXPECT_TRUE(CheckWeakPareto(inst, x).weakly_pareto_optimal);
}

TEST(SearchConfigTest, Validation) {
  EXPECT_THROW(SearchConfig{.trials = 0}.Validate(), PreconditionError);
  EXPECT_THROW(SearchConfig{.jobs = 0}.Validate(), PreconditionError);
  EXPECT_NO_THROW(SearchConfig{}.Validate());
  EXPECT_EQ(ParseWeightDistribution("log-uniform"), WeightDistribution::kLogUniform);
  EXPECT_THROW(ParseWeightDistribution("gaussian"), ParseError);
}

TEST(DrawTrialWeightsTest, GridAndDeterminism) {
  for (WeightDistribution d : {WeightDistribution::kUniform, WeightDistribution::kLogUniform}) {
    const SearchConfig config{.seed = 9, .distribution = d};
    std::vector<Rational> a1, b1, a2, b2;
    DrawTrialWeights(config, 5, 6, true, a1, b1);
    DrawTrialWeights(config, 5, 6, true, a2, b2);
    EXPECT_EQ(a1, a2);
    EXPECT_EQ(b1, b2);
    ASSERT_EQ(a1.size(), 6u);
    ASSERT_EQ(b1.size(), 6u);
    for (const auto* v : {&a1, &b1}) {
      for (const Rational& w : *v) {
        EXPECT_GT(w.sign(), 0);
        EXPECT_LE(w, Rational(1));
        EXPECT_EQ(mpz_class(kWeightDenominator) % w.denominator(), 0);
      }
    }
    DrawTrialWeights(config, 6, 6, false, a2, b2);
    EXPECT_NE(a1, a2);
    EXPECT_TRUE(b2.empty());
  }
}

TEST(SearchEfpoTest, DiagonalFindsTheIdentity) {
  const Instance inst = Instance::OneSided(RationalMatrix::Identity(2));
  const SearchResult r = SearchEfpo(inst, {.trials = 5});
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.trial, 0);
  EXPECT_EQ(r.x, RationalMatrix::Identity(2));
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_TRUE(r.log[0].passed);
}

TEST(SearchEfpoTest, CounterexamplesAreNotFound) {
  for (Family family : {Family::kAsymCe, Family::kSymCe}) {
    const SearchResult r = SearchEfpo(Generate({family}), {.trials = 500, .seed = 1});
    EXPECT_FALSE(r.found) << ToString(family);
    EXPECT_EQ(r.log.size(), 500u);
    for (const TrialRecord& t : r.log) EXPECT_FALSE(t.passed);
  }
}

TEST(SearchEfpoTest, SuccessesPassBothAudits) {
  int found = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Instance inst = Generate({.family = Family::kRandom,
                                    .n = 3,
                                    .seed = seed,
                                    .two_sided = seed % 2 == 0,
                                    .grid = 4});
    const SearchResult r = SearchEfpo(inst, {.trials = 20, .seed = seed});
    if (!r.found) continue;
    ++found;
    ExpectEfpo(inst, r.x);
    EXPECT_EQ(static_cast<int>(r.log.size()), r.trial + 1);
  }
  EXPECT_GT(found, 0);
}

TEST(SearchEfpoTest, DeterministicAcrossJobCounts) {
  const Instance inst = Generate({.family = Family::kRandom, .n = 4, .seed = 3, .grid = 4});
  const SearchConfig serial{.trials = 30, .seed = 17};
  SearchConfig parallel = serial;
  parallel.jobs = 4;
  const SearchResult a = SearchEfpo(inst, serial);
  const SearchResult b = SearchEfpo(inst, serial);
  const SearchResult c = SearchEfpo(inst, parallel);
  for (const SearchResult* r : {&b, &c}) {
    EXPECT_EQ(r->found, a.found);
    EXPECT_EQ(r->trial, a.trial);
    EXPECT_EQ(r->x, a.x);
    ASSERT_EQ(r->log.size(), a.log.size());
    for (std::size_t t = 0; t < a.log.size(); ++t) {
      EXPECT_EQ(r->log[t].alpha, a.log[t].alpha);
      EXPECT_EQ(r->log[t].lp_value, a.log[t].lp_value);
      EXPECT_EQ(r->log[t].verdict, a.log[t].verdict);
    }
  }
}

TEST(SearchJefTest, CounterexamplesHaveJefWeakPoAllocations) {
  for (Family family : {Family::kAsymCe, Family::kSymCe, Family::kJefEnvy}) {
    const Instance inst = Generate({family, family == Family::kJefEnvy ? 4 : 0});
    const SearchResult r = SearchJefWeakPo(inst, {.trials = 50, .seed = 2});
    ASSERT_TRUE(r.found) << ToString(family);
    ExpectJefWeakPo(inst, r.x);
  }
}

TEST(SearchJefTest, OneByOne) {
  const Instance inst = Instance::TwoSided(RationalMatrix::FromRows({{1}}),
                                           RationalMatrix::FromRows({{1}}));
  const SearchResult r = SearchJefWeakPo(inst, {.trials = 1});
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.x, RationalMatrix::Identity(1));
}

TEST(SearchJefTest, RandomTwoSided) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Instance inst = Generate(
        {.family = Family::kRandom, .n = 4, .seed = seed, .two_sided = true, .grid = 5});
    const SearchResult r = SearchJefWeakPo(inst, {.trials = 20, .seed = seed});
    ASSERT_TRUE(r.found) << seed;
    ExpectJefWeakPo(inst, r.x);
  }
  EXPECT_THROW(SearchJefWeakPo(Generate({Family::kEnvyTight}), {}), PreconditionError);
}

TEST(EfpoVertexFromWitnessTest, DiagonalIdentity) {
  const Instance inst = Instance::OneSided(RationalMatrix::Identity(3));
  EXPECT_EQ(EfpoVertexFromWitness(inst, RationalMatrix::Identity(3)),
            RationalMatrix::Identity(3));
}

TEST(EfpoVertexFromWitnessTest, IdenticalUniformWitness) {
  const Instance inst = Generate({.family = Family::kIdentical, .n = 4});
  const RationalMatrix x =
      EfpoVertexFromWitness(inst, RationalMatrix(4, 4, Rational(1, 4)));
  ExpectEfpo(inst, x);
}

TEST(EfpoVertexFromWitnessTest, RejectsBadWitnesses) {
  EXPECT_THROW(EfpoVertexFromWitness(Generate({Family::kAsymCe}),
                                     RationalMatrix(3, 3, Rational(1, 3))),
               NotParetoOptimal);
  EXPECT_THROW(EfpoVertexFromWitness(Generate({Family::kEnvyTight}),
                                     RationalMatrix::Identity(2)),
               PreconditionError);
}

TEST(EfpoVertexFromWitnessTest, RandomWitnessesGiveEfpoVertices) {
  int used = 0;
  for (std::uint64_t seed = 1; seed <= 12 && used < 5; ++seed) {
    const Instance inst = Generate({.family = Family::kRandom, .n = 3, .seed = seed, .grid = 4});
    const SearchResult r = SearchEfpo(inst, {.trials = 20, .seed = seed});
    if (!r.found) continue;
    ++used;
    const RationalMatrix v = EfpoVertexFromWitness(inst, r.x);
    ExpectEfpo(inst, v);
    // Same weighted optimum as the witness.
    const ParetoWeights w = RecoverParetoWeights(inst, r.x, ParetoMode::kStrict);
    EXPECT_EQ(WeightedWelfare(inst, v, w.alpha, w.beta), w.phi_max);
  }
  EXPECT_GT(used, 0);
}

}  // namespace
}  // namespace matchmarket
