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

#include "matchmarket/market.h"

#include <random>
#include <string>

#include "gtest/gtest.h"
#include "matchmarket/errors.h"
#include "matchmarket/generators.h"
#include "matchmarket/io.h"
#include "test_util.h"

namespace matchmarket {
namespace {

RationalMatrix R(std::initializer_list<std::initializer_list<Rational>> rows) {
  std::vector<std::vector<Rational>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return RationalMatrix::FromRows(v);
}

TEST(ParseInstanceTest, DiagonalOneSided) {
  const Instance inst = ParseInstance(
      R"({"kind": "one-sided", "u": [["1", "0"], ["0", "1"]]})");
  EXPECT_FALSE(inst.two_sided());
  EXPECT_EQ(inst.u, RationalMatrix::Identity(2));
  EXPECT_EQ(inst.agents, (std::vector<std::string>{"a0", "a1"}));
  EXPECT_EQ(inst.goods, (std::vector<std::string>{"g0", "g1"}));
}

TEST(ParseInstanceTest, FractionsAndDecimalsAreExact) {
  const Instance inst = ParseInstance(
      R"({"kind": "one-sided", "u": [["2/3", 0.5], ["0.25", 1]]})");
  EXPECT_EQ(inst.u(0, 0), Rational(2, 3));
  EXPECT_EQ(inst.u(0, 1), Rational(1, 2));
  EXPECT_EQ(inst.u(1, 0), Rational(1, 4));
}

TEST(ParseInstanceTest, NegativeUtilityNamesTheEntry) {
  try {
    ParseInstance(R"({"kind": "one-sided", "u": [["1", "0"], ["-1", "1"]]})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("u[1][0]"), std::string::npos)
        << e.what();
  }
}

TEST(ParseInstanceTest, RejectsMalformedDocuments) {
  EXPECT_THROW(ParseInstance("{"), ParseError);
  EXPECT_THROW(ParseInstance(R"({"u": [["1"]]})"), ParseError);
  EXPECT_THROW(ParseInstance(R"({"kind": "one-sided", "u": [["1", "0"]]})"),
               ParseError);
  EXPECT_THROW(ParseInstance(
                   R"({"kind": "two-sided", "u": [["1"]]})"),
               ParseError);
  EXPECT_THROW(ParseInstance(
                   R"({"kind": "one-sided", "u": [["1"]], "w": [["1"]]})"),
               ParseError);
  EXPECT_THROW(ParseInstance(R"({"kind": "one-sided", "u": [["x"]]})"),
               ParseError);
}

TEST(ParseInstanceTest, RoundTrip) {
  for (Family f : {Family::kEnvyTight, Family::kAsymCe, Family::kSymCe,
                   Family::kJefEnvy}) {
    FamilySpec spec{f};
    if (f == Family::kJefEnvy) spec.n = 5;
    const Instance a = Generate(spec);
    const Instance b = ParseInstance(SerializeInstance(a));
    EXPECT_EQ(a.u, b.u);
    EXPECT_EQ(a.w, b.w);
    EXPECT_EQ(a.agents, b.agents);
    EXPECT_EQ(a.goods, b.goods);
    EXPECT_EQ(SerializeInstance(b), SerializeInstance(a));
  }
}

TEST(ValidateAllocationTest, IdentityIsValid) {
  const Instance inst = Instance::OneSided(RationalMatrix::Identity(2));
  EXPECT_TRUE(
      ValidateAllocation(inst, RationalMatrix::Identity(2), Rational(0)).valid());
}

TEST(ValidateAllocationTest, ReportsBothBadRows) {
  const Instance inst = Instance::OneSided(RationalMatrix::Identity(2));
  const RationalMatrix x = R({{Rational(9, 10), 0}, {Rational(1, 10), 1}});
  const AllocationReport report = ValidateAllocation(inst, x, Rational(0));
  ASSERT_EQ(report.violations.size(), 2u);
  for (const AllocationViolation& v : report.violations) {
    EXPECT_EQ(v.kind, AllocationViolation::Kind::kRowSum);
  }
  EXPECT_EQ(report.violations[0].value, Rational(9, 10));
  EXPECT_EQ(report.violations[1].value, Rational(11, 10));
}

TEST(ValidateAllocationTest, TinyNegativeEntryDependsOnTolerance) {
  const Instance inst = Instance::OneSided(RationalMatrix::Identity(2));
  const Rational e(1, 1000000000);
  const RationalMatrix x = R({{Rational(1) + e, -e}, {-e, Rational(1) + e}});
  EXPECT_TRUE(ValidateAllocation(inst, x, Rational(1, 1000000)).valid());
  const AllocationReport strict = ValidateAllocation(inst, x, Rational(0));
  ASSERT_FALSE(strict.valid());
  for (const AllocationViolation& v : strict.violations) {
    EXPECT_EQ(v.kind, AllocationViolation::Kind::kNegativeEntry);
  }
  // Same for a float payload.
  const DoubleMatrix xf = ToDouble(x);
  EXPECT_TRUE(ValidateAllocation(inst, xf, Rational(1, 1000000)).valid());
  EXPECT_FALSE(ValidateAllocation(inst, xf, Rational(0)).valid());
}

TEST(ValidateAllocationTest, ShapeMismatchIsStructural) {
  const Instance inst = Instance::OneSided(RationalMatrix::Identity(2));
  EXPECT_THROW(ValidateAllocation(inst, RationalMatrix::Identity(3), Rational(0)),
               StructuralError);
}

TEST(GenerateTest, EnvyTight) {
  const Instance inst = Generate({Family::kEnvyTight});
  EXPECT_EQ(inst.u, R({{1, 0}, {2, 1}}));
  EXPECT_EQ(inst.agents, (std::vector<std::string>{"i", "i'"}));
  EXPECT_EQ(inst.goods, (std::vector<std::string>{"j", "j'"}));
}

TEST(GenerateTest, IncentiveFamily) {
  const Instance inst = Generate({Family::kIc, 4});
  EXPECT_EQ(inst.u, R({{2, 2, 2, 1}, {1, 1, 1, 0}, {1, 1, 1, 0}, {1, 1, 1, 0}}));
  EXPECT_THROW(Generate({Family::kIc, 1}), PreconditionError);
}

TEST(GenerateTest, JustifiedEnvyFamily) {
  const Instance inst = Generate({Family::kJefEnvy, 8});
  ASSERT_TRUE(inst.two_sided());
  const RationalMatrix& u = inst.u;
  const RationalMatrix& w = *inst.w;
  // i and i' value only j.
  for (std::size_t a : {0u, 1u}) {
    for (std::size_t b = 0; b < 8; ++b) EXPECT_EQ(u(a, b), Rational(b == 0 ? 1 : 0));
  }
  // B-agents other than j value only i.
  for (std::size_t b = 1; b < 8; ++b) {
    for (std::size_t a = 0; a < 8; ++a) EXPECT_EQ(w(b, a), Rational(a == 0 ? 1 : 0));
  }
  // Dummy A-agents are constant.
  for (std::size_t a = 2; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) EXPECT_EQ(u(a, b), Rational(1));
  }
  // j is indifferent over A, so it weakly prefers i to i'.
  EXPECT_EQ(w(0, 0), Rational(1));
  EXPECT_GE(w(0, 0), w(0, 1));
  EXPECT_THROW(Generate({Family::kJefEnvy, 2}), PreconditionError);
}

TEST(GenerateTest, Counterexamples) {
  const Instance asym = Generate({Family::kAsymCe});
  ASSERT_TRUE(asym.two_sided());
  EXPECT_FALSE(asym.IsSymmetric());
  for (const Rational& v : asym.u.data()) {
    EXPECT_TRUE(v == Rational(0) || v == Rational(1));
  }
  for (const Rational& v : asym.w->data()) {
    EXPECT_TRUE(v == Rational(0) || v == Rational(1));
  }
  const Instance sym = Generate({Family::kSymCe});
  EXPECT_TRUE(sym.IsSymmetric());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(sym.u(i, j), (*sym.w)(j, i));
      EXPECT_LE(sym.u(i, j), Rational(2));
    }
  }
  EXPECT_THROW(Generate({Family::kAsymCe, 4}), PreconditionError);
  EXPECT_THROW(Generate({Family::kSymCe, 2}), PreconditionError);
}

TEST(GenerateTest, RandomIsAPureFunctionOfItsSpec) {
  FamilySpec spec{Family::kRandom, 5, 42};
  const Instance a = Generate(spec);
  const Instance b = Generate(spec);
  EXPECT_EQ(a.u, b.u);
  spec.seed = 43;
  EXPECT_NE(Generate(spec).u, a.u);
  for (const Rational& v : a.u.data()) {
    EXPECT_GE(v, Rational(0));
    EXPECT_LE(v, Rational(1));
    EXPECT_EQ((v * Rational(10)).denominator(), 1);
  }
  spec.two_sided = true;
  const Instance c = Generate(spec);
  ASSERT_TRUE(c.two_sided());
  EXPECT_EQ(c.w, Generate(spec).w);
}

TEST(GenerateTest, FamilyTagsRoundTrip) {
  for (Family f : {Family::kRandom, Family::kIc, Family::kEnvyTight,
                   Family::kAsymCe, Family::kSymCe, Family::kJefEnvy,
                   Family::kIdentical}) {
    EXPECT_EQ(ParseFamily(ToString(f)), f);
  }
  EXPECT_THROW(ParseFamily("nope"), ParseError);
}

TEST(AllocationIoTest, ExactAndFloatPayloads) {
  AllocationDocument exact;
  exact.x = R({{Rational(1, 3), Rational(2, 3)}, {Rational(2, 3), Rational(1, 3)}});
  const AllocationDocument back = AllocationFromJson(AllocationToJson(exact));
  EXPECT_TRUE(back.exact());
  EXPECT_EQ(back.AsRational(), exact.AsRational());

  const AllocationDocument f =
      AllocationFromJson(ParseJson(R"({"x": [[0.5, 0.5], [0.5, 0.5]], "exact": false})"));
  EXPECT_FALSE(f.exact());
  EXPECT_EQ(f.AsRational()(0, 0), Rational(1, 2));

  EXPECT_THROW(AllocationFromJson(ParseJson(R"({"x": [[1, 0]]})")), ParseError);
  EXPECT_THROW(AllocationFromJson(ParseJson(R"({"exact": true})")), ParseError);
}

TEST(LotteryIoTest, RoundTripAndPermutationCheck) {
  Lottery lottery;
  lottery.matchings = {{0, 1, 2}, {2, 0, 1}};
  lottery.weights = {Rational(1, 4), Rational(3, 4)};
  const Lottery back = LotteryFromJson(LotteryToJson(lottery));
  EXPECT_EQ(back.matchings, lottery.matchings);
  EXPECT_EQ(back.weights, lottery.weights);
  EXPECT_THROW(LotteryFromJson(ParseJson(
                   R"({"matchings": [[0, 0]], "weights": ["1"]})")),
               ParseError);
  EXPECT_THROW(LotteryFromJson(ParseJson(
                   R"({"matchings": [[0, 1]], "weights": []})")),
               ParseError);
}

}  // namespace
}  // namespace matchmarket
