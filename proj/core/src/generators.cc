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

#include "matchmarket/generators.h"

#include <random>
#include <string>

#include "matchmarket/errors.h"
#include "rng.h"

namespace matchmarket {
namespace {

RationalMatrix Filled(std::size_t n, long value) {
  return RationalMatrix(n, n, Rational(value));
}

void RequireSize(const FamilySpec& spec, int fixed) {
  if (spec.n != 0 && spec.n != fixed) {
    throw PreconditionError(ToString(spec.family) + " has fixed size " +
                            std::to_string(fixed) + ", got n = " +
                            std::to_string(spec.n));
  }
}

Instance Random(const FamilySpec& spec) {
  if (spec.n < 1) throw PreconditionError("random family needs n >= 1");
  if (spec.grid < 1) throw PreconditionError("random family needs grid >= 1");
  const auto n = static_cast<std::size_t>(spec.n);
  std::mt19937_64 rng(spec.seed);
  const auto draw = [&](RationalMatrix& m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto k = internal::UniformBelow(
            rng, static_cast<std::uint64_t>(spec.grid) + 1);
        m(i, j) = Rational(static_cast<long>(k), spec.grid);
      }
    }
  };
  RationalMatrix u(n, n);
  draw(u);
  if (!spec.two_sided) return Instance::OneSided(std::move(u));
  RationalMatrix w(n, n);
  draw(w);
  return Instance::TwoSided(std::move(u), std::move(w));
}

Instance IncentiveFamily(const FamilySpec& spec) {
  if (spec.n < 2) throw PreconditionError("ic family needs n >= 2");
  const auto n = static_cast<std::size_t>(spec.n);
  RationalMatrix u = Filled(n, 1);
  for (std::size_t j = 0; j + 1 < n; ++j) u(0, j) = Rational(2);
  for (std::size_t i = 1; i < n; ++i) u(i, n - 1) = Rational(0);
  Instance instance = Instance::OneSided(std::move(u));
  instance.goods.back() = "undesirable";
  return instance;
}

Instance EnvyTight(const FamilySpec& spec) {
  RequireSize(spec, 2);
  Instance instance = Instance::OneSided(
      RationalMatrix::FromRows({{Rational(1), Rational(0)},
                                {Rational(2), Rational(1)}}));
  instance.agents = {"i", "i'"};
  instance.goods = {"j", "j'"};
  return instance;
}

// Edges of the two 3x3 counterexamples; rows are A-agents 1..3, columns
// B-agents 4..6. Unlisted edges have utility 0 on both sides.
Instance AsymmetricCounterexample(const FamilySpec& spec) {
  RequireSize(spec, 3);
  RationalMatrix u = Filled(3, 0);
  RationalMatrix w = Filled(3, 0);
  u(0, 0) = Rational(1);  // 1 -> 4
  w(0, 1) = Rational(1);  // 4 -> 2
  u(1, 1) = Rational(1);  // 2 -> 5
  u(1, 2) = Rational(1);  // 2 -> 6
  Instance instance = Instance::TwoSided(std::move(u), std::move(w));
  instance.agents = {"1", "2", "3"};
  instance.goods = {"4", "5", "6"};
  return instance;
}

Instance SymmetricCounterexample(const FamilySpec& spec) {
  RequireSize(spec, 3);
  RationalMatrix u = Filled(3, 0);
  u(0, 0) = Rational(1);  // 1 - 4
  u(1, 0) = Rational(2);  // 2 - 4
  u(1, 1) = Rational(1);  // 2 - 5
  u(1, 2) = Rational(1);  // 2 - 6
  RationalMatrix w(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) w(j, i) = u(i, j);
  }
  Instance instance = Instance::TwoSided(std::move(u), std::move(w));
  instance.agents = {"1", "2", "3"};
  instance.goods = {"4", "5", "6"};
  return instance;
}

Instance JustifiedEnvy(const FamilySpec& spec) {
  if (spec.n < 3) throw PreconditionError("jef-envy family needs n >= 3");
  const auto n = static_cast<std::size_t>(spec.n);
  constexpr std::size_t kI = 0;
  constexpr std::size_t kIPrime = 1;
  constexpr std::size_t kJ = 0;
  RationalMatrix u = Filled(n, 0);
  RationalMatrix w = Filled(n, 0);
  u(kI, kJ) = Rational(1);
  u(kIPrime, kJ) = Rational(1);
  for (std::size_t d = 2; d < n; ++d) {
    for (std::size_t b = 0; b < n; ++b) u(d, b) = Rational(1);
  }
  for (std::size_t b = 1; b < n; ++b) w(b, kI) = Rational(1);
  for (std::size_t a = 0; a < n; ++a) w(kJ, a) = Rational(1);
  Instance instance = Instance::TwoSided(std::move(u), std::move(w));
  instance.agents[kI] = "i";
  instance.agents[kIPrime] = "i'";
  for (std::size_t d = 2; d < n; ++d) {
    instance.agents[d] = "dummy" + std::to_string(d - 1);
  }
  instance.goods[kJ] = "j";
  return instance;
}

Instance Identical(const FamilySpec& spec) {
  if (spec.n < 1) throw PreconditionError("identical family needs n >= 1");
  return Instance::OneSided(Filled(static_cast<std::size_t>(spec.n), 1));
}

}  // namespace

std::string ToString(Family family) {
  switch (family) {
    case Family::kRandom:
      return "random";
    case Family::kIc:
      return "ic";
    case Family::kEnvyTight:
      return "envy-tight";
    case Family::kAsymCe:
      return "asym-ce";
    case Family::kSymCe:
      return "sym-ce";
    case Family::kJefEnvy:
      return "jef-envy";
    case Family::kIdentical:
      return "identical";
  }
  return "unknown";
}

Family ParseFamily(std::string_view tag) {
  for (Family f : {Family::kRandom, Family::kIc, Family::kEnvyTight,
                   Family::kAsymCe, Family::kSymCe, Family::kJefEnvy,
                   Family::kIdentical}) {
    if (ToString(f) == tag) return f;
  }
  throw ParseError("unknown instance family \"" + std::string(tag) + "\"");
}

Instance Generate(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::kRandom:
      return Random(spec);
    case Family::kIc:
      return IncentiveFamily(spec);
    case Family::kEnvyTight:
      return EnvyTight(spec);
    case Family::kAsymCe:
      return AsymmetricCounterexample(spec);
    case Family::kSymCe:
      return SymmetricCounterexample(spec);
    case Family::kJefEnvy:
      return JustifiedEnvy(spec);
    case Family::kIdentical:
      return Identical(spec);
  }
  throw PreconditionError("unsupported family");
}

}  // namespace matchmarket
