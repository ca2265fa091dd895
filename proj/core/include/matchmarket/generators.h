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

#ifndef MATCHMARKET_GENERATORS_H_
#define MATCHMARKET_GENERATORS_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "matchmarket/market.h"

namespace matchmarket {

enum class Family {
  kRandom,     // uniform grid utilities {0, 1/d, ..., 1}
  kIc,         // one agent with 2/1 utilities against n-1 agents with 1/0
  kEnvyTight,  // 2x2 instance where the Nash solution has envy ratio 2
  kAsymCe,     // 3x3 two-sided {0,1} instance without an EF+PO allocation
  kSymCe,      // 3x3 symmetric {0,1,2} instance without an EF+PO allocation
  kJefEnvy,    // two-sided instance where Nash bargaining has strong
               // justified envy
  kIdentical,  // all utilities 1
};

std::string ToString(Family family);
// Accepts the tags "random", "ic", "envy-tight", "asym-ce", "sym-ce",
// "jef-envy", "identical". Throws ParseError otherwise.
Family ParseFamily(std::string_view tag);

struct FamilySpec {
  Family family = Family::kRandom;
  // 0 selects the family default (2 for envy-tight, 3 for asym-ce/sym-ce).
  int n = 0;
  std::uint64_t seed = 0;
  // Random family only: also draw a side-B utility matrix.
  bool two_sided = false;
  // Random family only: utilities are multiples of 1/grid in [0, 1].
  int grid = 10;
};

// Pure function of the spec. Throws PreconditionError for unsupported
// (family, n) combinations.
//
// Index conventions of the fixed instances:
//   envy-tight: agents (i, i'), goods (j, j'); u = [[1, 0], [2, 1]].
//   ic:         agent 0 is the one tempted to misreport; goods 0..n-2 are
//               desirable and good n-1 is undesirable.
//   asym-ce / sym-ce: A-agents 1,2,3 are rows 0..2 and B-agents 4,5,6 are
//               columns 0..2.
//   jef-envy:   A = (i, i', dummies...), B = (j, others...). Dummy A-agents
//               value every B-agent at 1; B-agents other than j value only
//               i; i and i' value only j. B-agent j values every A-agent at
//               1, so j's own utility is the same under every allocation.
Instance Generate(const FamilySpec& spec);

}  // namespace matchmarket

#endif  // MATCHMARKET_GENERATORS_H_
