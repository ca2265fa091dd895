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

#ifndef MATCHMARKET_IO_H_
#define MATCHMARKET_IO_H_

#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "matchmarket/bvn.h"
#include "matchmarket/market.h"
#include "matchmarket/matrix.h"
#include "matchmarket/rational.h"

namespace matchmarket {

using Json = nlohmann::ordered_json;

// Rationals are written as "p/q" strings. Readers also accept "p",
// decimal strings ("0.25") and JSON numbers; floating JSON numbers are
// read through their shortest round-trip decimal form, so 0.5 -> 1/2.
Json RationalToJson(const Rational& r);
Rational RationalFromJson(const Json& value, const std::string& where);

Json RationalMatrixToJson(const RationalMatrix& m);
RationalMatrix RationalMatrixFromJson(const Json& value,
                                      const std::string& where);
Json DoubleMatrixToJson(const DoubleMatrix& m);
DoubleMatrix DoubleMatrixFromJson(const Json& value, const std::string& where);

// Instance file:
//   {"kind": "one-sided" | "two-sided", "agents": [...], "goods": [...],
//    "u": [[...]], "w": [[...]]}
// with "w" present iff two-sided. Utilities must be non-negative.
Json InstanceToJson(const Instance& instance);
Instance InstanceFromJson(const Json& doc);
Instance ParseInstance(std::string_view text);
std::string SerializeInstance(const Instance& instance);

// Allocation file: {"x": [[...]], "exact": true | false}. Exact payloads
// hold rational strings, float payloads hold JSON numbers.
struct AllocationDocument {
  std::variant<RationalMatrix, DoubleMatrix> x;

  bool exact() const { return std::holds_alternative<RationalMatrix>(x); }
  std::size_t size() const;
  // Exact payload as is; float payload converted entry-by-entry exactly.
  RationalMatrix AsRational() const;
  DoubleMatrix AsDouble() const;
};

Json AllocationToJson(const AllocationDocument& doc);
AllocationDocument AllocationFromJson(const Json& doc);

// Lottery file: {"matchings": [[perm as image array]], "weights": [...]}.
Json LotteryToJson(const Lottery& lottery);
Lottery LotteryFromJson(const Json& doc);

// Parses text as JSON, converting syntax errors to ParseError.
Json ParseJson(std::string_view text);

}  // namespace matchmarket

#endif  // MATCHMARKET_IO_H_
