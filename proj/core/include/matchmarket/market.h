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

#ifndef MATCHMARKET_MARKET_H_
#define MATCHMARKET_MARKET_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "matchmarket/matrix.h"
#include "matchmarket/rational.h"

namespace matchmarket {

// A matching market with n agents on side A and n goods (one-sided) or n
// agents on side B (two-sided).
//
//   u(i, j): utility of A-agent i for good / B-agent j.
//   w(j, i): utility of B-agent j for A-agent i (two-sided only).
struct Instance {
  std::vector<std::string> agents;
  std::vector<std::string> goods;
  RationalMatrix u;
  std::optional<RationalMatrix> w;

  std::size_t size() const { return u.rows(); }
  bool two_sided() const { return w.has_value(); }

  // u(i, j) == w(j, i) everywhere. False for one-sided instances.
  bool IsSymmetric() const;

  // Square, matching sizes, non-negative utilities, names (if present) of
  // the right length. Throws PreconditionError naming the offending entry.
  void Validate() const;

  static Instance OneSided(RationalMatrix u);
  static Instance TwoSided(RationalMatrix u, RationalMatrix w);
};

// Default names "a0", "a1", ... and "g0"/"b0", ... when none are given.
void FillDefaultNames(Instance& instance);

// u_agent . x_bundle_row, i.e. how much A-agent `agent` values the bundle
// of A-agent `bundle_owner`.
Rational ValueOfRow(const RationalMatrix& u, std::size_t agent,
                    const RationalMatrix& x, std::size_t bundle_owner);
double ValueOfRow(const RationalMatrix& u, std::size_t agent,
                  const DoubleMatrix& x, std::size_t bundle_owner);

// w_agent . x_bundle_col = sum_i w(agent, i) x(i, bundle_owner): how much
// B-agent `agent` values the column of B-agent `bundle_owner`.
Rational ValueOfColumn(const RationalMatrix& w, std::size_t agent,
                       const RationalMatrix& x, std::size_t bundle_owner);
double ValueOfColumn(const RationalMatrix& w, std::size_t agent,
                     const DoubleMatrix& x, std::size_t bundle_owner);

struct AllocationViolation {
  enum class Kind { kRowSum, kColumnSum, kNegativeEntry };
  Kind kind;
  std::size_t row = 0;  // row index, or entry row
  std::size_t col = 0;  // column index, or entry column
  Rational value;       // the offending sum or entry
};

std::string ToString(AllocationViolation::Kind kind);

struct AllocationReport {
  std::vector<AllocationViolation> violations;
  bool valid() const { return violations.empty(); }
};

// Lists every row/column sum farther than `tolerance` from 1 and every entry
// below -tolerance. Float payloads are compared through their exact binary
// values. Throws StructuralError if the shape does not match the instance.
AllocationReport ValidateAllocation(const Instance& instance,
                                    const RationalMatrix& x,
                                    const Rational& tolerance);
AllocationReport ValidateAllocation(const Instance& instance,
                                    const DoubleMatrix& x,
                                    const Rational& tolerance);

// True iff x >= 0 with all row and column sums exactly 1.
bool IsDoublyStochastic(const RationalMatrix& x);

}  // namespace matchmarket

#endif  // MATCHMARKET_MARKET_H_
