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

#ifndef MATCHMARKET_ASSIGNMENT_H_
#define MATCHMARKET_ASSIGNMENT_H_

#include <optional>

#include "matchmarket/matrix.h"
#include "matchmarket/rational.h"

namespace matchmarket {

struct RationalMatching {
  Permutation perm;
  Rational value;
};

struct DoubleMatching {
  Permutation perm;
  double value = 0.0;
};

// Maximum-weight perfect matching on a square matrix (Hungarian algorithm
// with exact potentials). Among all optimal permutations the
// lexicographically smallest image array is returned.
RationalMatching MaxWeightPerfectMatching(const RationalMatrix& weights);

// Floating-point variant used as the linear-maximization oracle of the
// Nash solver. Rows and columns are scanned in index order so the result is
// a deterministic function of the input; no lexicographic refinement.
DoubleMatching MaxWeightPerfectMatching(const DoubleMatrix& weights);

// Some perfect matching using only entries where `support(i, j)` is true,
// found by augmenting paths in index order, or nullopt if none exists.
std::optional<Permutation> PerfectMatchingOnSupport(
    const Matrix<char>& support);

}  // namespace matchmarket

#endif  // MATCHMARKET_ASSIGNMENT_H_
