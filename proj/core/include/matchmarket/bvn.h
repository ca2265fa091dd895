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

#ifndef MATCHMARKET_BVN_H_
#define MATCHMARKET_BVN_H_

#include <cstddef>
#include <vector>

#include "matchmarket/matrix.h"
#include "matchmarket/rational.h"

namespace matchmarket {

// A probability distribution over integral perfect matchings.
struct Lottery {
  std::vector<Permutation> matchings;
  std::vector<Rational> weights;

  // sum_k weights[k] * (permutation matrix of matchings[k]).
  RationalMatrix Expectation(std::size_t n) const;
};

// Birkhoff-von Neumann decomposition of an exactly doubly-stochastic
// matrix: repeatedly take a perfect matching on the remaining support
// (augmenting paths, index order) and subtract its minimum entry. Uses at
// most n^2 - 2n + 2 matchings and reconstructs x exactly.
//
// Throws NotDoublyStochastic if x has a negative entry, a row/column sum
// other than 1, or the support loses its perfect matching.
Lottery DecomposeBirkhoff(const RationalMatrix& x);

}  // namespace matchmarket

#endif  // MATCHMARKET_BVN_H_
