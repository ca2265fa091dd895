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

#include "matchmarket/bvn.h"

#include <optional>
#include <string>

#include "matchmarket/assignment.h"
#include "matchmarket/errors.h"
#include "matchmarket/market.h"

namespace matchmarket {

RationalMatrix Lottery::Expectation(std::size_t n) const {
  RationalMatrix x(n, n, Rational(0));
  for (std::size_t k = 0; k < matchings.size(); ++k) {
    const Permutation& perm = matchings[k];
    if (perm.size() != n) {
      throw StructuralError("matching " + std::to_string(k) + " has size " +
                            std::to_string(perm.size()) + ", expected " +
                            std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) x(i, perm[i]) += weights[k];
  }
  return x;
}

Lottery DecomposeBirkhoff(const RationalMatrix& x) {
  if (!x.is_square()) {
    throw StructuralError("allocation must be square");
  }
  if (!IsDoublyStochastic(x)) {
    throw NotDoublyStochastic("input is not exactly doubly stochastic");
  }
  const std::size_t n = x.rows();
  RationalMatrix residual = x;
  Matrix<char> support(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) support(i, j) = x(i, j).sign() > 0;
  }

  Lottery lottery;
  Rational remaining(1);
  while (remaining.sign() > 0) {
    std::optional<Permutation> perm = PerfectMatchingOnSupport(support);
    if (!perm) {
      throw NotDoublyStochastic("support has no perfect matching with mass " +
                                remaining.ToString() + " left");
    }
    Rational weight = residual(0, (*perm)[0]);
    for (std::size_t i = 1; i < n; ++i) {
      weight = Min(weight, residual(i, (*perm)[i]));
    }
    for (std::size_t i = 0; i < n; ++i) {
      Rational& entry = residual(i, (*perm)[i]);
      entry -= weight;
      if (entry.is_zero()) support(i, (*perm)[i]) = 0;
    }
    remaining -= weight;
    lottery.matchings.push_back(std::move(*perm));
    lottery.weights.push_back(std::move(weight));
  }
  return lottery;
}

}  // namespace matchmarket
