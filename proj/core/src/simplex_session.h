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

#ifndef MATCHMARKET_SRC_SIMPLEX_SESSION_H_
#define MATCHMARKET_SRC_SIMPLEX_SESSION_H_

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "matchmarket/linear_program.h"
#include "matchmarket/rational.h"

namespace matchmarket::internal {

// A simplex tableau that survives between solves, so rows can be appended
// to a solved program and re-optimized from the previous basis.
class SimplexSession {
 public:
  explicit SimplexSession(const LinearProgram& lp);
  ~SimplexSession();
  SimplexSession(const SimplexSession&) = delete;
  SimplexSession& operator=(const SimplexSession&) = delete;

  // Two-phase primal simplex from scratch.
  LPSolution Solve();

  // Appends `terms . x >= rhs` to an optimally solved program. The basis
  // stays dual feasible; call Reoptimize() once all rows are in.
  void AddGreaterEqualRow(
      const std::vector<std::pair<std::size_t, Rational>>& terms,
      const Rational& rhs);

  // Restores optimality with the dual simplex method. The dual vector of
  // the result covers appended rows as well.
  LPSolution Reoptimize();

 private:
  struct State;
  std::unique_ptr<State> state_;
};

}  // namespace matchmarket::internal

#endif  // MATCHMARKET_SRC_SIMPLEX_SESSION_H_
