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

#ifndef MATCHMARKET_ERRORS_H_
#define MATCHMARKET_ERRORS_H_

#include <stdexcept>
#include <string>

namespace matchmarket {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes that do not line up (non-square matrices, vectors of the wrong
// length, LP rows of the wrong width).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Malformed documents and literals. The message names the offending entry.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A caller-side precondition was not met (parameter constraints, utilities
// out of range, an unsupported generator family/size combination).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Raised when an allocation that was claimed to be (weakly) Pareto-optimal
// fails verification of its recovered welfare weights.
class NotParetoOptimal : public Error {
 public:
  using Error::Error;
};

// Input that should be doubly stochastic is not (no perfect matching on the
// support, infeasible repair).
class NotDoublyStochastic : public Error {
 public:
  using Error::Error;
};

}  // namespace matchmarket

#endif  // MATCHMARKET_ERRORS_H_
