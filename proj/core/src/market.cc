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

#include <string>

#include "matchmarket/errors.h"

namespace matchmarket {
namespace {

void RequireSquareNonNegative(const RationalMatrix& m, const char* name) {
  if (!m.is_square()) {
    throw PreconditionError(std::string(name) + " must be square, got " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).sign() < 0) {
        throw PreconditionError(std::string(name) + "[" + std::to_string(i) +
                                "][" + std::to_string(j) + "] = " +
                                m(i, j).ToString() + " is negative");
      }
    }
  }
}

template <typename T>
void CheckShape(const Instance& instance, const Matrix<T>& x) {
  if (x.rows() != instance.size() || x.cols() != instance.size()) {
    throw StructuralError("allocation is " + std::to_string(x.rows()) + "x" +
                          std::to_string(x.cols()) + " but the instance has " +
                          std::to_string(instance.size()) + " agents");
  }
}

}  // namespace

bool Instance::IsSymmetric() const {
  if (!w) return false;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (u(i, j) != (*w)(j, i)) return false;
    }
  }
  return true;
}

void Instance::Validate() const {
  RequireSquareNonNegative(u, "u");
  if (w) {
    RequireSquareNonNegative(*w, "w");
    if (w->rows() != u.rows()) {
      throw PreconditionError("u and w have different sizes");
    }
  }
  if (!agents.empty() && agents.size() != size()) {
    throw PreconditionError("expected " + std::to_string(size()) +
                            " agent names, got " +
                            std::to_string(agents.size()));
  }
  if (!goods.empty() && goods.size() != size()) {
    throw PreconditionError("expected " + std::to_string(size()) +
                            " good names, got " +
                            std::to_string(goods.size()));
  }
}

Instance Instance::OneSided(RationalMatrix u) {
  Instance instance;
  instance.u = std::move(u);
  instance.Validate();
  FillDefaultNames(instance);
  return instance;
}

Instance Instance::TwoSided(RationalMatrix u, RationalMatrix w) {
  Instance instance;
  instance.u = std::move(u);
  instance.w = std::move(w);
  instance.Validate();
  FillDefaultNames(instance);
  return instance;
}

void FillDefaultNames(Instance& instance) {
  const std::size_t n = instance.size();
  if (instance.agents.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      instance.agents.push_back("a" + std::to_string(i));
    }
  }
  if (instance.goods.empty()) {
    const char* prefix = instance.two_sided() ? "b" : "g";
    for (std::size_t j = 0; j < n; ++j) {
      instance.goods.push_back(prefix + std::to_string(j));
    }
  }
}

Rational ValueOfRow(const RationalMatrix& u, std::size_t agent,
                    const RationalMatrix& x, std::size_t bundle_owner) {
  Rational total;
  for (std::size_t j = 0; j < u.cols(); ++j) {
    const Rational& a = u(agent, j);
    const Rational& b = x(bundle_owner, j);
    if (!a.is_zero() && !b.is_zero()) total += a * b;
  }
  return total;
}

double ValueOfRow(const RationalMatrix& u, std::size_t agent,
                  const DoubleMatrix& x, std::size_t bundle_owner) {
  double total = 0.0;
  for (std::size_t j = 0; j < u.cols(); ++j) {
    total += u(agent, j).ToDouble() * x(bundle_owner, j);
  }
  return total;
}

Rational ValueOfColumn(const RationalMatrix& w, std::size_t agent,
                       const RationalMatrix& x, std::size_t bundle_owner) {
  Rational total;
  for (std::size_t i = 0; i < w.cols(); ++i) {
    const Rational& a = w(agent, i);
    const Rational& b = x(i, bundle_owner);
    if (!a.is_zero() && !b.is_zero()) total += a * b;
  }
  return total;
}

double ValueOfColumn(const RationalMatrix& w, std::size_t agent,
                     const DoubleMatrix& x, std::size_t bundle_owner) {
  double total = 0.0;
  for (std::size_t i = 0; i < w.cols(); ++i) {
    total += w(agent, i).ToDouble() * x(i, bundle_owner);
  }
  return total;
}

std::string ToString(AllocationViolation::Kind kind) {
  switch (kind) {
    case AllocationViolation::Kind::kRowSum:
      return "row-sum";
    case AllocationViolation::Kind::kColumnSum:
      return "column-sum";
    case AllocationViolation::Kind::kNegativeEntry:
      return "negative-entry";
  }
  return "unknown";
}

AllocationReport ValidateAllocation(const Instance& instance,
                                    const RationalMatrix& x,
                                    const Rational& tolerance) {
  CheckShape(instance, x);
  const std::size_t n = x.rows();
  AllocationReport report;
  const Rational one(1);
  for (std::size_t i = 0; i < n; ++i) {
    Rational sum;
    for (std::size_t j = 0; j < n; ++j) sum += x(i, j);
    if (Abs(sum - one) > tolerance) {
      report.violations.push_back(
          {AllocationViolation::Kind::kRowSum, i, 0, sum});
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational sum;
    for (std::size_t i = 0; i < n; ++i) sum += x(i, j);
    if (Abs(sum - one) > tolerance) {
      report.violations.push_back(
          {AllocationViolation::Kind::kColumnSum, 0, j, sum});
    }
  }
  const Rational floor = -tolerance;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (x(i, j) < floor) {
        report.violations.push_back(
            {AllocationViolation::Kind::kNegativeEntry, i, j, x(i, j)});
      }
    }
  }
  return report;
}

AllocationReport ValidateAllocation(const Instance& instance,
                                    const DoubleMatrix& x,
                                    const Rational& tolerance) {
  CheckShape(instance, x);
  return ValidateAllocation(instance, ToRationalExact(x), tolerance);
}

bool IsDoublyStochastic(const RationalMatrix& x) {
  if (!x.is_square()) return false;
  const std::size_t n = x.rows();
  const Rational one(1);
  for (std::size_t i = 0; i < n; ++i) {
    Rational row;
    Rational col;
    for (std::size_t j = 0; j < n; ++j) {
      if (x(i, j).sign() < 0) return false;
      row += x(i, j);
      col += x(j, i);
    }
    if (row != one || col != one) return false;
  }
  return true;
}

}  // namespace matchmarket
