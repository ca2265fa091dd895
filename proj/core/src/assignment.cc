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

#include "matchmarket/assignment.h"

#include <functional>
#include <string>
#include <vector>

#include "matchmarket/errors.h"

namespace matchmarket {
namespace {

template <typename T>
struct HungarianResult {
  Permutation perm;     // row -> column
  std::vector<T> row_potential;
  std::vector<T> col_potential;
};

// Shortest-augmenting-path Hungarian algorithm for min-cost assignment.
// On return row_potential[i] + col_potential[j] <= cost(i, j) for all
// (i, j), with equality on the returned assignment.
template <typename T>
HungarianResult<T> HungarianMinCost(const Matrix<T>& cost) {
  const std::size_t n = cost.rows();
  std::vector<T> u(n + 1, T(0));
  std::vector<T> v(n + 1, T(0));
  std::vector<std::size_t> p(n + 1, 0);
  std::vector<std::size_t> way(n + 1, 0);
  std::vector<T> minv(n + 1, T(0));
  std::vector<char> minv_set(n + 1, 0);
  std::vector<char> used(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv_set.begin(), minv_set.end(), 0);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      bool have_delta = false;
      T delta(0);
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        T cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (!minv_set[j] || cur < minv[j]) {
          minv[j] = cur;
          minv_set[j] = 1;
          way[j] = j0;
        }
        if (!have_delta || minv[j] < delta) {
          delta = minv[j];
          have_delta = true;
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  HungarianResult<T> result;
  result.perm.assign(n, -1);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0) result.perm[p[j] - 1] = static_cast<int>(j - 1);
  }
  result.row_potential.assign(u.begin() + 1, u.end());
  result.col_potential.assign(v.begin() + 1, v.end());
  return result;
}

template <typename T>
void RequireSquare(const Matrix<T>& m) {
  if (!m.is_square()) {
    throw StructuralError("assignment requires a square matrix, got " +
                          std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
}

// Rewrites `perm` into the lexicographically smallest perfect matching of
// the bipartite graph `edge`, given that `perm` is one perfect matching.
void LexicographicallySmallest(const Matrix<char>& edge, Permutation& perm) {
  const std::size_t n = edge.rows();
  std::vector<int> row_of(n);
  for (std::size_t i = 0; i < n; ++i) row_of[perm[i]] = static_cast<int>(i);
  std::vector<char> fixed_col(n, 0);
  std::vector<char> visited(n, 0);

  // Augmenting path over unfixed rows > `row` from `start_row` to `target`.
  std::function<bool(std::size_t, std::size_t, std::size_t)> augment =
      [&](std::size_t r, std::size_t target, std::size_t row) -> bool {
    for (std::size_t c = 0; c < n; ++c) {
      if (!edge(r, c) || fixed_col[c] || visited[c]) continue;
      visited[c] = 1;
      if (c == target) {
        perm[r] = static_cast<int>(c);
        row_of[c] = static_cast<int>(r);
        return true;
      }
      const auto next = static_cast<std::size_t>(row_of[c]);
      if (next <= row) continue;
      if (augment(next, target, row)) {
        perm[r] = static_cast<int>(c);
        row_of[c] = static_cast<int>(r);
        return true;
      }
    }
    return false;
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!edge(i, j) || fixed_col[j]) continue;
      if (perm[i] == static_cast<int>(j)) break;
      // Try to move i onto j: the row currently holding j must reach the
      // column i releases.
      const auto displaced = static_cast<std::size_t>(row_of[j]);
      const auto released = static_cast<std::size_t>(perm[i]);
      const Permutation saved_perm = perm;
      const std::vector<int> saved_row_of = row_of;
      fixed_col[j] = 1;
      std::fill(visited.begin(), visited.end(), 0);
      perm[i] = static_cast<int>(j);
      row_of[j] = static_cast<int>(i);
      if (augment(displaced, released, i)) break;
      perm = saved_perm;
      row_of = saved_row_of;
      fixed_col[j] = 0;
    }
    fixed_col[static_cast<std::size_t>(perm[i])] = 1;
  }
}

}  // namespace

RationalMatching MaxWeightPerfectMatching(const RationalMatrix& weights) {
  RequireSquare(weights);
  const std::size_t n = weights.rows();
  RationalMatrix cost(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost(i, j) = -weights(i, j);
  }
  HungarianResult<Rational> h = HungarianMinCost(cost);
  // Every optimal assignment lives on the tight edges of an optimal dual.
  Matrix<char> tight(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      tight(i, j) =
          h.row_potential[i] + h.col_potential[j] == cost(i, j) ? 1 : 0;
    }
  }
  LexicographicallySmallest(tight, h.perm);
  RationalMatching result;
  result.perm = std::move(h.perm);
  for (std::size_t i = 0; i < n; ++i) {
    result.value += weights(i, static_cast<std::size_t>(result.perm[i]));
  }
  return result;
}

DoubleMatching MaxWeightPerfectMatching(const DoubleMatrix& weights) {
  RequireSquare(weights);
  const std::size_t n = weights.rows();
  DoubleMatrix cost(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost(i, j) = -weights(i, j);
  }
  HungarianResult<double> h = HungarianMinCost(cost);
  DoubleMatching result;
  result.perm = std::move(h.perm);
  for (std::size_t i = 0; i < n; ++i) {
    result.value += weights(i, static_cast<std::size_t>(result.perm[i]));
  }
  return result;
}

std::optional<Permutation> PerfectMatchingOnSupport(
    const Matrix<char>& support) {
  RequireSquare(support);
  const std::size_t n = support.rows();
  std::vector<int> row_of(n, -1);
  std::vector<char> visited(n, 0);
  std::function<bool(std::size_t)> try_row = [&](std::size_t r) -> bool {
    for (std::size_t c = 0; c < n; ++c) {
      if (!support(r, c) || visited[c]) continue;
      visited[c] = 1;
      if (row_of[c] < 0 || try_row(static_cast<std::size_t>(row_of[c]))) {
        row_of[c] = static_cast<int>(r);
        return true;
      }
    }
    return false;
  };
  for (std::size_t r = 0; r < n; ++r) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!try_row(r)) return std::nullopt;
  }
  Permutation perm(n);
  for (std::size_t c = 0; c < n; ++c) {
    perm[static_cast<std::size_t>(row_of[c])] = static_cast<int>(c);
  }
  return perm;
}

}  // namespace matchmarket
