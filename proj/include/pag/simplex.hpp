// Copyright (c) pag contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pag {

enum class SimplexStatus : unsigned char { feasible, infeasible, iteration_limit };

template <class Scalar>
struct SimplexResult {
  SimplexStatus status = SimplexStatus::infeasible;
  std::vector<Scalar> solution;  // x with A x = b, x >= 0; empty unless feasible
  long long iterations = 0;
};

/// Phase-one simplex feasibility test for { A x = b, x >= 0 } with b >= 0.
///
/// One artificial variable per row provides the identity starting basis; the
/// system is feasible exactly when min sum(artificials) reaches zero. Bland's
/// rule (least-index entering, least-index leaving on ties) prevents cycling,
/// so the iteration cap only trips on numerical trouble, never on exact
/// scalars.
///
/// `tol`: comparison tolerance. Zero for exact scalar types; a small positive
/// value for floating point.
template <class Scalar>
SimplexResult<Scalar> phase_one_feasible(
    const std::vector<std::vector<Scalar>>& a, const std::vector<Scalar>& b,
    const Scalar& tol, long long iteration_cap) {
  const int m = static_cast<int>(a.size());
  const int n = m > 0 ? static_cast<int>(a[0].size()) : 0;
  SimplexResult<Scalar> result;
  if (m == 0) {
    result.status = SimplexStatus::feasible;
    result.solution.assign(n, Scalar(0));
    return result;
  }

  const int cols = n + m;  // structural variables then artificials
  std::vector<std::vector<Scalar>> t(m, std::vector<Scalar>(cols + 1, Scalar(0)));
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    if (b[r] < Scalar(0) - tol) {
      throw std::invalid_argument("phase one requires b >= 0");
    }
    for (int j = 0; j < n; ++j) t[r][j] = a[r][j];
    t[r][n + r] = Scalar(1);
    t[r][cols] = b[r];
    basis[r] = n + r;
  }

  // Reduced-cost row for min sum(artificials); obj[cols] carries the negated
  // objective value.
  std::vector<Scalar> obj(cols + 1, Scalar(0));
  for (int j = 0; j <= cols; ++j) {
    Scalar colsum(0);
    for (int r = 0; r < m; ++r) colsum += t[r][j];
    const Scalar cost = (j >= n && j < cols) ? Scalar(1) : Scalar(0);
    obj[j] = cost - colsum;
  }

  while (true) {
    // Bland: entering column = least index with a negative reduced cost.
    int pivot_col = -1;
    for (int j = 0; j < cols; ++j) {
      if (obj[j] < Scalar(0) - tol) {
        pivot_col = j;
        break;
      }
    }
    if (pivot_col < 0) break;  // optimal

    // Ratio test; ties resolved toward the least basis variable index.
    int pivot_row = -1;
    Scalar best_ratio(0);
    for (int r = 0; r < m; ++r) {
      if (t[r][pivot_col] > tol) {
        const Scalar ratio = t[r][cols] / t[r][pivot_col];
        if (pivot_row < 0 || ratio < best_ratio ||
            (!(best_ratio < ratio) && basis[r] < basis[pivot_row])) {
          pivot_row = r;
          best_ratio = ratio;
        }
      }
    }
    if (pivot_row < 0) {
      // A minimization bounded below by zero cannot be unbounded; reaching
      // this means the arithmetic degraded.
      result.status = SimplexStatus::iteration_limit;
      return result;
    }

    const Scalar pivot = t[pivot_row][pivot_col];
    for (int j = 0; j <= cols; ++j) t[pivot_row][j] /= pivot;
    for (int r = 0; r < m; ++r) {
      if (r == pivot_row) continue;
      const Scalar factor = t[r][pivot_col];
      if (factor == Scalar(0)) continue;
      for (int j = 0; j <= cols; ++j) t[r][j] -= factor * t[pivot_row][j];
    }
    const Scalar ofactor = obj[pivot_col];
    if (!(ofactor == Scalar(0))) {
      for (int j = 0; j <= cols; ++j) obj[j] -= ofactor * t[pivot_row][j];
    }
    basis[pivot_row] = pivot_col;

    if (++result.iterations > iteration_cap) {
      result.status = SimplexStatus::iteration_limit;
      return result;
    }
  }

  // Objective value is -obj[cols]; zero means every artificial is zero.
  const Scalar objective = Scalar(0) - obj[cols];
  if (objective > tol) {
    result.status = SimplexStatus::infeasible;
    return result;
  }
  result.status = SimplexStatus::feasible;
  result.solution.assign(n, Scalar(0));
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) {
      Scalar value = t[r][cols];
      if (value < Scalar(0)) value = Scalar(0);  // float dust
      result.solution[basis[r]] = value;
    }
  }
  return result;
}

}  // namespace pag
