#pragma once

// Dense two-phase simplex over an arbitrary ordered field. Instantiated with
// Rational for the exact oracle path and with double for the tolerance path.
// Bland's rule throughout, so the exact path cannot cycle.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "neighborly/exact_linalg.hpp"

namespace neighborly {

template <typename Scalar>
struct NumericPolicy;

template <>
struct NumericPolicy<Rational> {
  static constexpr bool exact = true;
  static int sign(const Rational& x, double /*eps*/) { return x.sign(); }
};

template <>
struct NumericPolicy<double> {
  static constexpr bool exact = false;
  static int sign(double x, double eps) { return x > eps ? 1 : (x < -eps ? -1 : 0); }
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

template <typename Scalar>
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Scalar objective{0};
  Vector<Scalar> solution;
  /// Phase-one residual (sum of artificials); zero when feasible.
  Scalar infeasibility{0};
};

/// maximize c.z  subject to  A z = b,  z >= 0.
/// `eps` is the pivot/zero threshold of the floating path; ignored when exact.
template <typename Scalar>
LpResult<Scalar> solve_standard_lp(const Matrix<Scalar>& A, const Vector<Scalar>& b,
                                   const Vector<Scalar>& c, double eps = 1e-12) {
  using Policy = NumericPolicy<Scalar>;
  const Index m = A.rows();
  const Index n = A.cols();
  if (b.size() != m || c.size() != n) throw std::invalid_argument("solve_standard_lp: shape mismatch");

  // Tableau: rows 0..m-1 constraints, row m objective. Columns: n originals,
  // m artificials, rhs.
  const Index rhs = n + m;
  Matrix<Scalar> T = Matrix<Scalar>::Zero(m + 1, n + m + 1);
  for (Index i = 0; i < m; ++i) {
    const bool flip = Policy::sign(b(i), 0.0) < 0;
    if (flip) {
      T.row(i).head(n) = -A.row(i);
    } else {
      T.row(i).head(n) = A.row(i);
    }
    T(i, rhs) = flip ? Scalar(-b(i)) : b(i);
    T(i, n + i) = Scalar(1);
  }
  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  const std::size_t max_iterations = static_cast<std::size_t>(50 * (m + n) + 1000);

  auto pivot = [&](Index row, Index col) {
    const Scalar inv = Scalar(1) / T(row, col);
    T.row(row) *= inv;
    for (Index i = 0; i <= m; ++i) {
      if (i == row) continue;
      const Scalar factor = T(i, col);
      if (Policy::sign(factor, 0.0) == 0) continue;
      T.row(i) -= factor * T.row(row);
    }
    basis[static_cast<std::size_t>(row)] = col;
  };

  // Objective row holds reduced costs in "z - sum c_j x_j" form: a negative
  // entry improves the objective when its column enters.
  auto optimize = [&](Index column_limit) -> LpStatus {
    for (std::size_t it = 0; it < max_iterations; ++it) {
      Index enter = -1;
      for (Index j = 0; j < column_limit; ++j) {
        if (Policy::sign(T(m, j), eps) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::optimal;
      Index leave = -1;
      Scalar best_ratio{0};
      for (Index i = 0; i < m; ++i) {
        if (Policy::sign(T(i, enter), eps) <= 0) continue;
        const Scalar ratio = T(i, rhs) / T(i, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return LpStatus::unbounded;
      pivot(leave, enter);
    }
    return LpStatus::iteration_limit;
  };

  // Phase one: maximize -sum(artificials).
  for (Index i = 0; i < m; ++i) T.row(m) -= T.row(i);
  for (Index i = 0; i < m; ++i) T(m, n + i) = Scalar(0);

  LpResult<Scalar> result;
  const LpStatus phase_one = optimize(n + m);
  if (phase_one == LpStatus::iteration_limit) {
    result.status = phase_one;
    return result;
  }
  result.infeasibility = -T(m, rhs);
  if (Policy::sign(result.infeasibility, eps) > 0) {
    result.status = LpStatus::infeasible;
    return result;
  }

  // Drive zero-valued artificials out of the basis; rows with no eligible
  // original column are redundant and stay inert.
  for (Index i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] < n) continue;
    for (Index j = 0; j < n; ++j) {
      if (Policy::sign(T(i, j), eps) != 0) {
        pivot(i, j);
        break;
      }
    }
  }

  // Phase two.
  T.row(m).setZero();
  for (Index j = 0; j < n; ++j) T(m, j) = -c(j);
  for (Index i = 0; i < m; ++i) {
    const Index bv = basis[static_cast<std::size_t>(i)];
    if (bv >= n) continue;
    const Scalar factor = T(m, bv);
    if (Policy::sign(factor, 0.0) != 0) T.row(m) -= factor * T.row(i);
  }
  result.status = optimize(n);
  if (result.status != LpStatus::optimal) return result;

  result.solution = Vector<Scalar>::Zero(n);
  for (Index i = 0; i < m; ++i) {
    const Index bv = basis[static_cast<std::size_t>(i)];
    if (bv < n) result.solution(bv) = T(i, rhs);
  }
  result.objective = T(m, rhs);
  return result;
}

template <typename Scalar>
struct BarycentricMargin {
  /// False when the target is not an affine combination of the points.
  bool in_affine_hull = false;
  /// max over affine weights of min_i weight_i. Positive iff the target is a
  /// strictly positive convex combination.
  Scalar margin{0};
  Vector<Scalar> weights;
};

/// Maximizes t subject to sum w = 1, sum w_i y_i = target, w_i >= t (t free).
/// `points` holds one point per row.
template <typename Scalar>
BarycentricMargin<Scalar> barycentric_margin(const Matrix<Scalar>& points, const Vector<Scalar>& target,
                                             double eps = 1e-12) {
  const Index count = points.rows();
  const Index dim = points.cols();
  if (target.size() != dim) throw std::invalid_argument("barycentric_margin: dimension mismatch");
  if (count == 0) throw std::invalid_argument("barycentric_margin: no points");

  // Variables: mu_1..mu_count >= 0, t+ >= 0, t- >= 0 with w_i = mu_i + t.
  Matrix<Scalar> A = Matrix<Scalar>::Zero(dim + 1, count + 2);
  Vector<Scalar> b = Vector<Scalar>::Zero(dim + 1);
  Vector<Scalar> c = Vector<Scalar>::Zero(count + 2);
  A.row(0).head(count).setConstant(Scalar(1));
  A(0, count) = Scalar(count);
  A(0, count + 1) = Scalar(-count);
  b(0) = Scalar(1);
  for (Index j = 0; j < dim; ++j) {
    Scalar column_sum{0};
    for (Index i = 0; i < count; ++i) {
      A(j + 1, i) = points(i, j);
      column_sum += points(i, j);
    }
    A(j + 1, count) = column_sum;
    A(j + 1, count + 1) = -column_sum;
    b(j + 1) = target(j);
  }
  c(count) = Scalar(1);
  c(count + 1) = Scalar(-1);

  const LpResult<Scalar> lp = solve_standard_lp<Scalar>(A, b, c, eps);
  BarycentricMargin<Scalar> out;
  if (lp.status == LpStatus::infeasible) return out;
  if (lp.status != LpStatus::optimal) throw std::runtime_error("barycentric_margin: simplex did not converge");
  out.in_affine_hull = true;
  out.margin = lp.solution(count) - lp.solution(count + 1);
  out.weights = lp.solution.head(count).array() + out.margin;
  return out;
}

}  // namespace neighborly
