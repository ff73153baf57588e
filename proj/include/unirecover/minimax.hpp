#pragma once

// Discrete linear Chebyshev approximation:
//
//   minimize_c  max_i |f_i - (A c)_i|
//
// solved exactly as a linear program. The simplex runs on the dual
//
//   maximize  sum_i f_i (u_i - v_i)
//   s.t.      sum_i (u_i - v_i) a_i = 0,  sum_i (u_i + v_i) = 1,  u, v >= 0,
//
// whose simplex multipliers are the primal coefficients c and the level t.
// A column (i, +/-) prices out as |f_i - a_i c| - t, so each iteration brings
// the currently worst-fitted sample into the reference set.

#include <cstddef>
#include <functional>
#include <span>

#include <Eigen/Dense>

namespace unirecover {

struct MinimaxOptions {
  double optimality_tol = 1e-10;  // relative to max(1, max|f|)
  double pivot_tol = 1e-10;
  std::size_t refactor_every = 64;
  std::size_t max_iterations = 0;  // 0: 50 * (cols + 1) + 10000
};

struct MinimaxSolution {
  Eigen::VectorXd coefficients;
  double residual = 0.0;    // max_i |f_i - (A c)_i|, an upper bound
  double dual_bound = 0.0;  // lower bound on the optimum from the dual weights
  bool rank_deficient = false;
  std::size_t iterations = 0;

  double gap() const { return residual - dual_bound; }
};

/// Rank-deficient designs are flagged and the coefficient vector is replaced
/// by the minimum-norm vector producing the same fitted values.
MinimaxSolution solve_minimax(const Eigen::MatrixXd& design,
                              const Eigen::VectorXd& values,
                              const MinimaxOptions& options = {});

/// Same problem for designs too tall to materialize. The LP is solved on a
/// growing working set of rows; `row(i, out)` fills design row i and
/// `fitted(c)` returns A c over all rows. Stops once no row exceeds the
/// working-set optimum, so the result is optimal for the full problem.
struct RowOracle {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::function<void(std::size_t, std::span<double>)> row;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> fitted;
};

MinimaxSolution solve_minimax(const RowOracle& design, const Eigen::VectorXd& values,
                              const MinimaxOptions& options = {});

}  // namespace unirecover
