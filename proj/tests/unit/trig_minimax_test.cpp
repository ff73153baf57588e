#include "unirecover/grid.hpp"
#include "unirecover/minimax.hpp"
#include "unirecover/trig_space.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace unirecover {
namespace {

TEST(TrigSpaceTest, BasisRowIsTensorOfAxisFunctions) {
  const TrigSpace space(ShapeVector({1, 2}));
  ASSERT_EQ(space.size(), 3u * 7u);
  const std::vector<double> x = {0.7, 2.3};
  const auto row = space.basis_row(x);
  auto axis = [](std::size_t b, double t) {
    const auto [k, is_sin] = TrigSpace::axis_mode(b);
    return is_sin ? std::sin(k * t) : std::cos(k * t);
  };
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 7; ++b) {
      EXPECT_NEAR(row[a * 7 + b], axis(a, x[0]) * axis(b, x[1]), 1e-15);
    }
  }
}

TEST(TrigSpaceTest, GridEvaluationMatchesPointwise) {
  const TrigSpace space(ShapeVector({2, 1, 0}));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  std::vector<double> c(space.size());
  for (double& v : c) v = normal(rng);
  const EvaluationGrid grid(3, 5, PointSet(3, {0.1, 0.2, 0.3, 6.0, 1.0, 2.0}));
  const auto values = space.evaluate_on_grid(c, grid);
  ASSERT_EQ(values.size(), grid.size());
  std::vector<double> x(3);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.point(i, x);
    EXPECT_NEAR(values[i], space.evaluate(c, x), 1e-12);
  }
}

TEST(GridTest, LayoutAndExtras) {
  const auto g = EvaluationGrid::for_shapes(2, 2, 3, PointSet(2, {1.0, 2.0}));
  EXPECT_EQ(g.per_axis(), 12u);
  EXPECT_EQ(g.size(), 145u);
  std::vector<double> x(2);
  g.point(13, x);
  EXPECT_DOUBLE_EQ(x[0], kTwoPi / 12);
  EXPECT_DOUBLE_EQ(x[1], kTwoPi / 12);
  g.point(144, x);
  EXPECT_EQ(x, (std::vector<double>{1.0, 2.0}));
  const auto more = g.with_extra(PointSet(2, {3.0, 4.0}));
  EXPECT_EQ(more.extra().size(), 2u);
  EXPECT_EQ(more.all_points().size(), 146u);
  EXPECT_THROW(EvaluationGrid(2, 0), std::invalid_argument);
  EXPECT_THROW(EvaluationGrid(3, 1000), CapacityError);
}

TEST(GridTest, AxisMatricesMatchNaiveContraction) {
  const std::vector<std::size_t> dims = {2, 3};
  std::vector<double> t = {1, 2, 3, 4, 5, 6};
  Eigen::MatrixXd a(4, 2), b(2, 3);
  a << 1, 0, 0, 1, 1, 1, 2, -1;
  b << 1, 2, 3, -1, 0, 1;
  const auto out = apply_axis_matrices<double>(t, dims, {a, b});
  ASSERT_EQ(out.size(), 8u);
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 2; ++k) {
      double ref = 0.0;
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 3; ++q) ref += a(i, p) * b(k, q) * t[p * 3 + q];
      EXPECT_DOUBLE_EQ(out[i * 2 + k], ref);
    }
  }
}

// The optimum equals the largest reference-set value |w.f| / |w|_1 over
// (p+1)-row subsets whose left null space is a line spanned by w.
double minimax_by_references(const Eigen::MatrixXd& a, const Eigen::VectorXd& f) {
  const int n = static_cast<int>(a.rows()), p = static_cast<int>(a.cols());
  std::vector<int> idx(p + 1);
  for (int i = 0; i <= p; ++i) idx[i] = i;
  double best = 0.0;
  while (true) {
    Eigen::MatrixXd sub(p + 1, p);
    Eigen::VectorXd fs(p + 1);
    for (int i = 0; i <= p; ++i) {
      sub.row(i) = a.row(idx[i]);
      fs(i) = f(idx[i]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub.transpose());
    const Eigen::MatrixXd ker = lu.kernel();
    if (ker.cols() == 1) {
      const Eigen::VectorXd w = ker.col(0);
      best = std::max(best, std::abs(w.dot(fs)) / w.lpNorm<1>());
    }
    int k = p;
    while (k >= 0 && idx[k] == n - (p + 1) + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int i = k + 1; i <= p; ++i) idx[i] = idx[i - 1] + 1;
  }
  return best;
}

TEST(MinimaxTest, MatchesReferenceSetOracle) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 6 + trial % 5, p = 1 + trial % 4;
    Eigen::MatrixXd a(n, p);
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < p; ++c) a(i, c) = normal(rng);
      f(i) = normal(rng);
    }
    const auto sol = solve_minimax(a, f);
    const double ref = minimax_by_references(a, f);
    EXPECT_NEAR(sol.residual, ref, 1e-9) << "trial " << trial;
    EXPECT_LE(sol.dual_bound, sol.residual + 1e-12);
    EXPECT_NEAR(sol.gap(), 0.0, 1e-9);
    EXPECT_NEAR((f - a * sol.coefficients).cwiseAbs().maxCoeff(), sol.residual, 1e-12);
  }
}

TEST(MinimaxTest, ConstantFitIsMidRange) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(5, 1);
  Eigen::VectorXd f(5);
  f << 3, -1, 4, 1, 5;
  const auto sol = solve_minimax(a, f);
  EXPECT_NEAR(sol.coefficients(0), 2.0, 1e-12);
  EXPECT_NEAR(sol.residual, 3.0, 1e-12);
}

TEST(MinimaxTest, InterpolatesWhenSquare) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(6, 6);
  Eigen::VectorXd f(6);
  for (int i = 0; i < 6; ++i) {
    for (int c = 0; c < 6; ++c) a(i, c) = normal(rng);
    f(i) = normal(rng);
  }
  const auto sol = solve_minimax(a, f);
  EXPECT_LT(sol.residual, 1e-10);
  EXPECT_LE(sol.dual_bound, sol.residual + 1e-12);
}

TEST(MinimaxTest, RankDeficientDesignIsFlagged) {
  Eigen::MatrixXd a(5, 3);
  Eigen::VectorXd f(5);
  for (int i = 0; i < 5; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = i;
    a(i, 2) = 2.0 * i + 1.0;  // combination of the first two columns
    f(i) = i * i;
  }
  const auto sol = solve_minimax(a, f);
  EXPECT_TRUE(sol.rank_deficient);
  EXPECT_NEAR(sol.residual, 2.0, 1e-9);  // best line for 0,1,4,9,16 is 4x - 2
}

TEST(MinimaxTest, TrigonometricFitOnDenseGridIsCertified) {
  // Degenerate-prone case: many equioscillation candidates on a uniform grid.
  const TrigSpace space(ShapeVector({3}));
  const int n = 400;
  Eigen::MatrixXd a(n, space.size());
  Eigen::VectorXd f(n);
  for (int i = 0; i < n; ++i) {
    const double x = kTwoPi * i / n;
    const auto row = space.basis_row(std::vector<double>{x});
    for (std::size_t c = 0; c < row.size(); ++c) a(i, c) = row[c];
    f(i) = std::abs(std::sin(x)) + 0.1 * std::cos(9 * x);
  }
  const auto sol = solve_minimax(a, f);
  EXPECT_NEAR(sol.gap(), 0.0, 1e-9);
}

TEST(MinimaxTest, RowOracleAgreesWithDenseSolve) {
  const TrigSpace space(ShapeVector({2, 2}));
  const EvaluationGrid grid(2, 64);
  const auto pts = grid.all_points();
  const Eigen::MatrixXd a = space.design_matrix(pts);
  Eigen::VectorXd f(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto x = pts.point(i);
    f(i) = std::exp(std::sin(x[0]) * std::cos(x[1]));
  }
  RowOracle oracle;
  oracle.rows = pts.size();
  oracle.cols = space.size();
  oracle.row = [&](std::size_t i, std::span<double> out) {
    for (std::size_t c = 0; c < oracle.cols; ++c) out[c] = a(i, c);
  };
  oracle.fitted = [&](const Eigen::VectorXd& c) { return Eigen::VectorXd(a * c); };
  const auto generated = solve_minimax(oracle, f);
  const auto dense = solve_minimax(a, f);
  EXPECT_NEAR(generated.residual, dense.residual, 1e-9);
  EXPECT_LE(generated.dual_bound, generated.residual + 1e-12);
  EXPECT_NEAR(generated.gap(), 0.0, 1e-9);
}

TEST(MinimaxTest, RejectsBadInput) {
  EXPECT_THROW(solve_minimax(Eigen::MatrixXd(0, 1), Eigen::VectorXd(0)), std::invalid_argument);
  EXPECT_THROW(solve_minimax(Eigen::MatrixXd::Ones(3, 1), Eigen::VectorXd::Ones(2)),
               std::invalid_argument);
  Eigen::VectorXd f = Eigen::VectorXd::Ones(3);
  f(1) = NAN;
  EXPECT_THROW(solve_minimax(Eigen::MatrixXd::Ones(3, 1), f), std::invalid_argument);
}

}  // namespace
}  // namespace unirecover
