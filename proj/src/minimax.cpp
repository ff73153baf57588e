#include "unirecover/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace unirecover {

namespace {

// Basic variable codes: code >= 0 is the structural column 2*i + s
// (s = 0 for u_i, s = 1 for v_i); code < 0 is the artificial for row -1-code.
using Code = std::int64_t;

class DualSimplex {
 public:
  DualSimplex(const Eigen::MatrixXd& a, const Eigen::VectorXd& f,
              const MinimaxOptions& opt)
      : a_(a), f_(f), opt_(opt), rows_(a.cols() + 1) {
    scale_ = std::max(1.0, f_.cwiseAbs().maxCoeff());
    max_iter_ = opt_.max_iterations ? opt_.max_iterations
                                    : 50 * static_cast<std::size_t>(rows_) + 10000;
  }

  // `start` is a basis from an earlier solve over a prefix of the rows;
  // adding rows keeps it feasible. Falls back to the crash basis.
  MinimaxSolution solve(const std::vector<Code>& start = {}) {
    if (!warm_start(start)) crash();
    std::size_t stall = 0;
    double best_objective = objective();
    int perturbations = 0;
    std::size_t since_refactor = 0;
    for (iterations_ = 0; iterations_ < max_iter_; ++iterations_) {
      if (since_refactor >= opt_.refactor_every) {
        refactor();
        since_refactor = 0;
      }
      const Eigen::VectorXd y = multipliers();
      const Eigen::VectorXd q = f_ - a_ * y.head(rows_ - 1);
      const double level = y(rows_ - 1);

      const double tol = opt_.optimality_tol * scale_;
      Eigen::Index enter = -1;
      double best = tol;
      for (Eigen::Index i = 0; i < q.size(); ++i) {
        const double d = std::abs(q(i)) - level;
        if (d > best) {
          enter = i;
          best = d;
        }
      }
      if (enter < 0) return finish();
      // Cycling on rounding noise: the remaining violations are far below
      // any accuracy the callers rely on.
      if (perturbations >= kMaxPerturbations && stall > 3 * static_cast<std::size_t>(rows_) &&
          best < 1e-8 * scale_) {
        return finish();
      }

      const Code code = 2 * enter + (q(enter) >= 0 ? 0 : 1);
      const Eigen::VectorXd alpha = binv_ * column(code);
      const Eigen::Index leave = ratio_test(alpha);
      if (leave < 0) throw std::runtime_error("solve_minimax: unbounded dual (bug)");
      pivot(leave, code, alpha);
      ++since_refactor;

      const double obj = objective();
      if (obj > best_objective + 1e-14 * scale_) {
        best_objective = obj;
        stall = 0;
      } else if (++stall > 3 * static_cast<std::size_t>(rows_) &&
                 perturbations < kMaxPerturbations) {
        perturb(++perturbations);
        best_objective = objective();
        since_refactor = 0;
        stall = 0;
      }
    }
    throw std::runtime_error("solve_minimax: iteration limit reached");
  }

  const std::vector<Code>& basis() const { return basis_; }

 private:
  Eigen::VectorXd column(Code code) const {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(rows_);
    if (code < 0) {
      col(-1 - code) = 1.0;
      return col;
    }
    const Eigen::Index i = code / 2;
    const double sign = code % 2 == 0 ? 1.0 : -1.0;
    col.head(rows_ - 1) = sign * a_.row(i).transpose();
    col(rows_ - 1) = 1.0;
    return col;
  }

  double cost(Code code) const {
    if (code < 0) return 0.0;
    return code % 2 == 0 ? f_(code / 2) : -f_(code / 2);
  }

  double objective() const {
    double s = 0.0;
    for (Eigen::Index k = 0; k < rows_; ++k) s += cost(basis_[k]) * xb_(k);
    return s;
  }

  Eigen::VectorXd multipliers() const {
    Eigen::VectorXd cb(rows_);
    for (Eigen::Index k = 0; k < rows_; ++k) cb(k) = cost(basis_[k]);
    return binv_.transpose() * cb;
  }

  // Feasible start: u_i = v_i = 1/2 for one sample i, plus artificials at
  // zero level for the remaining rows. Artificials never move off zero.
  void crash() {
    Eigen::Index i0 = 0;
    a_.rowwise().lpNorm<Eigen::Infinity>().maxCoeff(&i0);
    Eigen::Index pivot_row = 0;
    a_.row(i0).cwiseAbs().maxCoeff(&pivot_row);
    basis_.clear();
    for (Eigen::Index r = 0; r < rows_ - 1; ++r) {
      if (r == pivot_row) continue;
      basis_.push_back(-1 - r);
    }
    basis_.push_back(2 * i0);
    basis_.push_back(2 * i0 + 1);
    refactor();
  }

  void refactor() {
    Eigen::MatrixXd b(rows_, rows_);
    for (Eigen::Index k = 0; k < rows_; ++k) b.col(k) = column(basis_[k]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    binv_ = lu.inverse();
    if (rhs_.size() != rows_) {
      rhs_ = Eigen::VectorXd::Zero(rows_);
      rhs_(rows_ - 1) = 1.0;
    }
    xb_ = binv_ * rhs_;
    for (Eigen::Index k = 0; k < rows_; ++k) {
      if (xb_(k) < 0.0 || basis_[k] < 0) xb_(k) = std::max(0.0, basis_[k] < 0 ? 0.0 : xb_(k));
    }
  }

  // Harris two-pass ratio test; artificials with a nonzero entry leave at
  // step zero.
  Eigen::Index ratio_test(const Eigen::VectorXd& alpha) const {
    const double tol = opt_.pivot_tol;
    const double harris = 1e-12;
    double theta_max = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < rows_; ++k) {
      if (basis_[k] < 0) {
        if (std::abs(alpha(k)) > tol) theta_max = std::min(theta_max, harris / std::abs(alpha(k)));
      } else if (alpha(k) > tol) {
        theta_max = std::min(theta_max, (xb_(k) + harris) / alpha(k));
      }
    }
    if (!std::isfinite(theta_max)) return -1;
    Eigen::Index leave = -1;
    double best = 0.0;
    for (Eigen::Index k = 0; k < rows_; ++k) {
      double ratio, size;
      if (basis_[k] < 0) {
        if (std::abs(alpha(k)) <= tol) continue;
        ratio = 0.0;
        size = std::abs(alpha(k));
      } else {
        if (alpha(k) <= tol) continue;
        ratio = xb_(k) / alpha(k);
        size = alpha(k);
      }
      if (ratio > theta_max) continue;
      if (size > best) {
        best = size;
        leave = k;
      }
    }
    return leave;
  }

  bool warm_start(const std::vector<Code>& start) {
    if (static_cast<Eigen::Index>(start.size()) != rows_) return false;
    basis_ = start;
    Eigen::MatrixXd b(rows_, rows_);
    for (Eigen::Index k = 0; k < rows_; ++k) b.col(k) = column(basis_[k]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
    if (!lu.isInvertible()) return false;
    binv_ = lu.inverse();
    Eigen::VectorXd e = Eigen::VectorXd::Zero(rows_);
    e(rows_ - 1) = 1.0;
    const Eigen::VectorXd x = binv_ * e;
    for (Eigen::Index k = 0; k < rows_; ++k) {
      if (basis_[k] < 0 ? std::abs(x(k)) > 1e-9 : x(k) < -1e-9) return false;
    }
    refactor();
    return true;
  }

  // Shifts every structural basic variable up by a small random amount
  // (right-hand side += B delta), which makes the current vertex
  // nondegenerate.
  void perturb(int round) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(round));
    std::uniform_real_distribution<double> unit(1.0, 2.0);
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(rows_);
    for (Eigen::Index k = 0; k < rows_; ++k) {
      if (basis_[k] >= 0) delta(k) = 1e-9 * unit(rng);
    }
    Eigen::MatrixXd b(rows_, rows_);
    for (Eigen::Index k = 0; k < rows_; ++k) b.col(k) = column(basis_[k]);
    refactor();
    rhs_ += b * delta;
    xb_ = binv_ * rhs_;
    for (Eigen::Index k = 0; k < rows_; ++k) {
      if (basis_[k] < 0 || xb_(k) < 0.0) xb_(k) = 0.0;
    }
  }

  void pivot(Eigen::Index r, Code code, const Eigen::VectorXd& alpha) {
    const double theta =
        basis_[r] < 0 ? 0.0 : std::max(0.0, xb_(r) / alpha(r));
    xb_ -= theta * alpha;
    xb_(r) = theta;
    const Eigen::RowVectorXd pr = binv_.row(r) / alpha(r);
    binv_.noalias() -= alpha * pr;
    binv_.row(r) = pr;
    basis_[r] = code;
    for (Eigen::Index k = 0; k < rows_; ++k) {
      if (basis_[k] < 0 || xb_(k) < 0.0) xb_(k) = basis_[k] < 0 ? 0.0 : std::max(0.0, xb_(k));
    }
  }

  MinimaxSolution finish() {
    refactor();
    const Eigen::VectorXd y = multipliers();
    MinimaxSolution sol;
    sol.coefficients = y.head(rows_ - 1);
    sol.iterations = iterations_;
    sol.dual_bound = weight_bound(sol.coefficients);
    const bool artificial_left =
        std::any_of(basis_.begin(), basis_.end(), [](Code c) { return c < 0; });
    if (artificial_left) {
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a_);
      if (cod.rank() < a_.cols()) {
        sol.rank_deficient = true;
        const Eigen::VectorXd fitted = a_ * sol.coefficients;
        sol.coefficients = cod.solve(fitted);
      }
    }
    sol.residual = (f_ - a_ * sol.coefficients).cwiseAbs().maxCoeff();
    return sol;
  }

  // For any w with w^T A = 0, |w.f| / |w|_1 bounds the minimax residual from
  // below. The weights come from the unperturbed basic solution.
  double weight_bound(const Eigen::VectorXd& c) const {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(rows_);
    e(rows_ - 1) = 1.0;
    const Eigen::VectorXd x = binv_ * e;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(f_.size());
    for (Eigen::Index k = 0; k < rows_; ++k) {
      if (basis_[k] < 0 || std::abs(x(k)) < 1e-12) continue;
      w(basis_[k] / 2) += basis_[k] % 2 == 0 ? x(k) : -x(k);
    }
    const double norm = w.lpNorm<1>();
    if (norm < 1e-9) return 0.0;
    // Rounding leaves A^T w slightly off zero; charge the leak against c.
    const double leak = std::abs((a_.transpose() * w).dot(c));
    return std::max(0.0, (std::abs(w.dot(f_)) - leak) / norm);
  }

  static constexpr int kMaxPerturbations = 4;

  const Eigen::MatrixXd& a_;
  const Eigen::VectorXd& f_;
  MinimaxOptions opt_;
  Eigen::Index rows_;
  double scale_ = 1.0;
  std::size_t max_iter_ = 0;
  std::size_t iterations_ = 0;
  std::vector<Code> basis_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  Eigen::VectorXd rhs_;
};

MinimaxSolution solve_dense(const Eigen::MatrixXd& design, const Eigen::VectorXd& values,
                            const MinimaxOptions& options, std::vector<Code>* basis) {
  if (design.rows() == 0 || design.cols() == 0) {
    throw std::invalid_argument("solve_minimax: empty design");
  }
  if (design.rows() != values.size()) {
    throw std::invalid_argument("solve_minimax: design/value size mismatch");
  }
  if (!values.allFinite() || !design.allFinite()) {
    throw std::invalid_argument("solve_minimax: non-finite input");
  }
  if (design.row(0).isZero() && design.rowwise().squaredNorm().maxCoeff() == 0.0) {
    // Only the zero function is available.
    MinimaxSolution sol;
    sol.coefficients = Eigen::VectorXd::Zero(design.cols());
    sol.residual = sol.dual_bound = values.cwiseAbs().maxCoeff();
    sol.rank_deficient = true;
    return sol;
  }
  DualSimplex simplex(design, values, options);
  if (!basis) return simplex.solve();
  MinimaxSolution sol = simplex.solve(*basis);
  *basis = simplex.basis();
  return sol;
}

}  // namespace

MinimaxSolution solve_minimax(const Eigen::MatrixXd& design, const Eigen::VectorXd& values,
                              const MinimaxOptions& options) {
  return solve_dense(design, values, options, nullptr);
}

MinimaxSolution solve_minimax(const RowOracle& design, const Eigen::VectorXd& values,
                              const MinimaxOptions& options) {
  const std::size_t rows = design.rows;
  const std::size_t cols = design.cols;
  if (rows == 0 || cols == 0) throw std::invalid_argument("solve_minimax: empty design");
  if (values.size() != static_cast<Eigen::Index>(rows)) {
    throw std::invalid_argument("solve_minimax: design/value size mismatch");
  }
  const std::size_t direct_limit = 8 * (cols + 1) + 2000;
  std::vector<char> active(rows, 0);
  std::vector<std::size_t> work;
  if (rows <= direct_limit) {
    for (std::size_t i = 0; i < rows; ++i) work.push_back(i);
  } else {
    // A fixed-seed random start avoids strides that alias with tensor grids.
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, rows - 1);
    const std::size_t want = 4 * (cols + 1) + 500;
    while (work.size() < want) {
      const std::size_t i = pick(rng);
      if (!active[i]) {
        active[i] = 1;
        work.push_back(i);
      }
    }
  }
  for (std::size_t i : work) active[i] = 1;
  std::sort(work.begin(), work.end());
  std::vector<Code> basis;

  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  std::vector<double> buf(cols);
  std::size_t total_iterations = 0;
  for (int round = 0;; ++round) {
    Eigen::MatrixXd a(work.size(), cols);
    Eigen::VectorXd f(work.size());
    for (std::size_t r = 0; r < work.size(); ++r) {
      design.row(work[r], buf);
      for (std::size_t c = 0; c < cols; ++c) a(r, c) = buf[c];
      f(r) = values(work[r]);
    }
    MinimaxSolution sol = solve_dense(a, f, options, &basis);
    total_iterations += sol.iterations;
    const Eigen::VectorXd resid = (values - design.fitted(sol.coefficients)).cwiseAbs();
    const double level = sol.residual + 1e-12 * scale;

    std::vector<std::size_t> violators;
    for (std::size_t i = 0; i < rows; ++i) {
      if (!active[i] && resid(i) > level) violators.push_back(i);
    }
    sol.residual = resid.maxCoeff();
    sol.iterations = total_iterations;
    if (violators.empty()) return sol;
    if (round > 200) throw std::runtime_error("solve_minimax: row generation did not settle");

    const std::size_t take = std::min(violators.size(), 2 * cols + 16);
    std::partial_sort(violators.begin(), violators.begin() + take, violators.end(),
                      [&](std::size_t x, std::size_t y) { return resid(x) > resid(y); });
    for (std::size_t k = 0; k < take; ++k) {
      active[violators[k]] = 1;
      work.push_back(violators[k]);
    }
  }
}

}  // namespace unirecover
