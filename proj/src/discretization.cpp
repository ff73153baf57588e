#include "unirecover/discretization.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "unirecover/minimax.hpp"
#include "unirecover/parallel.hpp"
#include "unirecover/recovery.hpp"
#include "unirecover/trig_space.hpp"

namespace unirecover {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Some nonzero t in T(R(s)) vanishes on xi.
bool sampling_map_degenerate(const Eigen::MatrixXd& design) {
  if (design.rows() < design.cols()) return true;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  return qr.rank() < design.cols();
}

void check_inputs(const PointSet& xi, const ShapeVector& s, const EvaluationGrid& grid) {
  if (xi.empty()) throw std::invalid_argument("discretization: empty node set");
  if (xi.dim() != s.dim() || grid.dim() != s.dim()) {
    throw std::invalid_argument("discretization: dimension mismatch");
  }
}

// max { t(x) : |t(xi)| <= 1 } written as 1 / mu with
// mu = min max_nu |t(xi^nu)| over t with t(x) = 1. The constraint is used to
// eliminate the coefficient with the largest basis value at x.
double pointwise_constant(const Eigen::MatrixXd& phi_nodes, const Eigen::VectorXd& phi_x) {
  Eigen::Index q = 0;
  const double pivot = phi_x.cwiseAbs().maxCoeff(&q);
  if (pivot == 0.0) return 0.0;
  const Eigen::Index dim = phi_x.size();
  const Eigen::VectorXd f = -phi_nodes.col(q) / phi_x(q);
  if (dim == 1) {
    const double mu = f.cwiseAbs().maxCoeff();
    return mu == 0.0 ? kInfinity : 1.0 / mu;
  }
  Eigen::MatrixXd a(phi_nodes.rows(), dim - 1);
  Eigen::VectorXd rest(dim - 1);
  for (Eigen::Index c = 0, k = 0; c < dim; ++c) {
    if (c == q) continue;
    a.col(k) = phi_nodes.col(c);
    rest(k++) = phi_x(c);
  }
  a.noalias() -= phi_nodes.col(q) * (rest.transpose() / phi_x(q));
  const double mu = solve_minimax(a, f).residual;
  return mu <= 0.0 ? kInfinity : 1.0 / mu;
}

}  // namespace

double estimate_discretization_constant(const PointSet& xi, const ShapeVector& s,
                                        std::size_t probes, const EvaluationGrid& grid,
                                        std::uint64_t seed, std::size_t stream) {
  check_inputs(xi, s, grid);
  if (probes < 1) throw std::invalid_argument("discretization: need at least one probe");
  const TrigSpace space(s);
  const Eigen::MatrixXd design = space.design_matrix(xi);
  if (sampling_map_degenerate(design)) return kInfinity;

  const EvaluationGrid full = grid.with_extra(xi);
  double worst = 1.0;
  Eigen::VectorXd c(space.size());
  for (std::size_t p = 0; p < probes; ++p) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(p)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = normal(rng);
    const double node_max = (design * c).cwiseAbs().maxCoeff();
    const double grid_max =
        max_abs(space.evaluate_on_grid({c.data(), static_cast<std::size_t>(c.size())}, full));
    if (node_max == 0.0) return grid_max > 0.0 ? kInfinity : worst;
    worst = std::max(worst, grid_max / node_max);
  }
  return worst;
}

double exact_discretization_constant(const PointSet& xi, const ShapeVector& s,
                                     const EvaluationGrid& grid) {
  check_inputs(xi, s, grid);
  const TrigSpace space(s);
  if (space.size() > kExactModeCap) {
    throw CapacityError("exact_discretization_constant: |R(s)| above the exact-mode cap");
  }
  const Eigen::MatrixXd phi_nodes = space.design_matrix(xi);
  if (sampling_map_degenerate(phi_nodes)) return kInfinity;

  const EvaluationGrid full = grid.with_extra(xi);
  const Eigen::MatrixXd phi_grid = space.design_matrix(full.all_points());

  // Any w with phi_nodes^T w = phi(x) certifies D(x) <= ||w||_1; the
  // least-squares choice gives cheap upper bounds used to skip points.
  const Eigen::MatrixXd gram = phi_nodes.transpose() * phi_nodes;
  const Eigen::MatrixXd solved = gram.ldlt().solve(phi_grid.transpose());
  const Eigen::MatrixXd w = phi_nodes * solved;
  const Eigen::VectorXd upper = w.cwiseAbs().colwise().sum().transpose();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(upper.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return upper(a) > upper(b); });

  double best = 1.0;
  for (Eigen::Index i : order) {
    if (upper(i) <= best) break;
    const double value = pointwise_constant(phi_nodes, phi_grid.row(i).transpose());
    best = std::max(best, value);
  }
  return best;
}

DiscretizationReport certify_collection(const PointSet& xi, int n, std::size_t d,
                                        const EvaluationGrid& grid,
                                        const CertifyOptions& options) {
  const auto shapes = enumerate_shapes(n, d);
  DiscretizationReport report;
  report.point_set = options.point_set_id;
  report.n = n;
  report.d = d;
  report.probes = options.probes;
  report.grid = describe_grid(grid.with_extra(xi));
  report.per_shape.assign(shapes.size(), {ShapeVector(std::vector<int>(d, 0)), 0.0, false});
  parallel_for(shapes.size(), [&](std::size_t i) {
    const bool exact = options.exact && shapes[i].rectangle_size() <= kExactModeCap;
    const double value =
        exact ? exact_discretization_constant(xi, shapes[i], grid)
              : estimate_discretization_constant(xi, shapes[i], options.probes, grid,
                                                 options.seed, i);
    report.per_shape[i] = {shapes[i], value, exact};
  });
  report.exact = true;
  for (const auto& row : report.per_shape) {
    report.d_hat = std::max(report.d_hat, row.d_hat);
    report.exact = report.exact && row.exact;
  }
  return report;
}

}  // namespace unirecover
