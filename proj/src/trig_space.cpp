#include "unirecover/trig_space.hpp"

#include <cmath>
#include <stdexcept>

namespace unirecover {

TrigSpace::TrigSpace(ShapeVector shape) : shape_(std::move(shape)) {
  size_ = 1;
  for (std::size_t j = 0; j < shape_.dim(); ++j) {
    axis_sizes_.push_back((std::size_t{2} << shape_[j]) - 1);
    size_ *= axis_sizes_.back();
  }
}

std::pair<int, bool> TrigSpace::axis_mode(std::size_t b) {
  if (b == 0) return {0, false};
  return {static_cast<int>((b + 1) / 2), b % 2 == 0};
}

void TrigSpace::axis_basis(std::size_t j, double x, std::span<double> out) const {
  const std::size_t n = axis_sizes_[j];
  out[0] = 1.0;
  const std::size_t kmax = (n - 1) / 2;
  for (std::size_t k = 1; k <= kmax; ++k) {
    const double kx = static_cast<double>(k) * x;
    out[2 * k - 1] = std::cos(kx);
    out[2 * k] = std::sin(kx);
  }
}

std::vector<double> TrigSpace::basis_row(std::span<const double> x) const {
  if (x.size() != dim()) throw std::invalid_argument("TrigSpace: dimension mismatch");
  std::vector<double> row{1.0};
  std::vector<double> axis;
  for (std::size_t j = 0; j < dim(); ++j) {
    axis.resize(axis_sizes_[j]);
    axis_basis(j, x[j], axis);
    std::vector<double> next;
    next.reserve(row.size() * axis.size());
    for (double r : row) {
      for (double a : axis) next.push_back(r * a);
    }
    row = std::move(next);
  }
  return row;
}

Eigen::MatrixXd TrigSpace::design_matrix(const PointSet& points) const {
  if (points.dim() != dim()) throw std::invalid_argument("TrigSpace: dimension mismatch");
  Eigen::MatrixXd a(points.size(), size_);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto row = basis_row(points.point(i));
    for (std::size_t c = 0; c < size_; ++c) a(i, c) = row[c];
  }
  return a;
}

double TrigSpace::evaluate(std::span<const double> coeffs,
                           std::span<const double> x) const {
  if (coeffs.size() != size_) throw std::invalid_argument("TrigSpace: coefficient count");
  const auto row = basis_row(x);
  double v = 0.0;
  for (std::size_t c = 0; c < size_; ++c) v += coeffs[c] * row[c];
  return v;
}

std::vector<double> TrigSpace::evaluate_points(std::span<const double> coeffs,
                                               const PointSet& points) const {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = evaluate(coeffs, points.point(i));
  return out;
}

std::vector<double> TrigSpace::evaluate_on_grid(std::span<const double> coeffs,
                                                const EvaluationGrid& grid) const {
  if (grid.dim() != dim()) throw std::invalid_argument("TrigSpace: grid dimension");
  if (coeffs.size() != size_) throw std::invalid_argument("TrigSpace: coefficient count");
  const auto xs = grid.axis_coordinates();
  std::vector<Eigen::MatrixXd> mats;
  std::vector<double> axis;
  for (std::size_t j = 0; j < dim(); ++j) {
    Eigen::MatrixXd m(xs.size(), axis_sizes_[j]);
    axis.resize(axis_sizes_[j]);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      axis_basis(j, xs[i], axis);
      for (std::size_t b = 0; b < axis.size(); ++b) m(i, b) = axis[b];
    }
    mats.push_back(std::move(m));
  }
  auto values = apply_axis_matrices<double>({coeffs.begin(), coeffs.end()},
                                            axis_sizes_, mats);
  const auto extra = evaluate_points(coeffs, grid.extra());
  values.insert(values.end(), extra.begin(), extra.end());
  return values;
}

}  // namespace unirecover
