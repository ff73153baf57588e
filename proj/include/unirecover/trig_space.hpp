#pragma once

// The real trigonometric space T(R(s)). Along axis j the basis is
//   1, cos(x), sin(x), cos(2x), sin(2x), ..., cos(Kx), sin(Kx),  K = 2^{s_j} - 1,
// and the d-variate basis is the tensor product (axis 0 slowest), so the
// real dimension equals |R(s)|.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "unirecover/grid.hpp"
#include "unirecover/point_set.hpp"
#include "unirecover/torus.hpp"

namespace unirecover {

class TrigSpace {
 public:
  explicit TrigSpace(ShapeVector shape);

  const ShapeVector& shape() const { return shape_; }
  std::size_t dim() const { return shape_.dim(); }
  std::size_t size() const { return size_; }
  std::size_t axis_size(std::size_t j) const { return axis_sizes_[j]; }

  /// Basis values along one axis at x.
  void axis_basis(std::size_t j, double x, std::span<double> out) const;
  /// Row of the design matrix at x.
  std::vector<double> basis_row(std::span<const double> x) const;
  Eigen::MatrixXd design_matrix(const PointSet& points) const;

  double evaluate(std::span<const double> coeffs, std::span<const double> x) const;
  std::vector<double> evaluate_points(std::span<const double> coeffs,
                                      const PointSet& points) const;
  std::vector<double> evaluate_on_grid(std::span<const double> coeffs,
                                       const EvaluationGrid& grid) const;

  /// Signed frequency and parity of 1D basis index b: index 0 -> (0, cos),
  /// 2k-1 -> (k, cos), 2k -> (k, sin).
  static std::pair<int, bool> axis_mode(std::size_t b);

 private:
  ShapeVector shape_;
  std::vector<std::size_t> axis_sizes_;
  std::size_t size_;
};

}  // namespace unirecover
