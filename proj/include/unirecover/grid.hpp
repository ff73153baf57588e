#pragma once

// Evaluation grids used as the sup-norm surrogate: a uniform tensor grid
// with R points per axis, optionally extended by extra points (typically the
// sampling nodes themselves).

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "unirecover/point_set.hpp"

namespace unirecover {

inline constexpr int kDefaultOversampling = 8;

class EvaluationGrid {
 public:
  EvaluationGrid(std::size_t dim, std::size_t per_axis, PointSet extra = {});

  /// R = oversampling * 2^{max_shape_entry} points per axis.
  static EvaluationGrid for_shapes(std::size_t dim, int max_shape_entry,
                                   int oversampling = kDefaultOversampling,
                                   PointSet extra = {});

  std::size_t dim() const { return dim_; }
  std::size_t per_axis() const { return per_axis_; }
  std::size_t tensor_size() const { return tensor_size_; }
  std::size_t size() const { return tensor_size_ + extra_.size(); }
  const PointSet& extra() const { return extra_; }
  int oversampling() const { return oversampling_; }

  double axis_coordinate(std::size_t i) const;
  std::vector<double> axis_coordinates() const;
  /// Coordinates of point `index`: tensor points first (row-major, axis 0
  /// slowest), then the extra points.
  void point(std::size_t index, std::span<double> out) const;
  PointSet all_points() const;

  /// Same grid with more extra points appended.
  EvaluationGrid with_extra(const PointSet& more) const;

 private:
  std::size_t dim_;
  std::size_t per_axis_;
  std::size_t tensor_size_;
  PointSet extra_;
  int oversampling_ = 0;
};

double max_abs(std::span<const double> v);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

/// Applies one matrix per axis to a row-major tensor: for axis j the tensor
/// index n_j is mapped through mats[j] (rows R_j, cols n_j). The result has
/// dims (R_0, ..., R_{d-1}) in row-major order.
template <class Scalar>
std::vector<Scalar> apply_axis_matrices(
    std::vector<Scalar> tensor, std::span<const std::size_t> dims,
    const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>& mats) {
  using RowMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  std::size_t total = tensor.size();
  for (std::size_t j = 0; j < dims.size(); ++j) {
    const auto n = static_cast<Eigen::Index>(dims[j]);
    const auto rest = static_cast<Eigen::Index>(total / dims[j]);
    Eigen::Map<const RowMat> cur(tensor.data(), n, rest);
    const RowMat prod = mats[j] * cur;
    const auto out_rows = prod.rows();
    std::vector<Scalar> next(static_cast<std::size_t>(out_rows * rest));
    Eigen::Map<RowMat>(next.data(), rest, out_rows) = prod.transpose();
    total = next.size();
    tensor = std::move(next);
  }
  return tensor;
}

}  // namespace unirecover
