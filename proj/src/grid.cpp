#include "unirecover/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace unirecover {

EvaluationGrid::EvaluationGrid(std::size_t dim, std::size_t per_axis, PointSet extra)
    : dim_(dim), per_axis_(per_axis), extra_(std::move(extra)) {
  if (dim_ < 1 || per_axis_ < 1) {
    throw std::invalid_argument("EvaluationGrid: need dim >= 1 and per_axis >= 1");
  }
  if (!extra_.empty() && extra_.dim() != dim_) {
    throw std::invalid_argument("EvaluationGrid: extra points have wrong dimension");
  }
  double approx = std::pow(static_cast<double>(per_axis_), static_cast<double>(dim_));
  if (approx > 2e8) throw CapacityError("EvaluationGrid: too many grid points");
  tensor_size_ = 1;
  for (std::size_t j = 0; j < dim_; ++j) tensor_size_ *= per_axis_;
}

EvaluationGrid EvaluationGrid::for_shapes(std::size_t dim, int max_shape_entry,
                                          int oversampling, PointSet extra) {
  if (oversampling < 1) throw std::invalid_argument("oversampling must be >= 1");
  EvaluationGrid g(dim,
                   static_cast<std::size_t>(oversampling) << std::max(max_shape_entry, 0),
                   std::move(extra));
  g.oversampling_ = oversampling;
  return g;
}

double EvaluationGrid::axis_coordinate(std::size_t i) const {
  return kTwoPi * static_cast<double>(i) / static_cast<double>(per_axis_);
}

std::vector<double> EvaluationGrid::axis_coordinates() const {
  std::vector<double> x(per_axis_);
  for (std::size_t i = 0; i < per_axis_; ++i) x[i] = axis_coordinate(i);
  return x;
}

void EvaluationGrid::point(std::size_t index, std::span<double> out) const {
  if (index >= tensor_size_) {
    auto p = extra_.point(index - tensor_size_);
    std::copy(p.begin(), p.end(), out.begin());
    return;
  }
  for (std::size_t j = dim_; j-- > 0;) {
    out[j] = axis_coordinate(index % per_axis_);
    index /= per_axis_;
  }
}

PointSet EvaluationGrid::all_points() const {
  std::vector<double> coords(size() * dim_);
  for (std::size_t i = 0; i < size(); ++i) {
    point(i, {coords.data() + i * dim_, dim_});
  }
  return PointSet(dim_, std::move(coords));
}

EvaluationGrid EvaluationGrid::with_extra(const PointSet& more) const {
  PointSet merged = extra_;
  for (std::size_t i = 0; i < more.size(); ++i) merged.append(more.point(i));
  EvaluationGrid g(dim_, per_axis_, std::move(merged));
  g.oversampling_ = oversampling_;
  return g;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace unirecover
