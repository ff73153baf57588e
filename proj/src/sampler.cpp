#include "unirecover/sampler.hpp"

#include <algorithm>
#include <stdexcept>

namespace unirecover {

std::vector<double> Sampler::at(const PointSet& points) const {
  if (!points.empty() && points.dim() != dim()) {
    throw std::invalid_argument("Sampler: point dimension mismatch");
  }
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = (*this)(points.point(i));
  return out;
}

std::vector<double> Sampler::on_grid(const EvaluationGrid& grid) const {
  if (grid.dim() != dim()) throw std::invalid_argument("Sampler: grid dimension mismatch");
  std::vector<double> out(grid.size());
  std::vector<double> x(dim());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.point(i, x);
    out[i] = (*this)(x);
  }
  return out;
}

double SeparableSampler::operator()(std::span<const double> x) const {
  if (x.size() != dim()) throw std::invalid_argument("Sampler: dimension mismatch");
  double v = 1.0;
  for (std::size_t j = 0; j < dim(); ++j) v *= factors_[j](x[j]);
  return v;
}

std::vector<double> SeparableSampler::at(const PointSet& points) const {
  if (!points.empty() && points.dim() != dim()) {
    throw std::invalid_argument("Sampler: point dimension mismatch");
  }
  const std::size_t n = points.size();
  std::vector<double> out(n, 1.0);
  std::vector<std::pair<double, std::size_t>> axis(n);
  for (std::size_t j = 0; j < dim(); ++j) {
    for (std::size_t i = 0; i < n; ++i) axis[i] = {points.point(i)[j], i};
    std::sort(axis.begin(), axis.end());
    double last_x = 0.0, last_v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0 || axis[i].first != last_x) {
        last_x = axis[i].first;
        last_v = factors_[j](last_x);
      }
      out[axis[i].second] *= last_v;
    }
  }
  return out;
}

std::vector<double> SeparableSampler::on_grid(const EvaluationGrid& grid) const {
  if (grid.dim() != dim()) throw std::invalid_argument("Sampler: grid dimension mismatch");
  const auto xs = grid.axis_coordinates();
  std::vector<std::vector<double>> tables(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    tables[j].reserve(xs.size());
    for (double x : xs) tables[j].push_back(factors_[j](x));
  }
  std::vector<double> out(grid.tensor_size());
  const std::size_t r = grid.per_axis();
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::size_t idx = i;
    double v = 1.0;
    for (std::size_t j = dim(); j-- > 0;) {
      v *= tables[j][idx % r];
      idx /= r;
    }
    out[i] = v;
  }
  const auto extra = at(grid.extra());
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

}  // namespace unirecover
