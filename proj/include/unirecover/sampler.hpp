#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "unirecover/grid.hpp"
#include "unirecover/point_set.hpp"

namespace unirecover {

/// A real function on the torus that can be sampled anywhere.
class Sampler {
 public:
  virtual ~Sampler() = default;

  virtual std::size_t dim() const = 0;
  virtual double operator()(std::span<const double> x) const = 0;

  /// Values at every point, in order.
  virtual std::vector<double> at(const PointSet& points) const;
  /// Values at every grid point, in grid order (tensor part, then extras).
  virtual std::vector<double> on_grid(const EvaluationGrid& grid) const;
};

/// Wraps a callable.
class FunctionSampler : public Sampler {
 public:
  FunctionSampler(std::size_t dim, std::function<double(std::span<const double>)> f)
      : dim_(dim), f_(std::move(f)) {}

  std::size_t dim() const override { return dim_; }
  double operator()(std::span<const double> x) const override { return f_(x); }

 private:
  std::size_t dim_;
  std::function<double(std::span<const double>)> f_;
};

/// f(x) = prod_j g_j(x_j). Batch evaluation calls each g_j once per distinct
/// coordinate value.
class SeparableSampler : public Sampler {
 public:
  using Factor = std::function<double(double)>;

  explicit SeparableSampler(std::vector<Factor> factors) : factors_(std::move(factors)) {}

  std::size_t dim() const override { return factors_.size(); }
  double operator()(std::span<const double> x) const override;
  std::vector<double> at(const PointSet& points) const override;
  std::vector<double> on_grid(const EvaluationGrid& grid) const override;

 protected:
  std::vector<Factor> factors_;
};

}  // namespace unirecover
