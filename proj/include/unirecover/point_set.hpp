#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "unirecover/torus.hpp"

namespace unirecover {

/// A finite set of points of the torus, stored row-major as real coordinates.
/// Sets built from exact rational nodes also keep the common modulus.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t dim, std::vector<double> coords);

  static PointSet from_torus_points(std::span<const TorusPoint> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return size() == 0; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  const std::vector<double>& coords() const { return coords_; }

  /// Common modulus of the rational representation, if any.
  std::optional<std::int64_t> modulus() const { return modulus_; }

  void append(std::span<const double> x);

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::optional<std::int64_t> modulus_;
};

/// Plain text format: header "# d=<d> m=<m>", then one node per line with d
/// space-separated decimal coordinates in [0, 2*pi).
void write_point_set(std::ostream& out, const PointSet& points);
PointSet read_point_set(std::istream& in);

/// Like the point-set format, with a trailing sample value on every line.
struct SampledPoints {
  PointSet points;
  std::vector<double> values;
};
void write_samples(std::ostream& out, const PointSet& points,
                   std::span<const double> values);
SampledPoints read_samples(std::istream& in);

}  // namespace unirecover
