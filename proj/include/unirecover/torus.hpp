#pragma once

// Exact torus points and the frequency-domain combinatorics used throughout:
// dyadic rectangles R(s), hyperbolic crosses and shape enumeration.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace unirecover {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383279;

/// Thrown when an enumeration would exceed its configured size cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct EnumerationLimits {
  std::size_t max_frequencies = 10'000'000;
};

/// A point (2*pi*a_1/M, ..., 2*pi*a_d/M) of the torus, stored exactly.
class TorusPoint {
 public:
  TorusPoint(std::vector<std::int64_t> numerators, std::int64_t modulus);

  std::size_t dim() const { return numerators_.size(); }
  std::int64_t modulus() const { return modulus_; }
  const std::vector<std::int64_t>& numerators() const { return numerators_; }

  /// Floating coordinates, each in [0, 2*pi).
  std::vector<double> coordinates() const;

  auto operator<=>(const TorusPoint&) const = default;

 private:
  std::vector<std::int64_t> numerators_;
  std::int64_t modulus_;
};

/// Integer frequency k in Z^d.
struct FrequencyVector {
  std::vector<std::int64_t> components;

  std::size_t dim() const { return components.size(); }
  std::int64_t operator[](std::size_t j) const { return components[j]; }
  bool is_zero() const;
  /// prod_j max(|k_j|, 1)
  std::int64_t hyperbolic_size() const;

  auto operator<=>(const FrequencyVector&) const = default;
};

/// s in Z_+^d indexing the rectangle R(s) = {k : |k_j| < 2^{s_j}}.
class ShapeVector {
 public:
  explicit ShapeVector(std::vector<int> entries);

  std::size_t dim() const { return entries_.size(); }
  int operator[](std::size_t j) const { return entries_[j]; }
  const std::vector<int>& entries() const { return entries_; }
  int weight() const { return weight_; }
  int max_entry() const;

  /// |R(s)| = prod_j (2^{s_j+1} - 1)
  std::size_t rectangle_size() const;
  /// "(s_1,...,s_d)"
  std::string to_string() const;

  auto operator<=>(const ShapeVector& other) const {
    return entries_ <=> other.entries_;
  }
  bool operator==(const ShapeVector& other) const {
    return entries_ == other.entries_;
  }

 private:
  std::vector<int> entries_;
  int weight_ = 0;
};

std::ostream& operator<<(std::ostream& out, const ShapeVector& s);

struct HyperbolicCrossSpec {
  std::int64_t N;
  std::size_t d;
};

/// All k with |k_j| < 2^{s_j}, in lexicographic order.
std::vector<FrequencyVector> enumerate_rectangle(
    const ShapeVector& s, const EnumerationLimits& limits = {});

/// Calls `visit` for every k in Gamma(N, d), in lexicographic order. The span
/// is only valid for the duration of the call.
void for_each_in_hyperbolic_cross(
    const HyperbolicCrossSpec& spec,
    const std::function<void(std::span<const std::int64_t>)>& visit);

std::size_t hyperbolic_cross_size(const HyperbolicCrossSpec& spec);

/// All k with prod_j max(|k_j|, 1) <= N, in lexicographic order.
std::vector<FrequencyVector> enumerate_hyperbolic_cross(
    const HyperbolicCrossSpec& spec, const EnumerationLimits& limits = {});

/// All s in Z_+^d with ||s||_1 = n, strictly increasing lexicographically.
std::vector<ShapeVector> enumerate_shapes(int n, std::size_t d);

/// Shapes with ||s||_1 <= n, grouped by weight and lexicographic within.
std::vector<ShapeVector> enumerate_shapes_up_to(int n, std::size_t d);

/// Componentwise reduction into [0, 2*pi).
std::vector<double> torus_reduce(std::span<const double> x);
double torus_reduce(double x);

/// One "k_1,...,k_d" line per frequency.
void write_frequencies_csv(std::ostream& out,
                           std::span<const FrequencyVector> frequencies);

}  // namespace unirecover
