#pragma once

// Equal-weight lattice cubature and its exactness on hyperbolic crosses,
// certified by integer congruences: k is aliased on the lattice (m, h)
// when sum_j k_j h_j = 0 (mod m).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "unirecover/lattices.hpp"
#include "unirecover/torus.hpp"

namespace unirecover {

/// (1/m) sum_nu samples[nu]; samples ordered nu = 1..m.
double cubature_value(std::span<const double> samples, std::size_t m);

/// sum_j k_j h_j mod m, in [0, m).
std::int64_t alias_residue(std::span<const std::int64_t> k,
                           std::span<const std::int64_t> h, std::int64_t m);

struct ExactnessResult {
  bool exact = false;
  std::optional<FrequencyVector> first_aliased;  // lexicographically smallest
};

/// True iff no nonzero k in Gamma(N, d) is aliased on the lattice (m, h).
ExactnessResult exactness_check(std::int64_t m, std::span<const std::int64_t> h,
                                std::int64_t N, std::size_t d,
                                const EnumerationLimits& limits = {});

struct ExactnessCertificate {
  std::int64_t m = 1;
  std::vector<std::int64_t> h;
  std::size_t d = 0;
  std::int64_t n_star = 0;  // largest N with exactness on T(N, d)
  std::optional<FrequencyVector> first_aliased_mode;  // aliased mode in Gamma(N*+1, d)
  bool capped = false;  // no aliasing found up to the scan cap
};

/// Largest N such that exactness_check(m, h, N, d) holds. The scan never
/// needs to pass N = m since (m, 0, ..., 0) always aliases; a smaller
/// `n_cap` stops there and marks the certificate capped if nothing aliased.
ExactnessCertificate max_exact_cross(std::int64_t m, std::span<const std::int64_t> h,
                                     std::size_t d,
                                     std::optional<std::int64_t> n_cap = std::nullopt,
                                     const EnumerationLimits& limits = {});

/// Nonzero modes of Gamma(N, d) up to the symmetry k -> -k (first nonzero
/// entry positive), ordered by hyperbolic size, then lexicographically.
/// Scanning in this order finds the smallest aliased size first.
class CrossModes {
 public:
  CrossModes(std::int64_t N, std::size_t d, const EnumerationLimits& limits = {});

  std::size_t size() const { return sizes_.size(); }
  std::size_t dim() const { return d_; }
  std::span<const std::int64_t> mode(std::size_t i) const {
    return {components_.data() + i * d_, d_};
  }
  std::int64_t hyperbolic_size(std::size_t i) const { return sizes_[i]; }

  /// Index of the first aliased mode in scan order.
  std::optional<std::size_t> first_aliased(std::int64_t m,
                                           std::span<const std::int64_t> h) const;

 private:
  std::size_t d_;
  std::vector<std::int64_t> components_;
  std::vector<std::int64_t> sizes_;
};

}  // namespace unirecover
