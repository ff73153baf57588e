#include "unirecover/cubature.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace unirecover {

double cubature_value(std::span<const double> samples, std::size_t m) {
  if (samples.size() != m || m == 0) {
    throw std::invalid_argument("cubature_value: expected " + std::to_string(m) +
                                " samples, got " + std::to_string(samples.size()));
  }
  // Kahan summation.
  double sum = 0.0, c = 0.0;
  for (double v : samples) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(m);
}

std::int64_t alias_residue(std::span<const std::int64_t> k,
                           std::span<const std::int64_t> h, std::int64_t m) {
  __int128 acc = 0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    acc += static_cast<__int128>(k[j]) * static_cast<__int128>(h[j] % m);
    acc %= m;
  }
  auto r = static_cast<std::int64_t>(acc);
  return r < 0 ? r + m : r;
}

namespace {

void check_lattice(std::int64_t m, std::span<const std::int64_t> h, std::size_t d) {
  if (m < 1) throw std::invalid_argument("lattice modulus must be >= 1");
  if (h.size() != d) throw std::invalid_argument("generator length must equal d");
}

}  // namespace

ExactnessResult exactness_check(std::int64_t m, std::span<const std::int64_t> h,
                                std::int64_t N, std::size_t d,
                                const EnumerationLimits& limits) {
  check_lattice(m, h, d);
  const auto cross = enumerate_hyperbolic_cross({N, d}, limits);
  for (const auto& k : cross) {
    if (k.is_zero()) continue;
    if (alias_residue(k.components, h, m) == 0) {
      return {false, k};
    }
  }
  return {true, std::nullopt};
}

CrossModes::CrossModes(std::int64_t N, std::size_t d, const EnumerationLimits& limits)
    : d_(d) {
  const std::size_t total = hyperbolic_cross_size({N, d});
  if (total > limits.max_frequencies) {
    throw CapacityError("CrossModes: |Gamma(N,d)| = " + std::to_string(total) +
                        " exceeds the cap");
  }
  std::vector<std::int64_t> comps;
  std::vector<std::int64_t> sizes;
  comps.reserve(total / 2 * d);
  sizes.reserve(total / 2);
  for_each_in_hyperbolic_cross({N, d}, [&](std::span<const std::int64_t> k) {
    auto lead = std::find_if(k.begin(), k.end(), [](auto v) { return v != 0; });
    if (lead == k.end() || *lead < 0) return;
    std::int64_t p = 1;
    for (auto v : k) p *= std::max<std::int64_t>(v < 0 ? -v : v, 1);
    comps.insert(comps.end(), k.begin(), k.end());
    sizes.push_back(p);
  });
  // Stable sort keeps the lexicographic enumeration order within a size.
  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sizes[a] < sizes[b]; });
  components_.resize(comps.size());
  sizes_.resize(sizes.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sizes_[i] = sizes[order[i]];
    std::copy_n(comps.begin() + order[i] * d, d, components_.begin() + i * d);
  }
}

std::optional<std::size_t> CrossModes::first_aliased(
    std::int64_t m, std::span<const std::int64_t> h) const {
  if (h.size() != d_) throw std::invalid_argument("CrossModes: dimension mismatch");
  std::vector<std::int64_t> hm(h.begin(), h.end());
  for (auto& v : hm) v = ((v % m) + m) % m;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    const std::int64_t* k = components_.data() + i * d_;
    __int128 acc = 0;
    for (std::size_t j = 0; j < d_; ++j) acc += static_cast<__int128>(k[j]) * hm[j];
    if (acc % m == 0) return i;
  }
  return std::nullopt;
}

ExactnessCertificate max_exact_cross(std::int64_t m, std::span<const std::int64_t> h,
                                     std::size_t d, std::optional<std::int64_t> n_cap,
                                     const EnumerationLimits& limits) {
  check_lattice(m, h, d);
  ExactnessCertificate cert;
  cert.m = m;
  cert.h.assign(h.begin(), h.end());
  cert.d = d;

  // k = (m, 0, ..., 0) always aliases, so the radius is < m and scanning
  // Gamma(m, d) is enough.
  std::int64_t scan = m;
  if (n_cap && *n_cap < scan) scan = std::max<std::int64_t>(*n_cap, 1);
  const CrossModes modes(scan, d, limits);
  const auto hit = modes.first_aliased(m, h);
  if (!hit) {
    cert.n_star = scan;
    cert.capped = true;
    return cert;
  }
  const std::int64_t size = modes.hyperbolic_size(*hit);
  cert.n_star = size - 1;
  // Lexicographically smallest aliased mode of that size, over both signs.
  std::optional<FrequencyVector> best;
  for (std::size_t i = *hit; i < modes.size() && modes.hyperbolic_size(i) == size; ++i) {
    auto k = modes.mode(i);
    if (alias_residue(k, h, m) != 0) continue;
    FrequencyVector neg{{k.begin(), k.end()}};
    for (auto& v : neg.components) v = -v;
    if (!best || neg < *best) best = std::move(neg);
  }
  cert.first_aliased_mode = std::move(best);
  return cert;
}

}  // namespace unirecover
