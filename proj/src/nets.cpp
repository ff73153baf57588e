#include "unirecover/nets.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace unirecover {

std::vector<double> BinaryNet::coordinates() const {
  std::vector<double> x(numerators.size());
  const double scale = std::ldexp(1.0, -r);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = static_cast<double>(numerators[i]) * scale;
  }
  return x;
}

std::uint64_t bit_reverse(std::uint64_t i, int bits) {
  std::uint64_t out = 0;
  for (int b = 0; b < bits; ++b) {
    out = (out << 1) | ((i >> b) & 1u);
  }
  return out;
}

BinaryNet hammersley_net(int r, int max_r) {
  if (r < 1) throw std::invalid_argument("hammersley_net: r must be >= 1");
  if (r > max_r) throw CapacityError("hammersley_net: r = " + std::to_string(r) +
                                     " exceeds the cap");
  BinaryNet net;
  net.r = r;
  net.d = 2;
  net.t = 0;
  const std::uint64_t n = std::uint64_t{1} << r;
  net.numerators.reserve(2 * n);
  for (std::uint64_t i = 0; i < n; ++i) {
    net.numerators.push_back(i);
    net.numerators.push_back(bit_reverse(i, r));
  }
  return net;
}

NetCheck verify_net_property(std::span<const double> points, int t, int r,
                             std::size_t d) {
  if (d < 1) throw std::invalid_argument("verify_net_property: d must be >= 1");
  if (r < 0 || t < 0 || t > r) {
    throw std::invalid_argument("verify_net_property: need 0 <= t <= r");
  }
  if (r > 40) throw CapacityError("verify_net_property: r too large");
  const std::size_t n = std::size_t{1} << r;
  if (points.size() != n * d) {
    throw std::invalid_argument("verify_net_property: expected 2^r = " +
                                std::to_string(n) + " points");
  }
  for (double v : points) {
    if (!(v >= 0.0 && v < 1.0)) {
      throw std::invalid_argument("verify_net_property: coordinate outside [0,1)");
    }
  }
  const std::size_t expected = std::size_t{1} << t;
  std::vector<std::uint64_t> counts(std::size_t{1} << (r - t));
  for (const auto& shape : enumerate_shapes(r - t, d)) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t index = 0;
      for (std::size_t j = 0; j < d; ++j) {
        const auto cell = static_cast<std::uint64_t>(
            std::floor(std::ldexp(points[i * d + j], shape[j])));
        index = (index << shape[j]) | cell;
      }
      ++counts[index];
    }
    for (std::size_t box = 0; box < counts.size(); ++box) {
      if (counts[box] == expected) continue;
      DyadicBox bad;
      bad.shape = shape.entries();
      bad.anchor.resize(d);
      std::uint64_t rest = box;
      for (std::size_t j = d; j-- > 0;) {
        bad.anchor[j] = rest & ((std::uint64_t{1} << shape[j]) - 1);
        rest >>= shape[j];
      }
      bad.count = counts[box];
      return {false, std::move(bad)};
    }
  }
  return {true, std::nullopt};
}

std::vector<TorusPoint> scale_to_torus(const BinaryNet& net) {
  std::vector<TorusPoint> out;
  const auto m = static_cast<std::int64_t>(std::uint64_t{1} << net.r);
  for (std::size_t i = 0; i < net.size(); ++i) {
    std::vector<std::int64_t> a(net.d);
    for (std::size_t j = 0; j < net.d; ++j) {
      a[j] = static_cast<std::int64_t>(net.numerators[i * net.d + j]);
    }
    out.emplace_back(std::move(a), m);
  }
  return out;
}

}  // namespace unirecover
