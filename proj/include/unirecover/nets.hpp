#pragma once

// Base-2 (t, r, d)-nets: a d = 2 construction and a verifier for any d.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "unirecover/torus.hpp"

namespace unirecover {

/// 2^r points of [0,1)^d whose coordinates are multiples of 2^{-r}, stored
/// as integer numerators over 2^r.
struct BinaryNet {
  int r = 0;
  std::size_t d = 0;
  int t = 0;
  std::vector<std::uint64_t> numerators;  // row-major, size 2^r * d

  std::size_t size() const { return d == 0 ? 0 : numerators.size() / d; }
  std::vector<double> coordinates() const;  // row-major, in [0,1)
};

/// {(i 2^{-r}, bitreverse_r(i) 2^{-r}) : 0 <= i < 2^r}, a (0, r, 2)-net.
BinaryNet hammersley_net(int r, int max_r = 30);

std::uint64_t bit_reverse(std::uint64_t i, int bits);

struct DyadicBox {
  std::vector<int> shape;   // s_j, box side 2^{-s_j}
  std::vector<std::uint64_t> anchor;  // a_j - 1, i.e. zero-based box index
  std::size_t count = 0;    // points found in the box
};

struct NetCheck {
  bool ok = false;
  std::optional<DyadicBox> violation;  // first offending box, if any
};

/// Checks that every dyadic box with sum_j s_j = r - t holds exactly 2^t of
/// the given points (row-major coordinates in [0,1)^d). Shapes are scanned
/// in lexicographic order and boxes in row-major anchor order.
NetCheck verify_net_property(std::span<const double> points, int t, int r,
                             std::size_t d);

/// Multiplies coordinates by 2*pi, keeping the dyadic rational form.
std::vector<TorusPoint> scale_to_torus(const BinaryNet& net);

}  // namespace unirecover
