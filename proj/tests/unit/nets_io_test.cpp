#include "unirecover/nets.hpp"
#include "unirecover/point_set.hpp"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

namespace unirecover {
namespace {

// Count of points in the box prod_j [a_j 2^{-s_j}, (a_j + 1) 2^{-s_j}),
// by direct interval comparison.
std::size_t box_count(const std::vector<double>& pts, std::size_t d, const std::vector<int>& s,
                      const std::vector<std::uint64_t>& a) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < pts.size() / d; ++i) {
    bool in = true;
    for (std::size_t j = 0; j < d && in; ++j) {
      const double lo = std::ldexp(static_cast<double>(a[j]), -s[j]);
      const double hi = std::ldexp(static_cast<double>(a[j] + 1), -s[j]);
      in = pts[i * d + j] >= lo && pts[i * d + j] < hi;
    }
    count += in;
  }
  return count;
}

bool net_brute(const std::vector<double>& pts, int t, int r) {
  for (int s0 = 0; s0 <= r - t; ++s0) {
    const std::vector<int> s = {s0, r - t - s0};
    for (std::uint64_t a0 = 0; a0 < (1u << s[0]); ++a0) {
      for (std::uint64_t a1 = 0; a1 < (1u << s[1]); ++a1) {
        if (box_count(pts, 2, s, {a0, a1}) != (1u << t)) return false;
      }
    }
  }
  return true;
}

TEST(BitReverseTest, SmallCases) {
  EXPECT_EQ(bit_reverse(1, 3), 4u);
  EXPECT_EQ(bit_reverse(6, 3), 3u);
  EXPECT_EQ(bit_reverse(0b1011, 4), 0b1101u);
}

TEST(HammersleyTest, IsZeroNetAndAgreesWithBruteForce) {
  for (int r = 1; r <= 8; ++r) {
    const auto net = hammersley_net(r);
    ASSERT_EQ(net.size(), std::size_t{1} << r);
    const auto pts = net.coordinates();
    EXPECT_TRUE(verify_net_property(pts, 0, r, 2).ok) << r;
    EXPECT_TRUE(net_brute(pts, 0, r)) << r;
  }
  EXPECT_THROW(hammersley_net(0), std::invalid_argument);
  EXPECT_THROW(hammersley_net(31), CapacityError);
}

TEST(NetCheckTest, CorruptedSetReportsAViolatingBox) {
  const int r = 6;
  auto pts = hammersley_net(r).coordinates();
  pts[2 * 5 + 1] = std::fmod(pts[2 * 5 + 1] + 0.5, 1.0);
  const auto check = verify_net_property(pts, 0, r, 2);
  ASSERT_FALSE(check.ok);
  ASSERT_TRUE(check.violation.has_value());
  const auto& box = *check.violation;
  EXPECT_NE(box.count, 1u);
  EXPECT_EQ(box.count, box_count(pts, 2, box.shape, box.anchor));
  EXPECT_FALSE(net_brute(pts, 0, r));
}

TEST(NetCheckTest, HigherTRelaxesTheProperty) {
  // Two copies of a (0,3,2)-net form a (1,4,2)-net but not a (0,4,2)-net.
  auto pts = hammersley_net(3).coordinates();
  const auto copy = pts;
  pts.insert(pts.end(), copy.begin(), copy.end());
  EXPECT_TRUE(verify_net_property(pts, 1, 4, 2).ok);
  EXPECT_FALSE(verify_net_property(pts, 0, 4, 2).ok);
  EXPECT_THROW(verify_net_property(pts, 0, 5, 2), std::invalid_argument);
  EXPECT_THROW(verify_net_property(pts, 5, 4, 2), std::invalid_argument);
}

TEST(NetCheckTest, ThreeDimensionalProductSetFails) {
  std::vector<double> pts;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) pts.insert(pts.end(), {i * 0.5, j * 0.5, k * 0.5});
  EXPECT_TRUE(verify_net_property(pts, 0, 3, 3).ok == false);
  EXPECT_TRUE(verify_net_property(pts, 2, 3, 3).ok);
}

TEST(ScaleToTorusTest, KeepsDyadicNumerators) {
  const auto net = hammersley_net(4);
  const auto pts = scale_to_torus(net);
  ASSERT_EQ(pts.size(), 16u);
  EXPECT_EQ(pts[3].modulus(), 16);
  EXPECT_EQ(pts[3].numerators(), (std::vector<std::int64_t>{3, 12}));
}

TEST(PointIoTest, RoundTrip) {
  const auto net = hammersley_net(5);
  const auto ps = PointSet::from_torus_points(scale_to_torus(net));
  std::stringstream buf;
  write_point_set(buf, ps);
  const auto back = read_point_set(buf);
  ASSERT_EQ(back.size(), ps.size());
  EXPECT_EQ(back.coords(), ps.coords());
}

TEST(PointIoTest, SamplesRoundTrip) {
  PointSet ps(2, {0.0, 1.0, 2.0, 3.0});
  std::vector<double> v = {0.25, -7.0};
  std::stringstream buf;
  write_samples(buf, ps, v);
  const auto back = read_samples(buf);
  EXPECT_EQ(back.points.coords(), ps.coords());
  EXPECT_EQ(back.values, v);
}

TEST(PointIoTest, RejectsMalformedFiles) {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return read_point_set(in);
  };
  EXPECT_THROW(read("0.1 0.2\n"), std::runtime_error);
  EXPECT_THROW(read("# d=2\n0.1\n"), std::runtime_error);
  EXPECT_THROW(read("# d=2\n0.1 abc\n"), std::runtime_error);
  EXPECT_THROW(read("# d=1\n7.0\n"), std::runtime_error);
  EXPECT_THROW(read("# d=1 m=3\n0.5\n"), std::runtime_error);
  EXPECT_EQ(read("# d=1 m=2\n\n0.5\n1.5\n").size(), 2u);
}

}  // namespace
}  // namespace unirecover
