#include "unirecover/torus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>

namespace unirecover {
namespace {

// Every integer vector in the box [-B, B]^d, lexicographic.
std::vector<std::vector<std::int64_t>> box(std::int64_t B, std::size_t d) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> k(d, -B);
  while (true) {
    out.push_back(k);
    std::size_t j = d;
    while (j > 0) {
      --j;
      if (k[j] < B) {
        ++k[j];
        break;
      }
      k[j] = -B;
      if (j == 0) return out;
    }
  }
}

std::vector<std::vector<std::int64_t>> components(const std::vector<FrequencyVector>& v) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& k : v) out.push_back(k.components);
  return out;
}

TEST(ShapeVectorTest, RectangleSizeAndWeight) {
  ShapeVector s({2, 0, 3});
  EXPECT_EQ(s.weight(), 5);
  EXPECT_EQ(s.max_entry(), 3);
  EXPECT_EQ(s.rectangle_size(), 7u * 1u * 15u);
  EXPECT_THROW(ShapeVector({1, -1}), std::invalid_argument);
}

TEST(EnumerateRectangleTest, MatchesBoxFilter) {
  for (std::size_t d = 1; d <= 3; ++d) {
    for (int n = 0; n <= 4; ++n) {
      for (const auto& s : enumerate_shapes(n, d)) {
        std::vector<std::vector<std::int64_t>> expected;
        for (const auto& k : box(16, d)) {
          bool in = true;
          for (std::size_t j = 0; j < d; ++j) in = in && std::abs(k[j]) < (1 << s[j]);
          if (in) expected.push_back(k);
        }
        EXPECT_EQ(components(enumerate_rectangle(s)), expected);
        EXPECT_EQ(expected.size(), s.rectangle_size());
      }
    }
  }
}

TEST(EnumerateRectangleTest, CapIsEnforced) {
  EXPECT_THROW(enumerate_rectangle(ShapeVector({10, 10}), {1000}), CapacityError);
}

TEST(HyperbolicCrossTest, MatchesBruteForce) {
  for (std::size_t d = 1; d <= 3; ++d) {
    for (std::int64_t N = 1; N <= 16; ++N) {
      std::vector<std::vector<std::int64_t>> expected;
      for (const auto& k : box(N, d)) {
        std::int64_t p = 1;
        for (auto v : k) p *= std::max<std::int64_t>(std::abs(v), 1);
        if (p <= N) expected.push_back(k);
      }
      const auto got = enumerate_hyperbolic_cross({N, d});
      EXPECT_EQ(components(got), expected) << "N=" << N << " d=" << d;
      EXPECT_EQ(hyperbolic_cross_size({N, d}), expected.size());
    }
  }
}

TEST(HyperbolicCrossTest, VisitorAgreesWithEnumeration) {
  std::vector<std::vector<std::int64_t>> seen;
  for_each_in_hyperbolic_cross({12, 3}, [&](std::span<const std::int64_t> k) {
    seen.emplace_back(k.begin(), k.end());
  });
  EXPECT_EQ(seen, components(enumerate_hyperbolic_cross({12, 3})));
}

TEST(HyperbolicCrossTest, RejectsBadArgumentsAndCaps) {
  EXPECT_THROW(enumerate_hyperbolic_cross({0, 2}), std::invalid_argument);
  EXPECT_THROW(enumerate_hyperbolic_cross({1000, 3}, {100}), CapacityError);
}

TEST(EnumerateShapesTest, CountOrderAndWeight) {
  for (std::size_t d = 1; d <= 4; ++d) {
    for (int n = 0; n <= 6; ++n) {
      const auto shapes = enumerate_shapes(n, d);
      // C(n + d - 1, d - 1)
      double expected = 1;
      for (std::size_t i = 1; i < d; ++i) expected = expected * (n + i) / i;
      EXPECT_EQ(shapes.size(), static_cast<std::size_t>(std::lround(expected)));
      for (std::size_t i = 0; i < shapes.size(); ++i) {
        EXPECT_EQ(shapes[i].weight(), n);
        if (i > 0) {
          EXPECT_LT(shapes[i - 1], shapes[i]);
        }
      }
    }
  }
  EXPECT_EQ(enumerate_shapes_up_to(2, 2).size(), 1u + 2u + 3u);
}

TEST(TorusPointTest, ExactCoordinates) {
  TorusPoint p({0, 3}, 4);
  const auto x = p.coordinates();
  EXPECT_DOUBLE_EQ(x[0], 0.0);
  EXPECT_DOUBLE_EQ(x[1], 3.0 * kTwoPi / 4.0);
  EXPECT_THROW(TorusPoint({4}, 4), std::invalid_argument);
  EXPECT_THROW(TorusPoint({0}, 0), std::invalid_argument);
}

TEST(TorusReduceTest, WrapsIntoFundamentalDomain) {
  EXPECT_NEAR(torus_reduce(-0.5), kTwoPi - 0.5, 1e-15);
  EXPECT_NEAR(torus_reduce(kTwoPi + 1.0), 1.0, 1e-14);
  EXPECT_GE(torus_reduce(-1e-300), 0.0);
  EXPECT_LT(torus_reduce(-1e-300), kTwoPi);
  EXPECT_THROW(torus_reduce(std::nan("")), std::invalid_argument);
}

TEST(FrequencyVectorTest, HyperbolicSize) {
  FrequencyVector k{{0, -3, 2}};
  EXPECT_EQ(k.hyperbolic_size(), 6);
  EXPECT_FALSE(k.is_zero());
  EXPECT_TRUE((FrequencyVector{{0, 0}}).is_zero());
}

TEST(FrequencyCsvTest, OneLinePerFrequency) {
  std::ostringstream out;
  const auto ks = enumerate_hyperbolic_cross({1, 2});
  write_frequencies_csv(out, ks);
  EXPECT_EQ(out.str(), "-1,-1\n-1,0\n-1,1\n0,-1\n0,0\n0,1\n1,-1\n1,0\n1,1\n");
}

}  // namespace
}  // namespace unirecover
