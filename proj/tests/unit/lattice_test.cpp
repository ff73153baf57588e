#include "unirecover/cubature.hpp"
#include "unirecover/lattices.hpp"

#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

namespace unirecover {
namespace {

// Nonzero k in Gamma(N, d), found by filtering the box [-N, N]^d.
std::vector<std::vector<std::int64_t>> cross_brute(std::int64_t N, std::size_t d) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> k(d, -N);
  while (true) {
    std::int64_t p = 1;
    bool zero = true;
    for (auto v : k) {
      p *= std::max<std::int64_t>(std::abs(v), 1);
      zero = zero && v == 0;
    }
    if (!zero && p <= N) out.push_back(k);
    std::size_t j = d;
    while (true) {
      if (j == 0) return out;
      --j;
      if (k[j] < N) {
        ++k[j];
        break;
      }
      k[j] = -N;
    }
  }
}

bool aliased_brute(const std::vector<std::int64_t>& k, const std::vector<std::int64_t>& h,
                   std::int64_t m) {
  std::int64_t acc = 0;
  for (std::size_t j = 0; j < k.size(); ++j) acc += k[j] * h[j];
  return acc % m == 0;
}

bool exact_brute(std::int64_t m, const std::vector<std::int64_t>& h, std::int64_t N) {
  for (const auto& k : cross_brute(N, h.size())) {
    if (aliased_brute(k, h, m)) return false;
  }
  return true;
}

std::int64_t n_star_brute(std::int64_t m, const std::vector<std::int64_t>& h) {
  std::int64_t N = 0;
  while (exact_brute(m, h, N + 1)) ++N;
  return N;
}

TEST(FibonacciTest, NumbersAndNodes) {
  EXPECT_EQ(fibonacci_number(0), 1);
  EXPECT_EQ(fibonacci_number(1), 1);
  EXPECT_EQ(fibonacci_number(10), 89);
  EXPECT_EQ(fibonacci_number(20), 10946);
  EXPECT_THROW(fibonacci_number(100), std::overflow_error);

  const auto fib = fibonacci_lattice(8);
  EXPECT_EQ(fib.b_n, 34);
  EXPECT_EQ(fib.b_prev, 21);
  const auto nodes = fib.lattice.nodes();
  ASSERT_EQ(nodes.size(), 34u);
  for (std::int64_t nu = 1; nu <= 34; ++nu) {
    const auto x = nodes[nu - 1].coordinates();
    EXPECT_NEAR(x[0], kTwoPi * static_cast<double>(nu % 34) / 34.0, 1e-14);
    const double frac = std::fmod(static_cast<double>(nu * 21), 34.0) / 34.0;
    EXPECT_NEAR(x[1], kTwoPi * frac, 1e-14);
  }
  EXPECT_THROW(fibonacci_lattice(1), std::invalid_argument);
  EXPECT_THROW(fibonacci_lattice(40, 1000), CapacityError);
}

TEST(KorobovTest, GeneratorPowers) {
  EXPECT_EQ(korobov_generator(5, 4, 13), (std::vector<std::int64_t>{1, 5, 12, 8}));
  const auto k = korobov_lattice(7, {1, 10, -1});
  EXPECT_EQ(k.h, (std::vector<std::int64_t>{1, 3, 6}));
  EXPECT_EQ(generator_gcds(RankOneLattice{12, {1, 4, 9}}), (std::vector<std::int64_t>{1, 4, 3}));
}

TEST(KorobovTest, IsPrimeMatchesTrialDivision) {
  for (std::int64_t m = -3; m < 500; ++m) {
    bool prime = m >= 2;
    for (std::int64_t q = 2; q < m && prime; ++q) prime = m % q != 0;
    EXPECT_EQ(is_prime(m), prime) << m;
  }
}

TEST(KorobovTest, SearchReturnsSmallestExactGenerator) {
  for (std::int64_t m : {31, 37, 61, 64, 97}) {
    for (std::size_t d : {2u, 3u}) {
      for (std::int64_t N : {1, 2, 3, 5}) {
        const auto r = korobov_search(m, N, d);
        EXPECT_EQ(r.modulus_prime, is_prime(m));
        std::optional<std::int64_t> expected;
        for (std::int64_t h = 1; h < m && !expected; ++h) {
          if (exact_brute(m, korobov_generator(h, d, m), N)) expected = h;
        }
        EXPECT_EQ(r.h, expected) << "m=" << m << " d=" << d << " N=" << N;
        if (r.guarantee) {
          EXPECT_TRUE(r.h.has_value());
        }
      }
    }
  }
}

TEST(KorobovTest, BestGeneratorMaximizesRadius) {
  const std::int64_t m = 53;
  std::int64_t best = -1, best_h = 0;
  for (std::int64_t h = 1; h < m; ++h) {
    const auto ns = n_star_brute(m, korobov_generator(h, 2, m));
    if (ns > best) {
      best = ns;
      best_h = h;
    }
  }
  const auto got = best_korobov_generator(m, 2);
  EXPECT_EQ(got.n_star, best);
  EXPECT_EQ(got.h, best_h);
}

TEST(LatticeSpecTest, ParsesAndRejects) {
  const auto f = parse_lattice_spec("fib:10");
  EXPECT_EQ(f.m, 89);
  EXPECT_EQ(f.h, (std::vector<std::int64_t>{1, 55}));
  const auto k = parse_lattice_spec("korobov:101,1,40,85");
  EXPECT_EQ(k.m, 101);
  EXPECT_EQ(k.dim(), 3u);
  EXPECT_THROW(parse_lattice_spec("fib"), std::invalid_argument);
  EXPECT_THROW(parse_lattice_spec("fib:x"), std::invalid_argument);
  EXPECT_THROW(parse_lattice_spec("korobov:101"), std::invalid_argument);
  EXPECT_THROW(parse_lattice_spec("halton:3"), std::invalid_argument);
}

TEST(ExactnessTest, MaxExactCrossMatchesBruteForce) {
  for (int n = 3; n <= 11; ++n) {
    const auto fib = fibonacci_lattice(n);
    const auto cert = max_exact_cross(fib.b_n, fib.lattice.h, 2);
    EXPECT_EQ(cert.n_star, n_star_brute(fib.b_n, fib.lattice.h)) << "n=" << n;
    ASSERT_TRUE(cert.first_aliased_mode.has_value());
    EXPECT_EQ(cert.first_aliased_mode->hyperbolic_size(), cert.n_star + 1);
    EXPECT_TRUE(aliased_brute(cert.first_aliased_mode->components, fib.lattice.h, fib.b_n));
    EXPECT_FALSE(cert.capped);
  }
  for (std::int64_t m : {17, 40, 41}) {
    for (std::int64_t h = 1; h < m; h += 3) {
      const auto g = korobov_generator(h, 3, m);
      EXPECT_EQ(max_exact_cross(m, g, 3).n_star, n_star_brute(m, g)) << m << "," << h;
    }
  }
}

TEST(ExactnessTest, FirstViolationIsLexicographicallySmallest) {
  const std::vector<std::int64_t> h = {1, 21};
  const auto r = exactness_check(34, h, 20, 2);
  ASSERT_FALSE(r.exact);
  for (const auto& k : cross_brute(20, 2)) {
    if (aliased_brute(k, h, 34)) {
      EXPECT_EQ(r.first_aliased->components, k);
      break;
    }
  }
}

TEST(ExactnessTest, MonotoneInN) {
  const std::vector<std::int64_t> h = {1, 34};
  bool seen_false = false;
  for (std::int64_t N = 1; N <= 40; ++N) {
    const bool exact = exactness_check(55, h, N, 2).exact;
    if (seen_false) {
      EXPECT_FALSE(exact) << N;
    }
    seen_false = seen_false || !exact;
  }
}

TEST(ExactnessTest, CapMarksCertificate) {
  const auto cert = max_exact_cross(89, std::vector<std::int64_t>{1, 55}, 2, 10);
  EXPECT_TRUE(cert.capped);
  EXPECT_EQ(cert.n_star, 10);
}

TEST(CubatureTest, ExponentialsFollowTheCongruence) {
  const auto fib = fibonacci_lattice(12);
  const auto nodes = fib.lattice.point_set();
  for (const auto& k : cross_brute(6, 2)) {
    std::vector<double> re, im;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto x = nodes.point(i);
      const double phase = k[0] * x[0] + k[1] * x[1];
      re.push_back(std::cos(phase));
      im.push_back(std::sin(phase));
    }
    const double predicted = aliased_brute(k, fib.lattice.h, fib.b_n) ? 1.0 : 0.0;
    EXPECT_NEAR(cubature_value(re, nodes.size()), predicted, 1e-12);
    EXPECT_NEAR(cubature_value(im, nodes.size()), 0.0, 1e-12);
  }
  EXPECT_THROW(cubature_value(std::vector<double>{1.0}, 2), std::invalid_argument);
}

TEST(CubatureTest, AliasResidueHandlesSigns) {
  const std::vector<std::int64_t> k = {-3, 2}, h = {1, 5};
  EXPECT_EQ(alias_residue(k, h, 7), 0);
  const std::vector<std::int64_t> k2 = {-1, 0};
  EXPECT_EQ(alias_residue(k2, h, 7), 6);
}

}  // namespace
}  // namespace unirecover
