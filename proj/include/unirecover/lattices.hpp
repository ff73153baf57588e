#pragma once

// Rank-1 lattices: Fibonacci and Korobov point sets and the Korobov
// generator search.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unirecover/point_set.hpp"
#include "unirecover/torus.hpp"

namespace unirecover {

/// Node nu (nu = 1..m) is (2*pi*{nu*h_1/m}, ..., 2*pi*{nu*h_d/m}).
struct RankOneLattice {
  std::int64_t m = 1;
  std::vector<std::int64_t> h;

  std::size_t dim() const { return h.size(); }
  /// Numerator (nu * h_j) mod m of node nu along axis j.
  std::int64_t numerator(std::int64_t nu, std::size_t j) const;
  std::vector<TorusPoint> nodes() const;
  PointSet point_set() const;
  /// "fib:<n>"-style labels are produced by the callers that know n.
  std::string label() const;
};

/// b_0 = b_1 = 1, b_n = b_{n-1} + b_{n-2}.
std::int64_t fibonacci_number(int n);

struct FibonacciLattice {
  int n;
  std::int64_t b_n;
  std::int64_t b_prev;
  RankOneLattice lattice;
};

/// The b_n-point Fibonacci set; n >= 2.
FibonacciLattice fibonacci_lattice(int n, std::int64_t max_nodes = 100'000'000);

struct KorobovLattice {
  std::int64_t m;
  std::vector<std::int64_t> h;
  RankOneLattice lattice;
};

/// Generator entries are reduced modulo m.
KorobovLattice korobov_lattice(std::int64_t m, std::vector<std::int64_t> h);

/// (1, h, h^2, ..., h^{d-1}) mod m.
std::vector<std::int64_t> korobov_generator(std::int64_t h, std::size_t d,
                                            std::int64_t m);

bool is_prime(std::int64_t m);

/// gcd(h_j, m) for each axis; all ones means every coordinate projection
/// is a permutation of the m residues.
std::vector<std::int64_t> generator_gcds(const RankOneLattice& lattice);

struct KorobovSearchResult {
  std::optional<std::int64_t> h;  // smallest qualifying h, if any
  bool modulus_prime = false;     // false is a warning; the search still ran
  bool guarantee = false;         // |Gamma(N,d)| < (m-1)/d with m prime
  std::size_t cross_size = 0;
};

/// Smallest h in [1, m) whose generator (1, h, ..., h^{d-1}) makes the
/// cubature exact on T(N, d), certified by integer congruences.
KorobovSearchResult korobov_search(std::int64_t m, std::int64_t N, std::size_t d,
                                   const EnumerationLimits& limits = {});

/// The generator h in [1, m) with the largest exactness radius N*; ties go to
/// the smallest h. Used to pick Korobov lattices for experiments.
struct BestKorobov {
  std::int64_t h;
  std::int64_t n_star;
};
BestKorobov best_korobov_generator(std::int64_t m, std::size_t d,
                                   const EnumerationLimits& limits = {});

/// Parses "fib:<n>" or "korobov:<m>,<h_1>,...,<h_d>".
RankOneLattice parse_lattice_spec(const std::string& spec);

}  // namespace unirecover
