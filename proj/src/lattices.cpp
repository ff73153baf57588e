#include "unirecover/lattices.hpp"

#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "unirecover/cubature.hpp"

namespace unirecover {

std::int64_t RankOneLattice::numerator(std::int64_t nu, std::size_t j) const {
  const auto prod = static_cast<__int128>(nu % m) * static_cast<__int128>(h[j] % m);
  auto r = static_cast<std::int64_t>(prod % m);
  return r < 0 ? r + m : r;
}

std::vector<TorusPoint> RankOneLattice::nodes() const {
  std::vector<TorusPoint> out;
  out.reserve(static_cast<std::size_t>(m));
  for (std::int64_t nu = 1; nu <= m; ++nu) {
    std::vector<std::int64_t> a(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) a[j] = numerator(nu, j);
    out.emplace_back(std::move(a), m);
  }
  return out;
}

PointSet RankOneLattice::point_set() const {
  const auto pts = nodes();
  return PointSet::from_torus_points(pts);
}

std::string RankOneLattice::label() const {
  std::ostringstream os;
  os << "korobov:" << m;
  for (auto v : h) os << ',' << v;
  return os.str();
}

std::int64_t fibonacci_number(int n) {
  if (n < 0) throw std::invalid_argument("fibonacci_number: n must be >= 0");
  std::int64_t prev = 1, cur = 1;
  for (int i = 2; i <= n; ++i) {
    if (cur > std::numeric_limits<std::int64_t>::max() - prev) {
      throw std::overflow_error("fibonacci_number: b_n exceeds int64 range");
    }
    const std::int64_t next = cur + prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

FibonacciLattice fibonacci_lattice(int n, std::int64_t max_nodes) {
  if (n < 2) throw std::invalid_argument("fibonacci_lattice: n must be >= 2");
  const std::int64_t b = fibonacci_number(n);
  if (b > max_nodes) {
    throw CapacityError("fibonacci_lattice: b_n = " + std::to_string(b) +
                        " exceeds the node cap");
  }
  const std::int64_t prev = fibonacci_number(n - 1);
  return {n, b, prev, RankOneLattice{b, {1, prev}}};
}

KorobovLattice korobov_lattice(std::int64_t m, std::vector<std::int64_t> h) {
  if (m < 1) throw std::invalid_argument("korobov_lattice: m must be >= 1");
  if (h.empty()) throw std::invalid_argument("korobov_lattice: empty generator");
  for (auto& v : h) v = ((v % m) + m) % m;
  return {m, h, RankOneLattice{m, h}};
}

std::vector<std::int64_t> korobov_generator(std::int64_t h, std::size_t d,
                                            std::int64_t m) {
  std::vector<std::int64_t> g(d);
  __int128 p = 1 % m;
  const __int128 hm = ((h % m) + m) % m;
  for (std::size_t j = 0; j < d; ++j) {
    g[j] = static_cast<std::int64_t>(p);
    p = (p * hm) % m;
  }
  return g;
}

bool is_prime(std::int64_t m) {
  if (m < 2) return false;
  for (std::int64_t q = 2; q * q <= m; ++q) {
    if (m % q == 0) return false;
  }
  return true;
}

std::vector<std::int64_t> generator_gcds(const RankOneLattice& lattice) {
  std::vector<std::int64_t> g;
  for (auto v : lattice.h) g.push_back(std::gcd(v, lattice.m));
  return g;
}

KorobovSearchResult korobov_search(std::int64_t m, std::int64_t N, std::size_t d,
                                   const EnumerationLimits& limits) {
  if (m < 2) throw std::invalid_argument("korobov_search: m must be >= 2");
  KorobovSearchResult result;
  result.modulus_prime = is_prime(m);
  result.cross_size = hyperbolic_cross_size({N, d});
  result.guarantee = result.modulus_prime &&
                     static_cast<double>(result.cross_size) <
                         static_cast<double>(m - 1) / static_cast<double>(d);
  // Modes are scanned smallest-size first, so bad generators exit early.
  const CrossModes modes(N, d, limits);
  for (std::int64_t h = 1; h < m; ++h) {
    const auto g = korobov_generator(h, d, m);
    if (!modes.first_aliased(m, g)) {
      result.h = h;
      break;
    }
  }
  return result;
}

BestKorobov best_korobov_generator(std::int64_t m, std::size_t d,
                                   const EnumerationLimits& limits) {
  if (m < 2) throw std::invalid_argument("best_korobov_generator: m must be >= 2");
  const CrossModes modes(m, d, limits);
  BestKorobov best{1, -1};
  for (std::int64_t h = 1; h < m; ++h) {
    const auto g = korobov_generator(h, d, m);
    const auto hit = modes.first_aliased(m, g);
    // (m, 0, ..., 0) is in the scan, so some mode always aliases.
    const std::int64_t n_star = modes.hyperbolic_size(*hit) - 1;
    if (n_star > best.n_star) best = {h, n_star};
  }
  return best;
}

RankOneLattice parse_lattice_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("lattice spec must be fib:<n> or korobov:<m>,<h...>");
  }
  const std::string kind = spec.substr(0, colon);
  std::vector<std::int64_t> numbers;
  std::stringstream ss(spec.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      numbers.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("lattice spec: bad integer '" + item + "'");
    }
  }
  if (kind == "fib") {
    if (numbers.size() != 1) throw std::invalid_argument("fib:<n> takes one integer");
    return fibonacci_lattice(static_cast<int>(numbers[0])).lattice;
  }
  if (kind == "korobov") {
    if (numbers.size() < 2) {
      throw std::invalid_argument("korobov:<m>,<h_1>,...,<h_d> needs m and h");
    }
    return korobov_lattice(numbers[0], {numbers.begin() + 1, numbers.end()}).lattice;
  }
  throw std::invalid_argument("unknown lattice kind '" + kind + "'");
}

}  // namespace unirecover
