#pragma once

// Test functions of known anisotropic smoothness built from Bernoulli
// kernels
//
//   F_r(x, alpha) = 1 + 2 sum_{k>=1} k^{-r} cos(k x - alpha pi / 2),
//
// random trigonometric polynomials, and the grid best-approximation oracle.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "unirecover/grid.hpp"
#include "unirecover/minimax.hpp"
#include "unirecover/sampler.hpp"
#include "unirecover/torus.hpp"
#include "unirecover/trig_space.hpp"

namespace unirecover {

/// (sum_j 1/r_j)^{-1}; every r_j must be positive.
double g_of_r(std::span<const double> r);

struct BernoulliValue {
  double value;
  double tail;  // bound on |F_r - F_r^K|
};

/// K-term partial sum of F_r(x, alpha) with its truncation bound
/// 2 K^{1-r} / (r - 1). Requires r > 1 and K >= 1.
BernoulliValue bernoulli_eval(double r, double alpha, double x, std::int64_t K);
double bernoulli_tail_bound(double r, std::int64_t K);

/// prod_j F^K_{e_j}(x_j, a_j) with exponents e and phases a. `smoothness`
/// is the uniform smoothness vector used for g(r); for the plain product it
/// equals the exponents.
class BernoulliProduct : public SeparableSampler {
 public:
  BernoulliProduct(std::vector<double> exponents, std::vector<double> phases,
                   std::int64_t K, std::vector<double> smoothness);

  const std::vector<double>& exponents() const { return exponents_; }
  const std::vector<double>& phases() const { return phases_; }
  const std::vector<double>& smoothness() const { return smoothness_; }
  std::int64_t truncation() const { return K_; }
  double g() const { return g_of_r(smoothness_); }
  /// Bound on |f - f^K| for the truncated product.
  double tail_bound() const { return tail_; }

 private:
  std::vector<double> exponents_;
  std::vector<double> phases_;
  std::int64_t K_;
  std::vector<double> smoothness_;
  double tail_ = 0.0;
};

inline constexpr std::int64_t kDefaultTruncation = 4096;

/// prod_j F_{r_j}(x_j, alpha_j).
BernoulliProduct make_test_function(std::vector<double> r, std::vector<double> alpha = {},
                                    std::int64_t K = kDefaultTruncation);

/// prod_j F_{r_j + 1}(x_j, alpha_j + 1), the convolution of F_r with the
/// bounded function F_1(., 1). It belongs to the uniform Sobolev class of
/// smoothness r, which the plain product F_r does not.
BernoulliProduct make_class_member(std::vector<double> r, std::vector<double> alpha = {},
                                   std::int64_t K = kDefaultTruncation);

/// A real trigonometric polynomial in T(R(s)) (basis of TrigSpace).
class TrigPolynomialFunction : public Sampler {
 public:
  TrigPolynomialFunction(ShapeVector shape, std::vector<double> coefficients);

  std::size_t dim() const override { return space_.dim(); }
  double operator()(std::span<const double> x) const override;
  std::vector<double> on_grid(const EvaluationGrid& grid) const override;

  const TrigSpace& space() const { return space_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

 private:
  TrigSpace space_;
  std::vector<double> coefficients_;
};

/// Coefficients drawn i.i.d. standard normal from a seeded stream.
TrigPolynomialFunction random_trig_polynomial(const ShapeVector& shape, std::uint64_t seed);

/// Class members with smoothness r_j uniform in [r_lo, r_hi] and random phases.
BernoulliProduct random_bernoulli_product(std::size_t d, std::uint64_t seed,
                                          double r_lo = 1.5, double r_hi = 3.0,
                                          std::int64_t K = kDefaultTruncation);

/// File format: header "# d=<d> s=<s_1>,...,<s_d>", then one coefficient per
/// line in TrigSpace order.
void write_trig_polynomial(std::ostream& out, const TrigPolynomialFunction& f);
TrigPolynomialFunction read_trig_polynomial(std::istream& in);

struct NamedFunction {
  std::string label;
  std::shared_ptr<const Sampler> f;
};

/// A reproducible mix of test functions in d variables: random polynomials
/// from shapes of weight `weight` and `weight + 1`, alternating with random
/// Bernoulli class members.
std::vector<NamedFunction> seeded_test_functions(std::size_t count, int weight,
                                                 std::size_t d, std::uint64_t seed);

struct BestApproximation {
  double value;       // minimax residual over the grid
  double dual_bound;  // certified lower bound of the same problem
  std::vector<double> coefficients;
};

/// Uniform best approximation of f from T(R(s)), measured over all grid
/// points (tensor part and extras).
BestApproximation best_approx_oracle(const Sampler& f, const ShapeVector& s,
                                     const EvaluationGrid& grid);
/// Same with the values of f on the grid already computed.
BestApproximation best_approx_oracle(std::span<const double> grid_values,
                                     const ShapeVector& s, const EvaluationGrid& grid);

}  // namespace unirecover
