#include "unirecover/function_classes.hpp"

#include <cmath>
#include <complex>
#include <istream>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace unirecover {

namespace {

std::vector<double> kernel_weights(double r, std::int64_t K) {
  std::vector<double> w(static_cast<std::size_t>(K) + 1, 0.0);
  for (std::int64_t k = 1; k <= K; ++k) w[k] = std::pow(static_cast<double>(k), -r);
  return w;
}

// 1 + 2 sum_k w_k cos(k x - alpha pi/2); powers of e^{ix} are resynchronized
// every 64 steps to stop rounding drift.
double bernoulli_sum(const std::vector<double>& w, double alpha, double x) {
  const std::complex<double> phase = std::polar(1.0, -alpha * kPi / 2.0);
  const std::complex<double> step = std::polar(1.0, x);
  std::complex<double> z = 1.0;
  double sum = 0.0;
  const std::size_t K = w.size() - 1;
  for (std::size_t k = 1; k <= K; ++k) {
    if (k % 64 == 0) {
      z = std::polar(1.0, static_cast<double>(k) * x);
    } else {
      z *= step;
    }
    sum += w[k] * (z * phase).real();
  }
  return 1.0 + 2.0 * sum;
}

void check_bernoulli_args(double r, std::int64_t K) {
  if (!(r > 1.0)) throw std::invalid_argument("Bernoulli kernel needs r > 1");
  if (K < 1) throw std::invalid_argument("Bernoulli kernel needs K >= 1");
}

}  // namespace

double g_of_r(std::span<const double> r) {
  if (r.empty()) throw std::invalid_argument("g_of_r: empty smoothness vector");
  double s = 0.0;
  for (double rj : r) {
    if (!(rj > 0.0)) throw std::invalid_argument("g_of_r: entries must be positive");
    s += 1.0 / rj;
  }
  return 1.0 / s;
}

double bernoulli_tail_bound(double r, std::int64_t K) {
  check_bernoulli_args(r, K);
  return 2.0 * std::pow(static_cast<double>(K), 1.0 - r) / (r - 1.0);
}

BernoulliValue bernoulli_eval(double r, double alpha, double x, std::int64_t K) {
  check_bernoulli_args(r, K);
  if (!std::isfinite(x)) throw std::invalid_argument("bernoulli_eval: non-finite x");
  return {bernoulli_sum(kernel_weights(r, K), alpha, x), bernoulli_tail_bound(r, K)};
}

BernoulliProduct::BernoulliProduct(std::vector<double> exponents, std::vector<double> phases,
                                   std::int64_t K, std::vector<double> smoothness)
    : SeparableSampler({}),
      exponents_(std::move(exponents)),
      phases_(std::move(phases)),
      K_(K),
      smoothness_(std::move(smoothness)) {
  const std::size_t d = exponents_.size();
  if (d == 0) throw std::invalid_argument("BernoulliProduct: empty exponent vector");
  if (phases_.empty()) phases_.assign(d, 0.0);
  if (phases_.size() != d || smoothness_.size() != d) {
    throw std::invalid_argument("BernoulliProduct: parameter lengths differ");
  }
  double with_tail = 1.0, without = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    check_bernoulli_args(exponents_[j], K_);
    auto w = std::make_shared<const std::vector<double>>(kernel_weights(exponents_[j], K_));
    double bound = 1.0;
    for (std::size_t k = 1; k < w->size(); ++k) bound += 2.0 * (*w)[k];
    without *= bound;
    with_tail *= bound + bernoulli_tail_bound(exponents_[j], K_);
    const double alpha = phases_[j];
    factors_.push_back([w, alpha](double x) { return bernoulli_sum(*w, alpha, x); });
  }
  tail_ = with_tail - without;
}

BernoulliProduct make_test_function(std::vector<double> r, std::vector<double> alpha,
                                    std::int64_t K) {
  std::vector<double> smooth = r;
  return BernoulliProduct(std::move(r), std::move(alpha), K, std::move(smooth));
}

BernoulliProduct make_class_member(std::vector<double> r, std::vector<double> alpha,
                                   std::int64_t K) {
  if (alpha.empty()) alpha.assign(r.size(), 0.0);
  std::vector<double> e = r, a = alpha;
  for (double& x : e) x += 1.0;
  for (double& x : a) x += 1.0;
  return BernoulliProduct(std::move(e), std::move(a), K, std::move(r));
}

TrigPolynomialFunction::TrigPolynomialFunction(ShapeVector shape,
                                               std::vector<double> coefficients)
    : space_(std::move(shape)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != space_.size()) {
    throw std::invalid_argument("TrigPolynomialFunction: coefficient count does not match |R(s)|");
  }
}

double TrigPolynomialFunction::operator()(std::span<const double> x) const {
  return space_.evaluate(coefficients_, x);
}

std::vector<double> TrigPolynomialFunction::on_grid(const EvaluationGrid& grid) const {
  return space_.evaluate_on_grid(coefficients_, grid);
}

TrigPolynomialFunction random_trig_polynomial(const ShapeVector& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> c(shape.rectangle_size());
  for (double& v : c) v = normal(rng);
  return TrigPolynomialFunction(shape, std::move(c));
}

BernoulliProduct random_bernoulli_product(std::size_t d, std::uint64_t seed, double r_lo,
                                          double r_hi, std::int64_t K) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> smooth(r_lo, r_hi);
  std::uniform_real_distribution<double> phase(0.0, 2.0);
  std::vector<double> r(d), alpha(d);
  for (std::size_t j = 0; j < d; ++j) {
    r[j] = smooth(rng);
    alpha[j] = phase(rng);
  }
  return make_class_member(std::move(r), std::move(alpha), K);
}

std::vector<NamedFunction> seeded_test_functions(std::size_t count, int weight,
                                                 std::size_t d, std::uint64_t seed) {
  std::vector<NamedFunction> out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t fseed = rng();
    std::ostringstream label;
    if (i % 2 == 0) {
      const int w = i % 4 == 0 ? weight : weight + 1;
      const auto shapes = enumerate_shapes(w, d);
      const auto& s = shapes[fseed % shapes.size()];
      label << "trig s=";
      for (std::size_t j = 0; j < d; ++j) label << (j ? "," : "") << s[j];
      label << " seed=" << fseed;
      out.push_back({label.str(), std::make_shared<TrigPolynomialFunction>(
                                      random_trig_polynomial(s, fseed))});
    } else {
      auto f = std::make_shared<BernoulliProduct>(random_bernoulli_product(d, fseed));
      label << "sobolev r=";
      for (std::size_t j = 0; j < d; ++j) label << (j ? "," : "") << f->smoothness()[j];
      out.push_back({label.str(), std::move(f)});
    }
  }
  return out;
}

void write_trig_polynomial(std::ostream& out, const TrigPolynomialFunction& f) {
  const auto& s = f.space().shape();
  out << "# d=" << s.dim() << " s=";
  for (std::size_t j = 0; j < s.dim(); ++j) out << (j ? "," : "") << s[j];
  out << '\n';
  out.precision(17);
  for (double c : f.coefficients()) out << c << '\n';
}

TrigPolynomialFunction read_trig_polynomial(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("#", 0) != 0) {
    throw std::runtime_error("trig polynomial file: missing header");
  }
  const auto dpos = line.find("d=");
  const auto spos = line.find("s=");
  if (dpos == std::string::npos || spos == std::string::npos) {
    throw std::runtime_error("trig polynomial file: header needs d= and s=");
  }
  const std::size_t d = std::stoul(line.substr(dpos + 2));
  std::vector<int> entries;
  std::stringstream ss(line.substr(spos + 2));
  std::string tok;
  while (std::getline(ss, tok, ',')) entries.push_back(std::stoi(tok));
  if (entries.size() != d) throw std::runtime_error("trig polynomial file: shape length != d");
  ShapeVector shape(entries);
  std::vector<double> coeffs;
  double v;
  while (in >> v) coeffs.push_back(v);
  if (!in.eof()) throw std::runtime_error("trig polynomial file: bad coefficient");
  return TrigPolynomialFunction(shape, std::move(coeffs));
}

BestApproximation best_approx_oracle(const Sampler& f, const ShapeVector& s,
                                     const EvaluationGrid& grid) {
  return best_approx_oracle(f.on_grid(grid), s, grid);
}

BestApproximation best_approx_oracle(std::span<const double> grid_values,
                                     const ShapeVector& s, const EvaluationGrid& grid) {
  if (grid_values.size() != grid.size()) {
    throw std::invalid_argument("best_approx_oracle: value count does not match grid");
  }
  const TrigSpace space(s);
  RowOracle oracle;
  oracle.rows = grid.size();
  oracle.cols = space.size();
  oracle.row = [&](std::size_t i, std::span<double> out) {
    std::vector<double> x(grid.dim());
    grid.point(i, x);
    const auto row = space.basis_row(x);
    std::copy(row.begin(), row.end(), out.begin());
  };
  oracle.fitted = [&](const Eigen::VectorXd& c) {
    const auto v = space.evaluate_on_grid({c.data(), static_cast<std::size_t>(c.size())}, grid);
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()));
  };
  const Eigen::Map<const Eigen::VectorXd> values(grid_values.data(), grid_values.size());
  const auto sol = solve_minimax(oracle, values);
  return {sol.residual, sol.dual_bound,
          std::vector<double>(sol.coefficients.data(),
                              sol.coefficients.data() + sol.coefficients.size())};
}

}  // namespace unirecover
