#include "unirecover/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "unirecover/cubature.hpp"
#include "unirecover/kernels.hpp"
#include "unirecover/parallel.hpp"
#include "unirecover/trig_space.hpp"

namespace unirecover {

namespace {

std::vector<std::int64_t> kernel_orders(const ShapeVector& s) {
  std::vector<std::int64_t> j(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) j[i] = std::int64_t{1} << s[i];
  return j;
}

void check_lattice_samples(const RankOneLattice& lattice, std::span<const double> samples,
                           const ShapeVector& s) {
  if (samples.size() != static_cast<std::size_t>(lattice.m)) {
    throw std::invalid_argument("sample count does not match the lattice size");
  }
  if (s.dim() != lattice.dim()) throw std::invalid_argument("shape dimension != lattice dimension");
}

// Picks the lexicographically smallest shape among the minimal errors.
std::size_t select_winner(const std::vector<ShapeError>& table) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const bool smaller = table[i].error < table[best].error ||
                         (table[i].error == table[best].error &&
                          table[i].shape < table[best].shape);
    if (smaller) best = i;
  }
  return best;
}

}  // namespace

Approximant::Approximant(KernelSum rep) : rep_(std::move(rep)) {}
Approximant::Approximant(TrigCoefficients rep) : rep_(std::move(rep)) {}

const ShapeVector& Approximant::shape() const {
  return std::visit([](const auto& r) -> const ShapeVector& { return r.shape; }, rep_);
}

double Approximant::operator()(std::span<const double> x) const {
  if (x.size() != dim()) throw std::invalid_argument("Approximant: dimension mismatch");
  if (const auto* tc = std::get_if<TrigCoefficients>(&rep_)) {
    return TrigSpace(tc->shape).evaluate(tc->coefficients, x);
  }
  const auto& ks = std::get<KernelSum>(rep_);
  const auto orders = kernel_orders(ks.shape);
  const auto m = ks.lattice.m;
  double sum = 0.0;
  for (std::int64_t nu = 1; nu <= m; ++nu) {
    double prod = ks.samples[nu - 1];
    for (std::size_t j = 0; j < dim() && prod != 0.0; ++j) {
      const double y = kTwoPi * static_cast<double>(ks.lattice.numerator(nu, j)) /
                       static_cast<double>(m);
      prod *= vp_eval(orders[j], x[j] - y);
    }
    sum += prod;
  }
  return sum / static_cast<double>(m);
}

const Approximant::Spectrum& Approximant::spectrum() const {
  if (spectrum_) return *spectrum_;
  const auto& ks = std::get<KernelSum>(rep_);
  const auto m = ks.lattice.m;
  const std::size_t d = dim();
  auto spec = std::make_shared<Spectrum>();
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) {
    spec->dims.push_back((std::size_t{4} << ks.shape[j]) - 1);
    total *= spec->dims.back();
  }
  // Discrete Fourier transform of the samples along the lattice index:
  // sum_nu f_nu e^{-i k . y^nu} depends on k only through q = k . h mod m.
  std::vector<double> cos_table(m), sin_table(m);
  for (std::int64_t t = 0; t < m; ++t) {
    const double a = kTwoPi * static_cast<double>(t) / static_cast<double>(m);
    cos_table[t] = std::cos(a);
    sin_table[t] = std::sin(a);
  }
  std::map<std::int64_t, std::complex<double>> transform;
  auto lattice_transform = [&](std::int64_t q) {
    auto it = transform.find(q);
    if (it != transform.end()) return it->second;
    double c = 0.0, s = 0.0;
    for (std::int64_t nu = 1; nu <= m; ++nu) {
      const auto t = static_cast<std::int64_t>((static_cast<__int128>(nu) * q) % m);
      c += ks.samples[nu - 1] * cos_table[t];
      s += ks.samples[nu - 1] * sin_table[t];
    }
    const std::complex<double> v(c / static_cast<double>(m), -s / static_cast<double>(m));
    transform.emplace(q, v);
    return v;
  };

  const auto orders = kernel_orders(ks.shape);
  spec->coeffs.assign(total, 0.0);
  std::vector<std::int64_t> k(d);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    double weight = 1.0;
    for (std::size_t j = d; j-- > 0;) {
      const auto half = static_cast<std::int64_t>(spec->dims[j] / 2);
      k[j] = static_cast<std::int64_t>(rest % spec->dims[j]) - half;
      rest /= spec->dims[j];
      weight *= kernel_fourier_coeff({KernelKind::ValleePoussin, orders[j]}, k[j]);
    }
    if (weight == 0.0) continue;
    spec->coeffs[idx] = weight * lattice_transform(alias_residue(k, ks.lattice.h, m));
  }
  spectrum_ = spec;
  return *spectrum_;
}

std::vector<double> Approximant::evaluate(const PointSet& points) const {
  if (!points.empty() && points.dim() != dim()) {
    throw std::invalid_argument("Approximant: dimension mismatch");
  }
  if (const auto* tc = std::get_if<TrigCoefficients>(&rep_)) {
    return TrigSpace(tc->shape).evaluate_points(tc->coefficients, points);
  }
  const Spectrum& spec = spectrum();
  using CMat = Eigen::MatrixXcd;
  std::vector<double> out(points.size());
  std::vector<CMat> rows(dim());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto x = points.point(i);
    for (std::size_t j = 0; j < dim(); ++j) {
      const auto n = static_cast<Eigen::Index>(spec.dims[j]);
      const auto half = n / 2;
      rows[j].resize(1, n);
      for (Eigen::Index b = 0; b < n; ++b) {
        rows[j](0, b) = std::polar(1.0, static_cast<double>(b - half) * x[j]);
      }
    }
    out[i] = apply_axis_matrices<std::complex<double>>(spec.coeffs, spec.dims, rows)[0].real();
  }
  return out;
}

std::vector<double> Approximant::evaluate_on_grid(const EvaluationGrid& grid) const {
  if (grid.dim() != dim()) throw std::invalid_argument("Approximant: grid dimension mismatch");
  if (const auto* tc = std::get_if<TrigCoefficients>(&rep_)) {
    return TrigSpace(tc->shape).evaluate_on_grid(tc->coefficients, grid);
  }
  const Spectrum& spec = spectrum();
  const auto xs = grid.axis_coordinates();
  std::vector<Eigen::MatrixXcd> mats(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    const auto n = static_cast<Eigen::Index>(spec.dims[j]);
    const auto half = n / 2;
    mats[j].resize(static_cast<Eigen::Index>(xs.size()), n);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (Eigen::Index b = 0; b < n; ++b) {
        mats[j](static_cast<Eigen::Index>(i), b) =
            std::polar(1.0, static_cast<double>(b - half) * xs[i]);
      }
    }
  }
  const auto values = apply_axis_matrices<std::complex<double>>(spec.coeffs, spec.dims, mats);
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
  const auto extra = evaluate(grid.extra());
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

std::optional<int> certified_budget(std::int64_t n_star, std::size_t d) {
  double need = std::pow(3.0, static_cast<double>(d));
  if (static_cast<double>(n_star) < need) return std::nullopt;
  int b = 0;
  while (2.0 * need <= static_cast<double>(n_star)) {
    need *= 2.0;
    ++b;
  }
  return b;
}

VsResult vs_apply(const RankOneLattice& lattice, std::span<const double> samples,
                  const ShapeVector& s, std::optional<int> budget) {
  check_lattice_samples(lattice, samples, s);
  if (!budget) {
    budget = certified_budget(max_exact_cross(lattice.m, lattice.h, lattice.dim()).n_star,
                              lattice.dim());
  }
  VsResult result{Approximant(KernelSum{lattice, {samples.begin(), samples.end()}, s}),
                  !budget || s.weight() > *budget};
  return result;
}

double lebesgue_vs(const RankOneLattice& lattice, const ShapeVector& s,
                   const EvaluationGrid& grid) {
  if (s.dim() != lattice.dim() || grid.dim() != lattice.dim()) {
    throw std::invalid_argument("lebesgue_vs: dimension mismatch");
  }
  const std::size_t d = lattice.dim();
  const std::int64_t m = lattice.m;
  const auto R = static_cast<std::int64_t>(grid.per_axis());
  const auto orders = kernel_orders(s);

  // tables[j](i, a) = |V_{2^{s_j}}(x_i - 2 pi a / m)|, argument reduced exactly.
  std::vector<Eigen::MatrixXd> tables(d);
  const std::int64_t period = R * m;
  for (std::size_t j = 0; j < d; ++j) {
    tables[j].resize(R, m);
    for (std::int64_t i = 0; i < R; ++i) {
      for (std::int64_t a = 0; a < m; ++a) {
        const std::int64_t t = ((i * m - a * R) % period + period) % period;
        tables[j](i, a) = std::abs(vp_eval(
            orders[j], kTwoPi * static_cast<double>(t) / static_cast<double>(period)));
      }
    }
  }

  const double inv_m = 1.0 / static_cast<double>(m);
  double worst = 0.0;
  std::size_t rest_size = 1;
  for (std::size_t j = 1; j < d; ++j) rest_size *= static_cast<std::size_t>(R);
  Eigen::MatrixXd a0(R, m);
  Eigen::MatrixXd rest(m, static_cast<Eigen::Index>(rest_size));
  for (std::int64_t nu = 1; nu <= m; ++nu) {
    a0.col(nu - 1) = tables[0].col(lattice.numerator(nu, 0));
    for (std::size_t idx = 0; idx < rest_size; ++idx) {
      std::size_t r = idx;
      double prod = 1.0;
      for (std::size_t j = d; j-- > 1;) {
        prod *= tables[j](static_cast<Eigen::Index>(r % R), lattice.numerator(nu, j));
        r /= static_cast<std::size_t>(R);
      }
      rest(nu - 1, static_cast<Eigen::Index>(idx)) = prod;
    }
  }
  const Eigen::MatrixXd sums = a0 * rest;
  worst = sums.maxCoeff() * inv_m;

  for (std::size_t p = 0; p < grid.extra().size(); ++p) {
    const auto x = grid.extra().point(p);
    double sum = 0.0;
    for (std::int64_t nu = 1; nu <= m; ++nu) {
      double prod = 1.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double y = kTwoPi * static_cast<double>(lattice.numerator(nu, j)) /
                         static_cast<double>(m);
        prod *= std::abs(vp_eval(orders[j], x[j] - y));
      }
      sum += prod;
    }
    worst = std::max(worst, sum * inv_m);
  }
  return worst;
}

std::string describe_grid(const EvaluationGrid& grid) {
  std::ostringstream os;
  os << "tensor " << grid.per_axis() << "^" << grid.dim();
  if (grid.oversampling() > 0) os << " (oversampling " << grid.oversampling() << ")";
  if (!grid.extra().empty()) os << " + " << grid.extra().size() << " extra points";
  return os.str();
}

RecoveryResult universal_vp_recover(const RankOneLattice& lattice, const Sampler& f,
                                    int budget, const EvaluationGrid& grid) {
  if (budget < 0) throw std::invalid_argument("universal_vp_recover: empty shape list");
  const auto samples = f.at(lattice.point_set());
  const auto reference = f.on_grid(grid);
  const auto shapes = enumerate_shapes(budget, lattice.dim());
  std::vector<ShapeError> table(shapes.size(), {ShapeVector({0}), 0.0});
  parallel_for(shapes.size(), [&](std::size_t i) {
    const Approximant a(KernelSum{lattice, samples, shapes[i]});
    table[i] = {shapes[i], max_abs_diff(a.evaluate_on_grid(grid), reference)};
  });
  const std::size_t w = select_winner(table);
  return {Approximant(KernelSum{lattice, samples, shapes[w]}), shapes[w], table,
          table[w].error, describe_grid(grid)};
}

RecoveryResult universal_vp_recover(const RankOneLattice& lattice,
                                    std::span<const double> samples, int budget,
                                    const PointSet& check_points,
                                    std::span<const double> check_values) {
  if (budget < 0) throw std::invalid_argument("universal_vp_recover: empty shape list");
  if (check_points.size() != check_values.size()) {
    throw std::invalid_argument("universal_vp_recover: check point/value count mismatch");
  }
  const auto shapes = enumerate_shapes(budget, lattice.dim());
  std::vector<ShapeError> table;
  std::vector<double> stored(samples.begin(), samples.end());
  for (const auto& s : shapes) {
    check_lattice_samples(lattice, samples, s);
    const Approximant a(KernelSum{lattice, stored, s});
    table.push_back({s, max_abs_diff(a.evaluate(check_points), check_values)});
  }
  const std::size_t w = select_winner(table);
  std::ostringstream os;
  os << check_points.size() << " sample points";
  return {Approximant(KernelSum{lattice, stored, shapes[w]}), shapes[w], table,
          table[w].error, os.str()};
}

ChebyshevFit chebyshev_fit(const PointSet& points, std::span<const double> values,
                           const ShapeVector& s, const MinimaxOptions& options) {
  if (points.empty()) throw std::invalid_argument("chebyshev_fit: empty node set");
  if (points.size() != values.size()) {
    throw std::invalid_argument("chebyshev_fit: point/value count mismatch");
  }
  if (points.dim() != s.dim()) throw std::invalid_argument("chebyshev_fit: dimension mismatch");
  const TrigSpace space(s);
  const Eigen::MatrixXd design = space.design_matrix(points);
  const Eigen::Map<const Eigen::VectorXd> f(values.data(), values.size());
  const auto sol = solve_minimax(design, f, options);
  TrigCoefficients tc{s, std::vector<double>(sol.coefficients.data(),
                                             sol.coefficients.data() + sol.coefficients.size())};
  return {Approximant(std::move(tc)), sol.residual, sol.dual_bound, sol.rank_deficient};
}

RecoveryResult universal_cheb_recover(const PointSet& points, const Sampler& f,
                                      std::span<const ShapeVector> shapes,
                                      const EvaluationGrid& grid) {
  if (shapes.empty()) throw std::invalid_argument("universal_cheb_recover: empty collection");
  const auto values = f.at(points);
  const auto reference = f.on_grid(grid);
  std::vector<ShapeError> table(shapes.size(), {ShapeVector({0}), 0.0});
  std::vector<std::optional<Approximant>> fits(shapes.size());
  parallel_for(shapes.size(), [&](std::size_t i) {
    auto fit = chebyshev_fit(points, values, shapes[i]);
    table[i] = {shapes[i], max_abs_diff(fit.approximant.evaluate_on_grid(grid), reference)};
    fits[i] = std::move(fit.approximant);
  });
  const std::size_t w = select_winner(table);
  return {*fits[w], shapes[w], table, table[w].error, describe_grid(grid)};
}

RecoveryResult universal_cheb_recover(const PointSet& points, std::span<const double> values,
                                      std::span<const ShapeVector> shapes,
                                      const PointSet& check_points,
                                      std::span<const double> check_values) {
  if (shapes.empty()) throw std::invalid_argument("universal_cheb_recover: empty collection");
  if (check_points.size() != check_values.size()) {
    throw std::invalid_argument("universal_cheb_recover: check point/value count mismatch");
  }
  std::vector<ShapeError> table;
  std::vector<Approximant> fits;
  for (const auto& s : shapes) {
    auto fit = chebyshev_fit(points, values, s);
    table.push_back({s, max_abs_diff(fit.approximant.evaluate(check_points), check_values)});
    fits.push_back(std::move(fit.approximant));
  }
  const std::size_t w = select_winner(table);
  std::ostringstream os;
  os << check_points.size() << " sample points";
  return {fits[w], shapes[w], table, table[w].error, os.str()};
}

}  // namespace unirecover
