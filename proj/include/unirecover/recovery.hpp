#pragma once

// Recovery operators from samples on rank-1 lattices:
//
//   V_s(f)(x) = (1/m) sum_nu f(y^nu) prod_j V_{2^{s_j}}(x_j - y^nu_j),
//
// the universal selector over shapes of a fixed weight, and discrete
// Chebyshev (minimax) fitting on an arbitrary node set.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "unirecover/grid.hpp"
#include "unirecover/lattices.hpp"
#include "unirecover/minimax.hpp"
#include "unirecover/point_set.hpp"
#include "unirecover/sampler.hpp"
#include "unirecover/torus.hpp"

namespace unirecover {

struct KernelSum {
  RankOneLattice lattice;
  std::vector<double> samples;  // at nodes nu = 1..m
  ShapeVector shape;
};

struct TrigCoefficients {
  ShapeVector shape;
  std::vector<double> coefficients;  // TrigSpace basis order
};

/// A trigonometric polynomial held either as a kernel sum or as real
/// trigonometric coefficients.
class Approximant {
 public:
  explicit Approximant(KernelSum rep);
  explicit Approximant(TrigCoefficients rep);

  const ShapeVector& shape() const;
  std::size_t dim() const { return shape().dim(); }
  bool is_kernel_sum() const { return std::holds_alternative<KernelSum>(rep_); }
  const KernelSum& kernel_sum() const { return std::get<KernelSum>(rep_); }
  const TrigCoefficients& trig_coefficients() const { return std::get<TrigCoefficients>(rep_); }

  /// Kernel sums are evaluated by direct summation over the nodes.
  double operator()(std::span<const double> x) const;
  /// Batch evaluation; kernel sums go through their Fourier coefficients.
  std::vector<double> evaluate(const PointSet& points) const;
  std::vector<double> evaluate_on_grid(const EvaluationGrid& grid) const;

 private:
  struct Spectrum {
    std::vector<std::size_t> dims;  // 2^{s_j+2} - 1 modes per axis
    std::vector<std::complex<double>> coeffs;  // row-major, k_j from -(dims_j/2)
  };
  const Spectrum& spectrum() const;

  std::variant<KernelSum, TrigCoefficients> rep_;
  mutable std::shared_ptr<const Spectrum> spectrum_;
};

/// Largest b with 3^d 2^b <= n_star (n' for d = 2, l for Korobov lattices);
/// empty when even b = 0 is not certified.
std::optional<int> certified_budget(std::int64_t n_star, std::size_t d);

struct VsResult {
  Approximant approximant;
  bool outside_budget = false;  // ||s||_1 exceeds the certified budget
};

/// V_s applied to samples at the lattice nodes. Without an explicit budget
/// the lattice's exactness radius is measured to decide the flag.
VsResult vs_apply(const RankOneLattice& lattice, std::span<const double> samples,
                  const ShapeVector& s, std::optional<int> budget = std::nullopt);

/// max over grid points x of (1/m) sum_nu |V_{2^s}(x - y^nu)|.
double lebesgue_vs(const RankOneLattice& lattice, const ShapeVector& s,
                   const EvaluationGrid& grid);

struct ShapeError {
  ShapeVector shape;
  double error;
};

struct RecoveryResult {
  Approximant approximant;
  ShapeVector chosen_shape;
  std::vector<ShapeError> per_shape;
  double winner_error = 0.0;
  std::string grid;  // description of the points the error was measured on
};

std::string describe_grid(const EvaluationGrid& grid);

/// Tries every shape with ||s||_1 = budget and keeps the one with the
/// smallest grid sup-norm error (lexicographically smallest on ties).
RecoveryResult universal_vp_recover(const RankOneLattice& lattice, const Sampler& f,
                                    int budget, const EvaluationGrid& grid);
/// Same selection from samples alone; errors are measured at `check_points`.
RecoveryResult universal_vp_recover(const RankOneLattice& lattice,
                                    std::span<const double> samples, int budget,
                                    const PointSet& check_points,
                                    std::span<const double> check_values);

struct ChebyshevFit {
  Approximant approximant;
  double residual = 0.0;     // max_nu |f(xi^nu) - u(xi^nu)|
  double dual_bound = 0.0;   // lower bound on the optimal residual
  bool rank_deficient = false;
};

ChebyshevFit chebyshev_fit(const PointSet& points, std::span<const double> values,
                           const ShapeVector& s, const MinimaxOptions& options = {});

/// Chebyshev fit per shape, selection by grid sup-norm error.
RecoveryResult universal_cheb_recover(const PointSet& points, const Sampler& f,
                                      std::span<const ShapeVector> shapes,
                                      const EvaluationGrid& grid);
RecoveryResult universal_cheb_recover(const PointSet& points, std::span<const double> values,
                                      std::span<const ShapeVector> shapes,
                                      const PointSet& check_points,
                                      std::span<const double> check_values);

}  // namespace unirecover
