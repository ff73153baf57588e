#pragma once

// Measuring the constant D in ||f||_inf <= D max_nu |f(xi^nu)| over the
// subspaces T(R(s)), ||s||_1 = n. The sup norm is taken over an evaluation
// grid that always contains the nodes, so every ratio is at least 1.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "unirecover/grid.hpp"
#include "unirecover/point_set.hpp"
#include "unirecover/torus.hpp"

namespace unirecover {

inline constexpr std::size_t kDefaultProbes = 200;
inline constexpr std::size_t kExactModeCap = 64;  // largest |R(s)| for exact mode

/// Largest grid-sup / node-max ratio over `probes` random polynomials in
/// T(R(s)) with standard normal coefficients. Probe p of shape `stream`
/// draws from the stream seeded by (seed, stream, p). This is a lower bound
/// on D for the shape; +inf when some nonzero polynomial vanishes on xi.
double estimate_discretization_constant(const PointSet& xi, const ShapeVector& s,
                                        std::size_t probes, const EvaluationGrid& grid,
                                        std::uint64_t seed, std::size_t stream = 0);

/// max over grid points x of max { t(x) : t in T(R(s)), |t(xi^nu)| <= 1 },
/// each inner problem solved exactly as a linear program. Requires
/// |R(s)| <= kExactModeCap.
double exact_discretization_constant(const PointSet& xi, const ShapeVector& s,
                                     const EvaluationGrid& grid);

struct ShapeDiscretization {
  ShapeVector shape;
  double d_hat;
  bool exact;
};

struct DiscretizationReport {
  std::string point_set;
  int n = 0;
  std::size_t d = 0;
  std::vector<ShapeDiscretization> per_shape;
  double d_hat = 0.0;  // max over shapes
  bool exact = false;  // every shape was solved in exact mode
  std::size_t probes = 0;
  std::string grid;
};

struct CertifyOptions {
  std::size_t probes = kDefaultProbes;
  std::uint64_t seed = 0;
  bool exact = false;  // exact mode for shapes small enough, probes otherwise
  std::string point_set_id;
};

/// Runs the estimate for every s with ||s||_1 = n and keeps the maximum.
DiscretizationReport certify_collection(const PointSet& xi, int n, std::size_t d,
                                        const EvaluationGrid& grid,
                                        const CertifyOptions& options = {});

}  // namespace unirecover
