#pragma once

// Univariate Dirichlet, Fejer and de la Vallee Poussin kernels, their tensor
// products and exact Fourier coefficients. All evaluation is real-valued.

#include <cstdint>
#include <span>

namespace unirecover {

enum class KernelKind { Dirichlet, Fejer, ValleePoussin };

struct KernelSpec {
  KernelKind kind;
  std::int64_t order;  // j
};

/// Below this |sin(x/2)| the closed forms are replaced by direct summation.
inline constexpr double kNearSingularity = 1e-6;

/// D_j(x) = sum_{|k|<=j} e^{ikx}; j >= 0.
double dirichlet_eval(std::int64_t j, double x);

/// K_j(x) = sum_{|k|<j} (1 - |k|/j) e^{ikx}; j >= 1.
double fejer_eval(std::int64_t j, double x);

/// V_j(x) = 2 K_{2j}(x) - K_j(x); j >= 1.
double vp_eval(std::int64_t j, double x);

/// prod_i V_{j_i}(x_i).
double vp_tensor_eval(std::span<const std::int64_t> orders,
                      std::span<const double> x);

/// Exact Fourier coefficient hat{kernel}(k).
double kernel_fourier_coeff(const KernelSpec& spec, std::int64_t k);

}  // namespace unirecover
