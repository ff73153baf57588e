#include "unirecover/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace unirecover {

namespace {

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(who) + ": non-finite argument");
  }
}

// sum_{|k|<j} w(k) e^{ikx} = w(0) + 2 sum_{k=1}^{j-1} w(k) cos(kx)
template <class Weight>
double cosine_sum(std::int64_t terms, double x, Weight w) {
  double acc = w(0);
  for (std::int64_t k = 1; k < terms; ++k) {
    acc += 2.0 * w(k) * std::cos(static_cast<double>(k) * x);
  }
  return acc;
}

}  // namespace

double dirichlet_eval(std::int64_t j, double x) {
  require_finite(x, "dirichlet_eval");
  if (j < 0) throw std::invalid_argument("dirichlet_eval: j must be >= 0");
  const double half = std::sin(0.5 * x);
  if (std::abs(half) < kNearSingularity) {
    return cosine_sum(j + 1, x, [](std::int64_t) { return 1.0; });
  }
  return std::sin((static_cast<double>(j) + 0.5) * x) / half;
}

double fejer_eval(std::int64_t j, double x) {
  require_finite(x, "fejer_eval");
  if (j < 1) throw std::invalid_argument("fejer_eval: j must be >= 1");
  const double jd = static_cast<double>(j);
  const double half = std::sin(0.5 * x);
  if (std::abs(half) < kNearSingularity) {
    return cosine_sum(j, x, [jd](std::int64_t k) {
      return 1.0 - static_cast<double>(k) / jd;
    });
  }
  const double num = std::sin(0.5 * jd * x);
  return num * num / (jd * half * half);
}

double vp_eval(std::int64_t j, double x) {
  if (j < 1) throw std::invalid_argument("vp_eval: j must be >= 1");
  return 2.0 * fejer_eval(2 * j, x) - fejer_eval(j, x);
}

double vp_tensor_eval(std::span<const std::int64_t> orders,
                      std::span<const double> x) {
  if (orders.size() != x.size()) {
    throw std::invalid_argument("vp_tensor_eval: dimension mismatch");
  }
  double value = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) value *= vp_eval(orders[i], x[i]);
  return value;
}

double kernel_fourier_coeff(const KernelSpec& spec, std::int64_t k) {
  const std::int64_t a = std::abs(k);
  const std::int64_t j = spec.order;
  switch (spec.kind) {
    case KernelKind::Dirichlet:
      if (j < 0) throw std::invalid_argument("Dirichlet order must be >= 0");
      return a <= j ? 1.0 : 0.0;
    case KernelKind::Fejer:
      if (j < 1) throw std::invalid_argument("Fejer order must be >= 1");
      return a < j ? static_cast<double>(j - a) / static_cast<double>(j) : 0.0;
    case KernelKind::ValleePoussin:
      if (j < 1) throw std::invalid_argument("VP order must be >= 1");
      if (a <= j) return 1.0;
      if (a < 2 * j) {
        return static_cast<double>(2 * j - a) / static_cast<double>(j);
      }
      return 0.0;
  }
  return 0.0;
}

}  // namespace unirecover
