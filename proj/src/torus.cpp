#include "unirecover/torus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <string>

namespace unirecover {

TorusPoint::TorusPoint(std::vector<std::int64_t> numerators,
                       std::int64_t modulus)
    : numerators_(std::move(numerators)), modulus_(modulus) {
  if (modulus_ < 1) {
    throw std::invalid_argument("TorusPoint: modulus must be positive");
  }
  for (auto a : numerators_) {
    if (a < 0 || a >= modulus_) {
      throw std::invalid_argument("TorusPoint: numerator outside [0, M)");
    }
  }
}

std::vector<double> TorusPoint::coordinates() const {
  std::vector<double> x(numerators_.size());
  const double scale = kTwoPi / static_cast<double>(modulus_);
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = scale * static_cast<double>(numerators_[j]);
  }
  return x;
}

bool FrequencyVector::is_zero() const {
  return std::all_of(components.begin(), components.end(),
                     [](std::int64_t k) { return k == 0; });
}

std::int64_t FrequencyVector::hyperbolic_size() const {
  std::int64_t p = 1;
  for (auto k : components) p *= std::max<std::int64_t>(std::abs(k), 1);
  return p;
}

ShapeVector::ShapeVector(std::vector<int> entries)
    : entries_(std::move(entries)) {
  for (int s : entries_) {
    if (s < 0) throw std::invalid_argument("ShapeVector: negative entry");
    if (s > 40) throw std::invalid_argument("ShapeVector: entry too large");
    weight_ += s;
  }
}

int ShapeVector::max_entry() const {
  return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end());
}

std::size_t ShapeVector::rectangle_size() const {
  std::size_t size = 1;
  for (int s : entries_) size *= (std::size_t{2} << s) - 1;
  return size;
}

std::string ShapeVector::to_string() const {
  std::string out = "(";
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (j > 0) out += ",";
    out += std::to_string(entries_[j]);
  }
  return out + ")";
}

std::ostream& operator<<(std::ostream& out, const ShapeVector& s) { return out << s.to_string(); }

std::vector<FrequencyVector> enumerate_rectangle(const ShapeVector& s,
                                                 const EnumerationLimits& limits) {
  const std::size_t d = s.dim();
  if (d == 0) throw std::invalid_argument("enumerate_rectangle: d must be >= 1");
  // Checked in floating point first so huge shapes cannot overflow size_t.
  double approx = 1.0;
  for (int sj : s.entries()) approx *= std::ldexp(2.0, sj) - 1.0;
  if (approx > static_cast<double>(limits.max_frequencies)) {
    throw CapacityError("enumerate_rectangle: " + std::to_string(approx) +
                        " frequencies exceed the cap");
  }
  std::vector<std::int64_t> bound(d);
  for (std::size_t j = 0; j < d; ++j) bound[j] = (std::int64_t{1} << s[j]) - 1;

  std::vector<FrequencyVector> out;
  out.reserve(s.rectangle_size());
  std::vector<std::int64_t> k(d);
  for (std::size_t j = 0; j < d; ++j) k[j] = -bound[j];
  while (true) {
    out.push_back(FrequencyVector{k});
    std::size_t j = d;
    while (j > 0) {
      --j;
      if (k[j] < bound[j]) {
        ++k[j];
        break;
      }
      k[j] = -bound[j];
      if (j == 0) return out;
    }
  }
}

namespace {

void cross_recurse(std::int64_t budget, std::size_t axis,
                   std::vector<std::int64_t>& k,
                   const std::function<void(std::span<const std::int64_t>)>& visit) {
  if (axis == k.size()) {
    visit(k);
    return;
  }
  for (std::int64_t v = -budget; v <= budget; ++v) {
    k[axis] = v;
    cross_recurse(budget / std::max<std::int64_t>(std::abs(v), 1), axis + 1, k,
                  visit);
  }
}

std::size_t cross_count(std::int64_t budget, std::size_t remaining) {
  if (remaining == 0) return 1;
  std::size_t total = cross_count(budget, remaining - 1);  // k = 0
  for (std::int64_t v = 1; v <= budget; ++v) {
    total += 2 * cross_count(budget / v, remaining - 1);
  }
  return total;
}

}  // namespace

void for_each_in_hyperbolic_cross(
    const HyperbolicCrossSpec& spec,
    const std::function<void(std::span<const std::int64_t>)>& visit) {
  if (spec.N < 1 || spec.d < 1) {
    throw std::invalid_argument("hyperbolic cross requires N >= 1, d >= 1");
  }
  std::vector<std::int64_t> k(spec.d);
  cross_recurse(spec.N, 0, k, visit);
}

std::size_t hyperbolic_cross_size(const HyperbolicCrossSpec& spec) {
  if (spec.N < 1 || spec.d < 1) {
    throw std::invalid_argument("hyperbolic cross requires N >= 1, d >= 1");
  }
  return cross_count(spec.N, spec.d);
}

std::vector<FrequencyVector> enumerate_hyperbolic_cross(
    const HyperbolicCrossSpec& spec, const EnumerationLimits& limits) {
  const std::size_t count = hyperbolic_cross_size(spec);
  if (count > limits.max_frequencies) {
    throw CapacityError("enumerate_hyperbolic_cross: |Gamma(N,d)| = " +
                        std::to_string(count) + " exceeds the cap");
  }
  std::vector<FrequencyVector> out;
  out.reserve(count);
  for_each_in_hyperbolic_cross(spec, [&](std::span<const std::int64_t> k) {
    out.push_back(FrequencyVector{{k.begin(), k.end()}});
  });
  return out;
}

namespace {

void shapes_recurse(int remaining, std::size_t axis, std::vector<int>& s,
                    std::vector<ShapeVector>& out) {
  if (axis + 1 == s.size()) {
    s[axis] = remaining;
    out.emplace_back(s);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    s[axis] = v;
    shapes_recurse(remaining - v, axis + 1, s, out);
  }
}

}  // namespace

std::vector<ShapeVector> enumerate_shapes(int n, std::size_t d) {
  if (n < 0) throw std::invalid_argument("enumerate_shapes: n must be >= 0");
  if (d < 1) throw std::invalid_argument("enumerate_shapes: d must be >= 1");
  std::vector<ShapeVector> out;
  std::vector<int> s(d);
  shapes_recurse(n, 0, s, out);
  return out;
}

std::vector<ShapeVector> enumerate_shapes_up_to(int n, std::size_t d) {
  std::vector<ShapeVector> out;
  for (int w = 0; w <= n; ++w) {
    auto layer = enumerate_shapes(w, d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

double torus_reduce(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("torus_reduce: non-finite coordinate");
  }
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

std::vector<double> torus_reduce(std::span<const double> x) {
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(),
                 [](double v) { return torus_reduce(v); });
  return out;
}

void write_frequencies_csv(std::ostream& out,
                           std::span<const FrequencyVector> frequencies) {
  for (const auto& k : frequencies) {
    for (std::size_t j = 0; j < k.dim(); ++j) {
      if (j) out << ',';
      out << k[j];
    }
    out << '\n';
  }
}

}  // namespace unirecover
