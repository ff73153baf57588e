#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>

#include "unirecover/point_set.hpp"

namespace unirecover {

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw std::invalid_argument("PointSet: dimension must be >= 1");
  if (coords_.size() % dim_ != 0) {
    throw std::invalid_argument("PointSet: coordinate count not a multiple of d");
  }
}

PointSet PointSet::from_torus_points(std::span<const TorusPoint> points) {
  if (points.empty()) throw std::invalid_argument("PointSet: no points");
  const std::size_t d = points.front().dim();
  const std::int64_t m = points.front().modulus();
  std::vector<double> coords;
  coords.reserve(points.size() * d);
  bool common = true;
  for (const auto& p : points) {
    if (p.dim() != d) throw std::invalid_argument("PointSet: mixed dimensions");
    common = common && p.modulus() == m;
    auto x = p.coordinates();
    coords.insert(coords.end(), x.begin(), x.end());
  }
  PointSet set(d, std::move(coords));
  if (common) set.modulus_ = m;
  return set;
}

void PointSet::append(std::span<const double> x) {
  if (dim_ == 0) dim_ = x.size();
  if (x.size() != dim_) throw std::invalid_argument("PointSet: dimension mismatch");
  coords_.insert(coords_.end(), x.begin(), x.end());
  modulus_.reset();
}

namespace {

struct Header {
  std::size_t d = 0;
  std::optional<std::int64_t> m;
};

Header parse_header(const std::string& line) {
  static const std::regex re(R"(#\s*d\s*=\s*(\d+)(?:\s+m\s*=\s*(\d+))?.*)");
  std::smatch match;
  if (!std::regex_match(line, match, re)) {
    throw std::runtime_error("point file: bad header line '" + line + "'");
  }
  Header h;
  h.d = std::stoul(match[1].str());
  if (match[2].matched) h.m = std::stoll(match[2].str());
  if (h.d == 0) throw std::runtime_error("point file: d must be >= 1");
  return h;
}

// Reads the header and body; every body line carries d + extra numbers.
std::pair<Header, std::vector<std::vector<double>>> read_rows(std::istream& in,
                                                              std::size_t extra) {
  std::string line;
  Header header;
  bool have_header = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.front() == '#') {
      if (!have_header) {
        header = parse_header(line);
        have_header = true;
      }
      continue;
    }
    if (!have_header) throw std::runtime_error("point file: missing header");
    std::istringstream ss(line);
    std::vector<double> row;
    double v;
    while (ss >> v) row.push_back(v);
    if (!ss.eof()) throw std::runtime_error("point file: bad number in '" + line + "'");
    if (row.size() != header.d + extra) {
      throw std::runtime_error("point file: expected " +
                               std::to_string(header.d + extra) +
                               " values per line");
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("point file: missing header");
  return {header, std::move(rows)};
}

void write_header(std::ostream& out, const PointSet& points) {
  out << "# d=" << points.dim() << " m=" << points.size() << '\n';
}

}  // namespace

void write_point_set(std::ostream& out, const PointSet& points) {
  write_header(out, points);
  out << std::setprecision(17);
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto x = points.point(i);
    for (std::size_t j = 0; j < x.size(); ++j) out << (j ? " " : "") << x[j];
    out << '\n';
  }
}

PointSet read_point_set(std::istream& in) {
  auto [header, rows] = read_rows(in, 0);
  if (header.m && static_cast<std::size_t>(*header.m) != rows.size()) {
    throw std::runtime_error("point file: header m does not match node count");
  }
  std::vector<double> coords;
  coords.reserve(rows.size() * header.d);
  for (const auto& r : rows) {
    for (double v : r) {
      if (!(v >= 0.0 && v < kTwoPi)) {
        throw std::runtime_error("point file: coordinate outside [0, 2pi)");
      }
      coords.push_back(v);
    }
  }
  return PointSet(header.d, std::move(coords));
}

void write_samples(std::ostream& out, const PointSet& points,
                   std::span<const double> values) {
  if (values.size() != points.size()) {
    throw std::invalid_argument("write_samples: length mismatch");
  }
  write_header(out, points);
  out << std::setprecision(17);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (double v : points.point(i)) out << v << ' ';
    out << values[i] << '\n';
  }
}

SampledPoints read_samples(std::istream& in) {
  auto [header, rows] = read_rows(in, 1);
  SampledPoints out;
  std::vector<double> coords;
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < header.d; ++j) coords.push_back(torus_reduce(r[j]));
    out.values.push_back(r[header.d]);
  }
  out.points = PointSet(header.d, std::move(coords));
  return out;
}

}  // namespace unirecover
