#include "unirecover/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "unirecover/cubature.hpp"
#include "unirecover/discretization.hpp"
#include "unirecover/function_classes.hpp"
#include "unirecover/function_spec.hpp"
#include "unirecover/lattices.hpp"
#include "unirecover/nets.hpp"
#include "unirecover/recovery.hpp"

namespace unirecover {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string num(std::int64_t v) { return std::to_string(v); }

template <class Seq>
std::string tuple_text(const Seq& v) {
  std::string out = "(";
  bool first = true;
  for (const auto& x : v) {
    if (!first) out += ",";
    out += std::to_string(x);
    first = false;
  }
  return out + ")";
}

std::string shape_text(const ShapeVector& s) { return s.to_string(); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct LatticeCase {
  std::string label;
  RankOneLattice lattice;
  std::int64_t n_star;
  std::optional<int> budget;
  double x;  // abscissa of the rate fit (log2 of b_n or of N*)
};

LatticeCase fibonacci_case(int n) {
  const auto fl = fibonacci_lattice(n);
  const auto cert = max_exact_cross(fl.lattice.m, fl.lattice.h, 2);
  return {"fib:" + std::to_string(n), fl.lattice, cert.n_star,
          certified_budget(cert.n_star, 2), std::log2(static_cast<double>(fl.b_n))};
}

LatticeCase korobov_case(std::int64_t m, std::size_t d,
                         const std::vector<std::int64_t>& generator) {
  RankOneLattice lattice;
  if (generator.empty()) {
    const auto best = best_korobov_generator(m, d);
    lattice = korobov_lattice(m, korobov_generator(best.h, d, m)).lattice;
  } else {
    lattice = korobov_lattice(m, generator).lattice;
  }
  const auto cert = max_exact_cross(lattice.m, lattice.h, d);
  return {lattice.label(), lattice, cert.n_star, certified_budget(cert.n_star, d),
          std::log2(static_cast<double>(std::max<std::int64_t>(cert.n_star, 1)))};
}

std::vector<LatticeCase> lattice_cases(const ExperimentConfig& c) {
  std::vector<LatticeCase> out;
  if (c.lattice == "fib") {
    for (int n = c.n_min; n <= c.n_max; ++n) out.push_back(fibonacci_case(n));
  } else {
    for (auto m : c.moduli) out.push_back(korobov_case(m, c.d, c.generator));
  }
  return out;
}

PointSet resolve_points(const std::string& spec) {
  if (spec.rfind("hammersley:", 0) == 0) {
    const auto net = hammersley_net(std::stoi(spec.substr(11)));
    const auto pts = scale_to_torus(net);
    return PointSet::from_torus_points(pts);
  }
  if (spec.rfind("fib:", 0) == 0 || spec.rfind("korobov:", 0) == 0) {
    return parse_lattice_spec(spec).point_set();
  }
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("cannot open point file '" + spec + "'");
  return read_point_set(in);
}

// Probe estimates only bound D from below.
const char* d_hat_key(const DiscretizationReport& report) {
  return report.exact ? "D_hat" : "D_hat_lower";
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument("config: " + message);
}

}  // namespace

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("ols_slope: need at least two points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols_slope: abscissae are all equal");
  return sxy / sxx;
}

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  ExperimentConfig c;
  require(j.is_object(), "top level must be an object");
  require(j.contains("experiment"), "missing \"experiment\"");
  c.kind = j.at("experiment").get<std::string>();
  static const std::set<std::string> kinds{"rates", "lebesgue", "exactness", "universality",
                                           "discretization"};
  require(kinds.count(c.kind) > 0, "unknown experiment '" + c.kind + "'");
  c.lattice = j.value("lattice", "fib");
  require(c.lattice == "fib" || c.lattice == "korobov", "lattice must be fib or korobov");
  c.function = j.value("function", "");
  if (j.contains("n")) {
    const auto& n = j.at("n");
    if (n.is_array()) {
      require(n.size() == 2, "\"n\" must be [min, max]");
      c.n_min = n[0].get<int>();
      c.n_max = n[1].get<int>();
    } else {
      c.n_min = c.n_max = n.get<int>();
    }
  }
  c.d = j.value("d", std::size_t{2});
  if (j.contains("m")) {
    const auto& m = j.at("m");
    if (m.is_array()) {
      c.moduli = m.get<std::vector<std::int64_t>>();
    } else {
      c.moduli = {m.get<std::int64_t>()};
    }
  }
  c.generator = j.value("h", std::vector<std::int64_t>{});
  c.m_max = j.value("m_max", std::int64_t{0});
  c.sweep_dims = j.value("dims", std::vector<std::size_t>{2, 3});
  c.oversampling = j.value("oversampling", 8);
  c.seed = j.value("seed", std::uint64_t{0});
  c.probes = j.value("probes", std::size_t{kDefaultProbes});
  if (j.contains("functions")) {
    const auto& f = j.at("functions");
    if (f.is_array()) {
      c.function_list = f.get<std::vector<std::string>>();
      c.functions = c.function_list.size();
    } else {
      c.functions = f.get<std::size_t>();
    }
  }
  c.exact = j.value("exact", false);
  c.include_uncertified = j.value("include_uncertified", false);
  if (j.contains("slope_range")) {
    const auto r = j.at("slope_range").get<std::vector<double>>();
    require(r.size() == 2 && r[0] <= r[1], "\"slope_range\" must be [lo, hi]");
    c.slope_range = std::make_pair(r[0], r[1]);
  }
  c.points = j.value("points", "");
  c.budget = j.value("budget", -1);
  c.output = j.value("output", "");

  require(c.oversampling >= 1, "oversampling must be >= 1");
  require(c.d >= 1, "d must be >= 1");
  const bool wants_lattices = c.kind == "rates" || c.kind == "lebesgue" ||
                              (c.kind == "exactness" && c.m_max == 0);
  if (wants_lattices && c.lattice == "fib") {
    require(c.n_min >= 2 && c.n_min <= c.n_max, "fib lattices need a nonempty n range >= 2");
    require(c.d == 2, "Fibonacci lattices are two-dimensional");
  }
  if (wants_lattices && c.lattice == "korobov") {
    require(!c.moduli.empty(), "korobov lattices need \"m\"");
    require(c.generator.empty() || c.generator.size() == c.d, "\"h\" must have d entries");
  }
  if (c.kind == "rates") {
    require(!c.function.empty(), "rates needs \"function\"");
    require(c.function.rfind("samples:", 0) != 0, "rates needs an evaluable function");
    parse_function_spec(c.function);  // fails early on a bad spec or missing file
  }
  if (c.kind == "universality") {
    require(c.n_min >= 2 && c.n_min == c.n_max, "universality needs a single Fibonacci \"n\"");
    require(c.functions >= 1, "universality needs at least one function");
    for (const auto& f : c.function_list) parse_function_spec(f);
  }
  if (c.kind == "discretization") {
    require(!c.points.empty(), "discretization needs \"points\"");
    require(c.budget >= 0, "discretization needs \"budget\" >= 0");
    const bool generated = c.points.rfind("fib:", 0) == 0 ||
                           c.points.rfind("korobov:", 0) == 0 ||
                           c.points.rfind("hammersley:", 0) == 0;
    require(generated || std::filesystem::exists(c.points),
            "point file '" + c.points + "' does not exist");
    require(c.probes >= 1, "probes must be >= 1");
  }
  return c;
}

bool BenchTable::all_pass() const {
  return std::all_of(records.begin(), records.end(),
                     [](const ExperimentRecord& r) { return !r.pass || *r.pass; });
}

BenchTable run_rates(const ExperimentConfig& c) {
  const auto spec = parse_function_spec(c.function);
  if (!spec.sampler) throw std::invalid_argument("rates: function has no evaluator");
  BenchTable table{"rates", {}, {}};
  std::vector<double> xs, ys;
  for (const auto& lc : lattice_cases(c)) {
    const auto t0 = Clock::now();
    ExperimentRecord rec;
    rec.fields = {{"lattice", lc.label}, {"nodes", num(lc.lattice.m)},
                  {"N_star", num(lc.n_star)},
                  {"budget", lc.budget ? num(std::int64_t{*lc.budget}) : ""}};
    if (!lc.budget) {
      rec.fields.push_back({"note", "no certified shape"});
      table.records.push_back(rec);
      continue;
    }
    const auto grid = EvaluationGrid::for_shapes(lc.lattice.dim(), *lc.budget, c.oversampling,
                                                 lc.lattice.point_set());
    const auto res = universal_vp_recover(lc.lattice, *spec.sampler, *lc.budget, grid);
    const bool used = spec.tail_bound <= 0.01 * res.winner_error;
    if (used) {
      xs.push_back(lc.x);
      ys.push_back(std::log2(res.winner_error));
    }
    rec.fields.push_back({"chosen_shape", shape_text(res.chosen_shape)});
    rec.fields.push_back({"error", num(res.winner_error)});
    rec.fields.push_back({"tail_bound", num(spec.tail_bound)});
    rec.fields.push_back({"used_in_fit", used ? "true" : "false"});
    rec.fields.push_back({"slope_so_far", xs.size() >= 2 ? num(ols_slope(xs, ys)) : ""});
    rec.fields.push_back({"grid", res.grid});
    rec.wall_seconds = seconds_since(t0);
    table.records.push_back(rec);
  }
  if (spec.smoothness) table.summary.push_back({"g_r", num(g_of_r(*spec.smoothness))});
  table.summary.push_back({"fit_points", num(static_cast<std::int64_t>(xs.size()))});
  if (xs.size() >= 2) {
    const double slope = ols_slope(xs, ys);
    table.summary.push_back({"slope", num(slope)});
    if (c.slope_range) {
      ExperimentRecord fit;
      fit.fields = {{"lattice", "fit"}, {"slope", num(slope)}};
      fit.bound = "[" + num(c.slope_range->first) + "," + num(c.slope_range->second) + "]";
      fit.pass = slope >= c.slope_range->first && slope <= c.slope_range->second;
      table.records.push_back(fit);
    }
  }
  return table;
}

BenchTable run_lebesgue(const ExperimentConfig& c) {
  BenchTable table{"lebesgue", {}, {}};
  for (const auto& lc : lattice_cases(c)) {
    const std::size_t d = lc.lattice.dim();
    const double bound = std::pow(3.0, static_cast<double>(d));
    if (!lc.budget && !c.include_uncertified) continue;
    std::vector<ShapeVector> shapes;
    if (lc.budget) shapes = enumerate_shapes_up_to(*lc.budget, d);
    const int top = lc.budget ? *lc.budget + 1 : 0;
    if (c.include_uncertified) {
      for (auto& s : enumerate_shapes(top, d)) shapes.push_back(s);
    }
    int max_entry = 0;
    for (const auto& s : shapes) max_entry = std::max(max_entry, s.max_entry());
    const auto grid = EvaluationGrid::for_shapes(d, max_entry, c.oversampling);
    for (const auto& s : shapes) {
      const auto t0 = Clock::now();
      ExperimentRecord rec;
      const double value = lebesgue_vs(lc.lattice, s, grid);
      const bool certified = lc.budget && s.weight() <= *lc.budget;
      rec.fields = {{"lattice", lc.label}, {"nodes", num(lc.lattice.m)},
                    {"N_star", num(lc.n_star)}, {"shape", shape_text(s)},
                    {"lebesgue", num(value)}, {"grid", describe_grid(grid)}};
      if (certified) {
        rec.bound = num(bound);
        rec.pass = value <= bound;
      }
      rec.wall_seconds = seconds_since(t0);
      table.records.push_back(rec);
    }
  }
  return table;
}

BenchTable run_exactness(const ExperimentConfig& c) {
  BenchTable table{"exactness", {}, {}};
  if (c.m_max == 0) {
    double min_gamma = std::numeric_limits<double>::infinity();
    for (const auto& lc : lattice_cases(c)) {
      const auto t0 = Clock::now();
      const auto cert = max_exact_cross(lc.lattice.m, lc.lattice.h, lc.lattice.dim());
      const double gamma = static_cast<double>(cert.n_star) / static_cast<double>(lc.lattice.m);
      min_gamma = std::min(min_gamma, gamma);
      ExperimentRecord rec;
      rec.fields = {{"lattice", lc.label},
                    {"nodes", num(lc.lattice.m)},
                    {"N_star", num(cert.n_star)},
                    {"gamma_hat", num(gamma)},
                    {"first_aliased_mode", cert.first_aliased_mode
                                               ? tuple_text(cert.first_aliased_mode->components)
                                               : ""},
                    {"capped", cert.capped ? "true" : "false"}};
      rec.bound = "> 0";
      rec.pass = gamma > 0.0 && !cert.capped;
      rec.wall_seconds = seconds_since(t0);
      table.records.push_back(rec);
    }
    table.summary.push_back({"min_gamma_hat", num(min_gamma)});
    return table;
  }
  std::int64_t qualifying = 0, succeeded = 0;
  for (std::size_t d : c.sweep_dims) {
    for (std::int64_t m = 2; m <= c.m_max; ++m) {
      if (!is_prime(m)) continue;
      const auto t0 = Clock::now();
      std::int64_t count = 0, ok = 0, n_top = 0;
      for (std::int64_t N = 1;; ++N) {
        const auto size = hyperbolic_cross_size({N, d});
        if (static_cast<double>(size) >= static_cast<double>(m - 1) / static_cast<double>(d)) {
          break;
        }
        ++count;
        n_top = N;
        if (korobov_search(m, N, d).h) ++ok;
      }
      if (count == 0) continue;
      qualifying += count;
      succeeded += ok;
      ExperimentRecord rec;
      rec.fields = {{"m", num(m)}, {"d", num(static_cast<std::int64_t>(d))},
                    {"N_max", num(n_top)}, {"qualifying", num(count)},
                    {"succeeded", num(ok)}};
      rec.bound = "all";
      rec.pass = ok == count;
      rec.wall_seconds = seconds_since(t0);
      table.records.push_back(rec);
    }
  }
  table.summary.push_back({"qualifying", num(qualifying)});
  table.summary.push_back({"succeeded", num(succeeded)});
  return table;
}

BenchTable run_universality(const ExperimentConfig& c) {
  BenchTable table{"universality", {}, {}};
  const auto lc = fibonacci_case(c.n_min);
  if (!lc.budget) throw std::invalid_argument("universality: lattice certifies no shape");
  const int budget = *lc.budget;
  const auto nodes = lc.lattice.point_set();
  const auto grid = EvaluationGrid::for_shapes(2, budget, c.oversampling, nodes);
  const auto shapes = enumerate_shapes(budget, 2);

  CertifyOptions opts;
  opts.probes = c.probes;
  opts.seed = c.seed;
  opts.exact = c.exact;
  opts.point_set_id = lc.label;
  const auto report = certify_collection(nodes, budget, 2, grid, opts);

  std::vector<NamedFunction> functions;
  if (c.function_list.empty()) {
    functions = seeded_test_functions(c.functions, budget, 2, c.seed);
  } else {
    for (const auto& text : c.function_list) {
      auto spec = parse_function_spec(text);
      if (!spec.sampler) throw std::invalid_argument("universality: '" + text + "' has no evaluator");
      functions.push_back({text, spec.sampler});
    }
  }

  double sup_min = 0.0;
  std::vector<double> sup_per_shape(shapes.size(), 0.0);
  for (const auto& nf : functions) {
    const auto t0 = Clock::now();
    const auto values = nf.f->on_grid(grid);
    double min_dhat = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      const double dh = best_approx_oracle(values, shapes[i], grid).value;
      sup_per_shape[i] = std::max(sup_per_shape[i], dh);
      min_dhat = std::min(min_dhat, dh);
    }
    sup_min = std::max(sup_min, min_dhat);
    const auto vp = universal_vp_recover(lc.lattice, *nf.f, budget, grid);
    const auto cheb = universal_cheb_recover(nodes, *nf.f, shapes, grid);
    const double seconds = seconds_since(t0);
    const double vp_bound = 10.0 * min_dhat + 1e-8;
    const double cheb_bound = (2.0 * report.d_hat + 1.0) * min_dhat + 1e-8;
    for (int k = 0; k < 2; ++k) {
      const auto& res = k == 0 ? vp : cheb;
      const double bound = k == 0 ? vp_bound : cheb_bound;
      ExperimentRecord rec;
      rec.fields = {{"function", nf.label},
                    {"method", k == 0 ? "vp" : "cheb"},
                    {"chosen_shape", shape_text(res.chosen_shape)},
                    {"error", num(res.winner_error)},
                    {"min_dhat", num(min_dhat)}};
      rec.bound = num(bound);
      rec.pass = res.winner_error <= bound;
      rec.wall_seconds = seconds;
      table.records.push_back(rec);
    }
  }
  table.summary.push_back({"lattice", lc.label});
  table.summary.push_back({"budget", num(std::int64_t{budget})});
  table.summary.push_back({d_hat_key(report), num(report.d_hat)});
  table.summary.push_back({"D_hat_exact", report.exact ? "true" : "false"});
  table.summary.push_back({"grid", describe_grid(grid)});
  table.summary.push_back({"sup_f_min_s_dhat", num(sup_min)});
  table.summary.push_back(
      {"min_s_sup_f_dhat", num(*std::min_element(sup_per_shape.begin(), sup_per_shape.end()))});
  return table;
}

BenchTable run_discretization(const ExperimentConfig& c) {
  BenchTable table{"discretization", {}, {}};
  const auto points = resolve_points(c.points);
  const std::size_t d = points.dim();
  const auto grid = EvaluationGrid::for_shapes(d, c.budget, c.oversampling);
  CertifyOptions opts;
  opts.probes = c.probes;
  opts.seed = c.seed;
  opts.exact = c.exact;
  opts.point_set_id = c.points;
  const auto t0 = Clock::now();
  const auto report = certify_collection(points, c.budget, d, grid, opts);
  const double seconds = seconds_since(t0);
  for (const auto& row : report.per_shape) {
    ExperimentRecord rec;
    rec.fields = {{"points", c.points},
                  {"nodes", num(static_cast<std::int64_t>(points.size()))},
                  {"shape", shape_text(row.shape)},
                  {"dim", num(static_cast<std::int64_t>(row.shape.rectangle_size()))},
                  {"D_hat", num(row.d_hat)},
                  {"mode", row.exact ? "exact" : "probes"}};
    rec.wall_seconds = seconds / static_cast<double>(report.per_shape.size());
    table.records.push_back(rec);
  }
  table.summary.push_back({d_hat_key(report), num(report.d_hat)});
  table.summary.push_back({"grid", report.grid});
  table.summary.push_back({"probes", num(static_cast<std::int64_t>(report.probes))});
  return table;
}

BenchTable run_experiment(const ExperimentConfig& c) {
  if (c.kind == "rates") return run_rates(c);
  if (c.kind == "lebesgue") return run_lebesgue(c);
  if (c.kind == "exactness") return run_exactness(c);
  if (c.kind == "universality") return run_universality(c);
  if (c.kind == "discretization") return run_discretization(c);
  throw std::invalid_argument("unknown experiment '" + c.kind + "'");
}

namespace {

std::vector<std::string> columns_of(const BenchTable& table) {
  std::vector<std::string> cols;
  for (const auto& r : table.records) {
    for (const auto& [k, v] : r.fields) {
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
  }
  return cols;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string lookup(const ExperimentRecord& r, const std::string& key) {
  for (const auto& [k, v] : r.fields) {
    if (k == key) return v;
  }
  return "";
}

}  // namespace

void write_csv(std::ostream& out, const BenchTable& table) {
  out << "# unirecover-bench schema=" << kBenchSchemaVersion << " kind=" << table.kind << '\n';
  const auto cols = columns_of(table);
  for (const auto& c : cols) out << csv_field(c) << ',';
  out << "bound,pass,wall_seconds\n";
  for (const auto& r : table.records) {
    for (const auto& c : cols) out << csv_field(lookup(r, c)) << ',';
    out << csv_field(r.bound) << ',' << (r.pass ? (*r.pass ? "true" : "false") : "") << ','
        << num(r.wall_seconds) << '\n';
  }
  for (const auto& [k, v] : table.summary) out << "# summary " << k << '=' << v << '\n';
}

nlohmann::ordered_json to_json(const BenchTable& table) {
  nlohmann::ordered_json j;
  j["schema"] = kBenchSchemaVersion;
  j["kind"] = table.kind;
  const auto cols = columns_of(table);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : table.records) {
    nlohmann::ordered_json row;
    for (const auto& c : cols) row[c] = lookup(r, c);
    row["bound"] = r.bound;
    if (r.pass) {
      row["pass"] = *r.pass;
    } else {
      row["pass"] = nullptr;
    }
    row["wall_seconds"] = r.wall_seconds;
    j["rows"].push_back(row);
  }
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.summary) summary[k] = v;
  j["summary"] = summary;
  j["all_pass"] = table.all_pass();
  return j;
}

}  // namespace unirecover
