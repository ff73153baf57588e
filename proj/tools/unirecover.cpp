// unirecover: command-line front end for the library.
//
//   unirecover cubature exactness --m 89 --h 1,55 --d 2
//   unirecover recover --lattice fib:12 --function sobolev:r=2,2 --mode cheb
//   unirecover discretize certify --points fib:12 --n 3 --d 2
//   unirecover bench rates --config rates.json
//   unirecover points --set hammersley:6 --out net.txt

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "unirecover/bench.hpp"
#include "unirecover/cubature.hpp"
#include "unirecover/discretization.hpp"
#include "unirecover/function_spec.hpp"
#include "unirecover/lattices.hpp"
#include "unirecover/nets.hpp"
#include "unirecover/point_set.hpp"
#include "unirecover/recovery.hpp"

namespace ur = unirecover;
using json = nlohmann::ordered_json;

namespace {

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write '" + out + "'");
  f << j.dump(2) << '\n';
}

json shape_json(const ur::ShapeVector& s) { return s.entries(); }

ur::PointSet resolve_points(const std::string& spec) {
  if (spec.rfind("hammersley:", 0) == 0) {
    return ur::PointSet::from_torus_points(
        ur::scale_to_torus(ur::hammersley_net(std::stoi(spec.substr(11)))));
  }
  if (spec.rfind("fib:", 0) == 0 || spec.rfind("korobov:", 0) == 0) {
    return ur::parse_lattice_spec(spec).point_set();
  }
  std::ifstream in(spec);
  if (!in) throw std::runtime_error("cannot open point file '" + spec + "'");
  return ur::read_point_set(in);
}

// --- cubature exactness ------------------------------------------------------

struct ExactnessArgs {
  std::int64_t m = 0;
  std::vector<std::int64_t> h;
  std::size_t d = 0;
  std::optional<std::int64_t> nmax;
  std::string out;
};

int run_exactness(const ExactnessArgs& a) {
  std::vector<std::int64_t> h = a.h;
  std::size_t d = a.d ? a.d : h.size();
  if (h.size() == 1 && d > 1) h = ur::korobov_generator(h[0], d, a.m);
  if (h.size() != d) throw std::invalid_argument("--h must have d entries or one Korobov h");
  const auto cert = ur::max_exact_cross(a.m, h, d, a.nmax);
  json j;
  j["m"] = cert.m;
  j["h"] = cert.h;
  j["d"] = cert.d;
  j["N_star"] = cert.n_star;
  j["first_aliased_mode"] =
      cert.first_aliased_mode ? json(cert.first_aliased_mode->components) : json(nullptr);
  j["capped"] = cert.capped;
  emit(j, a.out);
  return 0;
}

// --- recover -------------------------------------------------------------------

struct RecoverArgs {
  std::string lattice;
  std::string function;
  std::string samples;
  std::string mode = "vp";
  int oversampling = ur::kDefaultOversampling;
  std::string out;
};

// Samples must list the lattice nodes in order nu = 1..m.
std::vector<double> node_values(const ur::RankOneLattice& lattice, const ur::SampledPoints& s) {
  const auto nodes = lattice.point_set();
  if (s.points.size() != nodes.size() || s.points.dim() != nodes.dim()) {
    throw std::invalid_argument("samples do not match the lattice size");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.dim(); ++j) {
      const double diff = std::abs(nodes.point(i)[j] - s.points.point(i)[j]);
      if (std::min(diff, ur::kTwoPi - diff) > 1e-9) {
        throw std::invalid_argument("sample " + std::to_string(i + 1) +
                                    " is not at the corresponding lattice node");
      }
    }
  }
  return s.values;
}

int run_recover(const RecoverArgs& a) {
  if (a.function.empty() == a.samples.empty()) {
    throw std::invalid_argument("give exactly one of --function and --samples");
  }
  if (a.mode != "vp" && a.mode != "cheb") throw std::invalid_argument("--mode must be vp or cheb");
  const auto lattice = ur::parse_lattice_spec(a.lattice);
  const std::size_t d = lattice.dim();
  const auto cert = ur::max_exact_cross(lattice.m, lattice.h, d);
  const auto budget = ur::certified_budget(cert.n_star, d);
  if (!budget) {
    throw std::runtime_error("lattice exactness radius " + std::to_string(cert.n_star) +
                             " certifies no shape");
  }
  const auto nodes = lattice.point_set();
  const auto shapes = ur::enumerate_shapes(*budget, d);

  const auto spec = ur::parse_function_spec(a.samples.empty() ? a.function : "samples:" + a.samples);
  std::optional<ur::RecoveryResult> result;
  if (spec.sampler) {
    if (spec.sampler->dim() != d) throw std::invalid_argument("function and lattice dimensions differ");
    const auto grid = ur::EvaluationGrid::for_shapes(d, *budget, a.oversampling, nodes);
    result = a.mode == "vp" ? ur::universal_vp_recover(lattice, *spec.sampler, *budget, grid)
                            : ur::universal_cheb_recover(nodes, *spec.sampler, shapes, grid);
  } else {
    const auto values = node_values(lattice, *spec.samples);
    result = a.mode == "vp"
                 ? ur::universal_vp_recover(lattice, values, *budget, nodes, values)
                 : ur::universal_cheb_recover(nodes, values, shapes, nodes, values);
  }

  json j;
  j["lattice"] = a.lattice;
  j["mode"] = a.mode;
  j["function"] = spec.text;
  j["N_star"] = cert.n_star;
  j["budget"] = *budget;
  j["chosen_shape"] = shape_json(result->chosen_shape);
  json per = json::array();
  for (const auto& e : result->per_shape) {
    per.push_back({{"shape", shape_json(e.shape)}, {"error", e.error}});
  }
  j["per_shape_errors"] = per;
  j["winner_error"] = result->winner_error;
  j["grid"] = result->grid;
  if (spec.tail_bound > 0.0) j["truncation_bound"] = spec.tail_bound;
  emit(j, a.out);
  return 0;
}

// --- discretize certify --------------------------------------------------------

struct CertifyArgs {
  std::string points;
  int n = -1;
  std::size_t d = 0;
  std::size_t probes = ur::kDefaultProbes;
  std::uint64_t seed = 0;
  bool exact = false;
  int oversampling = ur::kDefaultOversampling;
  std::string out;
};

int run_certify(const CertifyArgs& a) {
  const auto xi = resolve_points(a.points);
  const std::size_t d = a.d ? a.d : xi.dim();
  if (xi.dim() != d) throw std::invalid_argument("--d does not match the point set");
  const auto grid = ur::EvaluationGrid::for_shapes(d, a.n, a.oversampling);
  ur::CertifyOptions opts;
  opts.probes = a.probes;
  opts.seed = a.seed;
  opts.exact = a.exact;
  opts.point_set_id = a.points;
  const auto report = ur::certify_collection(xi, a.n, d, grid, opts);

  json j;
  j["point_set"] = report.point_set;
  j["nodes"] = xi.size();
  j["n"] = report.n;
  j["d"] = report.d;
  json per = json::array();
  for (const auto& row : report.per_shape) {
    per.push_back({{"shape", shape_json(row.shape)},
                   {"D_hat", row.d_hat},
                   {"mode", row.exact ? "exact" : "probes"}});
  }
  j["per_shape"] = per;
  j[report.exact ? "D_hat" : "D_hat_lower"] = report.d_hat;
  j["exact"] = report.exact;
  j["probes"] = report.probes;
  j["seed"] = a.seed;
  j["grid"] = report.grid;
  emit(j, a.out);
  return 0;
}

// --- bench -----------------------------------------------------------------------

int run_bench(const std::string& kind, const std::string& config_path, std::string out) {
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open config '" + config_path + "'");
  nlohmann::json j = nlohmann::json::parse(in);
  if (!j.contains("experiment")) j["experiment"] = kind;
  if (j["experiment"] != kind) {
    throw std::invalid_argument("config describes a '" + j["experiment"].get<std::string>() +
                                "' experiment, not '" + kind + "'");
  }
  auto config = ur::parse_experiment_config(j);
  if (!out.empty()) config.output = out;
  const auto table = ur::run_experiment(config);
  if (config.output.empty() || config.output == "-") {
    ur::write_csv(std::cout, table);
  } else {
    std::ofstream csv(config.output);
    if (!csv) throw std::runtime_error("cannot write '" + config.output + "'");
    ur::write_csv(csv, table);
    const auto mirror = std::filesystem::path(config.output).replace_extension(".json");
    std::ofstream js(mirror);
    js << ur::to_json(table).dump(2) << '\n';
  }
  return table.all_pass() ? 0 : 1;
}

// --- points ----------------------------------------------------------------------

int run_points(const std::string& set, const std::string& out) {
  const auto xi = resolve_points(set);
  if (out.empty() || out == "-") {
    ur::write_point_set(std::cout, xi);
    return 0;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write '" + out + "'");
  ur::write_point_set(f, xi);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal sampling recovery on lattices"};
  app.require_subcommand(1);
  int status = 0;

  auto* cubature = app.add_subcommand("cubature", "lattice cubature tools");
  cubature->require_subcommand(1);
  ExactnessArgs ex;
  auto* exactness = cubature->add_subcommand("exactness", "largest hyperbolic cross N* integrated exactly");
  exactness->set_help_flag("--help", "Print this help message and exit");  // frees -h
  exactness->add_option("--m", ex.m, "number of nodes")->required()->check(CLI::PositiveNumber);
  exactness->add_option("--h", ex.h, "generator h_1,...,h_d or a single Korobov h")
      ->required()
      ->delimiter(',');
  exactness->add_option("--d", ex.d, "dimension (default: length of --h)");
  exactness->add_option("--nmax", ex.nmax, "stop scanning at this N");
  exactness->add_option("--out", ex.out, "output JSON (default stdout)");
  exactness->callback([&] { status = run_exactness(ex); });

  RecoverArgs rc;
  auto* recover = app.add_subcommand("recover", "universal recovery from lattice samples");
  recover->add_option("--lattice", rc.lattice, "fib:<n> or korobov:<m>,<h_1>,...")->required();
  recover->add_option("--function", rc.function, "function spec, e.g. sobolev:r=2,2");
  recover->add_option("--samples", rc.samples, "file of samples at the lattice nodes");
  recover->add_option("--mode", rc.mode, "vp or cheb")->check(CLI::IsMember({"vp", "cheb"}));
  recover->add_option("--oversampling", rc.oversampling, "grid points per axis per 2^s")
      ->check(CLI::PositiveNumber);
  recover->add_option("--out", rc.out, "output JSON (default stdout)");
  recover->callback([&] { status = run_recover(rc); });

  auto* discretize = app.add_subcommand("discretize", "sampling discretization");
  discretize->require_subcommand(1);
  CertifyArgs ca;
  auto* certify = discretize->add_subcommand("certify", "measure the universal constant D");
  certify->add_option("--points", ca.points, "point file, fib:<n>, korobov:... or hammersley:<r>")
      ->required();
  certify->add_option("--n", ca.n, "shape weight ||s||_1")->required()->check(CLI::NonNegativeNumber);
  certify->add_option("--d", ca.d, "dimension (default: from the points)");
  certify->add_option("--probes", ca.probes, "random polynomials per shape")
      ->check(CLI::PositiveNumber);
  certify->add_option("--seed", ca.seed, "probe seed");
  certify->add_flag("--exact", ca.exact, "solve small shapes exactly");
  certify->add_option("--oversampling", ca.oversampling, "grid points per axis per 2^s")
      ->check(CLI::PositiveNumber);
  certify->add_option("--out", ca.out, "output JSON (default stdout)");
  certify->callback([&] { status = run_certify(ca); });

  auto* bench = app.add_subcommand("bench", "run an experiment from a JSON config");
  bench->require_subcommand(1);
  std::string config_path, bench_out;
  for (const char* kind : {"rates", "lebesgue", "universality", "exactness", "discretization"}) {
    auto* sub = bench->add_subcommand(kind, std::string(kind) + " experiment");
    sub->add_option("--config", config_path, "experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", bench_out, "CSV output; a .json mirror is written beside it");
    sub->callback([&, kind] { status = run_bench(kind, config_path, bench_out); });
  }

  std::string set, points_out;
  auto* points = app.add_subcommand("points", "write a point set in the text format");
  points->add_option("--set", set, "fib:<n>, korobov:<m>,<h...> or hammersley:<r>")->required();
  points->add_option("--out", points_out, "output file (default stdout)");
  points->callback([&] { status = run_points(set, points_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "unirecover: " << e.what() << '\n';
    return 2;
  }
  return status;
}
