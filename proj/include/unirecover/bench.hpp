#pragma once

// Experiment driver: JSON config in, CSV (plus a JSON mirror) out.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace unirecover {

inline constexpr int kBenchSchemaVersion = 1;

struct ExperimentConfig {
  std::string kind;              // rates | lebesgue | exactness | universality | discretization
  std::string lattice = "fib";   // fib | korobov
  std::string function;          // function spec (rates)
  int n_min = 0;
  int n_max = -1;
  std::size_t d = 2;
  std::vector<std::int64_t> moduli;           // Korobov node counts
  std::vector<std::int64_t> generator;        // explicit Korobov generator
  std::int64_t m_max = 0;                     // Korobov search sweep
  std::vector<std::size_t> sweep_dims;
  int oversampling = 8;
  std::uint64_t seed = 0;
  std::size_t probes = 200;
  std::size_t functions = 10;
  std::vector<std::string> function_list;
  bool exact = false;
  bool include_uncertified = false;
  std::optional<std::pair<double, double>> slope_range;
  std::string points;            // discretization node set: fib:<n>, hammersley:<r>, or a file
  int budget = -1;               // discretization collection weight
  std::string output;
};

/// Validates while parsing; throws std::invalid_argument with a message.
ExperimentConfig parse_experiment_config(const nlohmann::json& j);

struct ExperimentRecord {
  std::vector<std::pair<std::string, std::string>> fields;  // ordered columns
  std::string bound;            // empty when no bound applies
  std::optional<bool> pass;     // set whenever `bound` is
  double wall_seconds = 0.0;
};

struct BenchTable {
  std::string kind;
  std::vector<ExperimentRecord> records;
  std::vector<std::pair<std::string, std::string>> summary;

  /// True iff every bounded record passes.
  bool all_pass() const;
};

BenchTable run_rates(const ExperimentConfig& config);
BenchTable run_lebesgue(const ExperimentConfig& config);
BenchTable run_exactness(const ExperimentConfig& config);
BenchTable run_universality(const ExperimentConfig& config);
BenchTable run_discretization(const ExperimentConfig& config);
BenchTable run_experiment(const ExperimentConfig& config);

/// First line "# unirecover-bench schema=<v> kind=<kind>", then a header
/// row, the records, and "# summary key=value" lines.
void write_csv(std::ostream& out, const BenchTable& table);
nlohmann::ordered_json to_json(const BenchTable& table);

/// Least-squares slope of y against x.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace unirecover
