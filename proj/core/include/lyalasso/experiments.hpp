#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lyalasso/metrics.hpp"
#include "lyalasso/simulate.hpp"
#include "lyalasso/types.hpp"

namespace lyalasso {

enum class ExperimentKind {
  kPathCycle,
  kIrrepCurve,
  kRobustnessGrid,
  kIrrepFrequency,
  kWeakIrrepImpact,
  kCustom,
};

ExperimentKind parse_experiment_kind(const std::string& name);
std::string experiment_kind_name(ExperimentKind kind);

// One declarative description covers all study kinds; each runner reads the
// fields relevant to it.  Defaults are desk scale (minutes, not hours) and
// every count can be raised to the full protocol through the JSON config.
// Sample sizes use +infinity for the population-covariance setting, written
// as "inf" (or 0) in JSON.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kPathCycle;
  std::uint64_t base_seed = 1;
  MetricScope scope = MetricScope::kOffdiag;
  int grid_size = 100;
  double span = 1e4;

  // path_cycle
  int replications = 20;
  std::vector<double> sample_sizes;
  int cycle_completions = 100;

  // irrep_curve
  std::vector<double> d_forward;
  std::vector<double> d_reverse;
  std::vector<double> e_grid;

  // robustness_grid
  std::vector<int> dimensions;
  std::vector<int> k_values;
  std::vector<VolatilityScheme> volatility_schemes;
  int pairs = 20;
  int n = 1000;

  // irrep_frequency
  int frequency_p = 4;
  int draws_per_graph = 10000;
  int max_edges = -1;  // -1: p(p+1)/2
  int max_tries = 1000000;

  // weak_irrep_impact
  int impact_n = 100;
  int impact_draws = 10;
  int impact_try_budget = 200000;
};

// Desk-scale defaults for a given kind.
ExperimentConfig default_experiment_config(ExperimentKind kind);

// Parses and validates a JSON config; violations raise IoError naming the
// offending location by JSON pointer (e.g. "/sample_sizes/2").  Absent
// fields fall back to the defaults above.
ExperimentConfig parse_experiment_config(const std::string& json_text);

// One row of a result table.  keys identify the cell (model, n, scheme,
// graph, ...), values hold the aggregated metrics (means over successful
// replications), and series carries the raw per-replication numbers, which
// go to the JSON result but not the CSV.
struct ExperimentCell {
  std::vector<std::pair<std::string, std::string>> keys;
  int replications = 0;
  int failures = 0;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, std::vector<double>>> series;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::string csv_name;
  std::vector<ExperimentCell> cells;
  double runtime_seconds = 0.0;
};

// Cell lookup by exact key set; nullptr when absent.
const ExperimentCell* find_cell(
    const ExperimentResult& result,
    const std::vector<std::pair<std::string, std::string>>& keys);

// Value lookup inside a cell; throws std::out_of_range for unknown names.
double cell_value(const ExperimentCell& cell, const std::string& name);

// Equilibrium recovery study on the 5-node path drift, the fixed cycle
// completion, and random cycle completions: per model and sample size,
// regularization paths are fitted on sampled covariances (the population one
// for n = inf) and the best accuracy, best F1, and curve areas are averaged
// over replications.  Writes fig3.csv.
ExperimentResult run_path_cycle(const ExperimentConfig& config);

// Irrepresentability constant of the p-chain drift -diag(d) + e on the
// subdiagonal, over the e grid, for the two diagonals; singular cells are
// counted as failures.  Writes fig4.csv.
ExperimentResult run_irrep_curve(const Vector& d_forward,
                                 const Vector& d_reverse,
                                 const std::vector<double>& e_grid);

// Recovery metrics across dimension, edge density k/p, and the four
// volatility schemes, fitting with volatility 2I regardless of the scheme
// that generated the data.  Writes fig5.csv.
ExperimentResult run_robustness_grid(const ExperimentConfig& config);

// Frequency of the strong and weak irrepresentability conditions under the
// uniform distribution on stable matrices, per connected graph on
// frequency_p nodes.  Writes fig6.csv.
ExperimentResult run_irrep_frequency(const ExperimentConfig& config);

// Recovery quality on connected 4-node DAGs for drifts that satisfy the
// weak condition versus unconstrained drifts, n = impact_n per draw.
// Writes fig10_11.csv.
ExperimentResult run_weak_irrep_impact(const ExperimentConfig& config);

// Dispatch on config.kind (kCustom is rejected: nothing is built in for it).
ExperimentResult run_experiment(const ExperimentConfig& config);

// fig*.csv plus result.json (config echo, cells with raw series, runtime).
void write_experiment_result(const ExperimentResult& result,
                             const std::string& output_dir);

}  // namespace lyalasso
