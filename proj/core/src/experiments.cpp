#include "lyalasso/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "lyalasso/graphs.hpp"
#include "lyalasso/io.hpp"
#include "lyalasso/irrep.hpp"
#include "lyalasso/linalg.hpp"

namespace lyalasso {

namespace {

using nlohmann::ordered_json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_number(double value) {
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::string format_sample_size(double n) {
  if (std::isinf(n)) return "inf";
  return std::to_string(static_cast<long long>(n));
}

[[noreturn]] void config_error(const std::string& pointer,
                               const std::string& what) {
  throw IoError("config: " + pointer + ": " + what);
}

// ---------------------------------------------------------------------------
// Config parsing

class ConfigReader {
 public:
  explicit ConfigReader(const ordered_json& root) : root_(root) {}

  void check_known_keys(const std::vector<std::string>& known) const {
    for (const auto& item : root_.items()) {
      if (std::find(known.begin(), known.end(), item.key()) == known.end())
        config_error("/" + item.key(), "unknown field");
    }
  }

  bool has(const std::string& key) const { return root_.contains(key); }

  int get_int(const std::string& key, int fallback, int min_value) const {
    if (!root_.contains(key)) return fallback;
    const auto& j = root_.at(key);
    if (!j.is_number_integer())
      config_error("/" + key, "expected an integer");
    const long long v = j.get<long long>();
    if (v < min_value)
      config_error("/" + key,
                   "must be at least " + std::to_string(min_value));
    return static_cast<int>(v);
  }

  double get_positive_double(const std::string& key, double fallback) const {
    if (!root_.contains(key)) return fallback;
    const auto& j = root_.at(key);
    if (!j.is_number()) config_error("/" + key, "expected a number");
    const double v = j.get<double>();
    if (!(v > 0.0)) config_error("/" + key, "must be positive");
    return v;
  }

  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const {
    if (!root_.contains(key)) return fallback;
    const auto& j = root_.at(key);
    if (!j.is_number_integer() || j.get<long long>() < 0)
      config_error("/" + key, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
  }

  std::string get_string(const std::string& key,
                         const std::string& fallback) const {
    if (!root_.contains(key)) return fallback;
    const auto& j = root_.at(key);
    if (!j.is_string()) config_error("/" + key, "expected a string");
    return j.get<std::string>();
  }

  std::vector<double> get_positive_doubles(
      const std::string& key, const std::vector<double>& fallback) const {
    if (!root_.contains(key)) return fallback;
    const auto& j = root_.at(key);
    if (!j.is_array() || j.empty())
      config_error("/" + key, "expected a nonempty array");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto& item = j[i];
      if (!item.is_number())
        config_error("/" + key + "/" + std::to_string(i), "expected a number");
      const double v = item.get<double>();
      if (!(v > 0.0))
        config_error("/" + key + "/" + std::to_string(i), "must be positive");
      out.push_back(v);
    }
    return out;
  }

  std::vector<int> get_positive_ints(const std::string& key,
                                     const std::vector<int>& fallback) const {
    if (!root_.contains(key)) return fallback;
    const auto& j = root_.at(key);
    if (!j.is_array() || j.empty())
      config_error("/" + key, "expected a nonempty array");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto& item = j[i];
      if (!item.is_number_integer() || item.get<long long>() < 1)
        config_error("/" + key + "/" + std::to_string(i),
                     "expected a positive integer");
      out.push_back(item.get<int>());
    }
    return out;
  }

  // Entries are positive numbers, "inf", or 0 (both meaning the population
  // covariance).
  std::vector<double> get_sample_sizes(
      const std::string& key, const std::vector<double>& fallback) const {
    if (!root_.contains(key)) return fallback;
    const auto& j = root_.at(key);
    if (!j.is_array() || j.empty())
      config_error("/" + key, "expected a nonempty array");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto& item = j[i];
      const std::string pointer = "/" + key + "/" + std::to_string(i);
      if (item.is_string()) {
        if (item.get<std::string>() != "inf")
          config_error(pointer, "expected a number or \"inf\"");
        out.push_back(kInf);
      } else if (item.is_number()) {
        const double v = item.get<double>();
        if (v == 0.0)
          out.push_back(kInf);
        else if (v > 0.0)
          out.push_back(v);
        else
          config_error(pointer, "must be positive, 0, or \"inf\"");
      } else {
        config_error(pointer, "expected a number or \"inf\"");
      }
    }
    return out;
  }

  std::vector<VolatilityScheme> get_schemes(
      const std::string& key,
      const std::vector<VolatilityScheme>& fallback) const {
    if (!root_.contains(key)) return fallback;
    const auto& j = root_.at(key);
    if (!j.is_array() || j.empty())
      config_error("/" + key, "expected a nonempty array");
    std::vector<VolatilityScheme> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto& item = j[i];
      const std::string pointer = "/" + key + "/" + std::to_string(i);
      if (!item.is_string()) config_error(pointer, "expected a scheme name");
      try {
        out.push_back(parse_volatility_scheme(item.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        config_error(pointer, e.what());
      }
    }
    return out;
  }

 private:
  const ordered_json& root_;
};

// ---------------------------------------------------------------------------
// Shared scoring

struct PathScores {
  double max_acc = kNan;
  double max_f1 = kNan;
  double auc_roc = kNan;
  double au_pr = kNan;
  double mean_tpr = kNan;
  double mean_fpr = kNan;
};

PathScores score_path(const LassoPath& path, const SupportSet& truth,
                      MetricScope scope) {
  PathScores scores;
  double tpr_sum = 0.0, fpr_sum = 0.0;
  int tpr_count = 0, fpr_count = 0;
  for (std::size_t k = 0; k < path.solutions.size(); ++k) {
    if (k < path.failed.size() && path.failed[k]) continue;
    const MetricRecord r = metric_record(
        confusion(support_of(path.solutions[k].m_hat), truth, scope));
    if (r.acc_defined)
      scores.max_acc = std::isnan(scores.max_acc)
                           ? r.acc
                           : std::max(scores.max_acc, r.acc);
    if (r.f1_defined)
      scores.max_f1 =
          std::isnan(scores.max_f1) ? r.f1 : std::max(scores.max_f1, r.f1);
    if (r.tpr_defined) {
      tpr_sum += r.tpr;
      ++tpr_count;
    }
    if (r.fpr_defined) {
      fpr_sum += r.fpr;
      ++fpr_count;
    }
  }
  const CurveAucs aucs = curve_aucs(path, truth, scope);
  scores.auc_roc = aucs.auc_roc;
  scores.au_pr = aucs.au_pr;
  if (tpr_count > 0) scores.mean_tpr = tpr_sum / tpr_count;
  if (fpr_count > 0) scores.mean_fpr = fpr_sum / fpr_count;
  return scores;
}

// Mean over successes; NaN when there were none.
double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return kNan;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

// ---------------------------------------------------------------------------
// Model builders

Matrix five_path_drift() {
  Matrix m = Matrix::Zero(5, 5);
  m.diagonal() << -2.0, -3.0, -4.0, -5.0, -6.0;
  for (int i = 0; i < 4; ++i) m(i + 1, i) = 0.65;
  return m;
}

Matrix five_cycle_drift(double m15) {
  Matrix m = five_path_drift();
  m(0, 4) = m15;
  return m;
}

Matrix chain_drift(const Vector& d, double e) {
  const int p = static_cast<int>(d.size());
  Matrix m = Matrix::Zero(p, p);
  for (int i = 0; i < p; ++i) m(i, i) = -d[i];
  for (int i = 0; i + 1 < p; ++i) m(i + 1, i) = e;
  return m;
}

SupportSet chain_support(int p) {
  std::vector<Pair> pairs;
  for (int i = 0; i < p; ++i) pairs.push_back(Pair{i, i});
  for (int i = 0; i + 1 < p; ++i) pairs.push_back(Pair{i + 1, i});
  return SupportSet(p, std::move(pairs));
}

Matrix identity_volatility(int p) { return 2.0 * Matrix::Identity(p, p); }

// ---------------------------------------------------------------------------
// Result assembly

ordered_json config_json(const ExperimentConfig& c) {
  ordered_json j;
  j["kind"] = experiment_kind_name(c.kind);
  j["base_seed"] = c.base_seed;
  j["scope"] = metric_scope_name(c.scope);
  j["grid_size"] = c.grid_size;
  j["span"] = c.span;
  j["replications"] = c.replications;
  ordered_json sizes = ordered_json::array();
  for (double n : c.sample_sizes)
    if (std::isinf(n))
      sizes.push_back("inf");
    else
      sizes.push_back(n);
  j["sample_sizes"] = sizes;
  j["cycle_completions"] = c.cycle_completions;
  j["d_forward"] = c.d_forward;
  j["d_reverse"] = c.d_reverse;
  j["e_grid"] = c.e_grid;
  j["dimensions"] = c.dimensions;
  j["k_values"] = c.k_values;
  ordered_json schemes = ordered_json::array();
  for (VolatilityScheme s : c.volatility_schemes)
    schemes.push_back(volatility_scheme_name(s));
  j["volatility_schemes"] = schemes;
  j["pairs"] = c.pairs;
  j["n"] = c.n;
  j["frequency_p"] = c.frequency_p;
  j["draws_per_graph"] = c.draws_per_graph;
  j["max_edges"] = c.max_edges;
  j["max_tries"] = c.max_tries;
  j["impact_n"] = c.impact_n;
  j["impact_draws"] = c.impact_draws;
  j["impact_try_budget"] = c.impact_try_budget;
  return j;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "path_cycle") return ExperimentKind::kPathCycle;
  if (name == "irrep_curve") return ExperimentKind::kIrrepCurve;
  if (name == "robustness_grid") return ExperimentKind::kRobustnessGrid;
  if (name == "irrep_frequency") return ExperimentKind::kIrrepFrequency;
  if (name == "weak_irrep_impact") return ExperimentKind::kWeakIrrepImpact;
  if (name == "custom") return ExperimentKind::kCustom;
  throw std::invalid_argument("unknown experiment kind: " + name);
}

std::string experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kPathCycle: return "path_cycle";
    case ExperimentKind::kIrrepCurve: return "irrep_curve";
    case ExperimentKind::kRobustnessGrid: return "robustness_grid";
    case ExperimentKind::kIrrepFrequency: return "irrep_frequency";
    case ExperimentKind::kWeakIrrepImpact: return "weak_irrep_impact";
    case ExperimentKind::kCustom: return "custom";
  }
  throw std::invalid_argument("unknown experiment kind value");
}

ExperimentConfig default_experiment_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.sample_sizes = {100.0, 1000.0, 10000.0, kInf};
  c.d_forward = {0.5, 1.0, 1.5};
  c.d_reverse = {1.5, 1.0, 0.5};
  for (int k = 1; k <= 50; ++k) c.e_grid.push_back(0.01 * k);
  c.dimensions = {10, 15};
  c.k_values = {1, 2, 3, 4};
  c.volatility_schemes = {
      VolatilityScheme::kIdentity, VolatilityScheme::kRandomDiag,
      VolatilityScheme::kRandomMinDiag, VolatilityScheme::kRandomFull};
  return c;
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  ordered_json root;
  try {
    root = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) config_error("", "expected a JSON object");
  if (!root.contains("kind")) config_error("/kind", "required field missing");
  if (!root.at("kind").is_string())
    config_error("/kind", "expected a string");

  ExperimentKind kind;
  try {
    kind = parse_experiment_kind(root.at("kind").get<std::string>());
  } catch (const std::invalid_argument& e) {
    config_error("/kind", e.what());
  }

  ExperimentConfig c = default_experiment_config(kind);
  const ConfigReader reader(root);
  reader.check_known_keys(
      {"kind", "base_seed", "scope", "grid_size", "span", "replications",
       "sample_sizes", "cycle_completions", "d_forward", "d_reverse", "e_grid",
       "dimensions", "k_values", "volatility_schemes", "pairs", "n",
       "frequency_p", "draws_per_graph", "max_edges", "max_tries", "impact_n",
       "impact_draws", "impact_try_budget"});

  c.base_seed = reader.get_seed("base_seed", c.base_seed);
  try {
    c.scope = parse_metric_scope(
        reader.get_string("scope", metric_scope_name(c.scope)));
  } catch (const std::invalid_argument& e) {
    config_error("/scope", e.what());
  }
  c.grid_size = reader.get_int("grid_size", c.grid_size, 2);
  c.span = reader.get_positive_double("span", c.span);
  if (!(c.span > 1.0)) config_error("/span", "must exceed 1");
  c.replications = reader.get_int("replications", c.replications, 1);
  c.sample_sizes = reader.get_sample_sizes("sample_sizes", c.sample_sizes);
  c.cycle_completions =
      reader.get_int("cycle_completions", c.cycle_completions, 1);
  c.d_forward = reader.get_positive_doubles("d_forward", c.d_forward);
  c.d_reverse = reader.get_positive_doubles("d_reverse", c.d_reverse);
  c.e_grid = reader.get_positive_doubles("e_grid", c.e_grid);
  c.dimensions = reader.get_positive_ints("dimensions", c.dimensions);
  c.k_values = reader.get_positive_ints("k_values", c.k_values);
  c.volatility_schemes =
      reader.get_schemes("volatility_schemes", c.volatility_schemes);
  c.pairs = reader.get_int("pairs", c.pairs, 1);
  c.n = reader.get_int("n", c.n, 1);
  c.frequency_p = reader.get_int("frequency_p", c.frequency_p, 2);
  if (c.frequency_p > 5) config_error("/frequency_p", "must be at most 5");
  c.draws_per_graph = reader.get_int("draws_per_graph", c.draws_per_graph, 1);
  c.max_edges = reader.get_int("max_edges", c.max_edges, -1);
  c.max_tries = reader.get_int("max_tries", c.max_tries, 1);
  c.impact_n = reader.get_int("impact_n", c.impact_n, 1);
  c.impact_draws = reader.get_int("impact_draws", c.impact_draws, 1);
  c.impact_try_budget =
      reader.get_int("impact_try_budget", c.impact_try_budget, 1);
  return c;
}

const ExperimentCell* find_cell(
    const ExperimentResult& result,
    const std::vector<std::pair<std::string, std::string>>& keys) {
  for (const ExperimentCell& cell : result.cells) {
    if (cell.keys == keys) return &cell;
  }
  return nullptr;
}

double cell_value(const ExperimentCell& cell, const std::string& name) {
  for (const auto& [key, value] : cell.values) {
    if (key == name) return value;
  }
  throw std::out_of_range("cell_value: no value named " + name);
}

// ---------------------------------------------------------------------------
// path_cycle

ExperimentResult run_path_cycle(const ExperimentConfig& config) {
  const Stopwatch watch;
  ExperimentResult result;
  result.config = config;
  result.csv_name = "fig3.csv";

  const std::vector<std::string> model_names = {"path", "cycle_fixed",
                                                "cycle_random"};
  for (std::size_t n_idx = 0; n_idx < config.sample_sizes.size(); ++n_idx) {
    const double n = config.sample_sizes[n_idx];
    const bool population = std::isinf(n);
    for (std::size_t model = 0; model < model_names.size(); ++model) {
      // The population cell is deterministic for the fixed models, so one
      // replication carries it; random completions keep their full count.
      int reps = model == 2 ? config.cycle_completions : config.replications;
      if (population && model != 2) reps = 1;

      std::vector<double> accs, f1s, aucs, auprs;
      int failures = 0;
      for (int rep = 0; rep < reps; ++rep) {
        const std::uint64_t stream = (static_cast<std::uint64_t>(model) << 48) |
                                     (static_cast<std::uint64_t>(n_idx) << 32) |
                                     static_cast<std::uint64_t>(rep);
        RngStream rng(RngSeed{config.base_seed, stream});
        Matrix m;
        switch (model) {
          case 0: m = five_path_drift(); break;
          case 1: m = five_cycle_drift(0.65); break;
          default: m = five_cycle_drift(rng.uniform(0.5, 1.0)); break;
        }
        try {
          const Matrix c2 = identity_volatility(5);
          const Matrix sigma_star = solve_lyapunov(m, c2);
          const Matrix sigma_hat =
              population
                  ? sigma_star
                  : sample_covariance(sample_gaussian(
                        sigma_star, static_cast<int>(n), rng));
          const GramSystem gram = make_gram_system(sigma_hat, c2);
          const LassoPath path =
              fit_path(gram, config.grid_size, config.span);
          const PathScores s =
              score_path(path, support_of(m), config.scope);
          accs.push_back(s.max_acc);
          f1s.push_back(s.max_f1);
          aucs.push_back(s.auc_roc);
          auprs.push_back(s.au_pr);
        } catch (const NumericalError&) {
          ++failures;
        }
      }

      ExperimentCell cell;
      cell.keys = {{"model", model_names[model]},
                   {"n", format_sample_size(n)}};
      cell.replications = reps;
      cell.failures = failures;
      cell.values = {{"max_acc_mean", mean_of(accs)},
                     {"max_f1_mean", mean_of(f1s)},
                     {"auc_roc_mean", mean_of(aucs)},
                     {"au_pr_mean", mean_of(auprs)}};
      cell.series = {{"max_acc", accs},
                     {"max_f1", f1s},
                     {"auc_roc", aucs},
                     {"au_pr", auprs}};
      result.cells.push_back(std::move(cell));
    }
  }
  result.runtime_seconds = watch.seconds();
  return result;
}

// ---------------------------------------------------------------------------
// irrep_curve

ExperimentResult run_irrep_curve(const Vector& d_forward,
                                 const Vector& d_reverse,
                                 const std::vector<double>& e_grid) {
  if (d_forward.size() < 2 || d_reverse.size() != d_forward.size())
    throw std::invalid_argument(
        "run_irrep_curve: diagonals must agree in length (>= 2)");
  if (e_grid.empty())
    throw std::invalid_argument("run_irrep_curve: empty e grid");

  const Stopwatch watch;
  ExperimentResult result;
  result.config = default_experiment_config(ExperimentKind::kIrrepCurve);
  result.config.d_forward.assign(d_forward.begin(), d_forward.end());
  result.config.d_reverse.assign(d_reverse.begin(), d_reverse.end());
  result.config.e_grid = e_grid;
  result.csv_name = "fig4.csv";

  const int p = static_cast<int>(d_forward.size());
  const SupportSet support = chain_support(p);
  const Matrix c2 = identity_volatility(p);
  for (double e : e_grid) {
    ExperimentCell cell;
    cell.keys = {{"e", format_number(e)}};
    cell.replications = 1;
    double rho_fwd = kNan;
    double rho_rev = kNan;
    // The support is the chain graph's, so the e -> 0 limit stays the
    // object whose neighborhood the closed form describes.
    const IrrepReport fwd =
        irrep_constant(chain_drift(d_forward, e), c2, &support);
    if (fwd.gamma_ss_invertible)
      rho_fwd = *fwd.rho;
    else
      ++cell.failures;
    const IrrepReport rev =
        irrep_constant(chain_drift(d_reverse, e), c2, &support);
    if (rev.gamma_ss_invertible)
      rho_rev = *rev.rho;
    else
      ++cell.failures;
    cell.values = {{"rho_forward", rho_fwd}, {"rho_reverse", rho_rev}};
    result.cells.push_back(std::move(cell));
  }
  result.runtime_seconds = watch.seconds();
  return result;
}

// ---------------------------------------------------------------------------
// robustness_grid

ExperimentResult run_robustness_grid(const ExperimentConfig& config) {
  const Stopwatch watch;
  ExperimentResult result;
  result.config = config;
  result.csv_name = "fig5.csv";

  std::uint64_t cell_index = 0;
  for (int p : config.dimensions) {
    for (int k : config.k_values) {
      for (VolatilityScheme scheme : config.volatility_schemes) {
        std::vector<double> accs, f1s, aucs, auprs;
        int failures = 0;
        for (int rep = 0; rep < config.pairs; ++rep) {
          const std::uint64_t stream =
              (cell_index << 32) | static_cast<std::uint64_t>(rep);
          RngStream rng(RngSeed{config.base_seed, stream});
          try {
            const Matrix m = sample_stable_dominant(
                p, static_cast<double>(k) / p, rng);
            const Matrix c = sample_volatility(scheme, p, rng);
            const Matrix sigma_star = solve_lyapunov(m, c);
            const Matrix sigma_hat = sample_covariance(
                sample_gaussian(sigma_star, config.n, rng));
            // Fitting always assumes volatility 2I; the scheme only shapes
            // the data, which is the robustness being measured.
            const GramSystem gram =
                make_gram_system(sigma_hat, identity_volatility(p));
            const LassoPath path =
                fit_path(gram, config.grid_size, config.span);
            const PathScores s =
                score_path(path, support_of(m), config.scope);
            accs.push_back(s.max_acc);
            f1s.push_back(s.max_f1);
            aucs.push_back(s.auc_roc);
            auprs.push_back(s.au_pr);
          } catch (const NumericalError&) {
            ++failures;
          }
        }

        ExperimentCell cell;
        cell.keys = {{"p", std::to_string(p)},
                     {"k", std::to_string(k)},
                     {"scheme", volatility_scheme_name(scheme)}};
        cell.replications = config.pairs;
        cell.failures = failures;
        cell.values = {{"max_acc_mean", mean_of(accs)},
                       {"max_f1_mean", mean_of(f1s)},
                       {"auc_roc_mean", mean_of(aucs)},
                       {"au_pr_mean", mean_of(auprs)}};
        cell.series = {{"max_acc", accs},
                       {"max_f1", f1s},
                       {"auc_roc", aucs},
                       {"au_pr", auprs}};
        result.cells.push_back(std::move(cell));
        ++cell_index;
      }
    }
  }
  result.runtime_seconds = watch.seconds();
  return result;
}

// ---------------------------------------------------------------------------
// irrep_frequency

ExperimentResult run_irrep_frequency(const ExperimentConfig& config) {
  const Stopwatch watch;
  ExperimentResult result;
  result.config = config;
  result.csv_name = "fig6.csv";

  const std::vector<Digraph> graphs =
      enumerate_connected_digraphs(config.frequency_p, config.max_edges);
  const Matrix c2 = identity_volatility(config.frequency_p);

  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Digraph& g = graphs[gi];
    const SupportSet support = graph_support(g);
    RngStream rng(RngSeed{config.base_seed, static_cast<std::uint64_t>(gi)});

    int strong = 0, weak = 0, singular = 0, sampled = 0, evaluated = 0;
    long long tries_total = 0;
    for (int draw = 0; draw < config.draws_per_graph; ++draw) {
      UniformDraw ud;
      try {
        ud = sample_stable_uniform(support, rng, config.max_tries);
      } catch (const NumericalError&) {
        break;
      }
      tries_total += ud.tries;
      ++sampled;
      IrrepReport report;
      try {
        report = irrep_constant(ud.m, c2, &support);
      } catch (const NumericalError&) {
        continue;
      }
      ++evaluated;
      if (!report.gamma_ss_invertible) {
        ++singular;
        continue;
      }
      if (*report.rho < 1.0) ++strong;
      if (*report.weak_rho < 1.0) ++weak;
    }

    ExperimentCell cell;
    cell.keys = {{"graph", graph_label(g)}};
    cell.replications = config.draws_per_graph;
    cell.failures = config.draws_per_graph - evaluated;
    const double denom = evaluated > 0 ? evaluated : kNan;
    cell.values = {
        {"edges", static_cast<double>(g.edges.size())},
        {"is_dag", is_dag(g) ? 1.0 : 0.0},
        {"strong_count", static_cast<double>(strong)},
        {"weak_count", static_cast<double>(weak)},
        {"singular_count", static_cast<double>(singular)},
        {"strong_freq", strong / denom},
        {"weak_freq", weak / denom},
        {"mean_tries",
         sampled > 0 ? static_cast<double>(tries_total) / sampled : kNan},
    };
    result.cells.push_back(std::move(cell));
  }
  result.runtime_seconds = watch.seconds();
  return result;
}

// ---------------------------------------------------------------------------
// weak_irrep_impact

ExperimentResult run_weak_irrep_impact(const ExperimentConfig& config) {
  const Stopwatch watch;
  ExperimentResult result;
  result.config = config;
  result.csv_name = "fig10_11.csv";

  std::vector<Digraph> dags;
  for (Digraph& g : enumerate_connected_digraphs(4, -1)) {
    if (is_dag(g)) dags.push_back(std::move(g));
  }
  const Matrix c2 = identity_volatility(4);

  for (std::size_t gi = 0; gi < dags.size(); ++gi) {
    const Digraph& g = dags[gi];
    const SupportSet support = graph_support(g);
    for (int group = 0; group < 2; ++group) {
      const bool weak_only = group == 0;
      const std::uint64_t stream =
          (static_cast<std::uint64_t>(group) << 56) |
          static_cast<std::uint64_t>(gi);
      RngStream rng(RngSeed{config.base_seed, stream});

      std::vector<double> tprs, fprs, accs, f1s, aucs;
      long long tries_used = 0;
      int obtained = 0;
      int fit_failures = 0;
      while (obtained < config.impact_draws &&
             tries_used < config.impact_try_budget) {
        const int budget_left =
            config.impact_try_budget - static_cast<int>(tries_used);
        UniformDraw ud;
        try {
          ud = sample_stable_uniform(support, rng, budget_left);
        } catch (const NumericalError&) {
          tries_used = config.impact_try_budget;
          break;
        }
        tries_used += ud.tries;
        if (weak_only) {
          IrrepReport report;
          try {
            report = irrep_constant(ud.m, c2, &support);
          } catch (const NumericalError&) {
            continue;
          }
          if (!report.gamma_ss_invertible || !(*report.weak_rho < 1.0))
            continue;
        }
        ++obtained;
        try {
          const Matrix sigma_star = solve_lyapunov(ud.m, c2);
          const Matrix sigma_hat = sample_covariance(
              sample_gaussian(sigma_star, config.impact_n, rng));
          const GramSystem gram = make_gram_system(sigma_hat, c2);
          const LassoPath path =
              fit_path(gram, config.grid_size, config.span);
          const PathScores s = score_path(path, support, config.scope);
          tprs.push_back(s.mean_tpr);
          fprs.push_back(s.mean_fpr);
          accs.push_back(s.max_acc);
          f1s.push_back(s.max_f1);
          aucs.push_back(s.auc_roc);
        } catch (const NumericalError&) {
          ++fit_failures;
        }
      }

      ExperimentCell cell;
      cell.keys = {{"graph", graph_label(g)},
                   {"group", weak_only ? "weak" : "unconstrained"}};
      cell.replications = config.impact_draws;
      cell.failures = (config.impact_draws - obtained) + fit_failures;
      cell.values = {
          {"edges", static_cast<double>(g.edges.size())},
          {"mean_tpr", mean_of(tprs)},
          {"mean_fpr", mean_of(fprs)},
          {"max_acc_mean", mean_of(accs)},
          {"max_f1_mean", mean_of(f1s)},
          {"auc_roc_mean", mean_of(aucs)},
          {"tries", static_cast<double>(tries_used)},
          {"accepted", static_cast<double>(obtained)},
      };
      cell.series = {{"max_acc", accs}, {"max_f1", f1s}, {"auc_roc", aucs}};
      result.cells.push_back(std::move(cell));
    }
  }
  result.runtime_seconds = watch.seconds();
  return result;
}

// ---------------------------------------------------------------------------

ExperimentResult run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::kPathCycle:
      return run_path_cycle(config);
    case ExperimentKind::kIrrepCurve: {
      Vector d_fwd(static_cast<Eigen::Index>(config.d_forward.size()));
      Vector d_rev(static_cast<Eigen::Index>(config.d_reverse.size()));
      for (std::size_t i = 0; i < config.d_forward.size(); ++i)
        d_fwd[static_cast<Eigen::Index>(i)] = config.d_forward[i];
      for (std::size_t i = 0; i < config.d_reverse.size(); ++i)
        d_rev[static_cast<Eigen::Index>(i)] = config.d_reverse[i];
      ExperimentResult result = run_irrep_curve(d_fwd, d_rev, config.e_grid);
      result.config = config;
      return result;
    }
    case ExperimentKind::kRobustnessGrid:
      return run_robustness_grid(config);
    case ExperimentKind::kIrrepFrequency:
      return run_irrep_frequency(config);
    case ExperimentKind::kWeakIrrepImpact:
      return run_weak_irrep_impact(config);
    case ExperimentKind::kCustom:
      throw std::invalid_argument(
          "run_experiment: kind \"custom\" has no built-in runner");
  }
  throw std::invalid_argument("run_experiment: unknown kind value");
}

void write_experiment_result(const ExperimentResult& result,
                             const std::string& output_dir) {
  std::filesystem::create_directories(output_dir);
  const std::filesystem::path dir(output_dir);

  // CSV: keys, replication bookkeeping, aggregated values.
  std::ofstream csv(dir / result.csv_name);
  if (!csv)
    throw IoError((dir / result.csv_name).string() +
                  ": cannot open file for writing");
  if (!result.cells.empty()) {
    const ExperimentCell& first = result.cells.front();
    bool started = false;
    for (const auto& [key, value] : first.keys) {
      csv << (started ? "," : "") << key;
      started = true;
    }
    csv << ",replications,failures";
    for (const auto& [name, value] : first.values) csv << ',' << name;
    csv << '\n';
    for (const ExperimentCell& cell : result.cells) {
      started = false;
      for (const auto& [key, value] : cell.keys) {
        csv << (started ? "," : "") << value;
        started = true;
      }
      csv << ',' << cell.replications << ',' << cell.failures;
      for (const auto& [name, value] : cell.values)
        csv << ',' << format_number(value);
      csv << '\n';
    }
  }
  if (!csv) throw IoError("experiment CSV write failed");
  csv.close();

  ordered_json doc;
  doc["kind"] = experiment_kind_name(result.config.kind);
  doc["config"] = config_json(result.config);
  doc["runtime_seconds"] = result.runtime_seconds;
  ordered_json cells = ordered_json::array();
  for (const ExperimentCell& cell : result.cells) {
    ordered_json jc;
    ordered_json keys;
    for (const auto& [key, value] : cell.keys) keys[key] = value;
    jc["keys"] = keys;
    jc["replications"] = cell.replications;
    jc["failures"] = cell.failures;
    ordered_json values;
    for (const auto& [name, value] : cell.values) values[name] = value;
    jc["values"] = values;
    if (!cell.series.empty()) {
      ordered_json series;
      for (const auto& [name, xs] : cell.series) series[name] = xs;
      jc["series"] = series;
    }
    cells.push_back(std::move(jc));
  }
  doc["cells"] = std::move(cells);

  std::ofstream json_out(dir / "result.json");
  if (!json_out)
    throw IoError((dir / "result.json").string() +
                  ": cannot open file for writing");
  json_out << doc.dump(2) << '\n';
  if (!json_out) throw IoError("experiment JSON write failed");
}

}  // namespace lyalasso
