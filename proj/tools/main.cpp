// Command-line front end: simulate models and data, fit regularization
// paths, report irrepresentability diagnostics, select a graph by EBIC,
// score estimates, and run the replication studies.
//
// Exit codes: 0 success, 1 usage or input error, 2 numerical failure.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "lyalasso/experiments.hpp"
#include "lyalasso/gram.hpp"
#include "lyalasso/graphs.hpp"
#include "lyalasso/io.hpp"
#include "lyalasso/irrep.hpp"
#include "lyalasso/lasso.hpp"
#include "lyalasso/likelihood.hpp"
#include "lyalasso/linalg.hpp"
#include "lyalasso/metrics.hpp"
#include "lyalasso/rng.hpp"
#include "lyalasso/simulate.hpp"

namespace {

using namespace lyalasso;

std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string fmt(int x) { return std::to_string(x); }
std::string fmt(std::uint64_t x) { return std::to_string(x); }
std::string fmt(bool x) { return x ? "true" : "false"; }

std::filesystem::path prepare_output_dir(const std::string& dir) {
  std::filesystem::path out(dir);
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw IoError(dir + ": cannot create output directory");
  return out;
}

// A volatility argument is a scheme name (identity, random_diag,
// random_min_diag, random_full) or a path to a square CSV matrix.  Sampled
// schemes draw from the given stream.
Matrix resolve_volatility(const std::string& arg, int p, RngSeed seed) {
  try {
    const VolatilityScheme scheme = parse_volatility_scheme(arg);
    RngStream rng(seed);
    return sample_volatility(scheme, p, rng);
  } catch (const std::invalid_argument&) {
  }
  const Matrix c = read_square_matrix_csv(arg);
  if (c.rows() != p) {
    std::ostringstream msg;
    msg << arg << ": volatility is " << c.rows() << "x" << c.cols()
        << " but the model has " << p << " variables";
    throw IoError(msg.str());
  }
  return c;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  int p = 0;
  int n = 0;
  double density = 0.5;
  std::string volatility = "identity";
  std::uint64_t seed = 0;
  std::string output_dir = ".";
};

int cmd_simulate(const SimulateOptions& opt) {
  const auto out = prepare_output_dir(opt.output_dir);

  RngStream drift_rng(RngSeed{opt.seed, 0});
  const Matrix m = sample_stable_dominant(opt.p, opt.density, drift_rng);
  const Matrix c = resolve_volatility(opt.volatility, opt.p,
                                      RngSeed{opt.seed, 1});
  const Matrix sigma = solve_lyapunov(m, c);
  RngStream data_rng(RngSeed{opt.seed, 2});
  const Dataset data = sample_gaussian(sigma, opt.n, data_rng);
  const std::vector<std::string> names = default_names(opt.p);

  write_csv((out / "drift.csv").string(), names, m);
  write_csv((out / "volatility.csv").string(), names, c);
  write_csv((out / "sigma.csv").string(), names, sigma);
  write_csv((out / "data.csv").string(), names, data.rows);
  write_metadata((out / "metadata.json").string(),
                 {{"command", "simulate"},
                  {"p", fmt(opt.p)},
                  {"n", fmt(opt.n)},
                  {"density", fmt(opt.density)},
                  {"volatility", opt.volatility},
                  {"seed", fmt(opt.seed)}});
  return 0;
}

// ---------------------------------------------------------------------------
// fit

struct FitOptions {
  std::string input;
  bool covariance = false;
  bool standardize = false;
  std::string truth;
  std::string volatility = "identity";
  int grid_size = 100;
  double span = 1e4;
  std::string scope = "offdiag";
  std::uint64_t seed = 0;
  std::string output_dir = ".";
};

struct CovarianceInput {
  Matrix sigma_hat;
  std::vector<std::string> names;
  int n = 0;  // 0 when the input was already a covariance
};

CovarianceInput load_covariance(const std::string& input, bool covariance,
                                bool standardize) {
  CovarianceInput in;
  if (covariance) {
    in.sigma_hat = read_square_matrix_csv(input);
    in.names = default_names(static_cast<int>(in.sigma_hat.rows()));
  } else {
    IngestResult ingest = ingest_csv(input, standardize);
    in.sigma_hat = sample_covariance(ingest.data);
    in.names = std::move(ingest.names);
    in.n = ingest.data.n;
  }
  return in;
}

int cmd_fit(const FitOptions& opt) {
  const MetricScope scope = parse_metric_scope(opt.scope);
  const auto out = prepare_output_dir(opt.output_dir);
  const CovarianceInput in =
      load_covariance(opt.input, opt.covariance, opt.standardize);
  const int p = static_cast<int>(in.sigma_hat.rows());
  const Matrix c = resolve_volatility(opt.volatility, p, RngSeed{opt.seed, 1});

  const LassoPath path =
      fit_path(make_gram_system(in.sigma_hat, c), opt.grid_size, opt.span);
  const int grid = static_cast<int>(path.lambdas.size());

  // Per-lambda estimates, one coefficient column per matrix entry.
  std::vector<std::string> est_cols = {"lambda",     "failed",
                                       "converged",  "iterations",
                                       "kkt_residual", "objective"};
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < p; ++i)
      est_cols.push_back("m_" + std::to_string(i + 1) + "_" +
                         std::to_string(j + 1));
  Matrix est(grid, static_cast<int>(est_cols.size()));
  for (int k = 0; k < grid; ++k) {
    const LassoSolution& sol = path.solutions[k];
    est(k, 0) = path.lambdas[k];
    est(k, 1) = path.failed[k] ? 1.0 : 0.0;
    est(k, 2) = sol.converged ? 1.0 : 0.0;
    est(k, 3) = sol.iterations;
    est(k, 4) = sol.kkt_residual;
    est(k, 5) = sol.objective;
    est.row(k).segment(6, p * p) = vec(sol.m_hat).transpose();
  }
  write_csv((out / "path_estimates.csv").string(), est_cols, est);

  // Distinct supports along the path, first-occurrence order.
  std::vector<SupportSet> distinct;
  Matrix supp(grid, 3);
  for (int k = 0; k < grid; ++k) {
    const SupportSet s = support_of(path.solutions[k].m_hat);
    int id = -1;
    for (std::size_t d = 0; d < distinct.size(); ++d)
      if (distinct[d] == s) {
        id = static_cast<int>(d);
        break;
      }
    if (id < 0) {
      id = static_cast<int>(distinct.size());
      distinct.push_back(s);
    }
    supp(k, 0) = path.lambdas[k];
    supp(k, 1) = static_cast<double>(confusion(s, s, scope).tp);
    supp(k, 2) = id;
  }
  write_csv((out / "supports.csv").string(),
            {"lambda", "selected_entries", "distinct_id"}, supp);

  if (!opt.truth.empty()) {
    const Matrix truth_m = read_square_matrix_csv(opt.truth);
    if (truth_m.rows() != p)
      throw IoError(opt.truth + ": truth dimension does not match the data");
    const SupportSet truth = support_of(truth_m);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    Matrix table(grid, 10);
    double max_acc = 0.0, max_f1 = 0.0;
    for (int k = 0; k < grid; ++k) {
      const Confusion conf =
          confusion(support_of(path.solutions[k].m_hat), truth, scope);
      const MetricRecord r = metric_record(conf);
      table(k, 0) = path.lambdas[k];
      table(k, 1) = conf.tp;
      table(k, 2) = conf.fp;
      table(k, 3) = conf.tn;
      table(k, 4) = conf.fn;
      table(k, 5) = r.tpr_defined ? r.tpr : nan;
      table(k, 6) = r.fpr_defined ? r.fpr : nan;
      table(k, 7) = r.acc_defined ? r.acc : nan;
      table(k, 8) = r.f1_defined ? r.f1 : nan;
      table(k, 9) = r.precision_defined ? r.precision : nan;
      if (!path.failed[k] && r.acc_defined) max_acc = std::max(max_acc, r.acc);
      if (!path.failed[k] && r.f1_defined) max_f1 = std::max(max_f1, r.f1);
    }
    write_csv((out / "metrics.csv").string(),
              {"lambda", "tp", "fp", "tn", "fn", "tpr", "fpr", "acc", "f1",
               "precision"},
              table);

    const CurveAucs aucs = curve_aucs(path, truth, scope);
    Matrix summary(1, 4);
    summary << max_acc, max_f1, aucs.auc_roc, aucs.au_pr;
    write_csv((out / "summary.csv").string(),
              {"max_acc", "max_f1", "auc_roc", "au_pr"}, summary);
  }

  write_metadata((out / "metadata.json").string(),
                 {{"command", "fit"},
                  {"input", opt.input},
                  {"covariance", fmt(opt.covariance)},
                  {"standardize", fmt(opt.standardize)},
                  {"truth", opt.truth},
                  {"volatility", opt.volatility},
                  {"grid_size", fmt(opt.grid_size)},
                  {"span", fmt(opt.span)},
                  {"scope", opt.scope},
                  {"seed", fmt(opt.seed)},
                  {"n", fmt(in.n)}});
  return 0;
}

// ---------------------------------------------------------------------------
// irrep

struct IrrepOptions {
  std::string input;
  std::string volatility = "identity";
  std::uint64_t seed = 0;
  std::string output_dir = ".";
};

int cmd_irrep(const IrrepOptions& opt) {
  const auto out = prepare_output_dir(opt.output_dir);
  const Matrix m = read_square_matrix_csv(opt.input);
  const int p = static_cast<int>(m.rows());
  const Matrix c = resolve_volatility(opt.volatility, p, RngSeed{opt.seed, 1});
  const IrrepReport report = irrep_constant(m, c);

  std::ostringstream json;
  json << "{\n";
  json << "  \"p\": " << p << ",\n";
  json << "  \"edges\": " << confusion(support_of(m), support_of(m)).tp
       << ",\n";
  json << "  \"gamma_ss_invertible\": "
       << (report.gamma_ss_invertible ? "true" : "false") << ",\n";
  json << "  \"rcond\": " << fmt(report.rcond) << ",\n";
  json << "  \"rho\": " << (report.rho ? fmt(*report.rho) : "null") << ",\n";
  json << "  \"weak_rho\": "
       << (report.weak_rho ? fmt(*report.weak_rho) : "null") << ",\n";
  json << "  \"c_gamma\": "
       << (report.c_gamma ? fmt(*report.c_gamma) : "null") << ",\n";
  json << "  \"c_m\": " << fmt(report.c_m) << ",\n";
  json << "  \"c_sigma\": " << fmt(report.c_sigma) << ",\n";
  json << "  \"c_c\": " << fmt(report.c_c) << "\n";
  json << "}\n";
  std::ofstream file(out / "irrep.json");
  file << json.str();
  if (!file) throw IoError((out / "irrep.json").string() + ": write failed");

  write_metadata((out / "metadata.json").string(),
                 {{"command", "irrep"},
                  {"input", opt.input},
                  {"volatility", opt.volatility},
                  {"seed", fmt(opt.seed)}});
  return 0;
}

// ---------------------------------------------------------------------------
// ebic

struct EbicOptions {
  std::string input;
  bool covariance = false;
  int n = 0;
  bool standardize = true;
  bool dedup = true;
  std::string volatility = "identity";
  int grid_size = 100;
  double span = 1e4;
  double gamma = 1.0;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
};

int cmd_ebic(const EbicOptions& opt) {
  const auto out = prepare_output_dir(opt.output_dir);
  CovarianceInput in =
      load_covariance(opt.input, opt.covariance, opt.standardize);
  if (opt.covariance) {
    if (opt.n <= 0)
      throw std::invalid_argument(
          "ebic: --covariance input needs --n (the sample size behind it)");
    in.n = opt.n;
  }
  const int p = static_cast<int>(in.sigma_hat.rows());
  const Matrix c = resolve_volatility(opt.volatility, p, RngSeed{opt.seed, 1});

  const LassoPath path =
      fit_path(make_gram_system(in.sigma_hat, c), opt.grid_size, opt.span);

  std::vector<SupportSet> candidates;
  std::vector<Matrix> inits;
  for (std::size_t k = 0; k < path.solutions.size(); ++k) {
    if (path.failed[k]) continue;
    SupportSet s = support_of(path.solutions[k].m_hat).with_diagonal();
    if (opt.dedup) {
      bool seen = false;
      for (const SupportSet& existing : candidates)
        if (existing == s) {
          seen = true;
          break;
        }
      if (seen) continue;
    }
    candidates.push_back(std::move(s));
    inits.push_back(path.solutions[k].m_hat);
  }
  if (candidates.empty())
    throw NumericalError("ebic: the path produced no usable candidate graph");

  const EbicResult pick =
      ebic_select(candidates, in.sigma_hat, in.n, opt.gamma, &inits);
  const MleResult refit =
      restricted_mle(pick.selected_graph, in.sigma_hat, in.n,
                     &inits[pick.selected_index]);

  write_edge_list((out / "edges.txt").string(), refit.m_hat, in.names);
  write_csv((out / "selected.csv").string(), in.names, refit.m_hat);

  Matrix scores(static_cast<int>(candidates.size()), 5);
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const int row = static_cast<int>(k);
    scores(row, 0) = row;
    scores(row, 1) =
        static_cast<double>(confusion(candidates[k], candidates[k]).tp);
    scores(row, 2) = pick.mle_values[k];
    scores(row, 3) = pick.scores[k];
    scores(row, 4) = static_cast<int>(k) == pick.selected_index ? 1.0 : 0.0;
  }
  write_csv((out / "scores.csv").string(),
            {"candidate", "edges", "nll", "score", "selected"}, scores);

  write_metadata((out / "metadata.json").string(),
                 {{"command", "ebic"},
                  {"input", opt.input},
                  {"covariance", fmt(opt.covariance)},
                  {"standardize", fmt(opt.standardize)},
                  {"dedup", fmt(opt.dedup)},
                  {"volatility", opt.volatility},
                  {"grid_size", fmt(opt.grid_size)},
                  {"span", fmt(opt.span)},
                  {"gamma", fmt(opt.gamma)},
                  {"seed", fmt(opt.seed)},
                  {"n", fmt(in.n)}});
  return 0;
}

// ---------------------------------------------------------------------------
// metrics

struct MetricsOptions {
  std::string input;
  std::string truth;
  double threshold = 0.0;
  std::string scope = "offdiag";
  std::string output_dir = ".";
};

int cmd_metrics(const MetricsOptions& opt) {
  const MetricScope scope = parse_metric_scope(opt.scope);
  const auto out = prepare_output_dir(opt.output_dir);
  const Matrix est_m = read_square_matrix_csv(opt.input);
  const Matrix truth_m = read_square_matrix_csv(opt.truth);
  if (est_m.rows() != truth_m.rows())
    throw IoError(opt.truth + ": truth dimension does not match the estimate");

  const Confusion conf = confusion(support_of(est_m, opt.threshold),
                                   support_of(truth_m), scope);
  const MetricRecord r = metric_record(conf);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Matrix table(1, 9);
  table << conf.tp, conf.fp, conf.tn, conf.fn,
      (r.tpr_defined ? r.tpr : nan), (r.fpr_defined ? r.fpr : nan),
      (r.acc_defined ? r.acc : nan), (r.f1_defined ? r.f1 : nan),
      (r.precision_defined ? r.precision : nan);
  write_csv((out / "metrics.csv").string(),
            {"tp", "fp", "tn", "fn", "tpr", "fpr", "acc", "f1", "precision"},
            table);

  write_metadata((out / "metadata.json").string(),
                 {{"command", "metrics"},
                  {"input", opt.input},
                  {"truth", opt.truth},
                  {"threshold", fmt(opt.threshold)},
                  {"scope", opt.scope}});
  return 0;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentOptions {
  std::string input;
  std::string output_dir = ".";
};

int cmd_experiment(const ExperimentOptions& opt) {
  const auto out = prepare_output_dir(opt.output_dir);
  std::ifstream in(opt.input);
  if (!in) throw IoError(opt.input + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();

  const ExperimentConfig config = parse_experiment_config(text.str());
  const ExperimentResult result = run_experiment(config);
  write_experiment_result(result, out.string());

  write_metadata((out / "metadata.json").string(),
                 {{"command", "experiment"},
                  {"input", opt.input},
                  {"kind", experiment_kind_name(config.kind)},
                  {"base_seed", fmt(config.base_seed)}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Sparse drift recovery for equilibrium covariances: simulation, "
      "penalized fitting, irrepresentability diagnostics, EBIC selection, "
      "and replication studies"};
  app.require_subcommand(1);

  SimulateOptions sim;
  CLI::App* c_sim =
      app.add_subcommand("simulate", "Sample a stable model and data from it");
  c_sim->add_option("--p", sim.p, "Number of variables")
      ->required()
      ->check(CLI::PositiveNumber);
  c_sim->add_option("--n", sim.n, "Number of observations")
      ->required()
      ->check(CLI::PositiveNumber);
  c_sim->add_option("--density", sim.density,
                    "Off-diagonal fill probability of the drift")
      ->check(CLI::Range(0.0, 1.0));
  c_sim->add_option("--volatility", sim.volatility,
                    "Volatility scheme name or CSV path");
  c_sim->add_option("--seed", sim.seed, "Random seed");
  c_sim->add_option("--output-dir", sim.output_dir, "Output directory");

  FitOptions fit;
  CLI::App* c_fit =
      app.add_subcommand("fit", "Fit a regularization path to data");
  c_fit->add_option("--input", fit.input, "Data CSV (rows = observations)")
      ->required();
  c_fit->add_flag("--covariance", fit.covariance,
                  "Treat the input as a covariance matrix");
  c_fit->add_flag("--standardize", fit.standardize,
                  "Standardize columns before fitting");
  c_fit->add_option("--truth", fit.truth,
                    "Drift CSV whose support scores the path");
  c_fit->add_option("--volatility", fit.volatility,
                    "Volatility scheme name or CSV path");
  c_fit->add_option("--grid-size", fit.grid_size, "Path grid size")
      ->check(CLI::Range(2, 100000));
  c_fit->add_option("--span", fit.span, "lambda_max / lambda_min ratio");
  c_fit->add_option("--scope", fit.scope, "Metric scope: offdiag or all");
  c_fit->add_option("--seed", fit.seed, "Random seed");
  c_fit->add_option("--output-dir", fit.output_dir, "Output directory");

  IrrepOptions irrep;
  CLI::App* c_irrep = app.add_subcommand(
      "irrep", "Irrepresentability report for a drift matrix");
  c_irrep->add_option("--input", irrep.input, "Drift CSV")->required();
  c_irrep->add_option("--volatility", irrep.volatility,
                      "Volatility scheme name or CSV path");
  c_irrep->add_option("--seed", irrep.seed, "Random seed");
  c_irrep->add_option("--output-dir", irrep.output_dir, "Output directory");

  EbicOptions ebic;
  CLI::App* c_ebic = app.add_subcommand(
      "ebic", "Select a graph along the path by extended BIC");
  c_ebic->add_option("--input", ebic.input, "Data CSV (rows = observations)")
      ->required();
  c_ebic->add_flag("--covariance", ebic.covariance,
                   "Treat the input as a covariance matrix");
  c_ebic->add_option("--n", ebic.n,
                     "Sample size behind a covariance input");
  c_ebic->add_flag("--standardize,!--no-standardize", ebic.standardize,
                   "Standardize columns before fitting (default on)");
  c_ebic->add_flag("--dedup,!--no-dedup", ebic.dedup,
                   "Collapse repeated supports along the path (default on)");
  c_ebic->add_option("--volatility", ebic.volatility,
                     "Volatility scheme name or CSV path");
  c_ebic->add_option("--grid-size", ebic.grid_size, "Path grid size")
      ->check(CLI::Range(2, 100000));
  c_ebic->add_option("--span", ebic.span, "lambda_max / lambda_min ratio");
  c_ebic->add_option("--gamma", ebic.gamma, "EBIC gamma")
      ->check(CLI::NonNegativeNumber);
  c_ebic->add_option("--seed", ebic.seed, "Random seed");
  c_ebic->add_option("--output-dir", ebic.output_dir, "Output directory");

  MetricsOptions met;
  CLI::App* c_met = app.add_subcommand(
      "metrics", "Support-recovery metrics of an estimate against a truth");
  c_met->add_option("--input", met.input, "Estimated drift CSV")->required();
  c_met->add_option("--truth", met.truth, "True drift CSV")->required();
  c_met->add_option("--threshold", met.threshold,
                    "Magnitude below which estimate entries count as zero")
      ->check(CLI::NonNegativeNumber);
  c_met->add_option("--scope", met.scope, "Metric scope: offdiag or all");
  c_met->add_option("--output-dir", met.output_dir, "Output directory");

  ExperimentOptions exp;
  CLI::App* c_exp =
      app.add_subcommand("experiment", "Run a replication study from a config");
  c_exp->add_option("--input", exp.input, "JSON config file")->required();
  c_exp->add_option("--output-dir", exp.output_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*c_sim) return cmd_simulate(sim);
    if (*c_fit) return cmd_fit(fit);
    if (*c_irrep) return cmd_irrep(irrep);
    if (*c_ebic) return cmd_ebic(ebic);
    if (*c_met) return cmd_metrics(met);
    if (*c_exp) return cmd_experiment(exp);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
