#pragma once

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "garchlab/csv.hpp"
#include "garchlab/ensemble.hpp"
#include "garchlab/errors.hpp"
#include "garchlab/fit.hpp"
#include "garchlab/params.hpp"
#include "garchlab/simulate.hpp"
#include "garchlab/trend.hpp"

namespace garchlab::cli {

enum class Command {
  simulate,
  fit,
  trend,
  compose,
  experiment_intrinsic,
  experiment_detrend,
  experiment_sweep,
};

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitDegenerate = 4;

struct ExperimentConfig {
  Command command = Command::simulate;

  // Generating parameters; defaults are the Dow Jones Composite estimates.
  double k = kDowJonesComposite.k;
  double alpha = kDowJonesComposite.alpha;
  double beta = kDowJonesComposite.beta;

  std::size_t n = 6000;
  std::size_t s = 4;
  double r = 2.0;
  std::size_t replicates = 100;
  std::uint64_t seed = 1;
  std::size_t burn_in = kDefaultBurnIn;
  std::optional<std::size_t> degree;  // fit: detrend log prices first

  std::vector<std::size_t> lengths = {1000, 2000, 4000, 6000};
  std::vector<std::size_t> s_values = {1, 2, 3, 4};
  std::vector<double> r_values = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> beta_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  double sum_const = 0.972;

  std::string input_path;
  std::string column = "close";
  std::string output_path;
  std::string baseline_output_path;
};

namespace detail {

inline std::filesystem::path baseline_path(const ExperimentConfig& config) {
  if (!config.baseline_output_path.empty()) return config.baseline_output_path;
  std::filesystem::path p(config.output_path);
  const std::string stem = p.stem().string() + "_baseline";
  return p.parent_path() / (stem + p.extension().string());
}

inline void run_fit(const ExperimentConfig& config) {
  const std::vector<double> prices = read_price_csv(config.input_path, config.column);
  std::vector<double> returns;
  if (config.degree.has_value()) {
    std::vector<double> log_prices(prices.size());
    for (std::size_t i = 0; i < prices.size(); ++i) log_prices[i] = std::log(prices[i]);
    returns = diff_returns(detrend(log_prices, *config.degree));
  } else {
    returns = log_returns(prices);
  }
  const FitResult result = fit(returns);
  std::cout << "K=" << garchlab::detail::format_double(result.params.k) << '\n'
            << "alpha=" << garchlab::detail::format_double(result.params.alpha) << '\n'
            << "beta=" << garchlab::detail::format_double(result.params.beta) << '\n'
            << "log_likelihood=" << garchlab::detail::format_double(result.log_likelihood) << '\n'
            << "converged=" << (result.converged ? "true" : "false") << '\n'
            << "iterations=" << result.iterations << '\n';
}

}  // namespace detail

/// Runs the pipeline named by the config. Returns a process exit code and
/// prints a one-line diagnostic to stderr on failure; no partial output file
/// is left behind.
inline int dispatch(const ExperimentConfig& config) try {
  const auto params = [&] { return validate_params(config.k, config.alpha, config.beta); };
  switch (config.command) {
    case Command::simulate:
      write_path_csv(simulate(params(), config.n, config.seed, config.burn_in),
                     config.output_path);
      break;
    case Command::fit:
      detail::run_fit(config);
      break;
    case Command::trend:
      write_trend_csv(eval_trend(sample_spec(config.n, config.s, config.seed)),
                      config.output_path);
      break;
    case Command::compose:
      write_composed_csv(compose_series(params(), config.n, config.s, config.r, config.seed),
                         config.output_path);
      break;
    case Command::experiment_intrinsic:
      write_stats_csv(intrinsic_variability_experiment(params(), config.lengths,
                                                       config.replicates, config.seed),
                      config.output_path);
      break;
    case Command::experiment_detrend: {
      const DetrendExperimentResult result = detrend_experiment(
          params(), config.s_values, config.r_values, config.n, config.replicates, config.seed);
      write_stats_csv(result.detrended, config.output_path);
      write_stats_csv(result.baseline, detail::baseline_path(config));
      break;
    }
    case Command::experiment_sweep:
      write_stats_csv(beta_sweep_experiment(config.beta_values, config.sum_const, config.k,
                                            config.s, config.r, config.n, config.replicates,
                                            config.seed),
                      config.output_path);
      break;
  }
  return kExitOk;
} catch (const degenerate_data_error& e) {
  std::cerr << "garchlab: " << e.what() << '\n';
  return kExitDegenerate;
} catch (const parse_error& e) {
  std::cerr << "garchlab: " << e.what() << '\n';
  return kExitIo;
} catch (const io_error& e) {
  std::cerr << "garchlab: " << e.what() << '\n';
  return kExitIo;
} catch (const domain_error& e) {
  std::cerr << "garchlab: " << e.what() << '\n';
  return kExitDomain;
} catch (const error& e) {
  std::cerr << "garchlab: " << e.what() << '\n';
  return kExitDomain;
}

/// Parses flags (and an optional key=value config file; flags win) into an
/// ExperimentConfig, then dispatches. Arguments exclude the program name.
inline int run(std::vector<std::string> args) {
  ExperimentConfig config;

  CLI::App app{
      "garchlab - GARCH(1,1) simulation, maximum-likelihood fitting, and Monte Carlo "
      "studies of how polynomial detrending perturbs estimated parameters"};
  app.set_config("--config", "", "Read options from a key=value file (flags override it)");
  app.footer(
      "Exit codes:\n"
      "  0  success\n"
      "  1  usage error (unknown flag, bad value syntax, missing required flag)\n"
      "  2  I/O or input-file parse error\n"
      "  3  domain/precondition violation\n"
      "  4  degenerate input data (e.g. zero-variance series)\n");

  const std::map<std::string, Command> command_names{
      {"simulate", Command::simulate},
      {"fit", Command::fit},
      {"trend", Command::trend},
      {"compose", Command::compose},
      {"experiment-intrinsic", Command::experiment_intrinsic},
      {"experiment-detrend", Command::experiment_detrend},
      {"experiment-sweep", Command::experiment_sweep},
  };
  app.add_option("--command", config.command, "Pipeline to run")
      ->required()
      ->transform(CLI::CheckedTransformer(command_names));

  app.add_option("--K", config.k, "Variance offset of the generating process");
  app.add_option("--alpha", config.alpha, "ARCH coefficient of the generating process");
  app.add_option("--beta", config.beta, "GARCH coefficient of the generating process");
  app.add_option("--n", config.n, "Series length");
  app.add_option("--s", config.s, "Number of monotonic trend parts");
  app.add_option("--r", config.r, "Trend-to-noise amplitude ratio");
  app.add_option("--replicates", config.replicates, "Replicates per experiment cell");
  app.add_option("--seed", config.seed, "Base seed; all streams derive from it");
  app.add_option("--burn-in", config.burn_in, "Discarded prefix length for simulation");
  app.add_option("--degree", config.degree,
                 "fit: remove a polynomial of this degree from log prices first");
  app.add_option("--lengths", config.lengths, "experiment-intrinsic: series lengths")
      ->delimiter(',');
  app.add_option("--s-values", config.s_values, "experiment-detrend: grid of s values")
      ->delimiter(',');
  app.add_option("--r-values", config.r_values, "experiment-detrend: grid of r values")
      ->delimiter(',');
  app.add_option("--beta-values", config.beta_values, "experiment-sweep: beta0 values")
      ->delimiter(',');
  app.add_option("--sum", config.sum_const, "experiment-sweep: fixed alpha0 + beta0");
  app.add_option("--input", config.input_path, "Input price CSV");
  app.add_option("--column", config.column, "Price column name in the input CSV");
  app.add_option("--output", config.output_path, "Output CSV path");
  app.add_option("--baseline-output", config.baseline_output_path,
                 "experiment-detrend: baseline stats CSV (default: <output>_baseline)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (config.command == Command::fit) {
    if (config.input_path.empty()) {
      std::cerr << "garchlab: --command fit requires --input\n";
      return kExitUsage;
    }
  } else if (config.output_path.empty()) {
    std::cerr << "garchlab: this command requires --output\n";
    return kExitUsage;
  }
  return dispatch(config);
}

inline int run(int argc, char** argv) {
  return run(std::vector<std::string>(argv + 1, argv + argc));
}

}  // namespace garchlab::cli
