#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "robsbi/types.hpp"

namespace robsbi::bench {

/// Raised for configuration problems the CLI should report as a single-line
/// machine-parsable error with nonzero exit status.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string method = "abc";  // abc | bsl | rbsl-m | rbsl-v
  std::string discrepancy = "euclidean";
  std::string data_mode = "summaries";  // summaries | full-data (abc only)

  std::size_t n_sims = 100000;  // ABC simulation budget
  double quantile = 0.001;      // ABC tolerance quantile
  std::optional<double> epsilon;  // absolute tolerance override

  std::size_t m = 200;       // simulations per synthetic-likelihood estimate
  std::size_t iters = 50000;  // MCMC iterations
  double proposal_scale = 0.1;
  double lambda = 0.5;  // adjustment-parameter prior scale/rate

  std::uint64_t seed = 1;

  std::string data_source = "simulate-sv";  // simulate-sv | simulate-ma1 | file
  double data_theta = 0.5;                  // simulate-ma1 only
  std::size_t data_length = 100;
  std::string data_file;

  std::size_t num_lags = 2;
  std::size_t n_rep = 1000;  // posterior predictive rows

  std::string out_dir;

  void validate() const;
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

struct ExperimentResult {
  std::filesystem::path samples_csv;
  std::filesystem::path summary_json;
  std::filesystem::path predictive_csv;
  nlohmann::json summary;
  std::vector<std::string> warnings;
};

/// Run one configured experiment and persist samples.csv, summary.json and
/// predictive.csv under config.out_dir. Identical config + seed produces
/// byte-identical outputs.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct DiagnoseResult {
  std::filesystem::path predictive_csv;
  std::filesystem::path report_json;
  nlohmann::json report;
};

/// Recompute posterior predictive checks (and adjustment-parameter shift
/// statistics, when present) from a persisted experiment bundle.
DiagnoseResult diagnose_experiment(const std::filesystem::path& experiment_dir,
                                   const std::filesystem::path& out_dir,
                                   std::size_t n_rep_override = 0);

struct SuiteOptions {
  std::size_t abc_n = 200000;
  std::vector<double> abc_quantiles{0.10, 0.01, 0.001};
  std::size_t fulldata_n = 20000;
  std::size_t fulldata_keep = 200;
  std::size_t iters = 20000;
  std::size_t m = 100;
  std::size_t data_length = 100;
  std::size_t n_rep = 1000;
  bool parallel = true;
};

struct SuiteResult {
  std::filesystem::path root;
  std::vector<std::filesystem::path> bundles;
  nlohmann::json assertions;
};

/// Reproduce the benchmark study: ABC across tolerances, the standard
/// synthetic-likelihood failure case, full-data ABC under three distances,
/// both adjustment-parameter variants with predictive checks, and
/// prior/posterior overlays for the adjustment parameters. Writes one
/// sub-bundle per study plus assertions.json at the root.
SuiteResult reproduce_ma1_suite(const std::filesystem::path& outdir, std::uint64_t seed,
                                const SuiteOptions& options = {});

TimeSeries load_series_csv(const std::filesystem::path& path);
void write_series_csv(const std::filesystem::path& path, const TimeSeries& series);

}  // namespace robsbi::bench
