// Benchmark runner for misspecification-robust simulation-based inference.
//
// Subcommands: simulate, abc, bsl, rbsl, diagnose, suite. Flags may also be
// supplied through --config with an INI-style file ([subcommand] sections,
// key=value lines); command-line flags override file values.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "robsbi/experiment.hpp"
#include "robsbi/models.hpp"
#include "robsbi/rng.hpp"

namespace {

using robsbi::bench::ExperimentConfig;

constexpr const char* kSchemaFooter = R"(Output files (UTF-8 CSV with header row; JSON with fixed top-level keys
{config, seed, results, warnings}):
  samples.csv     draw_index, theta components, gamma components (adjustment
                  methods only), then `discrepancy` (abc) or `loglik` (chains)
  summary.json    posterior mean/std/mode/quantiles, acceptance rate,
                  config echo, seed, warnings
  predictive.csv  rep_index, theta components, simulated summary components
)";

void print_error(const std::string& code, const std::string& message) {
  nlohmann::json err{{"error", code}, {"message", message}};
  std::cerr << err.dump() << "\n";
}

void add_data_flags(CLI::App* cmd, ExperimentConfig& cfg) {
  cmd->add_option("--data", cfg.data_source,
                  "Data source: simulate-sv | simulate-ma1 | file")
      ->capture_default_str();
  cmd->add_option("--data-theta", cfg.data_theta,
                  "MA(1) coefficient for --data simulate-ma1")
      ->capture_default_str();
  cmd->add_option("--data-length", cfg.data_length, "Observations to simulate")
      ->capture_default_str();
  cmd->add_option("--data-file", cfg.data_file, "Series CSV for --data file");
  cmd->add_option("--num-lags", cfg.num_lags, "Autocovariance summary count")
      ->capture_default_str();
}

void add_common_flags(CLI::App* cmd, ExperimentConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", cfg.out_dir, "Output directory")->required();
  cmd->add_option("--n-rep", cfg.n_rep, "Posterior predictive rows")
      ->capture_default_str();
  add_data_flags(cmd, cfg);
}

int run_config(const ExperimentConfig& cfg) {
  auto result = robsbi::bench::run_experiment(cfg);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << result.summary_json.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation-based inference benchmark runner"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI config file ([subcommand] sections)");
  app.footer(kSchemaFooter);

  // simulate
  struct {
    std::string model = "sv";
    double theta = 0.5;
    double omega = robsbi::kBenchmarkSvParams.omega;
    double kappa = robsbi::kBenchmarkSvParams.kappa;
    double sigma_v = robsbi::kBenchmarkSvParams.sigma_v;
    std::size_t length = 100;
    std::uint64_t seed = 1;
    std::string out;
  } sim_opts;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Write a simulated series CSV");
  sim_cmd->add_option("--model", sim_opts.model, "ma1 | sv")->capture_default_str();
  sim_cmd->add_option("--theta", sim_opts.theta, "MA(1) coefficient")
      ->capture_default_str();
  sim_cmd->add_option("--omega", sim_opts.omega)->capture_default_str();
  sim_cmd->add_option("--kappa", sim_opts.kappa)->capture_default_str();
  sim_cmd->add_option("--sigma-v", sim_opts.sigma_v)->capture_default_str();
  sim_cmd->add_option("--length", sim_opts.length)->capture_default_str();
  sim_cmd->add_option("--seed", sim_opts.seed)->capture_default_str();
  sim_cmd->add_option("--out", sim_opts.out, "Output CSV path")->required();

  // abc
  ExperimentConfig abc_cfg;
  abc_cfg.method = "abc";
  CLI::App* abc_cmd = app.add_subcommand("abc", "Rejection sampler run");
  abc_cmd->add_option("--n-sims", abc_cfg.n_sims, "Simulation budget N")
      ->capture_default_str();
  abc_cmd->add_option("--quantile", abc_cfg.quantile, "Tolerance quantile")
      ->capture_default_str();
  double abc_epsilon = -1.0;
  abc_cmd->add_option("--epsilon", abc_epsilon, "Absolute tolerance (overrides quantile)");
  abc_cmd->add_option("--discrepancy", abc_cfg.discrepancy,
                      "euclidean | kl | mmd | wasserstein | cvm")
      ->capture_default_str();
  abc_cmd->add_option("--data-mode", abc_cfg.data_mode, "summaries | full-data")
      ->capture_default_str();
  add_common_flags(abc_cmd, abc_cfg);

  // bsl
  ExperimentConfig bsl_cfg;
  bsl_cfg.method = "bsl";
  CLI::App* bsl_cmd = app.add_subcommand("bsl", "Synthetic-likelihood MCMC run");
  bsl_cmd->add_option("--m", bsl_cfg.m, "Simulations per likelihood estimate")
      ->capture_default_str();
  bsl_cmd->add_option("--iters", bsl_cfg.iters, "MCMC iterations")
      ->capture_default_str();
  bsl_cmd->add_option("--scale", bsl_cfg.proposal_scale, "Proposal scale")
      ->capture_default_str();
  add_common_flags(bsl_cmd, bsl_cfg);

  // rbsl
  ExperimentConfig rbsl_cfg;
  rbsl_cfg.method = "rbsl-m";
  CLI::App* rbsl_cmd =
      app.add_subcommand("rbsl", "Adjustment-parameter synthetic-likelihood run");
  rbsl_cmd->add_option("--method", rbsl_cfg.method, "rbsl-m | rbsl-v")
      ->capture_default_str();
  rbsl_cmd->add_option("--m", rbsl_cfg.m, "Simulations per likelihood estimate")
      ->capture_default_str();
  rbsl_cmd->add_option("--iters", rbsl_cfg.iters, "MCMC iterations")
      ->capture_default_str();
  rbsl_cmd->add_option("--scale", rbsl_cfg.proposal_scale, "Proposal scale")
      ->capture_default_str();
  rbsl_cmd->add_option("--lambda", rbsl_cfg.lambda,
                       "Adjustment prior scale (rbsl-m) / rate (rbsl-v)")
      ->capture_default_str();
  add_common_flags(rbsl_cmd, rbsl_cfg);

  // diagnose
  struct {
    std::string in_dir;
    std::string out_dir;
    std::size_t n_rep = 0;
  } diag_opts;
  CLI::App* diag_cmd =
      app.add_subcommand("diagnose", "Recompute predictive checks for a bundle");
  diag_cmd->add_option("--in", diag_opts.in_dir, "Experiment directory")->required();
  diag_cmd->add_option("--out", diag_opts.out_dir,
                       "Report directory (default: the experiment directory)");
  diag_cmd->add_option("--n-rep", diag_opts.n_rep, "Override predictive rows");

  // suite
  robsbi::bench::SuiteOptions suite_opts;
  std::uint64_t suite_seed = 1;
  std::string suite_out;
  CLI::App* suite_cmd =
      app.add_subcommand("suite", "Reproduce the full benchmark study");
  suite_cmd->add_option("--out", suite_out, "Output directory")->required();
  suite_cmd->add_option("--seed", suite_seed)->capture_default_str();
  suite_cmd->add_option("--n-sims", suite_opts.abc_n, "ABC simulation budget")
      ->capture_default_str();
  suite_cmd->add_option("--m", suite_opts.m)->capture_default_str();
  suite_cmd->add_option("--iters", suite_opts.iters)->capture_default_str();
  suite_cmd->add_option("--n-rep", suite_opts.n_rep)->capture_default_str();
  bool suite_serial = false;
  suite_cmd->add_flag("--serial", suite_serial, "Run sub-experiments sequentially");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("invalid_arguments", e.what());
    return 2;
  }

  try {
    if (sim_cmd->parsed()) {
      robsbi::RngStream rng(sim_opts.seed);
      robsbi::TimeSeries series;
      if (sim_opts.model == "ma1") {
        series = robsbi::simulate_ma1(robsbi::Theta::scalar(sim_opts.theta),
                                      sim_opts.length, rng);
      } else if (sim_opts.model == "sv") {
        robsbi::SvParams params{sim_opts.omega, sim_opts.kappa, sim_opts.sigma_v};
        series = robsbi::simulate_sv(params, sim_opts.length, rng);
      } else {
        throw robsbi::bench::ConfigError("unknown model: " + sim_opts.model);
      }
      robsbi::bench::write_series_csv(sim_opts.out, series);
      std::cout << sim_opts.out << "\n";
      return 0;
    }
    if (abc_cmd->parsed()) {
      if (abc_epsilon >= 0.0) abc_cfg.epsilon = abc_epsilon;
      return run_config(abc_cfg);
    }
    if (bsl_cmd->parsed()) return run_config(bsl_cfg);
    if (rbsl_cmd->parsed()) return run_config(rbsl_cfg);
    if (diag_cmd->parsed()) {
      std::string out = diag_opts.out_dir.empty() ? diag_opts.in_dir : diag_opts.out_dir;
      auto result = robsbi::bench::diagnose_experiment(diag_opts.in_dir, out,
                                                       diag_opts.n_rep);
      std::cout << result.report_json.string() << "\n";
      return 0;
    }
    if (suite_cmd->parsed()) {
      suite_opts.parallel = !suite_serial;
      auto result = robsbi::bench::reproduce_ma1_suite(suite_out, suite_seed, suite_opts);
      bool all_pass = result.assertions.at("all_pass").get<bool>();
      std::cout << (result.root / "assertions.json").string() << "\n";
      return all_pass ? 0 : 3;
    }
  } catch (const robsbi::bench::ConfigError& e) {
    print_error("invalid_config", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("runtime_error", e.what());
    return 1;
  }
  return 0;
}
