#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "robsbi/experiment.hpp"

namespace fs = std::filesystem;
using namespace robsbi::bench;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "robsbi_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_rows(const fs::path& csv) {
  std::ifstream in(csv);
  REQUIRE(in);
  std::string line;
  std::size_t rows = 0;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    ++rows;
  }
  return rows;
}

ExperimentConfig small_abc(const fs::path& out) {
  ExperimentConfig cfg;
  cfg.method = "abc";
  cfg.n_sims = 1000;
  cfg.quantile = 0.05;
  cfg.seed = 7;
  cfg.data_length = 80;
  cfg.n_rep = 100;
  cfg.out_dir = out.string();
  return cfg;
}

}  // namespace

TEST_CASE("abc bundle accounting and report shape") {
  fs::path dir = fresh_dir("abc_basic");
  ExperimentConfig cfg = small_abc(dir);
  ExperimentResult result = run_experiment(cfg);

  CHECK(count_rows(result.samples_csv) == 1000);
  CHECK(count_rows(result.predictive_csv) == 100);

  json report = json::parse(slurp(result.summary_json));
  CHECK(report.contains("config"));
  CHECK(report.contains("seed"));
  CHECK(report.contains("results"));
  CHECK(report.contains("warnings"));
  CHECK(report["seed"] == 7);
  CHECK(report["results"]["n_accepted"] == 50);
  CHECK(report["results"]["posterior"]["theta_0"].contains("mean"));
  CHECK(report["config"]["method"] == "abc");
}

TEST_CASE("identical config and seed give byte-identical outputs") {
  fs::path dir1 = fresh_dir("abc_repeat_1");
  fs::path dir2 = fresh_dir("abc_repeat_2");
  ExperimentConfig cfg1 = small_abc(dir1);
  ExperimentConfig cfg2 = small_abc(dir2);
  ExperimentResult r1 = run_experiment(cfg1);
  ExperimentResult r2 = run_experiment(cfg2);
  CHECK(slurp(r1.samples_csv) == slurp(r2.samples_csv));
  CHECK(slurp(r1.predictive_csv) == slurp(r2.predictive_csv));

  ExperimentConfig cfg3 = small_abc(fresh_dir("abc_repeat_3"));
  cfg3.seed = 8;
  ExperimentResult r3 = run_experiment(cfg3);
  CHECK(slurp(r1.samples_csv) != slurp(r3.samples_csv));
}

TEST_CASE("invalid configurations are rejected with ConfigError") {
  ExperimentConfig cfg = small_abc(fresh_dir("abc_invalid"));
  cfg.method = "abc-smc";
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);

  cfg = small_abc(fresh_dir("abc_invalid2"));
  cfg.method = "bsl";
  cfg.data_mode = "full-data";
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);

  cfg = small_abc(fresh_dir("abc_invalid3"));
  cfg.out_dir.clear();
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);

  cfg = small_abc(fresh_dir("abc_invalid4"));
  cfg.data_source = "file";
  cfg.data_file = "/nonexistent/series.csv";
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("zero acceptances set the warning field and keep outputs valid") {
  ExperimentConfig cfg = small_abc(fresh_dir("abc_zero"));
  cfg.epsilon = 0.0;
  ExperimentResult result = run_experiment(cfg);
  CHECK(!result.warnings.empty());
  json report = result.summary;
  CHECK(report["results"]["n_accepted"] == 0);
  CHECK(report["warnings"].size() > 0);
  CHECK(count_rows(result.predictive_csv) == 0);
}

TEST_CASE("chain methods produce gamma columns and shift statistics") {
  ExperimentConfig cfg;
  cfg.method = "rbsl-m";
  cfg.iters = 300;
  cfg.m = 20;
  cfg.n_rep = 50;
  cfg.seed = 9;
  cfg.data_length = 60;
  cfg.out_dir = fresh_dir("rbsl_small").string();
  ExperimentResult result = run_experiment(cfg);

  CHECK(count_rows(result.samples_csv) == 300);
  std::string samples = slurp(result.samples_csv);
  CHECK(samples.rfind("draw_index,theta_0,gamma_0,gamma_1,loglik\n", 0) == 0);
  CHECK(result.summary["results"].contains("gamma_shift_ks"));
  CHECK(result.summary["results"]["posterior"].contains("gamma_0"));

  ExperimentConfig bcfg = cfg;
  bcfg.method = "bsl";
  bcfg.out_dir = fresh_dir("bsl_small").string();
  ExperimentResult bres = run_experiment(bcfg);
  std::string bsamples = slurp(bres.samples_csv);
  CHECK(bsamples.rfind("draw_index,theta_0,loglik\n", 0) == 0);
}

TEST_CASE("diagnose recomputes predictive checks from a persisted bundle") {
  ExperimentConfig cfg;
  cfg.method = "rbsl-v";
  cfg.iters = 300;
  cfg.m = 20;
  cfg.n_rep = 40;
  cfg.seed = 11;
  cfg.data_length = 60;
  cfg.out_dir = fresh_dir("diag_src").string();
  run_experiment(cfg);

  fs::path out = fresh_dir("diag_out");
  DiagnoseResult d1 = diagnose_experiment(cfg.out_dir, out);
  CHECK(fs::exists(d1.predictive_csv));
  CHECK(d1.report["results"].contains("predictive"));
  CHECK(d1.report["results"].contains("gamma_shift_ks"));
  CHECK(count_rows(d1.predictive_csv) == 40);

  fs::path out2 = fresh_dir("diag_out2");
  DiagnoseResult d2 = diagnose_experiment(cfg.out_dir, out2);
  CHECK(slurp(d1.predictive_csv) == slurp(d2.predictive_csv));
}

TEST_CASE("suite emits the full set of bundles and assertion entries") {
  fs::path dir = fresh_dir("suite_small");
  SuiteOptions opt;
  opt.abc_n = 2000;
  opt.abc_quantiles = {0.10, 0.02};
  opt.fulldata_n = 400;
  opt.fulldata_keep = 40;
  opt.iters = 250;
  opt.m = 20;
  opt.data_length = 60;
  opt.n_rep = 40;
  SuiteResult result = reproduce_ma1_suite(dir, 13, opt);

  CHECK(result.bundles.size() >= 5);
  for (const auto& bundle : result.bundles) {
    CAPTURE(bundle.string());
    CHECK(fs::exists(bundle / "samples.csv"));
    CHECK(count_rows(bundle / "samples.csv") > 0);
    CHECK(fs::exists(bundle / "summary.json"));
  }

  json assertions = json::parse(slurp(dir / "assertions.json"));
  REQUIRE(assertions.contains("assertions"));
  bool found_mean = false, found_kl_mmd = false, found_kl_eu = false;
  for (const auto& entry : assertions["assertions"]) {
    CHECK(entry.contains("measured"));
    CHECK(entry.contains("pass"));
    if (entry["name"] == "abc_pseudo_true_mean_abs") {
      found_mean = true;
      CHECK(entry["expr"] == "abc_pseudo_true_mean_abs < 0.1");
    }
    if (entry["name"] == "fulldata_std_kl_minus_mmd") found_kl_mmd = true;
    if (entry["name"] == "fulldata_std_kl_minus_euclidean") found_kl_eu = true;
  }
  CHECK(found_mean);
  CHECK(found_kl_mmd);
  CHECK(found_kl_eu);
}
