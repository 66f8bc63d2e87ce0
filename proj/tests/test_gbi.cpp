#include <cmath>
#include <stdexcept>
#include <limits>

#include "doctest.h"
#include "robsbi/discrepancies.hpp"
#include "robsbi/gbi.hpp"
#include "robsbi/models.hpp"
#include "robsbi/summaries.hpp"

using namespace robsbi;

namespace {

SummarySimulator benchmark_summary_simulator(std::size_t length) {
  DataSimulator sim = make_ma1_simulator(length);
  SummaryFn summarise = make_autocov_summary(2);
  return [sim, summarise](const Theta& theta, RngStream& rng) {
    return summarise(sim(theta, rng));
  };
}

}  // namespace

TEST_CASE("uniform kernel loss extremes") {
  SummarySimulator sim = benchmark_summary_simulator(100);
  SummaryVec s_obs{1.0, 0.0};
  RngStream rng(51);
  AbcMcLoss all_in = abc_mc_loss(sim, euclidean, s_obs, Theta::scalar(0.0), 50,
                                 AbcKernelKind::uniform, 1e9, rng);
  CHECK(all_in.value == 0.0);
  CHECK_FALSE(all_in.all_rejected);

  RngStream rng2(51);
  AbcMcLoss none = abc_mc_loss(sim, euclidean, s_obs, Theta::scalar(0.0), 50,
                               AbcKernelKind::uniform, 1e-12, rng2);
  CHECK(std::isinf(none.value));
  CHECK(none.all_rejected);
}

TEST_CASE("gaussian kernel with zero discrepancy") {
  // Simulator pinned to the observed summary: the kernel is exactly 1.
  SummarySimulator exact = [](const Theta&, RngStream&) { return SummaryVec{1.0, 0.0}; };
  SummaryVec s_obs{1.0, 0.0};
  RngStream rng(52);
  AbcMcLoss loss = abc_mc_loss(exact, euclidean, s_obs, Theta::scalar(0.0), 1,
                               AbcKernelKind::gaussian, 0.5, rng);
  CHECK(loss.value == 0.0);
}

TEST_CASE("exp(-loss) reproduces the rejection acceptance fraction") {
  SummarySimulator sim = benchmark_summary_simulator(100);
  RngStream data_rng(53);
  TimeSeries observed = simulate_sv(kBenchmarkSvParams, 100, data_rng);
  SummaryVec s_obs = autocov_summaries(observed, 2);
  const Theta theta = Theta::scalar(0.2);
  const std::size_t n = 400;
  const double eps = 1.1;

  RngStream loss_rng(54);
  AbcMcLoss loss = abc_mc_loss(sim, euclidean, s_obs, theta, n,
                               AbcKernelKind::uniform, eps, loss_rng);

  // Replay the same per-simulation substreams and count acceptances directly.
  RngStream replay(54);
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    RngStream r = replay.substream(i);
    accepted += euclidean(sim(theta, r), s_obs) <= eps;
  }
  double fraction = static_cast<double>(accepted) / static_cast<double>(n);
  REQUIRE(fraction > 0.0);
  CHECK(std::exp(-loss.value) == doctest::Approx(fraction).epsilon(1e-12));
}

TEST_CASE("gibbs log posterior reductions") {
  Prior prior = Prior::uniform(-1.0, 1.0);
  GibbsPosteriorSpec spec{{}, 1.0, prior};
  Theta theta = Theta::scalar(0.3);

  SUBCASE("w = 0 recovers the prior exactly") {
    spec.w = 0.0;
    CHECK(gibbs_log_posterior(spec, theta, 4.7) == prior.logpdf(theta));
  }
  SUBCASE("w = 1 with a negative log-likelihood loss is standard Bayes") {
    double nll = 2.5;
    CHECK(gibbs_log_posterior(spec, theta, nll) ==
          doctest::Approx(-nll + prior.logpdf(theta)));
  }
  SUBCASE("doubling w doubles the loss contribution") {
    double loss = 1.3;
    double base = gibbs_log_posterior(spec, theta, loss) - prior.logpdf(theta);
    spec.w = 2.0;
    double doubled = gibbs_log_posterior(spec, theta, loss) - prior.logpdf(theta);
    CHECK(doubled == doctest::Approx(2.0 * base));
  }
  SUBCASE("sentinel and out-of-support inputs give -inf") {
    CHECK(std::isinf(gibbs_log_posterior(
        spec, theta, std::numeric_limits<double>::infinity())));
    CHECK(std::isinf(gibbs_log_posterior(spec, Theta::scalar(2.0), 1.0)));
    spec.w = -1.0;
    CHECK_THROWS_AS(gibbs_log_posterior(spec, theta, 1.0), std::invalid_argument);
  }
}
