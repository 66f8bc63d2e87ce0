#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "robsbi/prior.hpp"
#include "robsbi/rng.hpp"
#include "robsbi/types.hpp"

namespace robsbi {

/// Sample mean and unbiased sample covariance of m simulated summaries.
struct MomentEstimate {
  SummaryVec mu;              // d
  std::vector<double> sigma;  // d x d, row-major, symmetric
  std::size_t m = 0;

  std::size_t dim() const { return mu.size(); }
};

using MomentEstimator = std::function<MomentEstimate(const Theta&, RngStream&)>;

/// Estimate moments from m simulations; simulation i uses rng.substream(i),
/// so the estimate is reproducible and the loop may be parallelised.
MomentEstimate estimate_moments(const SummarySimulator& simulate, const Theta& theta,
                                std::size_t m, RngStream& rng);

MomentEstimator make_moment_estimator(const SummarySimulator& simulate, std::size_t m);

/// Multivariate normal log-density of x under N(mean, cov). A covariance
/// that is not positive definite gets a diagonal jitter of 1e-8 * trace/d,
/// escalating tenfold up to 1e-4 * trace/d before giving up.
double gaussian_loglik(const SummaryVec& x, const SummaryVec& mean,
                       const std::vector<double>& cov);

/// Synthetic log-likelihood N(s_obs | mu_hat, sigma_hat).
double synthetic_loglik(const SummaryVec& s_obs, const MomentEstimate& moments);

/// Posterior draws with acceptance metadata. `gammas` is populated only by
/// the adjustment-parameter samplers and runs parallel to `thetas`.
struct Chain {
  std::vector<Theta> thetas;
  std::vector<AdjustmentVector> gammas;
  std::vector<double> loglik;
  double acceptance_rate = 0.0;

  std::size_t size() const { return thetas.size(); }
};

/// Scalar component of the post-burn-in theta draws.
std::vector<double> chain_theta_component(const Chain& chain, std::size_t comp,
                                          double burn_in_frac = 0.0);
/// Post-burn-in draws of one adjustment component.
std::vector<double> chain_gamma_component(const Chain& chain, std::size_t comp,
                                          double burn_in_frac = 0.0);

struct McmcConfig {
  std::size_t iters = 50000;
  std::size_t num_sims = 200;  // m simulations per likelihood estimate
  double proposal_scale = 0.1;
  /// Fraction of the chain treated as burn-in; the proposal scale adapts
  /// inside this window (targeting 0.2-0.4 acceptance) and is frozen after.
  double burn_in_frac = 0.2;
  bool adapt_proposal = true;
  std::optional<Theta> theta_init;
};

/// Pseudo-marginal Metropolis-Hastings over the synthetic likelihood:
/// moments are re-estimated only at proposals, the current-state estimate is
/// carried along unchanged. Gaussian random-walk proposal reflected at the
/// prior box.
Chain bsl_mcmc(const SummarySimulator& simulate, const Prior& prior,
               const SummaryVec& s_obs, const McmcConfig& cfg, RngStream& rng);

/// As above with an injected moment estimator (analytic moments, test doubles).
Chain bsl_mcmc(const MomentEstimator& moments, const Prior& prior,
               const SummaryVec& s_obs, const McmcConfig& cfg, RngStream& rng);

}  // namespace robsbi
