#pragma once

#include <functional>

#include "robsbi/prior.hpp"
#include "robsbi/rng.hpp"
#include "robsbi/summaries.hpp"
#include "robsbi/types.hpp"

namespace robsbi {

/// Gibbs-posterior ingredients: a data loss, a calibration weight and the
/// prior. With the loss set to a negative log-likelihood and w = 1 this is
/// ordinary Bayes.
struct GibbsPosteriorSpec {
  std::function<double(const Theta&, RngStream&)> loss;
  double w = 1.0;
  Prior prior;
};

/// -w * loss + log prior. A non-finite loss (the all-rejected sentinel) or a
/// theta outside the prior support yields -inf.
double gibbs_log_posterior(const GibbsPosteriorSpec& spec, const Theta& theta,
                           double loss_value);

enum class AbcKernelKind { uniform, gaussian };

struct AbcMcLoss {
  double value;
  bool all_rejected;  // uniform kernel with every draw outside tolerance
};

/// Monte Carlo ABC-kernel loss -log( (1/N) sum_i K_eps(rho_i) ) where rho_i
/// compares the i-th simulated summary against s_obs. The uniform kernel is
/// the indicator {rho <= eps}; the Gaussian kernel is the unnormalised
/// exp(-rho^2 / (2 eps^2)). Simulation i draws from rng.substream(i).
AbcMcLoss abc_mc_loss(const SummarySimulator& simulate, const SummaryDistance& rho,
                      const SummaryVec& s_obs, const Theta& theta, std::size_t num_sims,
                      AbcKernelKind kernel, double eps, RngStream& rng);

}  // namespace robsbi
