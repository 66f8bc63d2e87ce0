#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "robsbi/robust_bsl.hpp"
#include "robsbi/synthetic_likelihood.hpp"
#include "robsbi/types.hpp"

namespace robsbi {

/// Posterior predictive draws of the summaries with per-component central
/// 95% intervals and coverage flags for the observed summary.
struct PredictiveTable {
  std::vector<Theta> thetas;
  std::vector<SummaryVec> simulated;
  SummaryVec observed;
  std::vector<std::array<double, 2>> intervals;
  std::vector<bool> covered;

  std::size_t size() const { return thetas.size(); }
};

/// Resamples n_rep parameter draws uniformly from the post-burn-in chain and
/// simulates one summary per draw. n_rep = 0 yields an empty (valid) table.
PredictiveTable posterior_predictive(const Chain& chain,
                                     const SummarySimulator& simulate,
                                     const SummaryVec& observed, std::size_t n_rep,
                                     RngStream& rng, double burn_in_frac = 0.2);

/// Recompute intervals and coverage flags from the stored rows.
void recompute_coverage(PredictiveTable& table);

/// Two-sample Kolmogorov-Smirnov statistic between posterior draws of one
/// adjustment component and fresh draws from its prior.
double prior_posterior_shift(const std::vector<double>& posterior_gamma,
                             const GammaPrior& prior, RngStream& rng,
                             std::size_t n_prior = 10000);

}  // namespace robsbi
