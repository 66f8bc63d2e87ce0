#include "robsbi/diagnostics.hpp"

#include <stdexcept>

#include "robsbi/stats.hpp"

namespace robsbi {

PredictiveTable posterior_predictive(const Chain& chain,
                                     const SummarySimulator& simulate,
                                     const SummaryVec& observed, std::size_t n_rep,
                                     RngStream& rng, double burn_in_frac) {
  if (chain.size() == 0) throw std::invalid_argument("posterior_predictive: empty chain");
  PredictiveTable table;
  table.observed = observed;
  if (n_rep == 0) return table;

  std::size_t start =
      static_cast<std::size_t>(burn_in_frac * static_cast<double>(chain.size()));
  if (start >= chain.size()) start = chain.size() - 1;
  const std::size_t span = chain.size() - start;

  table.thetas.reserve(n_rep);
  table.simulated.reserve(n_rep);
  for (std::size_t rep = 0; rep < n_rep; ++rep) {
    RngStream r = rng.substream(rep);
    std::size_t idx = start + static_cast<std::size_t>(r.uniform() * static_cast<double>(span));
    if (idx >= chain.size()) idx = chain.size() - 1;
    const Theta& theta = chain.thetas[idx];
    table.simulated.push_back(simulate(theta, r));
    table.thetas.push_back(theta);
  }
  recompute_coverage(table);
  return table;
}

void recompute_coverage(PredictiveTable& table) {
  table.intervals.clear();
  table.covered.clear();
  if (table.simulated.empty()) return;
  const std::size_t d = table.simulated.front().size();
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<double> comp;
    comp.reserve(table.simulated.size());
    for (const auto& s : table.simulated) comp.push_back(s[c]);
    double lo = stats::quantile(comp, 0.025);
    double hi = stats::quantile(comp, 0.975);
    table.intervals.push_back({lo, hi});
    bool inside = c < table.observed.size() && table.observed[c] >= lo &&
                  table.observed[c] <= hi;
    table.covered.push_back(inside);
  }
}

double prior_posterior_shift(const std::vector<double>& posterior_gamma,
                             const GammaPrior& prior, RngStream& rng,
                             std::size_t n_prior) {
  if (posterior_gamma.empty()) {
    throw std::invalid_argument("prior_posterior_shift: empty posterior sample");
  }
  std::vector<double> prior_draws(n_prior);
  for (double& g : prior_draws) g = sample_gamma_prior_component(prior, rng);
  return stats::ks_two_sample(posterior_gamma, prior_draws);
}

}  // namespace robsbi
