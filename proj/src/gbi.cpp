#include "robsbi/gbi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace robsbi {

double gibbs_log_posterior(const GibbsPosteriorSpec& spec, const Theta& theta,
                           double loss_value) {
  if (!(spec.w >= 0.0) || !std::isfinite(spec.w)) {
    throw std::invalid_argument("gibbs_log_posterior: w must be finite and >= 0");
  }
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (!std::isfinite(loss_value)) return neg_inf;
  double lp = spec.prior.logpdf(theta);
  if (!std::isfinite(lp)) return neg_inf;
  return -spec.w * loss_value + lp;
}

AbcMcLoss abc_mc_loss(const SummarySimulator& simulate, const SummaryDistance& rho,
                      const SummaryVec& s_obs, const Theta& theta, std::size_t num_sims,
                      AbcKernelKind kernel, double eps, RngStream& rng) {
  if (num_sims < 1) throw std::invalid_argument("abc_mc_loss: num_sims must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("abc_mc_loss: eps must be > 0");
  double acc = 0.0;
  for (std::size_t i = 0; i < num_sims; ++i) {
    RngStream r = rng.substream(i);
    double d = rho(simulate(theta, r), s_obs);
    if (kernel == AbcKernelKind::uniform) {
      acc += d <= eps ? 1.0 : 0.0;
    } else {
      acc += std::exp(-d * d / (2.0 * eps * eps));
    }
  }
  double avg = acc / static_cast<double>(num_sims);
  if (avg == 0.0) {
    return {std::numeric_limits<double>::infinity(), true};
  }
  return {-std::log(avg), false};
}

}  // namespace robsbi
