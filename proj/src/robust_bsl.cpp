#include "robsbi/robust_bsl.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "chain_driver.hpp"

namespace robsbi {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double gamma_log_prior_component(const GammaPrior& prior, double gamma) {
  if (!(prior.lambda > 0.0)) throw std::invalid_argument("GammaPrior: lambda must be > 0");
  if (prior.family == GammaPrior::Family::laplace) {
    return -std::log(2.0 * prior.lambda) - std::abs(gamma) / prior.lambda;
  }
  if (gamma < 0.0) return kNegInf;
  return std::log(prior.lambda) - prior.lambda * gamma;
}

double gamma_log_prior(const GammaPrior& prior, const AdjustmentVector& gamma) {
  double total = 0.0;
  for (double g : gamma) {
    double lp = gamma_log_prior_component(prior, g);
    if (!std::isfinite(lp)) return kNegInf;
    total += lp;
  }
  return total;
}

double sample_gamma_prior_component(const GammaPrior& prior, RngStream& rng) {
  if (!(prior.lambda > 0.0)) throw std::invalid_argument("GammaPrior: lambda must be > 0");
  if (prior.family == GammaPrior::Family::laplace) return rng.laplace(0.0, prior.lambda);
  return rng.exponential(prior.lambda);
}

AdjustmentVector sample_gamma_prior(const GammaPrior& prior, std::size_t dim,
                                    RngStream& rng) {
  AdjustmentVector out(dim);
  for (double& g : out) g = sample_gamma_prior_component(prior, rng);
  return out;
}

double rbsl_m_loglik(const SummaryVec& s_obs, const MomentEstimate& moments,
                     const AdjustmentVector& gamma) {
  const std::size_t d = moments.dim();
  if (s_obs.size() != d || gamma.size() != d) {
    throw std::invalid_argument("rbsl_m_loglik: dimension mismatch");
  }
  SummaryVec mean(d);
  for (std::size_t i = 0; i < d; ++i) {
    mean[i] = moments.mu[i] + std::sqrt(moments.sigma[i * d + i]) * gamma[i];
  }
  return gaussian_loglik(s_obs, mean, moments.sigma);
}

double rbsl_v_loglik(const SummaryVec& s_obs, const MomentEstimate& moments,
                     const AdjustmentVector& gamma) {
  const std::size_t d = moments.dim();
  if (s_obs.size() != d || gamma.size() != d) {
    throw std::invalid_argument("rbsl_v_loglik: dimension mismatch");
  }
  std::vector<double> cov = moments.sigma;
  for (std::size_t i = 0; i < d; ++i) {
    if (gamma[i] < 0.0) {
      throw std::invalid_argument("rbsl_v_loglik: gamma components must be >= 0");
    }
    cov[i * d + i] += moments.sigma[i * d + i] * gamma[i] * gamma[i];
  }
  return gaussian_loglik(s_obs, moments.mu, cov);
}

double slice_update_gamma(std::size_t j, RbslVariant variant,
                          const MomentEstimate& moments, const SummaryVec& s_obs,
                          AdjustmentVector& gamma, const GammaPrior& prior,
                          RngStream& rng, const SliceOptions& slice) {
  if (j >= gamma.size()) throw std::invalid_argument("slice_update_gamma: index out of range");
  SliceOptions opt = slice;
  if (variant == RbslVariant::variance_inflate ||
      prior.family == GammaPrior::Family::exponential) {
    opt.lower = std::max(opt.lower, 0.0);
  }
  AdjustmentVector work = gamma;
  auto log_conditional = [&](double g) {
    double lp = gamma_log_prior_component(prior, g);
    if (!std::isfinite(lp)) return kNegInf;
    work[j] = g;
    double ll = variant == RbslVariant::mean_adjust
                    ? rbsl_m_loglik(s_obs, moments, work)
                    : rbsl_v_loglik(s_obs, moments, work);
    return ll + lp;
  };
  gamma[j] = slice_sample(log_conditional, gamma[j], opt, rng);
  return gamma[j];
}

Chain rbsl_mcmc(RbslVariant variant, const SummarySimulator& simulate,
                const Prior& prior, const SummaryVec& s_obs, const RbslConfig& cfg,
                RngStream& rng) {
  return rbsl_mcmc(variant, make_moment_estimator(simulate, cfg.mcmc.num_sims), prior,
                   s_obs, cfg, rng);
}

Chain rbsl_mcmc(RbslVariant variant, const MomentEstimator& moments,
                const Prior& prior, const SummaryVec& s_obs, const RbslConfig& cfg,
                RngStream& rng) {
  detail::GammaMachinery machinery;
  machinery.variant = variant;
  machinery.prior = cfg.gamma_prior;
  machinery.slice = cfg.slice;
  machinery.freeze = cfg.freeze_gamma;
  machinery.init = cfg.gamma_init ? *cfg.gamma_init : AdjustmentVector(s_obs.size(), 0.0);
  if (machinery.init.size() != s_obs.size()) {
    throw std::invalid_argument("rbsl_mcmc: gamma_init dimension mismatch");
  }
  if (variant == RbslVariant::variance_inflate) {
    for (double g : machinery.init) {
      if (g < 0.0) throw std::invalid_argument("rbsl_mcmc: negative gamma_init");
    }
  }
  return detail::run_pseudo_marginal_chain(moments, prior, s_obs, cfg.mcmc, machinery, rng);
}

namespace detail {

Chain run_pseudo_marginal_chain(const MomentEstimator& estimate, const Prior& prior,
                                const SummaryVec& s_obs, const McmcConfig& cfg,
                                const std::optional<GammaMachinery>& gamma_spec,
                                RngStream& rng) {
  if (cfg.iters < 1) throw std::invalid_argument("mcmc: iters must be >= 1");
  if (!(cfg.burn_in_frac >= 0.0 && cfg.burn_in_frac < 1.0)) {
    throw std::invalid_argument("mcmc: burn_in_frac outside [0,1)");
  }

  AdjustmentVector gamma;
  if (gamma_spec) gamma = gamma_spec->init;

  auto loglik = [&](const MomentEstimate& mo, const AdjustmentVector& g) {
    if (!gamma_spec) return synthetic_loglik(s_obs, mo);
    return gamma_spec->variant == RbslVariant::mean_adjust
               ? rbsl_m_loglik(s_obs, mo, g)
               : rbsl_v_loglik(s_obs, mo, g);
  };

  // Initialise at the best of a small pilot sweep unless a start was given;
  // a poor start combined with a lucky likelihood estimate can otherwise trap
  // the pseudo-marginal chain in a local mode for the whole run.
  RngStream init_rng = rng.substream(0);
  Theta theta;
  MomentEstimate moments;
  double cur_ll = 0.0;
  if (cfg.theta_init) {
    theta = *cfg.theta_init;
    if (!prior.contains(theta)) {
      throw std::invalid_argument("mcmc: initial theta outside prior support");
    }
    moments = estimate(theta, init_rng);
    cur_ll = loglik(moments, gamma);
  } else {
    constexpr std::size_t kPilotPoints = 20;
    std::vector<Theta> candidates;
    std::vector<double> mid(prior.dim());
    for (std::size_t i = 0; i < prior.dim(); ++i) {
      mid[i] = 0.5 * (prior.component(i).lo + prior.component(i).hi);
    }
    candidates.emplace_back(std::move(mid));
    for (std::size_t k = 1; k < kPilotPoints; ++k) candidates.push_back(prior.sample(init_rng));
    bool have_best = false;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      RngStream r = init_rng.substream(k);
      MomentEstimate m = estimate(candidates[k], r);
      double ll = loglik(m, gamma);
      if (!have_best || ll > cur_ll) {
        have_best = true;
        theta = candidates[k];
        moments = std::move(m);
        cur_ll = ll;
      }
    }
  }

  double scale = cfg.proposal_scale;
  double max_range = 0.0;
  for (std::size_t i = 0; i < prior.dim(); ++i) {
    max_range = std::max(max_range, prior.component(i).hi - prior.component(i).lo);
  }

  Chain chain;
  chain.thetas.reserve(cfg.iters);
  chain.loglik.reserve(cfg.iters);
  if (gamma_spec) chain.gammas.reserve(cfg.iters);

  const std::size_t adapt_end =
      cfg.adapt_proposal
          ? static_cast<std::size_t>(cfg.burn_in_frac * static_cast<double>(cfg.iters))
          : 0;
  std::size_t accepted_total = 0;
  std::size_t window_count = 0, window_accepts = 0;
  constexpr std::size_t kAdaptWindow = 100;

  for (std::size_t t = 0; t < cfg.iters; ++t) {
    RngStream it = rng.substream(t + 1);

    if (gamma_spec && !gamma_spec->freeze) {
      RngStream sl = it.substream(0);
      for (std::size_t j = 0; j < gamma.size(); ++j) {
        slice_update_gamma(j, gamma_spec->variant, moments, s_obs, gamma,
                           gamma_spec->prior, sl, gamma_spec->slice);
      }
      cur_ll = loglik(moments, gamma);
    }

    RngStream th = it.substream(1);
    std::vector<double> prop(theta.dim());
    for (std::size_t i = 0; i < theta.dim(); ++i) {
      const auto& c = prior.component(i);
      double x = theta[i] + scale * th.normal();
      while (x < c.lo || x > c.hi) {
        if (x < c.lo) x = 2.0 * c.lo - x;
        if (x > c.hi) x = 2.0 * c.hi - x;
      }
      prop[i] = x;
    }
    Theta proposal(std::move(prop));

    RngStream mo = it.substream(2);
    MomentEstimate prop_moments = estimate(proposal, mo);
    double prop_ll = loglik(prop_moments, gamma);

    double log_ratio =
        (prop_ll + prior.logpdf(proposal)) - (cur_ll + prior.logpdf(theta));
    bool accept = std::isfinite(prop_ll) && std::log(th.uniform()) < log_ratio;
    if (accept) {
      theta = proposal;
      moments = std::move(prop_moments);
      cur_ll = prop_ll;
      ++accepted_total;
    }

    chain.thetas.push_back(theta);
    chain.loglik.push_back(cur_ll);
    if (gamma_spec) chain.gammas.push_back(gamma);

    if (t < adapt_end) {
      ++window_count;
      window_accepts += accept;
      if (window_count == kAdaptWindow) {
        double rate = static_cast<double>(window_accepts) / static_cast<double>(window_count);
        if (rate < 0.2) {
          scale *= 0.7;
        } else if (rate > 0.4) {
          scale *= 1.4;
        }
        // Floor keeps the walker able to leave a sticky likelihood estimate.
        scale = std::clamp(scale, 1e-3 * max_range, max_range);
        window_count = 0;
        window_accepts = 0;
      }
    }
  }

  chain.acceptance_rate =
      static_cast<double>(accepted_total) / static_cast<double>(cfg.iters);
  return chain;
}

}  // namespace detail
}  // namespace robsbi
