#include "robsbi/synthetic_likelihood.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "chain_driver.hpp"

namespace robsbi {

MomentEstimate estimate_moments(const SummarySimulator& simulate, const Theta& theta,
                                std::size_t m, RngStream& rng) {
  if (m < 3) throw std::invalid_argument("estimate_moments: m too small");
  std::vector<SummaryVec> sims;
  sims.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    RngStream r = rng.substream(i);
    sims.push_back(simulate(theta, r));
  }
  const std::size_t d = sims.front().size();
  if (m < d + 2) throw std::invalid_argument("estimate_moments: m must be >= d + 2");

  MomentEstimate est;
  est.m = m;
  est.mu.assign(d, 0.0);
  for (const auto& s : sims) {
    if (s.size() != d) throw std::invalid_argument("estimate_moments: ragged summaries");
    for (std::size_t c = 0; c < d; ++c) est.mu[c] += s[c];
  }
  const double md = static_cast<double>(m);
  for (double& v : est.mu) v /= md;

  est.sigma.assign(d * d, 0.0);
  for (const auto& s : sims) {
    for (std::size_t a = 0; a < d; ++a) {
      double da = s[a] - est.mu[a];
      for (std::size_t b = a; b < d; ++b) {
        est.sigma[a * d + b] += da * (s[b] - est.mu[b]);
      }
    }
  }
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      double v = est.sigma[a * d + b] / (md - 1.0);
      est.sigma[a * d + b] = v;
      est.sigma[b * d + a] = v;
    }
  }
  return est;
}

MomentEstimator make_moment_estimator(const SummarySimulator& simulate, std::size_t m) {
  return [simulate, m](const Theta& theta, RngStream& rng) {
    return estimate_moments(simulate, theta, m, rng);
  };
}

double gaussian_loglik(const SummaryVec& x, const SummaryVec& mean,
                       const std::vector<double>& cov) {
  const std::size_t d = x.size();
  if (mean.size() != d || cov.size() != d * d) {
    throw std::invalid_argument("gaussian_loglik: dimension mismatch");
  }
  Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(d));
  Eigen::Map<const Eigen::VectorXd> mv(mean.data(), static_cast<Eigen::Index>(d));
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      cm(cov.data(), static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));

  Eigen::MatrixXd c = cm;
  Eigen::LLT<Eigen::MatrixXd> llt(c);
  if (llt.info() != Eigen::Success) {
    const double base = c.trace() / static_cast<double>(d);
    bool repaired = false;
    for (double level = 1e-8; level <= 1e-4 * (1.0 + 1e-12); level *= 10.0) {
      Eigen::MatrixXd cj = c;
      cj.diagonal().array() += level * base;
      llt.compute(cj);
      if (llt.info() == Eigen::Success) {
        repaired = true;
        break;
      }
    }
    if (!repaired) {
      throw std::runtime_error("gaussian_loglik: covariance irreparably singular");
    }
  }

  Eigen::VectorXd diff = xv - mv;
  Eigen::VectorXd half = llt.matrixL().solve(diff);
  double quad = half.squaredNorm();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < llt.matrixLLT().rows(); ++i) {
    log_det += 2.0 * std::log(llt.matrixLLT()(i, i));
  }
  return -0.5 * (static_cast<double>(d) * std::log(2.0 * std::numbers::pi) + log_det + quad);
}

double synthetic_loglik(const SummaryVec& s_obs, const MomentEstimate& moments) {
  if (s_obs.size() != moments.dim()) {
    throw std::invalid_argument("synthetic_loglik: dimension mismatch");
  }
  return gaussian_loglik(s_obs, moments.mu, moments.sigma);
}

std::vector<double> chain_theta_component(const Chain& chain, std::size_t comp,
                                          double burn_in_frac) {
  std::size_t start = static_cast<std::size_t>(burn_in_frac * static_cast<double>(chain.size()));
  std::vector<double> out;
  out.reserve(chain.size() - start);
  for (std::size_t i = start; i < chain.size(); ++i) out.push_back(chain.thetas[i][comp]);
  return out;
}

std::vector<double> chain_gamma_component(const Chain& chain, std::size_t comp,
                                          double burn_in_frac) {
  if (chain.gammas.empty()) throw std::invalid_argument("chain has no adjustment draws");
  std::size_t start = static_cast<std::size_t>(burn_in_frac * static_cast<double>(chain.size()));
  std::vector<double> out;
  out.reserve(chain.size() - start);
  for (std::size_t i = start; i < chain.size(); ++i) out.push_back(chain.gammas[i][comp]);
  return out;
}

Chain bsl_mcmc(const SummarySimulator& simulate, const Prior& prior,
               const SummaryVec& s_obs, const McmcConfig& cfg, RngStream& rng) {
  return bsl_mcmc(make_moment_estimator(simulate, cfg.num_sims), prior, s_obs, cfg, rng);
}

Chain bsl_mcmc(const MomentEstimator& moments, const Prior& prior,
               const SummaryVec& s_obs, const McmcConfig& cfg, RngStream& rng) {
  return detail::run_pseudo_marginal_chain(moments, prior, s_obs, cfg, std::nullopt, rng);
}

}  // namespace robsbi
