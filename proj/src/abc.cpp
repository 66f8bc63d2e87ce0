#include "robsbi/abc.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "robsbi/stats.hpp"

namespace robsbi {
namespace {

// Substream ids for the two phases of a run; draw i inside a phase uses
// phase.substream(i), so results do not depend on thread scheduling.
constexpr std::uint64_t kPilotPhase = 0;
constexpr std::uint64_t kDrawPhase = 1;

void parallel_for(std::size_t n, std::size_t num_threads,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  std::size_t workers = num_threads == 0
                            ? std::max<std::size_t>(1, std::thread::hardware_concurrency())
                            : num_threads;
  workers = std::min(workers, n == 0 ? std::size_t{1} : n);
  if (workers <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&, w, lo, hi] {
      try {
        body(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double standardised_euclidean(const SummaryVec& a, const SummaryVec& b,
                              const std::vector<double>& scales) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = (a[i] - b[i]) / scales[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

std::string discrepancy_name(DiscrepancyKind kind) {
  switch (kind) {
    case DiscrepancyKind::euclidean: return "euclidean";
    case DiscrepancyKind::mmd: return "mmd";
    case DiscrepancyKind::kl: return "kl";
    case DiscrepancyKind::wasserstein: return "wasserstein";
    case DiscrepancyKind::cvm: return "cvm";
  }
  throw std::logic_error("discrepancy_name: unknown kind");
}

DiscrepancyKind discrepancy_from_name(const std::string& name) {
  if (name == "euclidean") return DiscrepancyKind::euclidean;
  if (name == "mmd") return DiscrepancyKind::mmd;
  if (name == "kl") return DiscrepancyKind::kl;
  if (name == "wasserstein") return DiscrepancyKind::wasserstein;
  if (name == "cvm") return DiscrepancyKind::cvm;
  throw std::invalid_argument("unknown discrepancy: " + name);
}

void AbcConfig::validate() const {
  if (num_sims < 1) throw std::invalid_argument("AbcConfig: num_sims must be >= 1");
  if (tolerance_mode == ToleranceMode::quantile) {
    if (!(quantile > 0.0 && quantile <= 1.0)) {
      throw std::invalid_argument("AbcConfig: quantile outside (0,1]");
    }
  } else if (!(epsilon >= 0.0)) {
    throw std::invalid_argument("AbcConfig: epsilon must be >= 0");
  }
  if (data_mode == DataMode::summaries &&
      discrepancy.kind != DiscrepancyKind::euclidean) {
    throw std::invalid_argument(
        "AbcConfig: sample-based discrepancies require full-data mode");
  }
}

std::vector<Theta> WeightedSamples::accepted_thetas() const {
  std::vector<Theta> out;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (accepted[i]) out.push_back(thetas[i]);
  }
  return out;
}

std::vector<double> WeightedSamples::accepted_component(std::size_t comp) const {
  std::vector<double> out;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (accepted[i]) out.push_back(thetas[i][comp]);
  }
  return out;
}

WeightedSamples rejection_abc(const AbcConfig& cfg, const AbcProblem& problem,
                              const TimeSeries& observed, const Prior& prior,
                              RngStream& rng) {
  cfg.validate();
  if (observed.empty()) throw std::invalid_argument("rejection_abc: observed data empty");
  if (!problem.simulate) throw std::invalid_argument("rejection_abc: no simulator");

  const std::size_t n = cfg.num_sims;
  WeightedSamples result;
  result.thetas.resize(n);
  result.discrepancies.resize(n);
  result.accepted.assign(n, 0);

  if (cfg.data_mode == AbcConfig::DataMode::summaries) {
    if (!problem.summarise) throw std::invalid_argument("rejection_abc: no summary map");
    SummaryVec s_obs = problem.summarise(observed);
    std::vector<double> scales(s_obs.size(), 1.0);
    if (cfg.standardise) {
      // Component scale from a pilot batch of prior-predictive summaries.
      RngStream pilot_root = rng.substream(kPilotPhase);
      std::vector<std::vector<double>> comps(s_obs.size());
      for (std::size_t i = 0; i < cfg.pilot_sims; ++i) {
        RngStream r = pilot_root.substream(i);
        Theta theta = prior.sample(r);
        SummaryVec s = problem.summarise(problem.simulate(theta, r));
        for (std::size_t c = 0; c < s.size(); ++c) comps[c].push_back(s[c]);
      }
      for (std::size_t c = 0; c < scales.size(); ++c) {
        double sd = stats::stddev(comps[c]);
        scales[c] = sd > 0.0 ? sd : 1.0;
      }
      result.summary_scales = scales;
    }
    RngStream draw_root = rng.substream(kDrawPhase);
    parallel_for(n, cfg.num_threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        RngStream r = draw_root.substream(i);
        Theta theta = prior.sample(r);
        SummaryVec s = problem.summarise(problem.simulate(theta, r));
        result.discrepancies[i] = standardised_euclidean(s, s_obs, scales);
        result.thetas[i] = std::move(theta);
      }
    });
  } else {
    SampleSet obs_set = SampleSet::scalars(observed);
    DiscrepancySpec spec = cfg.discrepancy;
    if (spec.kind == DiscrepancyKind::mmd && spec.kernel.bandwidth <= 0.0) {
      spec.kernel.bandwidth = median_heuristic_bandwidth(obs_set);
    }
    RngStream draw_root = rng.substream(kDrawPhase);
    parallel_for(n, cfg.num_threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        RngStream r = draw_root.substream(i);
        Theta theta = prior.sample(r);
        TimeSeries sim = problem.simulate(theta, r);
        SampleSet sim_set = SampleSet::scalars(sim);
        double d = 0.0;
        switch (spec.kind) {
          case DiscrepancyKind::euclidean:
            d = euclidean(sim, observed);
            break;
          case DiscrepancyKind::mmd:
            d = mmd2_unbiased(sim_set, obs_set, spec.kernel);
            break;
          case DiscrepancyKind::kl:
            // KL(observed || simulated), the direction estimable when the
            // simulated sample is at least as rich as the observed one.
            d = kl_knn(obs_set, sim_set, spec.knn_k);
            break;
          case DiscrepancyKind::wasserstein:
            d = wasserstein_1d(sim_set, obs_set);
            break;
          case DiscrepancyKind::cvm:
            d = cvm(sim_set, obs_set);
            break;
        }
        result.discrepancies[i] = d;
        result.thetas[i] = std::move(theta);
      }
    });
  }

  double eps = cfg.tolerance_mode == AbcConfig::ToleranceMode::absolute
                   ? cfg.epsilon
                   : tolerance_from_quantile(result.discrepancies, cfg.quantile);
  apply_threshold(result, eps);
  result.zero_acceptance_warning = result.acceptance_rate == 0.0;
  return result;
}

void apply_threshold(WeightedSamples& samples, double epsilon) {
  samples.epsilon = epsilon;
  std::size_t count = 0;
  for (std::size_t i = 0; i < samples.discrepancies.size(); ++i) {
    bool ok = samples.discrepancies[i] <= epsilon;
    samples.accepted[i] = ok ? 1 : 0;
    count += ok;
  }
  samples.acceptance_rate =
      samples.discrepancies.empty()
          ? 0.0
          : static_cast<double>(count) / static_cast<double>(samples.discrepancies.size());
  samples.zero_acceptance_warning = count == 0;
}

double tolerance_from_quantile(const std::vector<double>& discrepancies, double q) {
  if (discrepancies.empty()) {
    throw std::invalid_argument("tolerance_from_quantile: empty list");
  }
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::invalid_argument("tolerance_from_quantile: q outside (0,1]");
  }
  return stats::quantile(discrepancies, q);
}

AcceptDecayCurve acceptance_decay(const std::vector<double>& discrepancies,
                                  const std::vector<double>& eps_grid) {
  if (eps_grid.empty()) throw std::invalid_argument("acceptance_decay: empty grid");
  if (!std::is_sorted(eps_grid.begin(), eps_grid.end())) {
    throw std::invalid_argument("acceptance_decay: grid must be ascending");
  }
  std::vector<double> sorted = discrepancies;
  std::sort(sorted.begin(), sorted.end());
  AcceptDecayCurve curve;
  curve.epsilons = eps_grid;
  curve.acceptance.reserve(eps_grid.size());
  const double n = static_cast<double>(sorted.size());
  for (double eps : eps_grid) {
    auto it = std::upper_bound(sorted.begin(), sorted.end(), eps);
    curve.acceptance.push_back(n == 0.0 ? 0.0 : static_cast<double>(it - sorted.begin()) / n);
  }

  std::size_t lo = 0, hi = eps_grid.size();
  if (eps_grid.size() >= 4) {
    lo = 1;
    hi = eps_grid.size() - 1;
  }
  std::size_t k = hi - lo;
  if (k >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      sx += curve.epsilons[i];
      sy += curve.acceptance[i];
      sxx += curve.epsilons[i] * curve.epsilons[i];
      sxy += curve.epsilons[i] * curve.acceptance[i];
    }
    double kk = static_cast<double>(k);
    double denom = kk * sxx - sx * sx;
    double slope = denom != 0.0 ? (kk * sxy - sx * sy) / denom : 0.0;
    double intercept = (sy - slope * sx) / kk;
    double dev = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      dev = std::max(dev, std::abs(curve.acceptance[i] -
                                   (intercept + slope * curve.epsilons[i])));
    }
    curve.linearity_deviation = dev;
  }
  return curve;
}

}  // namespace robsbi
