#pragma once

#include <functional>
#include <string>
#include <vector>

#include "robsbi/models.hpp"
#include "robsbi/types.hpp"

namespace robsbi {

/// First `num_lags` autocovariances, zeta_j = (1/T) sum_{i=j}^{T-1} x_i x_{i-j}
/// for j = 0..num_lags-1 (zeta_0 is the uncentred second moment).
SummaryVec autocov_summaries(const TimeSeries& ts, std::size_t num_lags);

SummaryFn make_autocov_summary(std::size_t num_lags);

/// Expected (zeta_0, zeta_1) under MA(1): (1 + theta^2, theta).
SummaryVec binding_ma1(const Theta& theta);

/// Expected summaries under the volatility model:
/// (exp(omega/(1-kappa) + sigma_v^2 / (2 (1-kappa^2))), 0).
SummaryVec binding_star_sv(const SvParams& p);

/// Result of minimising distance(b_star, binding(theta)) over a grid.
struct CompatibilityReport {
  double epsilon_star;
  Theta theta_star;
  std::string distance_name;
};

using BindingFn = std::function<SummaryVec(const Theta&)>;
using SummaryDistance = std::function<double(const SummaryVec&, const SummaryVec&)>;

/// Grid minimiser of d(b_star, binding(theta)); resolution is the caller's.
/// With refine=true a golden-section pass tightens the optimum inside the
/// bracketing grid cell (scalar theta only) while theta_star stays on the grid.
CompatibilityReport epsilon_star(const SummaryVec& b_star, const BindingFn& binding,
                                 const std::vector<Theta>& grid,
                                 const SummaryDistance& distance,
                                 const std::string& distance_name = "euclidean",
                                 bool refine = false);

/// Uniformly spaced scalar grid with `points` nodes on [lo, hi], inclusive.
std::vector<Theta> theta_grid(double lo, double hi, std::size_t points);

}  // namespace robsbi
