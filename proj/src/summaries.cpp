#include "robsbi/summaries.hpp"

#include <cmath>
#include <stdexcept>

namespace robsbi {

SummaryVec autocov_summaries(const TimeSeries& ts, std::size_t num_lags) {
  if (num_lags >= ts.size()) {
    throw std::invalid_argument("autocov_summaries: series shorter than lag count");
  }
  const double n = static_cast<double>(ts.size());
  SummaryVec out(num_lags);
  for (std::size_t j = 0; j < num_lags; ++j) {
    double s = 0.0;
    for (std::size_t i = j; i < ts.size(); ++i) s += ts[i] * ts[i - j];
    out[j] = s / n;
  }
  return out;
}

SummaryFn make_autocov_summary(std::size_t num_lags) {
  return [num_lags](const TimeSeries& ts) { return autocov_summaries(ts, num_lags); };
}

SummaryVec binding_ma1(const Theta& theta) {
  if (theta.dim() != 1) throw std::invalid_argument("binding_ma1: scalar theta expected");
  double t = theta[0];
  return {1.0 + t * t, t};
}

SummaryVec binding_star_sv(const SvParams& p) {
  p.validate();
  double mean_z = p.omega / (1.0 - p.kappa);
  double var_z = p.sigma_v * p.sigma_v / (1.0 - p.kappa * p.kappa);
  return {std::exp(mean_z + 0.5 * var_z), 0.0};
}

std::vector<Theta> theta_grid(double lo, double hi, std::size_t points) {
  if (points < 2) throw std::invalid_argument("theta_grid: need at least 2 points");
  std::vector<Theta> grid;
  grid.reserve(points);
  double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid.push_back(Theta::scalar(lo + step * static_cast<double>(i)));
  }
  return grid;
}

CompatibilityReport epsilon_star(const SummaryVec& b_star, const BindingFn& binding,
                                 const std::vector<Theta>& grid,
                                 const SummaryDistance& distance,
                                 const std::string& distance_name, bool refine) {
  if (grid.empty()) throw std::invalid_argument("epsilon_star: empty grid");
  std::size_t best = 0;
  double best_d = distance(b_star, binding(grid[0]));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double d = distance(b_star, binding(grid[i]));
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  CompatibilityReport report{best_d, grid[best], distance_name};

  if (refine && grid[best].dim() == 1 && grid.size() >= 3) {
    // Golden-section search inside the bracketing cell; only the reported
    // epsilon improves, theta_star stays a grid point.
    double lo = grid[best > 0 ? best - 1 : best][0];
    double hi = grid[best + 1 < grid.size() ? best + 1 : best][0];
    auto f = [&](double t) { return distance(b_star, binding(Theta::scalar(t))); };
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80 && (b - a) > 1e-14; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = f(d);
      }
    }
    report.epsilon_star = std::min(report.epsilon_star, std::min(fc, fd));
  }
  return report;
}

}  // namespace robsbi
