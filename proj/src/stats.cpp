#include "robsbi/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace robsbi::stats {

double mean(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("mean: empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(const std::vector<double>& x) {
  if (x.size() < 2) throw std::invalid_argument("variance: need at least 2 points");
  double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

double stddev(const std::vector<double>& x) { return std::sqrt(variance(x)); }

double quantile(std::vector<double> x, double q) {
  if (x.empty()) throw std::invalid_argument("quantile: empty sample");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile: q outside [0,1]");
  std::sort(x.begin(), x.end());
  double pos = q * static_cast<double>(x.size() - 1);
  auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= x.size()) return x.back();
  double frac = pos - static_cast<double>(lo);
  return x[lo] + frac * (x[lo + 1] - x[lo]);
}

double ks_two_sample(std::vector<double> x, std::vector<double> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf) {
  if (x.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double f = cdf(x[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

double ks_pvalue(double d, double n_eff) {
  double lambda = (std::sqrt(n_eff) + 0.12 + 0.11 / std::sqrt(n_eff)) * d;
  if (lambda < 1e-8) return 1.0;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = 2.0 * ((k % 2 == 1) ? 1.0 : -1.0) *
                  std::exp(-2.0 * lambda * lambda * k * k);
    p += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

namespace {

std::vector<double> kde_curve(const std::vector<double>& x, double bandwidth,
                              std::size_t grid_size, std::vector<double>& grid) {
  if (x.empty()) throw std::invalid_argument("kde: empty sample");
  double h = bandwidth;
  if (h <= 0.0) {
    // Silverman's rule; falls back to a nominal width for degenerate samples.
    double sd = x.size() >= 2 ? stddev(x) : 0.0;
    h = sd > 0.0 ? 1.06 * sd * std::pow(static_cast<double>(x.size()), -0.2) : 1.0;
  }
  auto [mn_it, mx_it] = std::minmax_element(x.begin(), x.end());
  double lo = *mn_it - 3.0 * h, hi = *mx_it + 3.0 * h;
  grid.resize(grid_size);
  std::vector<double> dens(grid_size, 0.0);
  double step = (hi - lo) / static_cast<double>(grid_size - 1);
  for (std::size_t g = 0; g < grid_size; ++g) {
    double t = lo + step * static_cast<double>(g);
    grid[g] = t;
    double s = 0.0;
    for (double v : x) {
      double z = (t - v) / h;
      s += std::exp(-0.5 * z * z);
    }
    dens[g] = s;
  }
  return dens;
}

}  // namespace

double kde_mode(const std::vector<double>& x, double bandwidth, std::size_t grid_size) {
  std::vector<double> grid;
  auto dens = kde_curve(x, bandwidth, grid_size, grid);
  auto it = std::max_element(dens.begin(), dens.end());
  return grid[static_cast<std::size_t>(it - dens.begin())];
}

std::size_t kde_mode_count(const std::vector<double>& x, double bandwidth,
                           std::size_t grid_size, double rel_threshold) {
  std::vector<double> grid;
  auto dens = kde_curve(x, bandwidth, grid_size, grid);
  double peak = *std::max_element(dens.begin(), dens.end());
  std::size_t count = 0;
  for (std::size_t g = 1; g + 1 < dens.size(); ++g) {
    if (dens[g] > dens[g - 1] && dens[g] >= dens[g + 1] &&
        dens[g] > rel_threshold * peak) {
      ++count;
    }
  }
  return count;
}

}  // namespace robsbi::stats
