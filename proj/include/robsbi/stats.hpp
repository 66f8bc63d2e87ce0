#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace robsbi::stats {

double mean(const std::vector<double>& x);
/// Unbiased sample variance (n-1 divisor); requires n >= 2.
double variance(const std::vector<double>& x);
double stddev(const std::vector<double>& x);

/// Empirical q-quantile with linear interpolation over order statistics,
/// endpoints inclusive (q=0 -> min, q=1 -> max).
double quantile(std::vector<double> x, double q);

/// Two-sample Kolmogorov-Smirnov statistic sup_t |F_x(t) - F_y(t)|.
double ks_two_sample(std::vector<double> x, std::vector<double> y);

/// One-sample KS statistic against a continuous CDF.
double ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf);

/// Asymptotic Kolmogorov tail probability P(sqrt(n_eff) D > sqrt(n_eff) d).
/// For the two-sample case pass n_eff = n*m/(n+m).
double ks_pvalue(double d, double n_eff);

/// Mode of a kernel-smoothed density (Gaussian kernel, Silverman bandwidth
/// unless overridden), located by grid search over the sample range.
double kde_mode(const std::vector<double>& x, double bandwidth = 0.0,
                std::size_t grid_size = 512);

/// Number of local maxima of the smoothed density whose height exceeds
/// `rel_threshold` times the global maximum.
std::size_t kde_mode_count(const std::vector<double>& x, double bandwidth = 0.0,
                           std::size_t grid_size = 512, double rel_threshold = 0.1);

}  // namespace robsbi::stats
