#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "robsbi/types.hpp"

namespace robsbi {

/// n points in R^q, stored row-major.
class SampleSet {
 public:
  SampleSet(std::vector<double> data, std::size_t dim);
  /// Scalar samples (q = 1).
  static SampleSet scalars(std::vector<double> values);

  std::size_t size() const { return data_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  const std::vector<double>& data() const { return data_; }

 private:
  std::vector<double> data_;
  std::size_t dim_;
};

struct KernelSpec {
  enum class Family { gaussian };
  Family family = Family::gaussian;
  double bandwidth = 1.0;
};

/// l2 norm of a - b; lengths must match.
double euclidean(const SummaryVec& a, const SummaryVec& b);

/// Unbiased U-statistic estimator of the squared maximum mean discrepancy,
///   1/(m(m-1)) sum_{i!=j} K(x_i,x_j) + 1/(n(n-1)) sum_{i!=j} K(y_i,y_j)
///   - 2/(mn) sum_{i,j} K(x_i,y_j),
/// with K(x,y) = exp(-|x-y|^2 / (2 h^2)). May be negative.
double mmd2_unbiased(const SampleSet& x, const SampleSet& y, const KernelSpec& kernel);

/// Median pairwise Euclidean distance in z (pool two samples before calling
/// when a two-sample bandwidth is wanted); 1.0 when the median is zero.
double median_heuristic_bandwidth(const SampleSet& z);

/// k-nearest-neighbour estimate of KL(X || Y):
///   (q/n) sum_i log(nu_k(i) / rho_k(i)) + log(m / (n-1)),
/// rho_k = k-NN radius of x_i within X \ {x_i}, nu_k = k-NN radius into Y.
/// Not symmetric. Throws if duplicate points force a zero radius.
double kl_knn(const SampleSet& x, const SampleSet& y, std::size_t k = 1);

/// Order-1 Wasserstein distance between scalar empirical distributions;
/// equal sizes reduce to the mean absolute difference of sorted samples,
/// unequal sizes are handled through the quantile representation.
double wasserstein_1d(const SampleSet& x, const SampleSet& y);

/// Two-sample Cramer-von Mises criterion
///   T = nm/(n+m)^2 * sum over pooled points of (F_n - G_m)^2.
double cvm(const SampleSet& x, const SampleSet& y);

}  // namespace robsbi
