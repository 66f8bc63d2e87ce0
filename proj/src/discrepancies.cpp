#include "robsbi/discrepancies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace robsbi {
namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void check_dims(const SampleSet& x, const SampleSet& y, const char* who) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
  }
}

std::vector<double> sorted_scalars(const SampleSet& s, const char* who) {
  if (s.dim() != 1) throw std::invalid_argument(std::string(who) + ": expects q = 1");
  if (s.size() == 0) throw std::invalid_argument(std::string(who) + ": empty sample");
  std::vector<double> v = s.data();
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

SampleSet::SampleSet(std::vector<double> data, std::size_t dim)
    : data_(std::move(data)), dim_(dim) {
  if (dim_ == 0 || data_.size() % dim_ != 0) {
    throw std::invalid_argument("SampleSet: data size not a multiple of dim");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw std::invalid_argument("SampleSet: non-finite value");
  }
}

SampleSet SampleSet::scalars(std::vector<double> values) {
  return SampleSet(std::move(values), 1);
}

double euclidean(const SummaryVec& a, const SummaryVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("euclidean: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double mmd2_unbiased(const SampleSet& x, const SampleSet& y, const KernelSpec& kernel) {
  check_dims(x, y, "mmd2_unbiased");
  const std::size_t m = x.size(), n = y.size();
  if (m < 2 || n < 2) throw std::invalid_argument("mmd2_unbiased: need >= 2 points per set");
  if (!(kernel.bandwidth > 0.0)) throw std::invalid_argument("mmd2_unbiased: bandwidth <= 0");
  const double inv_two_h2 = 1.0 / (2.0 * kernel.bandwidth * kernel.bandwidth);

  double xx = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      xx += std::exp(-sq_dist(x.row(i), x.row(j)) * inv_two_h2);
    }
  }
  double yy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      yy += std::exp(-sq_dist(y.row(i), y.row(j)) * inv_two_h2);
    }
  }
  double xy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      xy += std::exp(-sq_dist(x.row(i), y.row(j)) * inv_two_h2);
    }
  }
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  return 2.0 * xx / (md * (md - 1.0)) + 2.0 * yy / (nd * (nd - 1.0)) -
         2.0 * xy / (md * nd);
}

double median_heuristic_bandwidth(const SampleSet& z) {
  const std::size_t n = z.size();
  if (n < 2) throw std::invalid_argument("median_heuristic_bandwidth: need >= 2 points");
  std::vector<double> dists;
  dists.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dists.push_back(std::sqrt(sq_dist(z.row(i), z.row(j))));
    }
  }
  std::size_t mid = dists.size() / 2;
  std::nth_element(dists.begin(), dists.begin() + mid, dists.end());
  double med = dists[mid];
  if (dists.size() % 2 == 0) {
    double lower = *std::max_element(dists.begin(), dists.begin() + mid);
    med = 0.5 * (lower + med);
  }
  return med > 0.0 ? med : 1.0;
}

double kl_knn(const SampleSet& x, const SampleSet& y, std::size_t k) {
  check_dims(x, y, "kl_knn");
  const std::size_t n = x.size(), m = y.size();
  if (k == 0) throw std::invalid_argument("kl_knn: k must be >= 1");
  if (n <= k || m < k) throw std::invalid_argument("kl_knn: samples too small for k");
  const double q = static_cast<double>(x.dim());

  // Brute-force neighbour search; sample sizes stay in the thousands here.
  std::vector<double> buf;
  auto kth_radius = [&](std::span<const double> p, const SampleSet& s, bool skip_self) {
    buf.clear();
    for (std::size_t j = 0; j < s.size(); ++j) buf.push_back(sq_dist(p, s.row(j)));
    if (skip_self) {
      // drop exactly one zero: the point's distance to itself
      auto it = std::find(buf.begin(), buf.end(), 0.0);
      if (it != buf.end()) buf.erase(it);
    }
    std::nth_element(buf.begin(), buf.begin() + static_cast<long>(k - 1), buf.end());
    return std::sqrt(buf[k - 1]);
  };

  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double rho = kth_radius(x.row(i), x, true);
    double nu = kth_radius(x.row(i), y, false);
    if (rho == 0.0 || nu == 0.0) {
      throw std::domain_error("kl_knn: duplicate points produce a zero k-NN radius");
    }
    acc += std::log(nu / rho);
  }
  return (q / static_cast<double>(n)) * acc +
         std::log(static_cast<double>(m) / static_cast<double>(n - 1));
}

double wasserstein_1d(const SampleSet& x, const SampleSet& y) {
  std::vector<double> xs = sorted_scalars(x, "wasserstein_1d");
  std::vector<double> ys = sorted_scalars(y, "wasserstein_1d");
  const std::size_t n = xs.size(), m = ys.size();
  if (n == m) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(xs[i] - ys[i]);
    return s / static_cast<double>(n);
  }
  // Integrate |Fx^{-1}(u) - Fy^{-1}(u)| exactly over the merged quantile
  // breakpoints i/n and j/m.
  double total = 0.0;
  double u = 0.0;
  std::size_t i = 0, j = 0;
  while (i < n && j < m) {
    double next_i = static_cast<double>(i + 1) / static_cast<double>(n);
    double next_j = static_cast<double>(j + 1) / static_cast<double>(m);
    double next = std::min(next_i, next_j);
    total += (next - u) * std::abs(xs[i] - ys[j]);
    u = next;
    if (next_i <= next) ++i;
    if (next_j <= next) ++j;
  }
  return total;
}

double cvm(const SampleSet& x, const SampleSet& y) {
  std::vector<double> xs = sorted_scalars(x, "cvm");
  std::vector<double> ys = sorted_scalars(y, "cvm");
  const double n = static_cast<double>(xs.size());
  const double m = static_cast<double>(ys.size());
  std::vector<double> pooled;
  pooled.reserve(xs.size() + ys.size());
  pooled.insert(pooled.end(), xs.begin(), xs.end());
  pooled.insert(pooled.end(), ys.begin(), ys.end());
  std::sort(pooled.begin(), pooled.end());

  double s = 0.0;
  for (double t : pooled) {
    double fn = static_cast<double>(std::upper_bound(xs.begin(), xs.end(), t) - xs.begin()) / n;
    double gm = static_cast<double>(std::upper_bound(ys.begin(), ys.end(), t) - ys.begin()) / m;
    double d = fn - gm;
    s += d * d;
  }
  double total = n + m;
  return (n * m) / (total * total) * s;
}

}  // namespace robsbi
