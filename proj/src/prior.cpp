#include "robsbi/prior.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace robsbi {

Prior::Prior(std::vector<PriorComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("Prior: no components");
  double log_vol = 0.0;
  for (const auto& c : components_) {
    if (!(c.lo < c.hi) || !std::isfinite(c.lo) || !std::isfinite(c.hi)) {
      throw std::invalid_argument("Prior: invalid bounds");
    }
    log_vol += std::log(c.hi - c.lo);
  }
  log_density_on_support_ = -log_vol;
}

Theta Prior::sample(RngStream& rng) const {
  std::vector<double> v(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) {
    v[i] = rng.uniform(components_[i].lo, components_[i].hi);
  }
  return Theta(std::move(v));
}

std::vector<Theta> Prior::sample_n(std::size_t n, RngStream& rng) const {
  if (n == 0) throw std::invalid_argument("Prior::sample_n: n must be >= 1");
  std::vector<Theta> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample(rng));
  return out;
}

double Prior::logpdf(const Theta& theta) const {
  if (!contains(theta)) return -std::numeric_limits<double>::infinity();
  return log_density_on_support_;
}

bool Prior::contains(const Theta& theta) const {
  if (theta.dim() != components_.size()) return false;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    double x = theta[i];
    if (!(x >= components_[i].lo && x <= components_[i].hi)) return false;
  }
  return true;
}

}  // namespace robsbi
