#pragma once

#include <vector>

#include "robsbi/rng.hpp"
#include "robsbi/types.hpp"

namespace robsbi {

/// Per-component prior descriptor. Only independent uniforms are needed for
/// the benchmark; the component list keeps the door open for other families.
struct PriorComponent {
  double lo;
  double hi;
};

class Prior {
 public:
  explicit Prior(std::vector<PriorComponent> components);

  static Prior uniform(double lo, double hi) {
    return Prior({PriorComponent{lo, hi}});
  }

  std::size_t dim() const { return components_.size(); }
  const PriorComponent& component(std::size_t i) const { return components_[i]; }

  Theta sample(RngStream& rng) const;
  std::vector<Theta> sample_n(std::size_t n, RngStream& rng) const;

  /// Log-density; -inf outside the (closed) support box.
  double logpdf(const Theta& theta) const;
  bool contains(const Theta& theta) const;

 private:
  std::vector<PriorComponent> components_;
  double log_density_on_support_;
};

}  // namespace robsbi
