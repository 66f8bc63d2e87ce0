#pragma once

#include <functional>
#include <limits>

#include "robsbi/rng.hpp"

namespace robsbi {

struct SliceOptions {
  double width = 1.0;
  int max_step_out = 50;  // expansion steps per side
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

/// One univariate slice-sampling update (stepping-out + shrinkage, Neal 2003)
/// targeting the density exp(log_density). Rejection-free; leaves the target
/// invariant. log_density(x0) must be finite.
double slice_sample(const std::function<double(double)>& log_density, double x0,
                    const SliceOptions& opt, RngStream& rng);

}  // namespace robsbi
