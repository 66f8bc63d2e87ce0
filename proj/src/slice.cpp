#include "robsbi/slice.hpp"

#include <cmath>
#include <stdexcept>

namespace robsbi {

double slice_sample(const std::function<double(double)>& log_density, double x0,
                    const SliceOptions& opt, RngStream& rng) {
  double log_fx0 = log_density(x0);
  if (!std::isfinite(log_fx0)) {
    throw std::invalid_argument("slice_sample: log density not finite at x0");
  }
  double log_y = log_fx0 - rng.exponential(1.0);

  // Place an interval of the initial width around x0, then step out.
  double u = rng.uniform();
  double left = x0 - opt.width * u;
  double right = left + opt.width;
  for (int i = 0; i < opt.max_step_out; ++i) {
    if (left <= opt.lower || log_density(left) <= log_y) break;
    left -= opt.width;
  }
  for (int i = 0; i < opt.max_step_out; ++i) {
    if (right >= opt.upper || log_density(right) <= log_y) break;
    right += opt.width;
  }
  if (left < opt.lower) left = opt.lower;
  if (right > opt.upper) right = opt.upper;

  // Shrinkage: sample until inside the slice.
  while (true) {
    double x1 = rng.uniform(left, right);
    if (log_density(x1) > log_y) return x1;
    if (x1 > x0) {
      right = x1;
    } else if (x1 < x0) {
      left = x1;
    } else {
      return x0;  // interval collapsed onto the current point
    }
  }
}

}  // namespace robsbi
