#include "robsbi/models.hpp"

#include <cmath>
#include <stdexcept>

namespace robsbi {

void SvParams::validate() const {
  if (!std::isfinite(omega)) throw std::invalid_argument("SvParams: omega not finite");
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw std::invalid_argument("SvParams: kappa outside (0,1)");
  }
  if (!(sigma_v > 0.0 && sigma_v < 1.0)) {
    throw std::invalid_argument("SvParams: sigma_v outside (0,1)");
  }
}

TimeSeries simulate_ma1(const Theta& theta, std::size_t length, RngStream& rng) {
  if (theta.dim() != 1 || !std::isfinite(theta[0])) {
    throw std::invalid_argument("simulate_ma1: theta must be a finite scalar");
  }
  if (length < 2) throw std::invalid_argument("simulate_ma1: length must be >= 2");
  const double coeff = theta[0];
  TimeSeries y(length);
  double w_prev = rng.normal();
  for (std::size_t t = 0; t < length; ++t) {
    double w = rng.normal();
    y[t] = w + coeff * w_prev;
    w_prev = w;
  }
  return y;
}

TimeSeries simulate_ma1_from_noise(const Theta& theta, std::span<const double> noise) {
  if (theta.dim() != 1 || !std::isfinite(theta[0])) {
    throw std::invalid_argument("simulate_ma1_from_noise: theta must be a finite scalar");
  }
  if (noise.size() < 3) {
    throw std::invalid_argument("simulate_ma1_from_noise: need T+1 >= 3 noise values");
  }
  const double coeff = theta[0];
  TimeSeries y(noise.size() - 1);
  for (std::size_t t = 1; t < noise.size(); ++t) {
    y[t - 1] = noise[t] + coeff * noise[t - 1];
  }
  return y;
}

TimeSeries simulate_sv(const SvParams& p, std::size_t length, RngStream& rng) {
  p.validate();
  if (length < 2) throw std::invalid_argument("simulate_sv: length must be >= 2");
  const double stat_mean = p.omega / (1.0 - p.kappa);
  const double stat_sd = p.sigma_v / std::sqrt(1.0 - p.kappa * p.kappa);
  double z = stat_mean + stat_sd * rng.normal();
  TimeSeries y(length);
  for (std::size_t t = 0; t < length; ++t) {
    z = p.omega + p.kappa * z + p.sigma_v * rng.normal();
    y[t] = std::exp(0.5 * z) * rng.normal();
  }
  return y;
}

DataSimulator make_ma1_simulator(std::size_t length) {
  return [length](const Theta& theta, RngStream& rng) {
    return simulate_ma1(theta, length, rng);
  };
}

}  // namespace robsbi
