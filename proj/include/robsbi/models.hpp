#pragma once

#include <cstddef>
#include <span>

#include "robsbi/rng.hpp"
#include "robsbi/types.hpp"

namespace robsbi {

/// Log-volatility AR(1) parameters: z_t = omega + kappa z_{t-1} + sigma_v v_t.
struct SvParams {
  double omega;
  double kappa;    // in (0,1)
  double sigma_v;  // in (0,1)

  void validate() const;
};

/// MA(1): y_t = w_t + theta w_{t-1}, w_t iid N(0,1), w_0 drawn fresh.
TimeSeries simulate_ma1(const Theta& theta, std::size_t length, RngStream& rng);

/// Deterministic MA(1) core driven by an injected noise path of length T+1
/// (w_0..w_T); produces T observations.
TimeSeries simulate_ma1_from_noise(const Theta& theta, std::span<const double> noise);

/// Stochastic volatility: y_t = exp(z_t/2) u_t with z following the AR(1)
/// above, z_0 drawn from its stationary law N(omega/(1-kappa),
/// sigma_v^2/(1-kappa^2)).
TimeSeries simulate_sv(const SvParams& p, std::size_t length, RngStream& rng);

/// Parameters the benchmark's observed data are generated from.
inline constexpr SvParams kBenchmarkSvParams{-0.76, 0.90, 0.36};

/// (theta, rng) -> MA(1) series of fixed length.
DataSimulator make_ma1_simulator(std::size_t length);

}  // namespace robsbi
