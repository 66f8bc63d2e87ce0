#pragma once

#include <optional>

#include "robsbi/robust_bsl.hpp"
#include "robsbi/synthetic_likelihood.hpp"

namespace robsbi::detail {

struct GammaMachinery {
  RbslVariant variant;
  GammaPrior prior;
  SliceOptions slice;
  AdjustmentVector init;
  bool freeze = false;
};

// Shared pseudo-marginal driver. Per-iteration substream layout:
//   it = rng.substream(t + 1)
//   it.substream(0): gamma slice updates (skipped without gamma machinery)
//   it.substream(1): theta proposal + accept decision
//   it.substream(2): moment simulations at the proposal
// Substream derivation is state-free, so the standard chain and a
// gamma-frozen adjusted chain consume identical theta-step randomness.
Chain run_pseudo_marginal_chain(const MomentEstimator& estimate, const Prior& prior,
                                const SummaryVec& s_obs, const McmcConfig& cfg,
                                const std::optional<GammaMachinery>& gamma_spec,
                                RngStream& rng);

}  // namespace robsbi::detail
