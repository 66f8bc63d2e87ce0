#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "robsbi/discrepancies.hpp"
#include "robsbi/prior.hpp"
#include "robsbi/rng.hpp"
#include "robsbi/types.hpp"

namespace robsbi {

enum class DiscrepancyKind { euclidean, mmd, kl, wasserstein, cvm };

std::string discrepancy_name(DiscrepancyKind kind);
DiscrepancyKind discrepancy_from_name(const std::string& name);

struct DiscrepancySpec {
  DiscrepancyKind kind = DiscrepancyKind::euclidean;
  /// MMD kernel; bandwidth <= 0 selects the median heuristic computed once
  /// from the observed sample.
  KernelSpec kernel{KernelSpec::Family::gaussian, 0.0};
  std::size_t knn_k = 1;
};

struct AbcConfig {
  std::size_t num_sims = 1000;

  enum class ToleranceMode { absolute, quantile };
  ToleranceMode tolerance_mode = ToleranceMode::quantile;
  double epsilon = std::numeric_limits<double>::infinity();
  double quantile = 0.01;

  enum class DataMode { summaries, full_data };
  DataMode data_mode = DataMode::summaries;

  DiscrepancySpec discrepancy{};

  /// Summaries mode: scale each component by a pilot-batch standard
  /// deviation before the Euclidean comparison.
  bool standardise = true;
  std::size_t pilot_sims = 1000;

  std::size_t num_threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct AbcProblem {
  DataSimulator simulate;
  SummaryFn summarise;  // required in summaries mode
};

/// All N draws are retained together with their discrepancies, so the
/// acceptance set can be recomputed at any tolerance after the fact.
struct WeightedSamples {
  std::vector<Theta> thetas;
  std::vector<double> discrepancies;
  std::vector<char> accepted;
  double epsilon = 0.0;
  double acceptance_rate = 0.0;
  bool zero_acceptance_warning = false;
  /// Component scales used for standardised summary comparison (empty when
  /// standardisation is off or in full-data mode).
  std::vector<double> summary_scales;

  std::vector<Theta> accepted_thetas() const;
  std::vector<double> accepted_component(std::size_t comp) const;
};

WeightedSamples rejection_abc(const AbcConfig& cfg, const AbcProblem& problem,
                              const TimeSeries& observed, const Prior& prior,
                              RngStream& rng);

/// Recompute acceptance flags and rate at a new tolerance.
void apply_threshold(WeightedSamples& samples, double epsilon);

/// Empirical q-quantile of the discrepancies (linear interpolation,
/// endpoints inclusive); q in (0, 1].
double tolerance_from_quantile(const std::vector<double>& discrepancies, double q);

struct AcceptDecayCurve {
  std::vector<double> epsilons;
  std::vector<double> acceptance;
  /// Max absolute residual of the least-squares line fitted through the
  /// interior grid points (all points when the grid has fewer than four).
  double linearity_deviation = 0.0;
};

AcceptDecayCurve acceptance_decay(const std::vector<double>& discrepancies,
                                  const std::vector<double>& eps_grid);

}  // namespace robsbi
