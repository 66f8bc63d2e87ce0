#pragma once

#include <functional>
#include <vector>

namespace robsbi {

class RngStream;

/// Model parameter vector (benchmark dimension: 1).
struct Theta {
  std::vector<double> values;

  Theta() = default;
  explicit Theta(std::vector<double> v) : values(std::move(v)) {}
  static Theta scalar(double x) { return Theta(std::vector<double>{x}); }

  std::size_t dim() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Observed or simulated series of scalar observations.
using TimeSeries = std::vector<double>;

/// d-dimensional summary-statistic vector.
using SummaryVec = std::vector<double>;

/// Per-summary adjustment parameters.
using AdjustmentVector = std::vector<double>;

/// In-process simulator contract: parameters + stream -> dataset.
using DataSimulator = std::function<TimeSeries(const Theta&, RngStream&)>;

/// Dataset -> summary vector.
using SummaryFn = std::function<SummaryVec(const TimeSeries&)>;

/// Composed shortcut used by likelihood-level code.
using SummarySimulator = std::function<SummaryVec(const Theta&, RngStream&)>;

}  // namespace robsbi
