#pragma once

// Verdicts on infinite nonnegative series decided from a declared tail model.

#include <cstddef>
#include <optional>
#include <string>

namespace aqt {

enum class SeriesOutcome { convergent, divergent, undecided };

std::string to_string(SeriesOutcome v);

struct SeriesVerdict {
  SeriesOutcome verdict = SeriesOutcome::undecided;
  /// Sum of the terms over [window_first, window_last] in increasing order.
  double partial_sum = 0.0;
  std::size_t window_first = 1;
  std::size_t window_last = 0;
  /// Analytic comparison used: "finite-support", "p-series", "constant-defect",
  /// "numeric-window".
  std::string justification;
  /// Human-readable tail comparison, e.g. "term ~ 0.5 * s^-2".
  std::string tail_bound;
  /// Integral estimate of the sum beyond the window, when the series converges.
  std::optional<double> tail_estimate;
};

/// Sum over s > last of A s^-e by the midpoint integral A (last + 1/2)^(1-e) / (e-1); e > 1.
double power_tail_estimate(double coefficient, double exponent, std::size_t last);

}  // namespace aqt
