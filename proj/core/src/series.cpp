#include "aqt/series.hpp"

#include <cmath>

#include "aqt/error.hpp"

namespace aqt {

std::string to_string(SeriesOutcome v) {
  switch (v) {
    case SeriesOutcome::convergent: return "convergent";
    case SeriesOutcome::divergent: return "divergent";
    case SeriesOutcome::undecided: return "undecided";
  }
  return "undecided";
}

double power_tail_estimate(double coefficient, double exponent, std::size_t last) {
  if (!(exponent > 1.0)) throw DomainError("power_tail_estimate: exponent must exceed 1");
  const double x = static_cast<double>(last) + 0.5;
  return coefficient * std::pow(x, 1.0 - exponent) / (exponent - 1.0);
}

}  // namespace aqt
