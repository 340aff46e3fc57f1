#pragma once

// Product states of an infinite chain of qubits indexed by s = 1, 2, ...

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "aqt/algebra.hpp"
#include "aqt/series.hpp"

namespace aqt {

using Qubit = Eigen::Vector2cd;

/// Sites s >= start carry (cos a_s, sin a_s) with a_s = c * s^-p.
struct PowerTail {
  double c = 0.0;
  double p = 1.0;
  std::size_t start = 1;
};

/// sigma(s): an override if one is set, else the tail vector, else the default.
class QubitConfig {
 public:
  explicit QubitConfig(const Qubit& default_vector = Qubit(1.0, 0.0));

  QubitConfig& set_override(std::size_t site, const Qubit& v);
  QubitConfig& set_tail(const PowerTail& tail);

  const Qubit& default_vector() const { return default_; }
  const std::map<std::size_t, Qubit>& overrides() const { return overrides_; }
  const std::optional<PowerTail>& tail() const { return tail_; }

  Qubit at(std::size_t site) const;

  /// Largest site whose vector is set by something other than the asymptotic rule.
  std::size_t horizon() const;

 private:
  Qubit default_;
  std::map<std::size_t, Qubit> overrides_;
  std::optional<PowerTail> tail_;
};

/// | |<sigma(s)|sigma'(s)>| - 1 |.
double overlap_defect(const QubitConfig& a, const QubitConfig& b, std::size_t site);

/// Sum of overlap defects over sites first..last, in increasing site order.
double defect_partial_sum(const QubitConfig& a, const QubitConfig& b, std::size_t first, std::size_t last);

inline constexpr std::size_t kDefectWindow = 10000;

SeriesVerdict equivalence_verdict(const QubitConfig& a, const QubitConfig& b, std::size_t window = kDefectWindow);

/// Sites where the two configurations define different states; absent when
/// the difference is not finitely supported.
std::optional<std::vector<std::size_t>> difference_support(const QubitConfig& a, const QubitConfig& b);

inline constexpr std::size_t kMarginalCap = 8;

/// Pure product state with density (x)_s sigma(s) sigma(s)^† on M_{2^k};
/// the first listed site is the most significant Kronecker factor.
State finite_marginal_state(const QubitConfig& sigma, std::span<const std::size_t> sites,
                            std::size_t cap = kMarginalCap);

struct LocalTransition {
  std::vector<std::size_t> sites;
  /// (x)_{s in sites} u_s on M_{2^|sites|}; the 1x1 identity when sites is empty.
  AlgebraElement element;
  /// max over matrix units e of |f_b(e) - f_a(u^* e u)|.
  double residual = 0.0;
};

std::optional<LocalTransition> local_transition_element(const QubitConfig& a, const QubitConfig& b,
                                                        std::size_t cap = kMarginalCap);

}  // namespace aqt
