#include "aqt/qubit_chain.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "aqt/linalg.hpp"

namespace aqt {

namespace {

constexpr double kSameState = 1e-12;

Qubit normalized(const Qubit& v, const char* what) {
  const double n = v.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-6) throw DomainError(std::string(what) + ": vector must have unit norm");
  return v / n;
}

double overlap(const Qubit& a, const Qubit& b) { return std::abs(a.dot(b)); }

// One side's asymptotic angle a_s ~ c s^-p, or none (constant vector).
struct Asymptote {
  bool has_tail = false;
  double c = 0.0;
  double p = 0.0;
  Qubit vector;  // limit vector
};

Asymptote asymptote(const QubitConfig& cfg) {
  Asymptote as;
  if (cfg.tail() && cfg.tail()->c != 0.0) {
    as.has_tail = true;
    as.c = cfg.tail()->c;
    as.p = cfg.tail()->p;
  }
  as.vector = cfg.tail() ? Qubit(1.0, 0.0) : cfg.default_vector();
  return as;
}

// Leading behaviour of the defect, 1 - |cos(da)| ~ A s^-e with da the angle
// difference; e = 0 stands for a constant defect, A = 0 for eventually equal.
struct Leading {
  double coefficient = 0.0;
  double exponent = 0.0;
};

Leading leading_defect(const QubitConfig& a, const QubitConfig& b) {
  const Asymptote x = asymptote(a);
  const Asymptote y = asymptote(b);
  if (!x.has_tail && !y.has_tail) {
    const double d = 1.0 - overlap(x.vector, y.vector);
    return d < kSameState ? Leading{} : Leading{d, 0.0};
  }
  if (x.has_tail != y.has_tail) {
    const Asymptote& plain = x.has_tail ? y : x;
    const Asymptote& tailed = x.has_tail ? x : y;
    const double d = 1.0 - std::abs(plain.vector(0));
    if (d >= kSameState) return Leading{d, 0.0};
    return Leading{0.5 * tailed.c * tailed.c, 2.0 * tailed.p};
  }
  if (x.p == y.p) {
    const double dc = x.c - y.c;
    if (dc == 0.0) return Leading{};
    return Leading{0.5 * dc * dc, 2.0 * x.p};
  }
  const Asymptote& slow = x.p < y.p ? x : y;
  return Leading{0.5 * slow.c * slow.c, 2.0 * slow.p};
}

std::string describe_power(double coefficient, double exponent) {
  std::ostringstream os;
  os.precision(6);
  os << "term ~ " << coefficient << " * s^-" << exponent;
  return os.str();
}

}  // namespace

QubitConfig::QubitConfig(const Qubit& default_vector) : default_(normalized(default_vector, "QubitConfig")) {}

QubitConfig& QubitConfig::set_override(std::size_t site, const Qubit& v) {
  if (site == 0) throw DomainError("QubitConfig: sites are numbered from 1");
  overrides_[site] = normalized(v, "QubitConfig override");
  return *this;
}

QubitConfig& QubitConfig::set_tail(const PowerTail& tail) {
  if (!std::isfinite(tail.c) || !(tail.p > 0.0) || !std::isfinite(tail.p))
    throw DomainError("QubitConfig: tail needs finite c and p > 0");
  if (tail.start == 0) throw DomainError("QubitConfig: tail start must be >= 1");
  tail_ = tail;
  return *this;
}

Qubit QubitConfig::at(std::size_t site) const {
  if (site == 0) throw DomainError("QubitConfig: sites are numbered from 1");
  if (auto it = overrides_.find(site); it != overrides_.end()) return it->second;
  if (tail_ && site >= tail_->start) {
    const double alpha = tail_->c * std::pow(static_cast<double>(site), -tail_->p);
    return Qubit(std::cos(alpha), std::sin(alpha));
  }
  return default_;
}

std::size_t QubitConfig::horizon() const {
  std::size_t h = overrides_.empty() ? 0 : overrides_.rbegin()->first;
  if (tail_) h = std::max(h, tail_->start);
  return h;
}

double overlap_defect(const QubitConfig& a, const QubitConfig& b, std::size_t site) {
  return std::abs(overlap(a.at(site), b.at(site)) - 1.0);
}

double defect_partial_sum(const QubitConfig& a, const QubitConfig& b, std::size_t first, std::size_t last) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t s = std::max<std::size_t>(first, 1); s <= last; ++s) {
    const double t = overlap_defect(a, b, s);
    const double y = sum + t;
    comp += std::abs(sum) >= std::abs(t) ? (sum - y) + t : (t - y) + sum;
    sum = y;
  }
  return sum + comp;
}

std::optional<std::vector<std::size_t>> difference_support(const QubitConfig& a, const QubitConfig& b) {
  const Leading lead = leading_defect(a, b);
  if (lead.coefficient != 0.0) return std::nullopt;
  std::vector<std::size_t> sites;
  const std::size_t h = std::max(a.horizon(), b.horizon());
  for (std::size_t s = 1; s <= h; ++s)
    if (overlap(a.at(s), b.at(s)) < 1.0 - kSameState) sites.push_back(s);
  return sites;
}

SeriesVerdict equivalence_verdict(const QubitConfig& a, const QubitConfig& b, std::size_t window) {
  SeriesVerdict v;
  v.window_first = 1;
  v.window_last = window;
  v.partial_sum = defect_partial_sum(a, b, 1, window);

  if (auto support = difference_support(a, b)) {
    v.verdict = SeriesOutcome::convergent;
    v.justification = "finite-support";
    v.tail_bound = "terms vanish beyond site " + std::to_string(support->empty() ? 0 : support->back());
    v.tail_estimate = 0.0;
    return v;
  }
  const Leading lead = leading_defect(a, b);
  if (lead.exponent == 0.0) {
    v.verdict = SeriesOutcome::divergent;
    v.justification = "constant-defect";
    std::ostringstream os;
    os.precision(6);
    os << "term -> " << lead.coefficient << " > 0";
    v.tail_bound = os.str();
    return v;
  }
  v.justification = "p-series";
  v.tail_bound = describe_power(lead.coefficient, lead.exponent);
  if (lead.exponent > 1.0) {
    v.verdict = SeriesOutcome::convergent;
    v.tail_estimate = power_tail_estimate(lead.coefficient, lead.exponent, window);
  } else {
    v.verdict = SeriesOutcome::divergent;
  }
  return v;
}

State finite_marginal_state(const QubitConfig& sigma, std::span<const std::size_t> sites, std::size_t cap) {
  if (sites.size() > cap) throw DomainError("finite_marginal_state: number of sites exceeds the cap");
  std::set<std::size_t> seen;
  Vector psi = Vector::Ones(1);
  for (std::size_t s : sites) {
    if (!seen.insert(s).second) throw DomainError("finite_marginal_state: repeated site");
    const Qubit q = sigma.at(s);
    psi = kron(psi, Matrix(q));
  }
  const auto d = static_cast<std::size_t>(psi.size());
  return State::from_densities(StarAlgebra::full_matrix(d), {psi * psi.adjoint()});
}

std::optional<LocalTransition> local_transition_element(const QubitConfig& a, const QubitConfig& b, std::size_t cap) {
  auto support = difference_support(a, b);
  if (!support) return std::nullopt;
  if (support->size() > cap) throw DomainError("local_transition_element: difference support exceeds the cap");
  Matrix u = Matrix::Identity(1, 1);
  for (std::size_t s : *support) u = kron(u, reflection_onto(a.at(s), b.at(s)));
  const State fa = finite_marginal_state(a, *support, cap);
  const State fb = finite_marginal_state(b, *support, cap);
  // f_a(u^* e_ij u) = (u rho_a u^*)_ji and f_b(e_ij) = (rho_b)_ji.
  const double residual = (u * fa.density(0) * u.adjoint() - fb.density(0)).cwiseAbs().maxCoeff();
  const StarAlgebra alg = StarAlgebra::full_matrix(static_cast<std::size_t>(u.rows()));
  return LocalTransition{*std::move(support), AlgebraElement(alg, {u}), residual};
}

}  // namespace aqt
