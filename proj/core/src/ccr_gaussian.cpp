#include "aqt/ccr_gaussian.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "aqt/wick.hpp"

namespace aqt {

namespace {

using quad = __float128;

void require_square(const RealMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw ShapeError(std::string(what) + ": matrix must be square and non-empty");
  if (!m.allFinite()) throw DomainError(std::string(what) + ": non-finite entries");
}

std::string format_power(double coefficient, double exponent) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "term ~ %.6g * k^-%.6g", coefficient, exponent);
  return buf;
}

SeriesVerdict power_series_verdict(double coefficient, double exponent, double partial, std::size_t window) {
  SeriesVerdict v;
  v.window_last = window;
  v.partial_sum = partial;
  if (coefficient == 0.0) {
    v.verdict = SeriesOutcome::convergent;
    v.justification = "finite-support";
    v.tail_bound = "all terms vanish";
    v.tail_estimate = 0.0;
    return v;
  }
  v.justification = "p-series";
  v.tail_bound = format_power(coefficient, exponent);
  if (exponent > 1.0) {
    v.verdict = SeriesOutcome::convergent;
    v.tail_estimate = power_tail_estimate(coefficient, exponent, window);
  } else {
    v.verdict = SeriesOutcome::divergent;
  }
  return v;
}

double ordered_sum(std::size_t window, auto&& term) {
  double sum = 0.0;
  for (std::size_t k = 1; k <= window; ++k) sum += term(static_cast<double>(k));
  return sum;
}

}  // namespace

// CcrSpace ///////////////////////////////////////////////////////////////////

CcrSpace::CcrSpace(RealMatrix gram, RealMatrix k) : gram_(std::move(gram)), k_(std::move(k)) {
  require_square(gram_, "CcrSpace gram");
  require_square(k_, "CcrSpace K");
  if (gram_.rows() != k_.rows()) throw ShapeError("CcrSpace: Gram and K dimensions differ");
  const double gscale = std::max(1.0, gram_.cwiseAbs().maxCoeff());
  if ((gram_ - gram_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * gscale)
    throw DomainError("CcrSpace: Gram matrix is not symmetric");
  gram_ = 0.5 * (gram_ + gram_.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> ge(gram_, Eigen::EigenvaluesOnly);
  if (!(ge.eigenvalues().minCoeff() > 1e-14 * ge.eigenvalues().cwiseAbs().maxCoeff()))
    throw DomainError("CcrSpace: Gram matrix is not positive definite");
  Eigen::JacobiSVD<RealMatrix> svd(k_);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-12 * sv(0))) throw DomainError("CcrSpace: K is not invertible");
  k_inv_ = k_.inverse();
  s_ = k_ * k_adjoint();
  cov_ = k_inv_.transpose() * gram_ * k_inv_;
  cov_ = 0.5 * (cov_ + cov_.transpose());
}

CcrSpace CcrSpace::euclidean(std::size_t n, double scale) {
  const auto d = static_cast<Eigen::Index>(n);
  return CcrSpace(RealMatrix::Identity(d, d), scale * RealMatrix::Identity(d, d));
}

RealMatrix CcrSpace::k_adjoint() const { return gram_.ldlt().solve(k_.transpose() * gram_); }

void CcrSpace::require_dim(const RealVector& q, const char* what) const {
  if (q.size() != gram_.rows()) throw ShapeError(std::string(what) + ": vector dimension does not match the space");
}

double CcrSpace::inner(const RealVector& q, const RealVector& q2) const {
  require_dim(q, "CcrSpace::inner");
  require_dim(q2, "CcrSpace::inner");
  return q.dot(gram_ * q2);
}

double CcrSpace::pair_value(const RealVector& q, const RealVector& q2) const {
  require_dim(q, "CcrSpace::pair_value");
  require_dim(q2, "CcrSpace::pair_value");
  return (k_inv_ * q).dot(gram_ * (k_inv_ * q2));
}

double CcrSpace::generating_function(const RealVector& q) const { return std::exp(-0.5 * covariance_form(q)); }

// Moments ////////////////////////////////////////////////////////////////////

double wick_moment(const CcrSpace& space, std::span<const RealVector> args) {
  for (const auto& q : args)
    if (static_cast<std::size_t>(q.size()) != space.dim()) throw ShapeError("wick_moment: vector dimension mismatch");
  return wick_sum<double>(args.size(), [&](std::size_t i, std::size_t j) { return space.pair_value(args[i], args[j]); });
}

double moment_oracle(const CcrSpace& space, std::span<const RealVector> args) {
  const std::size_t m = args.size();
  if (m > kMomentOracleMaxOrder) throw DomainError("moment_oracle: order above 6 is not supported");
  const auto n = static_cast<Eigen::Index>(space.dim());
  for (const auto& q : args)
    if (q.size() != n) throw ShapeError("moment_oracle: vector dimension mismatch");

  std::vector<quad> kinv(static_cast<std::size_t>(n * n));
  std::vector<quad> gram(static_cast<std::size_t>(n * n));
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      kinv[static_cast<std::size_t>(r * n + c)] = space.k_inverse()(r, c);
      gram[static_cast<std::size_t>(r * n + c)] = space.gram()(r, c);
    }
  std::vector<quad> v(static_cast<std::size_t>(n));
  std::vector<quad> w(static_cast<std::size_t>(n));
  // Z(sum alpha_i q_i) with alpha_i = h * eps_i, evaluated from scratch.
  auto z = [&](quad h, unsigned signs) {
    for (Eigen::Index r = 0; r < n; ++r) {
      quad acc = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const quad a = (signs >> i) & 1u ? -h : h;
        acc += a * static_cast<quad>(args[i](r));
      }
      v[static_cast<std::size_t>(r)] = acc;
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      quad acc = 0;
      for (Eigen::Index c = 0; c < n; ++c) acc += kinv[static_cast<std::size_t>(r * n + c)] * v[static_cast<std::size_t>(c)];
      w[static_cast<std::size_t>(r)] = acc;
    }
    quad form = 0;
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c)
        form += w[static_cast<std::size_t>(r)] * gram[static_cast<std::size_t>(r * n + c)] * w[static_cast<std::size_t>(c)];
    return expq(-form / 2);
  };
  auto difference = [&](quad h) {
    quad acc = 0;
    for (unsigned signs = 0; signs < (1u << m); ++signs) {
      const int flips = __builtin_popcount(signs);
      acc += (flips % 2 == 0 ? z(h, signs) : -z(h, signs));
    }
    quad denom = 1;
    for (std::size_t i = 0; i < m; ++i) denom *= 2 * h;
    return acc / denom;
  };
  const quad h = static_cast<quad>(1e-2);
  const quad d0 = difference(h);
  const quad d1 = difference(h / 2);
  const quad d2 = difference(h / 4);
  const quad r01 = (4 * d1 - d0) / 3;
  const quad r12 = (4 * d2 - d1) / 3;
  const quad deriv = (16 * r12 - r01) / 15;
  // i^-m: (-1)^{m/2} for even m; imaginary coefficient (-1)^{(m+1)/2} for odd m.
  const bool negate = (m % 2 == 0) ? ((m / 2) % 2 == 1) : (((m + 1) / 2) % 2 == 1);
  return static_cast<double>(negate ? -deriv : deriv);
}

// Cocycle and density ////////////////////////////////////////////////////////

double quasi_invariance_factor(const CcrSpace& space, const RealVector& q, const RealVector& u) {
  if (static_cast<std::size_t>(q.size()) != space.dim() || static_cast<std::size_t>(u.size()) != space.dim())
    throw ShapeError("quasi_invariance_factor: vector dimension mismatch");
  const RealVector sq = space.s() * q;
  return std::exp(-0.25 * space.covariance_form(sq) - 0.5 * sq.dot(u));
}

double cocycle_residual(const CcrSpace& space, const RealVector& q, const RealVector& q2, const RealVector& u) {
  const double lhs = quasi_invariance_factor(space, q + q2, u);
  const double rhs = quasi_invariance_factor(space, q, u) * quasi_invariance_factor(space, q2, u + space.gram_image(q));
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
}

double gaussian_density(const RealMatrix& covariance, const RealVector& w) {
  require_square(covariance, "gaussian_density");
  if (w.size() != covariance.rows()) throw ShapeError("gaussian_density: vector dimension mismatch");
  Eigen::LLT<RealMatrix> llt(0.5 * (covariance + covariance.transpose()));
  if (llt.info() != Eigen::Success) throw DomainError("gaussian_density: covariance is not positive definite");
  const RealVector y = llt.matrixL().solve(w);
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < covariance.rows(); ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
  const double n = static_cast<double>(covariance.rows());
  return std::exp(-0.5 * log_det - 0.5 * n * std::log(2.0 * std::numbers::pi) - 0.5 * y.squaredNorm());
}

// Fock truncation ////////////////////////////////////////////////////////////

FockTruncation::FockTruncation(const CcrSpace& space, std::size_t max_occupation)
    : space_(space), modes_(space.dim()), max_occupation_(max_occupation) {
  if (max_occupation_ == 0) throw DomainError("FockTruncation: N_max must be >= 1");
  Eigen::LLT<RealMatrix> llt(space.gram());
  if (llt.info() != Eigen::Success) throw DomainError("FockTruncation: Gram matrix is not positive definite");
  const auto n = static_cast<Eigen::Index>(modes_);
  modes_matrix_ = llt.matrixU().solve(RealMatrix::Identity(n, n));  // L^-T

  std::vector<std::size_t> occ(modes_, 0);
  auto fill = [&](auto&& self, std::size_t k, std::size_t left) -> void {
    if (k + 1 == modes_) {
      occ[k] = left;
      basis_.push_back(occ);
      return;
    }
    for (std::size_t c = left + 1; c-- > 0;) {
      occ[k] = c;
      self(self, k + 1, left - c);
    }
  };
  for (std::size_t t = 0; t <= max_occupation_; ++t) {
    fill(fill, 0, t);
    if (basis_.size() > 5000) throw DomainError("FockTruncation: basis exceeds 5000 states");
  }
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    index.emplace(basis_[i], i);
    std::size_t total = 0;
    for (std::size_t x : basis_[i]) total += x;
    if (total + 1 <= max_occupation_) protected_.push_back(i);
  }
  const auto d = static_cast<Eigen::Index>(basis_.size());
  for (std::size_t k = 0; k < modes_; ++k) {
    RealMatrix a = RealMatrix::Zero(d, d);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      std::size_t total = 0;
      for (std::size_t x : basis_[i]) total += x;
      if (total == max_occupation_) continue;
      std::vector<std::size_t> up = basis_[i];
      ++up[k];
      a(static_cast<Eigen::Index>(index.at(up)), static_cast<Eigen::Index>(i)) = std::sqrt(static_cast<double>(up[k]));
    }
    creation_.push_back(std::move(a));
  }
}

std::size_t FockTruncation::index_of(std::span<const std::size_t> occupation) const {
  const std::vector<std::size_t> key(occupation.begin(), occupation.end());
  const auto it = std::find(basis_.begin(), basis_.end(), key);
  if (it == basis_.end()) throw DomainError("FockTruncation: occupation outside the truncation");
  return static_cast<std::size_t>(it - basis_.begin());
}

Vector FockTruncation::vacuum() const {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(size()));
  v(0) = 1.0;
  return v;
}

RealVector FockTruncation::mode_coefficients(const RealVector& q) const {
  if (static_cast<std::size_t>(q.size()) != modes_) throw ShapeError("FockTruncation: vector dimension mismatch");
  return modes_matrix_.transpose() * (space_.gram() * q);
}

RealMatrix FockTruncation::creation(const RealVector& q) const {
  const RealVector c = mode_coefficients(q);
  const auto d = static_cast<Eigen::Index>(size());
  RealMatrix a = RealMatrix::Zero(d, d);
  for (std::size_t k = 0; k < modes_; ++k)
    if (c(static_cast<Eigen::Index>(k)) != 0.0) a += c(static_cast<Eigen::Index>(k)) * creation_[k];
  return a;
}

Matrix FockTruncation::field(const RealVector& q) const {
  const RealMatrix a = creation(q);
  return ((a + a.transpose()) / std::numbers::sqrt2).cast<Complex>();
}

Matrix FockTruncation::momentum(const RealVector& q) const {
  const RealMatrix a = creation(q);
  return Complex(0.0, 1.0 / std::numbers::sqrt2) * (a - a.transpose()).cast<Complex>();
}

RealMatrix FockTruncation::number_operator() const {
  const auto d = static_cast<Eigen::Index>(size());
  RealMatrix n = RealMatrix::Zero(d, d);
  for (const auto& a : creation_) n += a * a.transpose();
  return n;
}

double FockTruncation::ccr_residual(const RealVector& q, const RealVector& q2) const {
  const RealMatrix am = annihilation(q);
  const RealMatrix ap = creation(q2);
  RealMatrix c = am * ap - ap * am;
  c.diagonal().array() -= space_.inner(q, q2);
  double r = 0.0;
  for (std::size_t j : protected_) r = std::max(r, c.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff());
  return r;
}

double FockTruncation::heisenberg_residual(const RealVector& q, const RealVector& q2) const {
  const Matrix p = momentum(q);
  const Matrix f = field(q2);
  Matrix c = p * f - f * p;
  c.diagonal().array() += Complex(0.0, space_.inner(q, q2));
  double r = 0.0;
  for (std::size_t j : protected_) r = std::max(r, c.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff());
  return r;
}

FockTruncation build_fock_operators(const CcrSpace& space, std::size_t max_occupation) {
  return FockTruncation(space, max_occupation);
}

// Shifts /////////////////////////////////////////////////////////////////////

double shift_pairing(const CcrSpace& space, const VacuumShift& shift, const RealVector& q) {
  if (shift.vector) return space.inner(q, *shift.vector);
  if (shift.tail) {
    Eigen::LLT<RealMatrix> llt(space.gram());
    const auto n = static_cast<Eigen::Index>(space.dim());
    const RealMatrix modes = llt.matrixU().solve(RealMatrix::Identity(n, n));
    const RealVector c = modes.transpose() * (space.gram() * q);
    double acc = 0.0;
    for (Eigen::Index k = 0; k < n; ++k)
      acc += c(k) * shift.tail->c * std::pow(static_cast<double>(k + 1), -shift.tail->p);
    return acc;
  }
  return 0.0;
}

std::pair<Complex, Complex> shifted_vacuum_means(const CcrSpace& space, const VacuumShift& shift,
                                                 const RealVector& q) {
  const double s = shift_pairing(space, shift, q);
  return {Complex(s), Complex(s)};
}

std::pair<Complex, Complex> shifted_vacuum_means(const FockTruncation& fock, const CcrSpace& space,
                                                 const VacuumShift& shift, const RealVector& q) {
  const double s = shift_pairing(space, shift, q);
  const auto d = static_cast<Eigen::Index>(fock.size());
  const RealMatrix id = RealMatrix::Identity(d, d);
  const RealMatrix plus = fock.creation(q) + s * id;
  const RealMatrix minus = fock.annihilation(q) + s * id;
  const Eigen::Index v = static_cast<Eigen::Index>(fock.vacuum_index());
  return {Complex(plus(v, v)), Complex(minus(v, v))};
}

SeriesVerdict shift_norm_verdict(const VacuumShift::Tail& tail, std::size_t window) {
  if (!(tail.p > 0.0) || !std::isfinite(tail.c)) throw DomainError("shift_norm_verdict: tail needs finite c and p > 0");
  const double c2 = tail.c * tail.c;
  const double partial = ordered_sum(window, [&](double k) { return c2 * std::pow(k, -2.0 * tail.p); });
  return power_series_verdict(c2, 2.0 * tail.p, partial, window);
}

SeriesVerdict gaussian_equivalence_verdict(const ModeFamily& family, std::size_t window) {
  SeriesVerdict v;
  v.window_last = window;
  switch (family.kind) {
    case ModeFamily::Kind::constant: {
      if (!(family.value > 0.0)) throw DomainError("gaussian_equivalence_verdict: eigenvalues of S must be positive");
      const double t = std::abs(1.0 - family.value / 2.0);
      v.partial_sum = t * static_cast<double>(window);
      if (t == 0.0) {
        v.verdict = SeriesOutcome::convergent;
        v.justification = "finite-support";
        v.tail_bound = "all terms vanish";
        v.tail_estimate = 0.0;
      } else {
        v.verdict = SeriesOutcome::divergent;
        v.justification = "constant-defect";
        char buf[64];
        std::snprintf(buf, sizeof buf, "term = %.6g > 0", t);
        v.tail_bound = buf;
      }
      return v;
    }
    case ModeFamily::Kind::power_tail: {
      if (!(family.exponent > 0.0)) throw DomainError("gaussian_equivalence_verdict: exponent must be positive");
      const double a = 0.5 * std::abs(family.amplitude);
      const double partial = ordered_sum(window, [&](double k) { return a * std::pow(k, -family.exponent); });
      return power_series_verdict(a, family.exponent, partial, window);
    }
    case ModeFamily::Kind::finite: {
      double sum = 0.0;
      for (double s : family.values) {
        if (!(s > 0.0)) throw DomainError("gaussian_equivalence_verdict: eigenvalues of S must be positive");
        sum += std::abs(1.0 - s / 2.0);
      }
      v.verdict = SeriesOutcome::convergent;
      v.justification = "finite-dimensional";
      v.tail_bound = "finitely many modes";
      v.window_last = family.values.size();
      v.partial_sum = sum;
      v.tail_estimate = 0.0;
      return v;
    }
    case ModeFamily::Kind::sampled: {
      double sum = 0.0;
      for (double s : family.values) sum += std::abs(1.0 - s / 2.0);
      v.verdict = SeriesOutcome::undecided;
      v.justification = "numeric-window";
      v.tail_bound = "no tail model";
      v.window_last = family.values.size();
      v.partial_sum = sum;
      return v;
    }
  }
  return v;
}

}  // namespace aqt
