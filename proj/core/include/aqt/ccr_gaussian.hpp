#pragma once

// Gaussian states of the canonical commutation relations over a finite
// dimensional real inner-product space Q = R^n: generating functions,
// moments, the quasi-invariance cocycle, truncated Fock operators and
// vacuum shifts.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "aqt/algebra.hpp"
#include "aqt/series.hpp"

namespace aqt {

/// Q = R^n with inner product <q|q'> = q^T G q' and an invertible K. The
/// generating function is Z_K(q) = exp(-M_K(q)/2) with M_K(q) = <K^-1 q|K^-1 q>.
class CcrSpace {
 public:
  CcrSpace(RealMatrix gram, RealMatrix k);
  /// Euclidean Gram with K = scale * 1; scale = sqrt(2) is the Fock state.
  static CcrSpace euclidean(std::size_t n, double scale);

  std::size_t dim() const { return static_cast<std::size_t>(gram_.rows()); }
  const RealMatrix& gram() const { return gram_; }
  const RealMatrix& k() const { return k_; }
  const RealMatrix& k_inverse() const { return k_inv_; }
  /// K^* = G^-1 K^T G, the adjoint of K for <.|.>.
  RealMatrix k_adjoint() const;
  /// S = K K^*.
  const RealMatrix& s() const { return s_; }
  /// Covariance of the dual variable u: M_K(q) = q^T C q, C = K^-T G K^-1.
  const RealMatrix& covariance() const { return cov_; }

  double inner(const RealVector& q, const RealVector& q2) const;
  /// <K^-1 q | K^-1 q'>, the two-point value <phi(q) phi(q')>.
  double pair_value(const RealVector& q, const RealVector& q2) const;
  double covariance_form(const RealVector& q) const { return pair_value(q, q); }
  /// u_q = G q, so that <q', u_q> = <q'|q> for the pairing <q, u> = q . u.
  RealVector gram_image(const RealVector& q) const { return gram_ * q; }

  double generating_function(const RealVector& q) const;

 private:
  void require_dim(const RealVector& q, const char* what) const;

  RealMatrix gram_;
  RealMatrix k_;
  RealMatrix k_inv_;
  RealMatrix s_;
  RealMatrix cov_;
};

/// sum over pair partitions of prod <K^-1 q_i | K^-1 q_j>; 0 for odd m.
double wick_moment(const CcrSpace& space, std::span<const RealVector> args);

inline constexpr std::size_t kMomentOracleMaxOrder = 6;

/// i^-m d^m/da_1..da_m Z_K(sum a_i q_i) at a = 0 by central mixed
/// differences in binary128 with two Richardson levels (h = 1e-2, h/2, h/4).
/// For odd m the moment is purely imaginary and its imaginary part is
/// returned; it vanishes for Gaussian Z.
double moment_oracle(const CcrSpace& space, std::span<const RealVector> args);

/// a_K(q, u) = exp(-M_K(S q)/4 - (S q) . u / 2).
double quasi_invariance_factor(const CcrSpace& space, const RealVector& q, const RealVector& u);

/// |a(q + q', u) - a(q, u) a(q', u + u_q)| relative to a(q + q', u).
double cocycle_residual(const CcrSpace& space, const RealVector& q, const RealVector& q2, const RealVector& u);

/// det(C)^-1/2 (2 pi)^-n/2 exp(-w^T C^-1 w / 2).
double gaussian_density(const RealMatrix& covariance, const RealVector& w);
inline double gaussian_density(const CcrSpace& space, const RealVector& w) {
  return gaussian_density(space.covariance(), w);
}

/// Ladder operators on occupation states of n orthonormal modes with total
/// occupation <= N_max. Modes are the columns of L^-T for G = L L^T.
class FockTruncation {
 public:
  FockTruncation(const CcrSpace& space, std::size_t max_occupation);

  std::size_t modes() const { return modes_; }
  std::size_t max_occupation() const { return max_occupation_; }
  std::size_t size() const { return basis_.size(); }
  /// Occupation tuples ordered by total occupation, then reverse lexicographically.
  const std::vector<std::vector<std::size_t>>& basis() const { return basis_; }
  std::size_t index_of(std::span<const std::size_t> occupation) const;
  std::size_t vacuum_index() const { return 0; }
  Vector vacuum() const;

  /// Indices of basis states with total occupation <= N_max - 1.
  const std::vector<std::size_t>& protected_indices() const { return protected_; }

  /// Coefficients c_k = <e_k|q> of q in the orthonormal mode basis.
  RealVector mode_coefficients(const RealVector& q) const;
  const RealMatrix& mode_creation(std::size_t k) const { return creation_.at(k); }

  RealMatrix creation(const RealVector& q) const;
  RealMatrix annihilation(const RealVector& q) const { return creation(q).transpose(); }
  /// phi(q) = (a+(q) + a-(q)) / sqrt 2.
  Matrix field(const RealVector& q) const;
  /// pi(q) = i (a+(q) - a-(q)) / sqrt 2.
  Matrix momentum(const RealVector& q) const;
  /// N = sum_k a+(e_k) a-(e_k).
  RealMatrix number_operator() const;

  /// max |([a-(q), a+(q')] - <q|q'>) x| over protected basis states x.
  double ccr_residual(const RealVector& q, const RealVector& q2) const;
  /// max |([pi(q), phi(q')] + i <q|q'>) x| over protected basis states x.
  double heisenberg_residual(const RealVector& q, const RealVector& q2) const;

 private:
  CcrSpace space_;
  std::size_t modes_;
  std::size_t max_occupation_;
  RealMatrix modes_matrix_;  // columns e_k
  std::vector<std::vector<std::size_t>> basis_;
  std::vector<std::size_t> protected_;
  std::vector<RealMatrix> creation_;
};

inline constexpr std::size_t kDefaultMaxOccupation = 8;

FockTruncation build_fock_operators(const CcrSpace& space, std::size_t max_occupation = kDefaultMaxOccupation);

/// Vacuum shift: either a vector sigma in Q, or a family sigma_k = c k^-p in
/// orthonormal mode coordinates (k = 1, 2, ...) that need not lie in Q.
struct VacuumShift {
  std::optional<RealVector> vector;
  struct Tail {
    double c = 0.0;
    double p = 1.0;
  };
  std::optional<Tail> tail;
};

/// <q, sigma> = q^T G sigma for a vector shift, sum_k c_k(q) sigma_k for a tail.
double shift_pairing(const CcrSpace& space, const VacuumShift& shift, const RealVector& q);

/// (<a+(q)>, <a-(q)>) in the shifted vacuum; both equal <q, sigma>.
std::pair<Complex, Complex> shifted_vacuum_means(const CcrSpace& space, const VacuumShift& shift,
                                                 const RealVector& q);

/// Same means read off the truncated operators a+-(q) + <q, sigma> 1 in the Fock vacuum.
std::pair<Complex, Complex> shifted_vacuum_means(const FockTruncation& fock, const CcrSpace& space,
                                                 const VacuumShift& shift, const RealVector& q);

/// Whether sigma has finite norm (sum_k sigma_k^2 < inf), i.e. whether the
/// shifted vacuum stays in the Fock class.
SeriesVerdict shift_norm_verdict(const VacuumShift::Tail& tail, std::size_t window = 10000);

/// Eigenvalues s_k of S along a mode family.
struct ModeFamily {
  enum class Kind {
    constant,    // s_k = value for all k
    power_tail,  // s_k = 2 + amplitude * k^-exponent
    finite,      // finitely many modes, listed
    sampled      // a window of an unmodelled infinite sequence
  };
  Kind kind = Kind::constant;
  double value = 2.0;
  double amplitude = 0.0;
  double exponent = 1.0;
  std::vector<double> values;
};

/// Trace criterion: sum_k |1 - s_k/2| finite means equivalent to Fock.
SeriesVerdict gaussian_equivalence_verdict(const ModeFamily& family, std::size_t window = 10000);

}  // namespace aqt
