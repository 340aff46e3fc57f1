#pragma once

// GNS representations of states on finite-dimensional C*-algebras and the
// equivalence, purity and superselection machinery built on them.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aqt/algebra.hpp"

namespace aqt {

/// Singular values of the Gram form below basis_size * kGramRankCut * sigma_max
/// are treated as zero when forming the quotient A / N_f.
inline constexpr double kGramRankCut = 1e-12;

/// Threshold on sigma_min / sigma_max of the best intertwiner candidate.
inline constexpr double kIntertwinerInvertibility = 1e-8;

/// Gram matrix G[b, a] = f(b* a) over the canonical matrix-unit basis.
Matrix gram_matrix(const State& f);

/// The cyclic representation (pi_f, theta_f) of a state.
///
/// The Gram form of f on block M_n is I_n (x) rho^T, so the quotient by its
/// null space is realized blockwise: a maps to vec_row(a_i F_i) with
/// F_i = W_i Lambda_i^{1/2} built from the retained eigenpairs of rho_i, and
/// pi_f(b) = (+)_i b_i (x) I_{r_i}. Retained eigenvectors are ordered by
/// decreasing eigenvalue and phase-fixed, which makes the carrier basis
/// deterministic.
class GnsRep {
 public:
  const StarAlgebra& algebra() const { return algebra_; }
  const State& state() const { return state_; }

  std::size_t dim() const { return dim_; }
  /// Rank of the Gram form; equals dim().
  std::size_t gram_rank() const { return dim_; }
  /// Number of copies r_i of block i's defining representation in pi_f.
  std::span<const std::size_t> multiplicities() const { return multiplicity_; }
  /// F_i, n_i x r_i, with F_i F_i^† = rho_i.
  const Matrix& factor(std::size_t block) const { return factor_.at(block); }
  std::size_t offset(std::size_t block) const { return offset_.at(block); }

  const Vector& cyclic_vector() const { return theta_; }

  Matrix represent(const AlgebraElement& a) const;
  Matrix unit_representation(std::size_t unit) const;
  /// pi_f(a) theta_f, the class of a in A / N_f.
  Vector vector_image(const AlgebraElement& a) const;

  /// pi_f of a *-generating set of A: a diagonal element with distinct
  /// entries and the blockwise shift. Their commutant is pi_f(A)'.
  std::vector<Matrix> generators() const;

  /// Blocks annihilated by pi_f; ker pi_f is their direct sum.
  std::vector<std::size_t> kernel_blocks() const;
  std::vector<AlgebraElement> kernel_basis() const;

 private:
  friend GnsRep gns_construct(const StarAlgebra& algebra, const State& f);

  GnsRep(StarAlgebra algebra, State state) : algebra_(std::move(algebra)), state_(std::move(state)) {}

  StarAlgebra algebra_;
  State state_;
  std::size_t dim_ = 0;
  std::vector<std::size_t> multiplicity_;
  std::vector<std::size_t> offset_;
  std::vector<Matrix> factor_;  // F_i, n_i x r_i
  Vector theta_;
};

GnsRep gns_construct(const StarAlgebra& algebra, const State& f);
inline GnsRep gns_construct(const State& f) { return gns_construct(f.algebra(), f); }

/// Largest |f(a) - <pi(a) theta, theta>| over the given elements.
double reconstruction_residual(const GnsRep& rep, std::span<const AlgebraElement> elements);

/// The vector form a -> <pi(a) xi, xi> / |xi|^2 as a state.
State vector_form(const GnsRep& rep, const Vector& xi);

/// Basis of {X : X pi(u) = pi(u) X for every generator u}; contains the identity.
std::vector<Matrix> commutant_basis(const GnsRep& rep);

enum class Purity { pure, mixed };

Purity purity_check(const StarAlgebra& algebra, const State& f);

enum class Verdict { equal, equivalent, inequivalent, undecided };

std::string to_string(Verdict v);
inline bool is_equivalent(Verdict v) { return v == Verdict::equal || v == Verdict::equivalent; }

/// b, b' with f'(a) = f(b* a b) and f(a) = f'(b'* a b').
struct TransitionPair {
  AlgebraElement forward;
  AlgebraElement backward;
  double forward_residual = 0.0;
  double backward_residual = 0.0;
};

struct EquivalenceReport {
  Verdict verdict = Verdict::undecided;
  bool kernels_match = false;
  std::vector<std::size_t> kernel_first;
  std::vector<std::size_t> kernel_second;
  std::size_t dim_first = 0;
  std::size_t dim_second = 0;
  /// Unitary gamma with pi_2(a) = gamma pi_1(a) gamma^{-1}.
  std::optional<Matrix> intertwiner;
  double intertwiner_residual = 0.0;
  /// sigma_min / sigma_max of the selected solution of the intertwiner system.
  double intertwiner_conditioning = 0.0;
  std::size_t intertwiner_space_dim = 0;
  double norm_distance = 0.0;
  std::optional<TransitionPair> transition;
  std::optional<AlgebraElement> unitary;
  std::string note;
};

EquivalenceReport equivalence_check(const StarAlgebra& algebra, const State& f, const State& g);

std::optional<TransitionPair> transition_elements(const StarAlgebra& algebra, const State& f, const State& g);

/// Unitary U in A with g(a) = f(U* a U). Throws DomainError unless both states are pure.
std::optional<AlgebraElement> pure_unitary_intertwiner(const StarAlgebra& algebra, const State& f,
                                                       const State& g);

/// (+)_k pi_k(a) on the Hilbert sum of the carriers.
Matrix summed_representation(std::span<const GnsRep> reps, const AlgebraElement& a);

/// T = sum_k r_k P_k, with P_k the projector onto the k-th summand.
Matrix superselection_operator(std::span<const GnsRep> reps, std::span<const double> r);

}  // namespace aqt
