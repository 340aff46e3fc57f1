#pragma once

// Automorphisms a -> U a U^-1 of finite-dimensional algebras acting on
// states: pushforwards, stationarity, unitary implementers on GNS carriers,
// stabilizers and orbits, and one-parameter groups generated by Hermitian
// elements.

#include <cstddef>
#include <optional>
#include <vector>

#include "aqt/algebra.hpp"
#include "aqt/gns.hpp"

namespace aqt {

/// rho(a)_i = U_i a_{s(i)} U_i^*. The block permutation s is empty (identity)
/// for inner automorphisms; a non-trivial s is the block-permutation
/// extension and requires equal block dimensions along each cycle.
class InnerAutomorphism {
 public:
  explicit InnerAutomorphism(AlgebraElement unitary, std::vector<std::size_t> block_permutation = {},
                             double tol = 1e-12);
  static InnerAutomorphism identity(const StarAlgebra& algebra);

  const StarAlgebra& algebra() const { return unitary_.algebra(); }
  const AlgebraElement& unitary() const { return unitary_; }
  /// s(i) for each block i.
  const std::vector<std::size_t>& permutation() const { return perm_; }
  bool is_inner() const;

  AlgebraElement apply(const AlgebraElement& a) const;
  InnerAutomorphism inverse() const;

  /// Largest entry difference of rho(e) and tau(e) over the canonical basis.
  double action_distance(const InnerAutomorphism& other) const;

 private:
  AlgebraElement unitary_;
  std::vector<std::size_t> perm_;
};

/// (rho o tau)(a) = rho(tau(a)).
InnerAutomorphism compose(const InnerAutomorphism& rho, const InnerAutomorphism& tau);

/// f_rho(a) = f(rho(a)); densities transform as U^* rho U.
State pushforward_state(const State& f, const InnerAutomorphism& rho);

inline constexpr double kStationarityTolerance = 1e-10;

bool stationarity_check(const State& f, const InnerAutomorphism& rho, double tol = kStationarityTolerance);

struct ImplementerResult {
  /// U_rho with U_rho pi(a) theta = pi(rho(a)) theta; absent when that map is not isometric.
  std::optional<Matrix> unitary;
  /// max |X^† X - Y^† Y| with X = [pi(u) theta], Y = [pi(rho(u)) theta] over matrix units u.
  double isometry_defect = 0.0;
  double cyclic_residual = 0.0;       // |U theta - theta|
  double intertwining_residual = 0.0;  // max_u |pi(rho(u)) - U pi(u) U^-1|
  double unitarity_residual = 0.0;     // |U^† U - 1|
};

inline constexpr double kIsometryTolerance = 1e-9;

ImplementerResult unitary_implementer(const GnsRep& rep, const InnerAutomorphism& rho);
ImplementerResult unitary_implementer(const State& f, const InnerAutomorphism& rho);

/// A finite set of automorphisms closed under composition and inverses,
/// with equality decided by action.
class AutomorphismGroup {
 public:
  explicit AutomorphismGroup(std::vector<InnerAutomorphism> elements, double tol = 1e-9);

  std::size_t order() const { return elements_.size(); }
  const InnerAutomorphism& element(std::size_t g) const { return elements_.at(g); }
  std::size_t identity() const { return identity_; }
  /// Index of g o h.
  std::size_t multiply(std::size_t g, std::size_t h) const { return table_[g][h]; }
  std::size_t inverse(std::size_t g) const { return inverse_[g]; }

  /// k(g, h) with U_g U_h = k U_{gh}, read off the chosen representatives
  /// (inner automorphisms only).
  Complex multiplier(std::size_t g, std::size_t h) const;

 private:
  std::vector<InnerAutomorphism> elements_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
};

struct OrbitReport {
  std::vector<std::size_t> stabilizer;        // H = {g : f o g = f}
  std::vector<State> orbit;                   // distinct pushforwards, first-seen order
  std::vector<std::size_t> orbit_index;       // orbit entry of each group element
  std::size_t coset_count = 0;                // |G| / |H|
  bool lagrange_holds = false;                // |orbit| * |H| == |G|
};

inline constexpr double kOrbitDistinctness = 1e-8;

OrbitReport stabilizer_orbit(const State& f, const AutomorphismGroup& group);

/// e^{-itb} a e^{itb}, which sends a to a - i t [b, a] to first order.
AlgebraElement one_parameter_flow(const AlgebraElement& b, double t, const AlgebraElement& a);

/// max entry of (G_h(a) - a)/h - (-i [b, a]).
double flow_generator_residual(const AlgebraElement& b, const AlgebraElement& a, double h);

}  // namespace aqt
