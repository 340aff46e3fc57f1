#pragma once

// Finite groups, their group algebras under convolution, positive-definite
// functions and the unitary representations they generate.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "aqt/algebra.hpp"

namespace aqt {

class FiniteGroup {
 public:
  /// table[a][b] = index of a*b. Validates the group axioms; associativity
  /// is checked on all triples for order <= 24 and on a fixed sample above.
  static std::shared_ptr<const FiniteGroup> from_table(std::vector<std::vector<std::size_t>> table,
                                                       std::vector<std::string> labels = {});
  /// Z_n with a*b = a + b mod n.
  static std::shared_ptr<const FiniteGroup> cyclic(std::size_t n);
  /// S_n, n <= 5, elements are permutations in lexicographic order with (g h)(x) = g(h(x)).
  static std::shared_ptr<const FiniteGroup> symmetric(std::size_t n);

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  const std::string& label(std::size_t a) const { return labels_.at(a); }

  /// Conjugacy classes, each sorted, ordered by smallest member.
  std::vector<std::vector<std::size_t>> conjugacy_classes() const;

 private:
  FiniteGroup() = default;

  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::string> labels_;
  std::size_t identity_ = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A complex function on a finite group; an element of its group algebra.
class GroupFunction {
 public:
  GroupFunction(GroupPtr group, std::vector<Complex> values);

  static GroupFunction delta(GroupPtr group, std::size_t element);
  static GroupFunction constant(GroupPtr group, Complex value);

  const GroupPtr& group() const { return group_; }
  const std::vector<Complex>& values() const { return values_; }
  Complex operator()(std::size_t g) const { return values_.at(g); }

  /// f*(g) = conj(f(g^-1)).
  GroupFunction adjoint() const;

  double max_abs_diff(const GroupFunction& other) const;

 private:
  GroupPtr group_;
  std::vector<Complex> values_;
};

/// (f1 * f2)(g) = sum_q f1(q) f2(q^-1 g).
GroupFunction convolve(const GroupFunction& f1, const GroupFunction& f2);

/// K[i, j] = psi(g_j^-1 g_i).
Matrix positive_definiteness_matrix(const GroupFunction& psi);

/// K Hermitian and positive semidefinite within tol * max(1, |K|).
bool is_positive_definite(const GroupFunction& psi, double tol = 1e-10);

struct GroupRepresentation {
  GroupPtr group;
  std::vector<Matrix> matrices;  // pi(g) for each element
  Vector cyclic;                 // empty when there is no distinguished vector

  std::size_t dim() const { return matrices.empty() ? 0 : static_cast<std::size_t>(matrices.front().rows()); }
};

/// Cyclic representation of a positive-definite function:
/// psi(g) = <pi(g) theta | theta>.
GroupRepresentation gns_from_group_function(const GroupFunction& psi);

/// (Pi(g) f)(q) = f(g^-1 q), i.e. Pi(g) delta_h = delta_{gh}.
GroupRepresentation left_regular_representation(const GroupPtr& group);

/// sum_g f(g) pi(g).
Matrix group_algebra_action(const GroupRepresentation& rep, const GroupFunction& f);

/// max_g |pi(g) pi(g)^† - 1| and max_{g,h} |pi(gh) - pi(g) pi(h)|.
struct RepresentationDefects {
  double unitarity = 0.0;
  double homomorphism = 0.0;
};
RepresentationDefects representation_defects(const GroupRepresentation& rep);

/// max_g |psi(g) - <pi(g) theta | theta>|.
double reconstruction_residual(const GroupRepresentation& rep, const GroupFunction& psi);

/// Basis of operators T with T pi_a(g) = pi_b(g) T for all g.
std::vector<Matrix> group_intertwiners(const GroupRepresentation& a, const GroupRepresentation& b);

struct OrthogonalityReport {
  Complex sum;              // sum_g psi'(g) conj(psi(g))
  double convolution_norm;  // max_g |(psi * psi')(g)|
};
OrthogonalityReport orthogonality_check(const GroupFunction& psi, const GroupFunction& psi_prime);

/// Irreducible characters from the isotypic decomposition of the regular
/// representation under the class-sum operators; ordered by dimension, then
/// by their values at the first non-identity elements.
std::vector<GroupFunction> irreducible_characters(const GroupPtr& group);

}  // namespace aqt
