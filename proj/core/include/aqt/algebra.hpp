#pragma once

// Finite-dimensional C*-algebras: direct sums of full matrix blocks with the
// conjugate-transpose involution, their elements, and states stored as
// blockwise density matrices.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "aqt/error.hpp"

namespace aqt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Eigenvalues of a density above -kPsdTolerance * trace_scale are accepted;
/// negative ones in that band are clamped to zero.
inline constexpr double kPsdTolerance = 1e-10;

/// Tolerance on the total trace of a state.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Address of a canonical matrix unit e_{row,col} in block `block`.
struct MatrixUnit {
  std::size_t block;
  std::size_t row;
  std::size_t col;
};

class AlgebraElement;

/// A = M_{n_1} (+) ... (+) M_{n_k}. Matrix units are ordered by block, then
/// row, then column.
class StarAlgebra {
 public:
  explicit StarAlgebra(std::vector<std::size_t> blocks);

  static StarAlgebra full_matrix(std::size_t n) { return StarAlgebra({n}); }

  std::span<const std::size_t> blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t block_dim(std::size_t block) const { return blocks_.at(block); }

  /// Number of canonical matrix units, sum of n_i^2.
  std::size_t basis_size() const { return basis_size_; }
  /// Sum of n_i; the size of the defining representation.
  std::size_t total_dim() const { return total_dim_; }

  MatrixUnit unit(std::size_t index) const;
  std::size_t unit_index(std::size_t block, std::size_t row, std::size_t col) const;

  AlgebraElement identity() const;
  AlgebraElement zero() const;
  AlgebraElement unit_element(std::size_t index) const;

  /// Block with zeros elsewhere.
  AlgebraElement embed(std::size_t block, const Matrix& m) const;

  bool operator==(const StarAlgebra& other) const { return blocks_ == other.blocks_; }

 private:
  std::vector<std::size_t> blocks_;
  std::vector<std::size_t> offsets_;
  std::size_t basis_size_ = 0;
  std::size_t total_dim_ = 0;
};

class AlgebraElement {
 public:
  AlgebraElement(StarAlgebra algebra, std::vector<Matrix> blocks);

  const StarAlgebra& algebra() const { return algebra_; }
  const Matrix& block(std::size_t i) const { return blocks_.at(i); }
  std::span<const Matrix> blocks() const { return blocks_; }

  AlgebraElement adjoint() const;

  /// Coefficients in the canonical matrix-unit basis.
  Vector coefficients() const;
  static AlgebraElement from_coefficients(const StarAlgebra& algebra, const Vector& c);

  /// Block-diagonal matrix in the defining representation.
  Matrix to_dense() const;

  bool is_hermitian(double tol = 1e-12) const;
  bool is_unitary(double tol = 1e-12) const;

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(Complex s);

  friend AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs += rhs; }
  friend AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs) { return lhs -= rhs; }
  friend AlgebraElement operator*(AlgebraElement lhs, Complex s) { return lhs *= s; }
  friend AlgebraElement operator*(Complex s, AlgebraElement rhs) { return rhs *= s; }
  friend AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs);

  /// Largest blockwise entry modulus of the difference.
  double max_abs_diff(const AlgebraElement& other) const;

 private:
  void require_same_shape(const AlgebraElement& other, const char* op) const;

  StarAlgebra algebra_;
  std::vector<Matrix> blocks_;
};

/// Normalized positive functional f(a) = sum_i tr(rho_i a_i).
class State {
 public:
  /// Validates hermiticity, positivity and normalization. Hermitian parts are
  /// kept; eigenvalues in (-tol, 0) are clamped.
  static State from_densities(StarAlgebra algebra, std::vector<Matrix> densities,
                              double tol = kPsdTolerance);

  /// ρ = v v† on one block; v is normalized.
  static State vector_state(const StarAlgebra& algebra, std::size_t block, const Vector& v);

  /// Normalized trace (tr over the defining representation divided by its size).
  static State tracial(const StarAlgebra& algebra);

  const StarAlgebra& algebra() const { return algebra_; }
  const Matrix& density(std::size_t block) const { return densities_.at(block); }
  std::span<const Matrix> densities() const { return densities_; }

  Complex operator()(const AlgebraElement& a) const;

 private:
  State(StarAlgebra algebra, std::vector<Matrix> densities)
      : algebra_(std::move(algebra)), densities_(std::move(densities)) {}

  StarAlgebra algebra_;
  std::vector<Matrix> densities_;
};

/// max over blocks of the largest singular value.
double operator_norm(const AlgebraElement& a);

Complex evaluate_state(const State& f, const AlgebraElement& a);

/// ||f - f'|| computed as the trace norm of the blockwise density difference.
double dual_norm_distance(const State& f, const State& g);

enum class Composition { direct_sum, tensor };

StarAlgebra compose_algebras(const StarAlgebra& lhs, const StarAlgebra& rhs, Composition mode);

/// a (x) b for single-block factors, Kronecker order (lhs index is major).
AlgebraElement tensor_product(const AlgebraElement& lhs, const AlgebraElement& rhs);

AlgebraElement direct_sum(const AlgebraElement& lhs, const AlgebraElement& rhs);

/// The *-morphism A -> M_{n_i} keeping one block.
AlgebraElement block_projection(const AlgebraElement& a, std::size_t block);

}  // namespace aqt
