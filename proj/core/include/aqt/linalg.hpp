#pragma once

// Dense complex linear algebra shared by the GNS, group and symmetry modules.

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace aqt {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns, phase-fixed
};

/// Eigen-decomposition of a Hermitian matrix. Each eigenvector is rotated so
/// that its first entry of modulus above 1e-12 is real and positive.
HermitianEigen hermitian_eigen(const Matrix& h);

/// Sum of singular values of a Hermitian matrix (sum of |eigenvalues|).
double trace_norm(const Matrix& hermitian);

Matrix kron(const Matrix& a, const Matrix& b);

/// exp(factor * h) for Hermitian h via its spectral decomposition.
Matrix hermitian_exp(const Matrix& h, std::complex<double> factor);

/// Frobenius-orthonormal basis of {X : X * source[k] == target[k] X for all k},
/// X of shape target_dim x source_dim. Both generator lists must be closed
/// under adjoints (or *-generate the same algebra together with their
/// adjoints, which are added internally).
std::vector<Matrix> intertwiner_space(std::span<const Matrix> source, std::span<const Matrix> target,
                                      double null_tol = 1e-10);

/// Basis of the commutant {X : X g == g X for all generators g}.
std::vector<Matrix> commutant_space(std::span<const Matrix> generators, double null_tol = 1e-10);

/// Smallest over largest singular value; 0 for empty or singular input.
double inverse_condition(const Matrix& m);

/// Unitary reflection sending v to a unit-modulus multiple of w (|v| = |w|).
/// Returns the identity when v and w agree up to a phase.
Matrix reflection_onto(const Vector& v, const Vector& w);

/// U (U^† U)^{-1/2}: the unitary polar factor of an invertible matrix.
Matrix unitary_polar_factor(const Matrix& m);

}  // namespace aqt
