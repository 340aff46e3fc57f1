#include "aqt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "aqt/error.hpp"

namespace aqt {

namespace {

using Complex = std::complex<double>;

// Deterministic, pairwise-distinct weights for building one generic Hermitian
// combination of the generators.
double generic_weight(std::size_t k, double shift) { return 1.0 / std::sqrt(static_cast<double>(k) + shift); }

// Hermitian H = sum_k a_k (g_k + g_k^†) + b_k i (g_k - g_k^†).
Matrix generic_hermitian(std::span<const Matrix> gens) {
  Matrix h = Matrix::Zero(gens.front().rows(), gens.front().cols());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const Matrix& g = gens[k];
    h += generic_weight(k, std::sqrt(2.0)) * (g + g.adjoint());
    h += Complex(0.0, generic_weight(k, std::sqrt(3.0) + 0.5)) * (g - g.adjoint());
  }
  return 0.5 * (h + h.adjoint());
}

}  // namespace

HermitianEigen hermitian_eigen(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_eigen: eigensolver failed");
  HermitianEigen out{es.eigenvalues(), es.eigenvectors()};
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.vectors.rows(); ++r) {
      const Complex z = out.vectors(r, c);
      if (std::abs(z) > 1e-12) {
        out.vectors.col(c) *= std::conj(z) / std::abs(z);
        break;
      }
    }
  }
  return out;
}

double trace_norm(const Matrix& hermitian) {
  const Matrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix hermitian_exp(const Matrix& h, Complex factor) {
  const HermitianEigen eig = hermitian_eigen(0.5 * (h + h.adjoint()));
  Vector d(eig.values.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::exp(factor * eig.values(i));
  return eig.vectors * d.asDiagonal() * eig.vectors.adjoint();
}

std::vector<Matrix> intertwiner_space(std::span<const Matrix> source, std::span<const Matrix> target,
                                      double null_tol) {
  if (source.size() != target.size() || source.empty())
    throw ShapeError("intertwiner_space: generator lists must be non-empty and of equal length");
  const Eigen::Index d1 = source.front().rows();
  const Eigen::Index d2 = target.front().rows();

  // X intertwines g and g^† for every generator, hence the generic Hermitian
  // combinations: X H1 = H2 X. X is block-structured between matching
  // eigenspaces of H2 (rows) and H1 (columns).
  const HermitianEigen e1 = hermitian_eigen(generic_hermitian(source));
  const HermitianEigen e2 = hermitian_eigen(generic_hermitian(target));
  const double scale = std::max({1.0, e1.values.cwiseAbs().maxCoeff(), e2.values.cwiseAbs().maxCoeff()});

  struct Slot {
    Eigen::Index row;
    Eigen::Index col;
  };
  std::vector<Slot> slots;
  for (Eigen::Index a = 0; a < d2; ++a)
    for (Eigen::Index b = 0; b < d1; ++b)
      if (std::abs(e2.values(a) - e1.values(b)) <= 1e-9 * scale) slots.push_back({a, b});
  if (slots.empty()) return {};

  // Normal equations of sum_k ||P2_k X - X P1_k||_F^2 over X = sum x_t E_{row_t,col_t}
  // in the rotated bases; entries come from closed-form traces.
  const auto u = static_cast<Eigen::Index>(slots.size());
  Matrix normal = Matrix::Zero(u, u);
  auto accumulate = [&](const Matrix& p1, const Matrix& p2) {
    const Matrix p2hp2 = p2.adjoint() * p2;
    const Matrix p1p1h = p1 * p1.adjoint();
    for (Eigen::Index s = 0; s < u; ++s) {
      const auto [a, b] = slots[static_cast<std::size_t>(s)];
      for (Eigen::Index t = 0; t < u; ++t) {
        const auto [c, d] = slots[static_cast<std::size_t>(t)];
        Complex v = -std::conj(p2(c, a)) * p1(d, b) - p2(a, c) * std::conj(p1(b, d));
        if (b == d) v += p2hp2(a, c);
        if (a == c) v += p1p1h(d, b);
        normal(s, t) += v;
      }
    }
  };
  for (std::size_t k = 0; k < source.size(); ++k) {
    const Matrix p1 = e1.vectors.adjoint() * source[k] * e1.vectors;
    const Matrix p2 = e2.vectors.adjoint() * target[k] * e2.vectors;
    accumulate(p1, p2);
    accumulate(p1.adjoint(), p2.adjoint());
  }
  normal = 0.5 * (normal + normal.adjoint());
  // The normal matrix is a Gram matrix of vectors with squared norms ~ scale^2.
  const HermitianEigen ne = hermitian_eigen(normal);
  const double cut = null_tol * std::max(1.0, ne.values.cwiseAbs().maxCoeff());

  std::vector<Matrix> basis;
  for (Eigen::Index k = 0; k < u; ++k) {
    if (ne.values(k) > cut) break;
    Matrix x = Matrix::Zero(d2, d1);
    for (Eigen::Index t = 0; t < u; ++t) {
      const auto [a, b] = slots[static_cast<std::size_t>(t)];
      x(a, b) = ne.vectors(t, k);
    }
    basis.push_back(e2.vectors * x * e1.vectors.adjoint());
  }
  return basis;
}

std::vector<Matrix> commutant_space(std::span<const Matrix> generators, double null_tol) {
  return intertwiner_space(generators, generators, null_tol);
}

double inverse_condition(const Matrix& m) {
  if (m.size() == 0 || m.rows() != m.cols()) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (!(s(0) > 0.0)) return 0.0;
  return s(s.size() - 1) / s(0);
}

Matrix reflection_onto(const Vector& v, const Vector& w) {
  const auto n = v.size();
  const Complex z = w.dot(v);  // w^† v
  Vector w_rot = w;
  if (std::abs(z) > 1e-14) w_rot *= z / std::abs(z);
  const Vector diff = v - w_rot;
  const double nn = diff.squaredNorm();
  if (nn < 1e-28) return Matrix::Identity(n, n);
  return Matrix::Identity(n, n) - (2.0 / nn) * diff * diff.adjoint();
}

Matrix unitary_polar_factor(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace aqt
