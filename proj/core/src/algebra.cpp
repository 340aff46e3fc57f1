#include "aqt/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aqt/linalg.hpp"

namespace aqt {

// StarAlgebra ////////////////////////////////////////////////////////////////

StarAlgebra::StarAlgebra(std::vector<std::size_t> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw DomainError("StarAlgebra: at least one block is required");
  offsets_.reserve(blocks_.size());
  for (std::size_t n : blocks_) {
    if (n == 0) throw DomainError("StarAlgebra: block dimensions must be >= 1");
    offsets_.push_back(basis_size_);
    basis_size_ += n * n;
    total_dim_ += n;
  }
}

MatrixUnit StarAlgebra::unit(std::size_t index) const {
  if (index >= basis_size_) throw ShapeError("StarAlgebra::unit: index out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const std::size_t block = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  const std::size_t local = index - offsets_[block];
  const std::size_t n = blocks_[block];
  return {block, local / n, local % n};
}

std::size_t StarAlgebra::unit_index(std::size_t block, std::size_t row, std::size_t col) const {
  const std::size_t n = block_dim(block);
  if (row >= n || col >= n) throw ShapeError("StarAlgebra::unit_index: out of range");
  return offsets_[block] + row * n + col;
}

AlgebraElement StarAlgebra::identity() const {
  std::vector<Matrix> b;
  b.reserve(blocks_.size());
  for (std::size_t n : blocks_) b.push_back(Matrix::Identity(n, n));
  return AlgebraElement(*this, std::move(b));
}

AlgebraElement StarAlgebra::zero() const {
  std::vector<Matrix> b;
  b.reserve(blocks_.size());
  for (std::size_t n : blocks_) b.push_back(Matrix::Zero(n, n));
  return AlgebraElement(*this, std::move(b));
}

AlgebraElement StarAlgebra::unit_element(std::size_t index) const {
  const MatrixUnit u = unit(index);
  Matrix m = Matrix::Zero(blocks_[u.block], blocks_[u.block]);
  m(u.row, u.col) = 1.0;
  return embed(u.block, m);
}

AlgebraElement StarAlgebra::embed(std::size_t block, const Matrix& m) const {
  AlgebraElement z = zero();
  const std::size_t n = block_dim(block);
  if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n)
    throw ShapeError("StarAlgebra::embed: block shape mismatch");
  std::vector<Matrix> b(z.blocks().begin(), z.blocks().end());
  b[block] = m;
  return AlgebraElement(*this, std::move(b));
}

// AlgebraElement /////////////////////////////////////////////////////////////

AlgebraElement::AlgebraElement(StarAlgebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (blocks_.size() != algebra_.block_count())
    throw ShapeError("AlgebraElement: block count does not match the algebra");
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto n = static_cast<Eigen::Index>(algebra_.block_dim(i));
    if (blocks_[i].rows() != n || blocks_[i].cols() != n)
      throw ShapeError("AlgebraElement: block " + std::to_string(i) + " has the wrong shape");
  }
}

void AlgebraElement::require_same_shape(const AlgebraElement& other, const char* op) const {
  if (!(algebra_ == other.algebra_))
    throw ShapeError(std::string("AlgebraElement::") + op + ": elements of different algebras");
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<Matrix> b;
  b.reserve(blocks_.size());
  for (const auto& m : blocks_) b.push_back(m.adjoint());
  return AlgebraElement(algebra_, std::move(b));
}

Vector AlgebraElement::coefficients() const {
  Vector c(static_cast<Eigen::Index>(algebra_.basis_size()));
  Eigen::Index k = 0;
  for (const auto& m : blocks_)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index s = 0; s < m.cols(); ++s) c(k++) = m(r, s);
  return c;
}

AlgebraElement AlgebraElement::from_coefficients(const StarAlgebra& algebra, const Vector& c) {
  if (static_cast<std::size_t>(c.size()) != algebra.basis_size())
    throw ShapeError("AlgebraElement::from_coefficients: wrong coefficient count");
  std::vector<Matrix> b;
  Eigen::Index k = 0;
  for (std::size_t n : algebra.blocks()) {
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) m(r, s) = c(k++);
    b.push_back(std::move(m));
  }
  return AlgebraElement(algebra, std::move(b));
}

Matrix AlgebraElement::to_dense() const {
  const auto n = static_cast<Eigen::Index>(algebra_.total_dim());
  Matrix out = Matrix::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& m : blocks_) {
    out.block(off, off, m.rows(), m.cols()) = m;
    off += m.rows();
  }
  return out;
}

bool AlgebraElement::is_hermitian(double tol) const {
  return std::all_of(blocks_.begin(), blocks_.end(), [tol](const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
  });
}

bool AlgebraElement::is_unitary(double tol) const {
  return std::all_of(blocks_.begin(), blocks_.end(), [tol](const Matrix& m) {
    const Matrix id = Matrix::Identity(m.rows(), m.cols());
    return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tol
        && (m * m.adjoint() - id).cwiseAbs().maxCoeff() <= tol;
  });
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  require_same_shape(rhs, "operator+");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += rhs.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  require_same_shape(rhs, "operator-");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= rhs.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
  for (auto& m : blocks_) m *= s;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  lhs.require_same_shape(rhs, "operator*");
  std::vector<Matrix> b;
  b.reserve(lhs.blocks_.size());
  for (std::size_t i = 0; i < lhs.blocks_.size(); ++i) b.push_back(lhs.blocks_[i] * rhs.blocks_[i]);
  return AlgebraElement(lhs.algebra_, std::move(b));
}

double AlgebraElement::max_abs_diff(const AlgebraElement& other) const {
  require_same_shape(other, "max_abs_diff");
  double d = 0.0;
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    d = std::max(d, (blocks_[i] - other.blocks_[i]).cwiseAbs().maxCoeff());
  return d;
}

// State ////////////////////////////////////////////////////////////////////

State State::from_densities(StarAlgebra algebra, std::vector<Matrix> densities, double tol) {
  if (densities.size() != algebra.block_count())
    throw ShapeError("State: expected one density per block");
  double total = 0.0;
  for (std::size_t i = 0; i < densities.size(); ++i) {
    Matrix& rho = densities[i];
    const auto n = static_cast<Eigen::Index>(algebra.block_dim(i));
    if (rho.rows() != n || rho.cols() != n)
      throw ShapeError("State: density " + std::to_string(i) + " has the wrong shape");
    if (!rho.allFinite()) throw InvalidStateError("State: density has non-finite entries");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
      throw InvalidStateError("State: density " + std::to_string(i) + " is not Hermitian");
    rho = (0.5 * (rho + rho.adjoint())).eval();
    total += rho.trace().real();
  }
  const double scale = std::max(std::abs(total), 1.0);
  for (std::size_t i = 0; i < densities.size(); ++i) {
    Matrix& rho = densities[i];
    const HermitianEigen eig = hermitian_eigen(rho);
    if (eig.values.minCoeff() < -tol * scale)
      throw InvalidStateError("State: density " + std::to_string(i) + " has a negative eigenvalue "
                              + std::to_string(eig.values.minCoeff()));
    if (eig.values.minCoeff() < 0.0) {
      const RealVector clamped = eig.values.cwiseMax(0.0);
      rho = eig.vectors * clamped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    }
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance)
    throw InvalidStateError("State: densities must have total trace 1 (got "
                            + std::to_string(total) + ")");
  return State(std::move(algebra), std::move(densities));
}

State State::vector_state(const StarAlgebra& algebra, std::size_t block, const Vector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0)) throw InvalidStateError("State::vector_state: zero vector");
  const Vector u = v / norm;
  std::vector<Matrix> d;
  for (std::size_t i = 0; i < algebra.block_count(); ++i) {
    const auto n = static_cast<Eigen::Index>(algebra.block_dim(i));
    d.push_back(i == block ? Matrix(u * u.adjoint()) : Matrix(Matrix::Zero(n, n)));
  }
  return from_densities(algebra, std::move(d));
}

State State::tracial(const StarAlgebra& algebra) {
  const double total = static_cast<double>(algebra.total_dim());
  std::vector<Matrix> d;
  for (std::size_t n : algebra.blocks()) d.push_back(Matrix::Identity(n, n) / total);
  return from_densities(algebra, std::move(d));
}

Complex State::operator()(const AlgebraElement& a) const {
  if (!(a.algebra() == algebra_)) throw ShapeError("State: element belongs to a different algebra");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < densities_.size(); ++i)
    sum += (densities_[i].transpose().cwiseProduct(a.block(i))).sum();
  return sum;
}

// free functions /////////////////////////////////////////////////////////////

double operator_norm(const AlgebraElement& a) {
  double best = 0.0;
  for (const auto& m : a.blocks()) {
    Eigen::JacobiSVD<Matrix> svd(m);
    best = std::max(best, svd.singularValues()(0));
  }
  return best;
}

Complex evaluate_state(const State& f, const AlgebraElement& a) { return f(a); }

double dual_norm_distance(const State& f, const State& g) {
  if (!(f.algebra() == g.algebra())) throw ShapeError("dual_norm_distance: states on different algebras");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.algebra().block_count(); ++i) sum += trace_norm(f.density(i) - g.density(i));
  return sum;
}

StarAlgebra compose_algebras(const StarAlgebra& lhs, const StarAlgebra& rhs, Composition mode) {
  if (mode == Composition::direct_sum) {
    std::vector<std::size_t> b(lhs.blocks().begin(), lhs.blocks().end());
    b.insert(b.end(), rhs.blocks().begin(), rhs.blocks().end());
    return StarAlgebra(std::move(b));
  }
  if (lhs.block_count() != 1 || rhs.block_count() != 1)
    throw DomainError("compose_algebras: tensor composition requires single-block factors");
  return StarAlgebra({lhs.block_dim(0) * rhs.block_dim(0)});
}

AlgebraElement tensor_product(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  const StarAlgebra alg = compose_algebras(lhs.algebra(), rhs.algebra(), Composition::tensor);
  return AlgebraElement(alg, {kron(lhs.block(0), rhs.block(0))});
}

AlgebraElement direct_sum(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  const StarAlgebra alg = compose_algebras(lhs.algebra(), rhs.algebra(), Composition::direct_sum);
  std::vector<Matrix> b(lhs.blocks().begin(), lhs.blocks().end());
  b.insert(b.end(), rhs.blocks().begin(), rhs.blocks().end());
  return AlgebraElement(alg, std::move(b));
}

AlgebraElement block_projection(const AlgebraElement& a, std::size_t block) {
  return AlgebraElement(StarAlgebra::full_matrix(a.algebra().block_dim(block)), {a.block(block)});
}

}  // namespace aqt
