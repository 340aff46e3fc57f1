#include "aqt/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "aqt/linalg.hpp"

namespace aqt {

namespace {

std::vector<std::size_t> identity_permutation(std::size_t k) {
  std::vector<std::size_t> p(k);
  for (std::size_t i = 0; i < k; ++i) p[i] = i;
  return p;
}

}  // namespace

// InnerAutomorphism //////////////////////////////////////////////////////////

InnerAutomorphism::InnerAutomorphism(AlgebraElement unitary, std::vector<std::size_t> block_permutation, double tol)
    : unitary_(std::move(unitary)), perm_(std::move(block_permutation)) {
  const StarAlgebra& alg = unitary_.algebra();
  if (perm_.empty()) perm_ = identity_permutation(alg.block_count());
  if (perm_.size() != alg.block_count()) throw ShapeError("InnerAutomorphism: one permutation entry per block is required");
  std::vector<char> seen(perm_.size(), 0);
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    if (perm_[i] >= perm_.size() || seen[perm_[i]]++) throw DomainError("InnerAutomorphism: invalid block permutation");
    if (alg.block_dim(perm_[i]) != alg.block_dim(i))
      throw DomainError("InnerAutomorphism: permuted blocks must have equal dimensions");
  }
  if (!unitary_.is_unitary(tol)) throw DomainError("InnerAutomorphism: U is not unitary");
}

InnerAutomorphism InnerAutomorphism::identity(const StarAlgebra& algebra) { return InnerAutomorphism(algebra.identity()); }

bool InnerAutomorphism::is_inner() const { return perm_ == identity_permutation(perm_.size()); }

AlgebraElement InnerAutomorphism::apply(const AlgebraElement& a) const {
  if (!(a.algebra() == algebra())) throw ShapeError("InnerAutomorphism::apply: element of a different algebra");
  std::vector<Matrix> out;
  out.reserve(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i)
    out.push_back(unitary_.block(i) * a.block(perm_[i]) * unitary_.block(i).adjoint());
  return AlgebraElement(algebra(), std::move(out));
}

InnerAutomorphism InnerAutomorphism::inverse() const {
  // rho o rho^-1 = id needs V_{s(i)} = U_i^* and permutation s^-1.
  std::vector<std::size_t> inv(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) inv[perm_[i]] = i;
  std::vector<Matrix> blocks(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) blocks[perm_[i]] = unitary_.block(i).adjoint();
  return InnerAutomorphism(AlgebraElement(algebra(), std::move(blocks)), std::move(inv), 1e-9);
}

double InnerAutomorphism::action_distance(const InnerAutomorphism& other) const {
  if (!(other.algebra() == algebra())) throw ShapeError("InnerAutomorphism: automorphisms of different algebras");
  const StarAlgebra& alg = algebra();
  double d = 0.0;
  if (alg.basis_size() <= 1024) {
    for (std::size_t u = 0; u < alg.basis_size(); ++u) {
      const AlgebraElement e = alg.unit_element(u);
      d = std::max(d, apply(e).max_abs_diff(other.apply(e)));
    }
    return d;
  }
  // Equal actions iff the permutations agree and V_i^* U_i is scalar on every block.
  if (perm_ != other.perm_) return 2.0;
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    const Matrix w = other.unitary_.block(i).adjoint() * unitary_.block(i);
    const Complex lambda = w.trace() / static_cast<double>(w.rows());
    d = std::max(d, (w - lambda * Matrix::Identity(w.rows(), w.cols())).cwiseAbs().maxCoeff());
  }
  return d;
}

InnerAutomorphism compose(const InnerAutomorphism& rho, const InnerAutomorphism& tau) {
  if (!(rho.algebra() == tau.algebra())) throw ShapeError("compose: automorphisms of different algebras");
  const auto& s = rho.permutation();
  const auto& t = tau.permutation();
  std::vector<Matrix> blocks;
  std::vector<std::size_t> perm(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    blocks.push_back(rho.unitary().block(i) * tau.unitary().block(s[i]));
    perm[i] = t[s[i]];
  }
  return InnerAutomorphism(AlgebraElement(rho.algebra(), std::move(blocks)), std::move(perm), 1e-9);
}

State pushforward_state(const State& f, const InnerAutomorphism& rho) {
  if (!(f.algebra() == rho.algebra())) throw ShapeError("pushforward_state: state and automorphism on different algebras");
  // f(rho(a)) = sum_i tr(U_i^* rho_i U_i a_{s(i)}).
  std::vector<Matrix> densities(f.algebra().block_count());
  const auto& s = rho.permutation();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Matrix& u = rho.unitary().block(i);
    densities[s[i]] = u.adjoint() * f.density(i) * u;
  }
  return State::from_densities(f.algebra(), std::move(densities));
}

bool stationarity_check(const State& f, const InnerAutomorphism& rho, double tol) {
  return dual_norm_distance(f, pushforward_state(f, rho)) <= tol;
}

// Implementers ///////////////////////////////////////////////////////////////

ImplementerResult unitary_implementer(const GnsRep& rep, const InnerAutomorphism& rho) {
  const StarAlgebra& alg = rep.algebra();
  if (!(rho.algebra() == alg)) throw ShapeError("unitary_implementer: automorphism of a different algebra");
  const auto d = static_cast<Eigen::Index>(rep.dim());
  const auto n = static_cast<Eigen::Index>(alg.basis_size());
  Matrix x(d, n);
  Matrix y(d, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    const AlgebraElement e = alg.unit_element(static_cast<std::size_t>(u));
    x.col(u) = rep.vector_image(e);
    y.col(u) = rep.vector_image(rho.apply(e));
  }
  ImplementerResult out;
  out.isometry_defect = (x.adjoint() * x - y.adjoint() * y).cwiseAbs().maxCoeff();
  if (out.isometry_defect > kIsometryTolerance) return out;

  const Matrix v = y * x.completeOrthogonalDecomposition().pseudoInverse();
  out.cyclic_residual = (v * rep.cyclic_vector() - rep.cyclic_vector()).cwiseAbs().maxCoeff();
  out.unitarity_residual = (v.adjoint() * v - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  for (Eigen::Index u = 0; u < n; ++u) {
    const AlgebraElement e = alg.unit_element(static_cast<std::size_t>(u));
    out.intertwining_residual = std::max(
        out.intertwining_residual, (rep.represent(rho.apply(e)) - v * rep.represent(e) * v.adjoint()).cwiseAbs().maxCoeff());
  }
  out.unitary = v;
  return out;
}

ImplementerResult unitary_implementer(const State& f, const InnerAutomorphism& rho) {
  return unitary_implementer(gns_construct(f), rho);
}

// Groups and orbits //////////////////////////////////////////////////////////

AutomorphismGroup::AutomorphismGroup(std::vector<InnerAutomorphism> elements, double tol)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw DomainError("AutomorphismGroup: empty element list");
  const std::size_t n = elements_.size();
  auto find = [&](const InnerAutomorphism& a) -> std::size_t {
    for (std::size_t k = 0; k < n; ++k)
      if (elements_[k].action_distance(a) <= tol) return k;
    return n;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (elements_[a].action_distance(elements_[b]) <= tol)
        throw DomainError("AutomorphismGroup: elements " + std::to_string(a) + " and " + std::to_string(b) +
                          " act identically");
  identity_ = find(InnerAutomorphism::identity(elements_.front().algebra()));
  if (identity_ == n) throw DomainError("AutomorphismGroup: identity automorphism is missing");
  table_.assign(n, std::vector<std::size_t>(n, n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t c = find(compose(elements_[a], elements_[b]));
      if (c == n)
        throw DomainError("AutomorphismGroup: not closed under composition (" + std::to_string(a) + " o " +
                          std::to_string(b) + ")");
      table_[a][b] = c;
    }
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t c = find(elements_[a].inverse());
    if (c == n) throw DomainError("AutomorphismGroup: not closed under inverses");
    inverse_[a] = c;
  }
}

Complex AutomorphismGroup::multiplier(std::size_t g, std::size_t h) const {
  const Matrix prod = (elements_.at(g).unitary() * elements_.at(h).unitary()).to_dense();
  const Matrix rep = elements_.at(multiply(g, h)).unitary().to_dense();
  return (rep.adjoint() * prod).trace() / static_cast<double>(prod.rows());
}

OrbitReport stabilizer_orbit(const State& f, const AutomorphismGroup& group) {
  OrbitReport rep;
  for (std::size_t g = 0; g < group.order(); ++g) {
    const State pushed = pushforward_state(f, group.element(g));
    if (dual_norm_distance(f, pushed) <= kStationarityTolerance) rep.stabilizer.push_back(g);
    std::size_t idx = rep.orbit.size();
    for (std::size_t k = 0; k < rep.orbit.size(); ++k)
      if (dual_norm_distance(rep.orbit[k], pushed) <= kOrbitDistinctness) {
        idx = k;
        break;
      }
    if (idx == rep.orbit.size()) rep.orbit.push_back(pushed);
    rep.orbit_index.push_back(idx);
  }
  if (rep.stabilizer.empty()) throw NumericalError("stabilizer_orbit: the identity does not stabilize the state");
  rep.coset_count = group.order() / rep.stabilizer.size();
  rep.lagrange_holds = rep.orbit.size() * rep.stabilizer.size() == group.order();
  return rep;
}

// Flows //////////////////////////////////////////////////////////////////////

AlgebraElement one_parameter_flow(const AlgebraElement& b, double t, const AlgebraElement& a) {
  if (!(a.algebra() == b.algebra())) throw ShapeError("one_parameter_flow: elements of different algebras");
  if (!b.is_hermitian(1e-10)) throw DomainError("one_parameter_flow: generator must be Hermitian");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < a.algebra().block_count(); ++i) {
    const Matrix e_minus = hermitian_exp(b.block(i), Complex(0.0, -t));
    out.push_back(e_minus * a.block(i) * e_minus.adjoint());
  }
  return AlgebraElement(a.algebra(), std::move(out));
}

double flow_generator_residual(const AlgebraElement& b, const AlgebraElement& a, double h) {
  if (!(h > 0.0)) throw DomainError("flow_generator_residual: step must be positive");
  const AlgebraElement moved = one_parameter_flow(b, h, a);
  const AlgebraElement generator = Complex(0.0, -1.0) * (b * a - a * b);
  const AlgebraElement quotient = (moved - a) * Complex(1.0 / h);
  return quotient.max_abs_diff(generator);
}

}  // namespace aqt
