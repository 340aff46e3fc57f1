#include "aqt/gns.hpp"

#include <algorithm>
#include <cmath>

#include "aqt/linalg.hpp"

namespace aqt {

namespace {

struct PureData {
  std::size_t block;
  Vector vector;
};

PureData pure_data(const State& f) {
  for (std::size_t i = 0; i < f.algebra().block_count(); ++i) {
    if (f.density(i).trace().real() > 0.5) {
      const HermitianEigen eig = hermitian_eigen(f.density(i));
      const Eigen::Index top = eig.values.size() - 1;
      return {i, eig.vectors.col(top) * std::sqrt(std::max(eig.values(top), 0.0))};
    }
  }
  throw DomainError("pure state has no dominant block");
}

// max_u |g(u) - f(b* u b)| over the canonical basis; for large algebras over
// the diagonal units and the first row and column of each block.
double transition_residual(const State& f, const State& g, const AlgebraElement& b) {
  const StarAlgebra& alg = f.algebra();
  const AlgebraElement bs = b.adjoint();
  double r = 0.0;
  auto check = [&](std::size_t u) {
    const AlgebraElement e = alg.unit_element(u);
    r = std::max(r, std::abs(g(e) - f(bs * e * b)));
  };
  if (alg.basis_size() <= 1024) {
    for (std::size_t u = 0; u < alg.basis_size(); ++u) check(u);
    return r;
  }
  for (std::size_t i = 0; i < alg.block_count(); ++i)
    for (std::size_t p = 0; p < alg.block_dim(i); ++p) {
      check(alg.unit_index(i, p, p));
      if (p > 0) {
        check(alg.unit_index(i, 0, p));
        check(alg.unit_index(i, p, 0));
      }
    }
  return r;
}

// Minimal-norm b = 1 + delta with pi_f(b) theta_f = target. Blockwise the
// system reads delta_i F_i = T_i - F_i, solved by delta_i = (T_i - F_i) F_i^+.
AlgebraElement solve_cyclic_preimage(const GnsRep& rep, const Vector& target) {
  const StarAlgebra& alg = rep.algebra();
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < alg.block_count(); ++i) {
    const auto n = static_cast<Eigen::Index>(alg.block_dim(i));
    const auto r = static_cast<Eigen::Index>(rep.multiplicities()[i]);
    Matrix b = Matrix::Identity(n, n);
    if (r > 0) {
      const Matrix& fi = rep.factor(i);
      const auto off = static_cast<Eigen::Index>(rep.offset(i));
      Matrix t(n, r);
      for (Eigen::Index p = 0; p < n; ++p)
        for (Eigen::Index c = 0; c < r; ++c) t(p, c) = target(off + p * r + c);
      const Matrix pinv = (fi.adjoint() * fi).ldlt().solve(fi.adjoint());
      b += (t - fi) * pinv;
    }
    blocks.push_back(std::move(b));
  }
  return AlgebraElement(alg, std::move(blocks));
}

double intertwining_residual(const GnsRep& first, const GnsRep& second, const Matrix& gamma) {
  const StarAlgebra& alg = first.algebra();
  double r = 0.0;
  if (alg.basis_size() <= 1024) {
    for (std::size_t u = 0; u < alg.basis_size(); ++u) {
      const Matrix lhs = second.unit_representation(u);
      const Matrix rhs = gamma * first.unit_representation(u) * gamma.adjoint();
      r = std::max(r, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  } else {
    const auto g1 = first.generators();
    const auto g2 = second.generators();
    for (std::size_t k = 0; k < g1.size(); ++k)
      r = std::max(r, (g2[k] - gamma * g1[k] * gamma.adjoint()).cwiseAbs().maxCoeff());
  }
  return r;
}

}  // namespace

// Gram ///////////////////////////////////////////////////////////////////////

Matrix gram_matrix(const State& f) {
  const StarAlgebra& alg = f.algebra();
  const auto n = static_cast<Eigen::Index>(alg.basis_size());
  std::vector<AlgebraElement> units;
  units.reserve(alg.basis_size());
  for (std::size_t u = 0; u < alg.basis_size(); ++u) units.push_back(alg.unit_element(u));
  Matrix g(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    const AlgebraElement bs = units[static_cast<std::size_t>(b)].adjoint();
    for (Eigen::Index a = 0; a < n; ++a) g(b, a) = f(bs * units[static_cast<std::size_t>(a)]);
  }
  return g;
}

// GnsRep /////////////////////////////////////////////////////////////////////

GnsRep gns_construct(const StarAlgebra& algebra, const State& f) {
  if (!(f.algebra() == algebra)) throw ShapeError("gns_construct: state is defined on a different algebra");
  GnsRep rep(algebra, f);

  std::vector<HermitianEigen> spectra;
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  for (const auto& rho : f.densities()) {
    spectra.push_back(hermitian_eigen(rho));
    sigma_max = std::max(sigma_max, spectra.back().values.maxCoeff());
    sigma_min = std::min(sigma_min, spectra.back().values.minCoeff());
  }
  if (sigma_min < -kPsdTolerance * std::max(1.0, sigma_max))
    throw InvalidStateError("gns_construct: Gram form is not positive semidefinite");
  const double cut = static_cast<double>(algebra.basis_size()) * kGramRankCut * sigma_max;

  std::vector<Vector> theta_parts;
  for (std::size_t i = 0; i < algebra.block_count(); ++i) {
    const HermitianEigen& eig = spectra[i];
    const auto n = static_cast<Eigen::Index>(algebra.block_dim(i));
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = eig.values.size() - 1; k >= 0; --k)
      if (eig.values(k) > cut) keep.push_back(k);
    const auto r = static_cast<Eigen::Index>(keep.size());
    Matrix factor(n, r);
    for (Eigen::Index c = 0; c < r; ++c)
      factor.col(c) = eig.vectors.col(keep[static_cast<std::size_t>(c)])
                      * std::sqrt(eig.values(keep[static_cast<std::size_t>(c)]));
    rep.offset_.push_back(rep.dim_);
    rep.multiplicity_.push_back(static_cast<std::size_t>(r));
    rep.dim_ += static_cast<std::size_t>(n * r);
    rep.factor_.push_back(factor);
  }
  rep.theta_ = rep.vector_image(algebra.identity());
  return rep;
}

Matrix GnsRep::represent(const AlgebraElement& a) const {
  if (!(a.algebra() == algebra_)) throw ShapeError("GnsRep::represent: element of a different algebra");
  const auto d = static_cast<Eigen::Index>(dim_);
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < algebra_.block_count(); ++i) {
    const auto r = static_cast<Eigen::Index>(multiplicity_[i]);
    if (r == 0) continue;
    const auto off = static_cast<Eigen::Index>(offset_[i]);
    const Matrix& m = a.block(i);
    for (Eigen::Index p = 0; p < m.rows(); ++p)
      for (Eigen::Index q = 0; q < m.cols(); ++q) {
        if (m(p, q) == Complex(0.0)) continue;
        for (Eigen::Index c = 0; c < r; ++c) out(off + p * r + c, off + q * r + c) = m(p, q);
      }
  }
  return out;
}

Matrix GnsRep::unit_representation(std::size_t unit) const { return represent(algebra_.unit_element(unit)); }

Vector GnsRep::vector_image(const AlgebraElement& a) const {
  if (!(a.algebra() == algebra_)) throw ShapeError("GnsRep::vector_image: element of a different algebra");
  Vector out(static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < algebra_.block_count(); ++i) {
    const auto r = static_cast<Eigen::Index>(multiplicity_[i]);
    if (r == 0) continue;
    const Matrix y = a.block(i) * factor_[i];
    const auto off = static_cast<Eigen::Index>(offset_[i]);
    for (Eigen::Index p = 0; p < y.rows(); ++p)
      for (Eigen::Index c = 0; c < r; ++c) out(off + p * r + c) = y(p, c);
  }
  return out;
}

std::vector<Matrix> GnsRep::generators() const {
  std::vector<Matrix> diag_blocks;
  std::vector<Matrix> shift_blocks;
  double next = 1.0;
  for (std::size_t n : algebra_.blocks()) {
    Matrix d = Matrix::Zero(n, n);
    Matrix s = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      d(j, j) = next;
      next += 1.0;
      if (j + 1 < n) s(j, j + 1) = 1.0;
    }
    diag_blocks.push_back(d);
    shift_blocks.push_back(s);
  }
  return {represent(AlgebraElement(algebra_, diag_blocks)), represent(AlgebraElement(algebra_, shift_blocks))};
}

std::vector<std::size_t> GnsRep::kernel_blocks() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < multiplicity_.size(); ++i)
    if (multiplicity_[i] == 0) out.push_back(i);
  return out;
}

std::vector<AlgebraElement> GnsRep::kernel_basis() const {
  std::vector<AlgebraElement> out;
  for (std::size_t i : kernel_blocks()) {
    const std::size_t n = algebra_.block_dim(i);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) out.push_back(algebra_.unit_element(algebra_.unit_index(i, p, q)));
  }
  return out;
}

double reconstruction_residual(const GnsRep& rep, std::span<const AlgebraElement> elements) {
  const Vector& theta = rep.cyclic_vector();
  double r = 0.0;
  for (const auto& a : elements) {
    const Complex rebuilt = theta.dot(rep.represent(a) * theta);  // theta^† pi(a) theta
    r = std::max(r, std::abs(rep.state()(a) - rebuilt));
  }
  return r;
}

State vector_form(const GnsRep& rep, const Vector& xi) {
  if (static_cast<std::size_t>(xi.size()) != rep.dim()) throw ShapeError("vector_form: vector of wrong dimension");
  const double nn = xi.squaredNorm();
  if (!(nn > 0.0)) throw InvalidStateError("vector_form: zero vector");
  const StarAlgebra& alg = rep.algebra();
  std::vector<Matrix> densities;
  std::size_t off = 0;
  for (std::size_t i = 0; i < alg.block_count(); ++i) {
    const auto n = static_cast<Eigen::Index>(alg.block_dim(i));
    const auto r = static_cast<Eigen::Index>(rep.multiplicities()[i]);
    Matrix x(n, r);
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index c = 0; c < r; ++c) x(p, c) = xi(static_cast<Eigen::Index>(off) + p * r + c);
    densities.push_back(x * x.adjoint() / nn);
    off += static_cast<std::size_t>(n * r);
  }
  return State::from_densities(alg, std::move(densities));
}

std::vector<Matrix> commutant_basis(const GnsRep& rep) {
  const auto gens = rep.generators();
  return commutant_space(gens);
}

Purity purity_check(const StarAlgebra& algebra, const State& f) {
  return commutant_basis(gns_construct(algebra, f)).size() == 1 ? Purity::pure : Purity::mixed;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equal: return "equal";
    case Verdict::equivalent: return "equivalent";
    case Verdict::inequivalent: return "inequivalent";
    case Verdict::undecided: return "undecided";
  }
  return "undecided";
}

// Equivalence ////////////////////////////////////////////////////////////////

namespace {

struct IntertwinerSearch {
  Verdict verdict = Verdict::undecided;
  std::optional<Matrix> gamma;
  double conditioning = 0.0;
  std::size_t space_dim = 0;
  std::string note;
};

IntertwinerSearch search_intertwiner(const GnsRep& rf, const GnsRep& rg) {
  IntertwinerSearch out;
  const auto kf = rf.kernel_blocks();
  const auto kg = rg.kernel_blocks();
  if (kf != kg) {
    out.verdict = Verdict::inequivalent;
    out.note = "kernels differ";
    return out;
  }
  if (rf.dim() != rg.dim()) {
    out.verdict = Verdict::inequivalent;
    out.note = "kernels agree but carrier dimensions differ";
    return out;
  }
  const auto g1 = rf.generators();
  const auto g2 = rg.generators();
  const auto space = intertwiner_space(g1, g2);
  out.space_dim = space.size();
  if (space.empty()) {
    out.verdict = Verdict::inequivalent;
    out.note = "intertwiner system has only the zero solution";
    return out;
  }
  // Candidates: each basis element and one fixed generic combination.
  std::vector<Matrix> candidates(space.begin(), space.end());
  Matrix combo = Matrix::Zero(space.front().rows(), space.front().cols());
  for (std::size_t j = 0; j < space.size(); ++j) combo += space[j] / std::sqrt(static_cast<double>(j) + std::sqrt(2.0));
  candidates.push_back(combo);
  const Matrix* best = nullptr;
  for (const auto& c : candidates) {
    const double cond = inverse_condition(c);
    if (cond > out.conditioning) {
      out.conditioning = cond;
      best = &c;
    }
  }
  if (best != nullptr && out.conditioning > kIntertwinerInvertibility) {
    out.verdict = Verdict::equivalent;
    out.gamma = unitary_polar_factor(*best);
  } else if (out.conditioning > 1e-12) {
    out.verdict = Verdict::undecided;
    out.note = "intertwiner candidates are ill-conditioned";
  } else {
    out.verdict = Verdict::inequivalent;
    out.note = "no invertible intertwiner";
  }
  return out;
}

}  // namespace

EquivalenceReport equivalence_check(const StarAlgebra& algebra, const State& f, const State& g) {
  if (!(f.algebra() == algebra) || !(g.algebra() == algebra))
    throw ShapeError("equivalence_check: states on different algebras");
  const GnsRep rf = gns_construct(algebra, f);
  const GnsRep rg = gns_construct(algebra, g);

  EquivalenceReport rep;
  rep.kernel_first = rf.kernel_blocks();
  rep.kernel_second = rg.kernel_blocks();
  rep.kernels_match = rep.kernel_first == rep.kernel_second;
  rep.dim_first = rf.dim();
  rep.dim_second = rg.dim();
  rep.norm_distance = dual_norm_distance(f, g);

  if (rep.norm_distance <= 1e-12) {
    rep.verdict = Verdict::equal;
    rep.intertwiner = Matrix::Identity(static_cast<Eigen::Index>(rf.dim()), static_cast<Eigen::Index>(rf.dim()));
    rep.intertwiner_conditioning = 1.0;
    rep.note = "identical states";
  } else {
    IntertwinerSearch s = search_intertwiner(rf, rg);
    rep.verdict = s.verdict;
    rep.intertwiner = std::move(s.gamma);
    rep.intertwiner_conditioning = s.conditioning;
    rep.intertwiner_space_dim = s.space_dim;
    rep.note = s.note;
  }
  if (!is_equivalent(rep.verdict)) return rep;

  rep.intertwiner_residual = intertwining_residual(rf, rg, *rep.intertwiner);
  const Matrix& gamma = *rep.intertwiner;
  TransitionPair tp{solve_cyclic_preimage(rf, gamma.adjoint() * rg.cyclic_vector()),
                    solve_cyclic_preimage(rg, gamma * rf.cyclic_vector())};
  if (rep.verdict == Verdict::equal) tp = TransitionPair{algebra.identity(), algebra.identity()};
  tp.forward_residual = transition_residual(f, g, tp.forward);
  tp.backward_residual = transition_residual(g, f, tp.backward);
  rep.transition = std::move(tp);

  if (commutant_space(rf.generators()).size() == 1 && commutant_space(rg.generators()).size() == 1)
    rep.unitary = pure_unitary_intertwiner(algebra, f, g);
  return rep;
}

std::optional<TransitionPair> transition_elements(const StarAlgebra& algebra, const State& f, const State& g) {
  EquivalenceReport rep = equivalence_check(algebra, f, g);
  return rep.transition;
}

std::optional<AlgebraElement> pure_unitary_intertwiner(const StarAlgebra& algebra, const State& f,
                                                       const State& g) {
  if (purity_check(algebra, f) != Purity::pure || purity_check(algebra, g) != Purity::pure)
    throw DomainError("pure_unitary_intertwiner: both states must be pure");
  const PureData pf = pure_data(f);
  const PureData pg = pure_data(g);
  if (pf.block != pg.block) return std::nullopt;

  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < algebra.block_count(); ++i) {
    const auto n = static_cast<Eigen::Index>(algebra.block_dim(i));
    blocks.push_back(i == pf.block ? reflection_onto(pf.vector, pg.vector) : Matrix(Matrix::Identity(n, n)));
  }
  // Fix the U(1) phase: the first entry of modulus > 1e-12, scanning columns
  // of the defining representation in order, is made real positive.
  const Matrix dense = AlgebraElement(algebra, blocks).to_dense();
  Complex phase = 1.0;
  bool found = false;
  for (Eigen::Index c = 0; c < dense.cols() && !found; ++c)
    for (Eigen::Index r = 0; r < dense.rows() && !found; ++r)
      if (std::abs(dense(r, c)) > 1e-12) {
        phase = std::conj(dense(r, c)) / std::abs(dense(r, c));
        found = true;
      }
  for (auto& b : blocks) b *= phase;
  AlgebraElement u(algebra, std::move(blocks));
  if (transition_residual(f, g, u) > 1e-8)
    throw NumericalError("pure_unitary_intertwiner: constructed unitary fails verification");
  return u;
}

Matrix summed_representation(std::span<const GnsRep> reps, const AlgebraElement& a) {
  std::size_t total = 0;
  for (const auto& r : reps) total += r.dim();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  Eigen::Index off = 0;
  for (const auto& r : reps) {
    const auto d = static_cast<Eigen::Index>(r.dim());
    out.block(off, off, d, d) = r.represent(a);
    off += d;
  }
  return out;
}

Matrix superselection_operator(std::span<const GnsRep> reps, std::span<const double> r) {
  if (reps.size() != r.size()) throw ShapeError("superselection_operator: one value per representation is required");
  std::size_t total = 0;
  for (const auto& rep : reps) total += rep.dim();
  Matrix t = Matrix::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  Eigen::Index off = 0;
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const auto d = static_cast<Eigen::Index>(reps[k].dim());
    for (Eigen::Index j = 0; j < d; ++j) t(off + j, off + j) = r[k];
    off += d;
  }
  return t;
}

}  // namespace aqt
