#include "aqt/group_rep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "aqt/linalg.hpp"

namespace aqt {

// FiniteGroup ////////////////////////////////////////////////////////////////

std::shared_ptr<const FiniteGroup> FiniteGroup::from_table(std::vector<std::vector<std::size_t>> table,
                                                           std::vector<std::string> labels) {
  const std::size_t n = table.size();
  if (n == 0) throw DomainError("FiniteGroup: empty table");
  for (const auto& row : table) {
    if (row.size() != n) throw ShapeError("FiniteGroup: table must be square");
    std::vector<char> seen(n, 0);
    for (std::size_t v : row) {
      if (v >= n) throw DomainError("FiniteGroup: table entry out of range");
      if (seen[v]++) throw DomainError("FiniteGroup: table row is not a permutation");
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<char> seen(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      if (seen[table[a][b]]++) throw DomainError("FiniteGroup: table column is not a permutation");
  }
  std::size_t e = n;
  for (std::size_t a = 0; a < n && e == n; ++a) {
    bool ok = true;
    for (std::size_t b = 0; b < n && ok; ++b) ok = table[a][b] == b && table[b][a] == b;
    if (ok) e = a;
  }
  if (e == n) throw DomainError("FiniteGroup: no identity element");

  auto check = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (table[table[a][b]][c] != table[a][table[b][c]]) throw DomainError("FiniteGroup: table is not associative");
  };
  if (n <= 24) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int k = 0; k < 20000; ++k) check(pick(rng), pick(rng), pick(rng));
  }

  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == e) g->inverse_[a] = b;
  if (labels.empty()) {
    for (std::size_t a = 0; a < n; ++a) labels.push_back(std::to_string(a));
  } else if (labels.size() != n) {
    throw ShapeError("FiniteGroup: one label per element is required");
  }
  g->table_ = std::move(table);
  g->labels_ = std::move(labels);
  g->identity_ = e;
  return g;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw DomainError("FiniteGroup::cyclic: order must be >= 1");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return from_table(std::move(t));
}

std::shared_ptr<const FiniteGroup> FiniteGroup::symmetric(std::size_t n) {
  if (n == 0 || n > 5) throw DomainError("FiniteGroup::symmetric: supported for 1 <= n <= 5");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::size_t m = perms.size();
  std::vector<std::string> labels;
  for (const auto& q : perms) {
    std::string s;
    for (std::size_t x : q) s += static_cast<char>('0' + x);
    labels.push_back(s);
  }
  std::vector<std::vector<std::size_t>> t(m, std::vector<std::size_t>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      std::vector<std::size_t> c(n);
      for (std::size_t x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = static_cast<std::size_t>(std::lower_bound(perms.begin(), perms.end(), c) - perms.begin());
    }
  return from_table(std::move(t), std::move(labels));
}

std::vector<std::vector<std::size_t>> FiniteGroup::conjugacy_classes() const {
  const std::size_t n = order();
  std::vector<char> done(n, 0);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t a = 0; a < n; ++a) {
    if (done[a]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t g = 0; g < n; ++g) {
      const std::size_t c = multiply(multiply(g, a), inverse(g));
      if (!done[c]) {
        done[c] = 1;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

// GroupFunction //////////////////////////////////////////////////////////////

GroupFunction::GroupFunction(GroupPtr group, std::vector<Complex> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (!group_) throw DomainError("GroupFunction: null group");
  if (values_.size() != group_->order()) throw ShapeError("GroupFunction: one value per group element is required");
}

GroupFunction GroupFunction::delta(GroupPtr group, std::size_t element) {
  std::vector<Complex> v(group->order(), 0.0);
  v.at(element) = 1.0;
  return GroupFunction(std::move(group), std::move(v));
}

GroupFunction GroupFunction::constant(GroupPtr group, Complex value) {
  std::vector<Complex> v(group->order(), value);
  return GroupFunction(std::move(group), std::move(v));
}

GroupFunction GroupFunction::adjoint() const {
  std::vector<Complex> v(values_.size());
  for (std::size_t g = 0; g < v.size(); ++g) v[g] = std::conj(values_[group_->inverse(g)]);
  return GroupFunction(group_, std::move(v));
}

double GroupFunction::max_abs_diff(const GroupFunction& other) const {
  if (group_ != other.group_) throw DomainError("GroupFunction: functions on different groups");
  double m = 0.0;
  for (std::size_t g = 0; g < values_.size(); ++g) m = std::max(m, std::abs(values_[g] - other.values_[g]));
  return m;
}

namespace {

void require_same_group(const GroupPtr& a, const GroupPtr& b, const char* what) {
  if (a != b) throw DomainError(std::string(what) + ": objects live on different groups");
}

Matrix permutation_matrix(const FiniteGroup& g, std::size_t a) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Matrix p = Matrix::Zero(n, n);
  for (std::size_t h = 0; h < g.order(); ++h) p(static_cast<Eigen::Index>(g.multiply(a, h)), static_cast<Eigen::Index>(h)) = 1.0;
  return p;
}

}  // namespace

GroupFunction convolve(const GroupFunction& f1, const GroupFunction& f2) {
  require_same_group(f1.group(), f2.group(), "convolve");
  const FiniteGroup& g = *f1.group();
  std::vector<Complex> out(g.order(), 0.0);
  for (std::size_t q = 0; q < g.order(); ++q) {
    if (f1(q) == Complex(0.0)) continue;
    const std::size_t qi = g.inverse(q);
    for (std::size_t x = 0; x < g.order(); ++x) out[x] += f1(q) * f2(g.multiply(qi, x));
  }
  return GroupFunction(f1.group(), std::move(out));
}

Matrix positive_definiteness_matrix(const GroupFunction& psi) {
  const FiniteGroup& g = *psi.group();
  const auto n = static_cast<Eigen::Index>(g.order());
  Matrix k(n, n);
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = 0; j < g.order(); ++j)
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = psi(g.multiply(g.inverse(j), i));
  return k;
}

bool is_positive_definite(const GroupFunction& psi, double tol) {
  const Matrix k = positive_definiteness_matrix(psi);
  const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
  if ((k - k.adjoint()).cwiseAbs().maxCoeff() > tol * scale) return false;
  return hermitian_eigen(0.5 * (k + k.adjoint())).values.minCoeff() >= -tol * scale * static_cast<double>(k.rows());
}

GroupRepresentation gns_from_group_function(const GroupFunction& psi) {
  if (!is_positive_definite(psi)) throw InvalidStateError("gns_from_group_function: function is not positive-definite");
  const GroupPtr& gp = psi.group();
  const FiniteGroup& g = *gp;
  // Gram form <delta_a | delta_b> = psi(b^-1 a), i.e. M = K^T = V Lambda V^†.
  const Matrix k = positive_definiteness_matrix(psi);
  const Matrix m = k.transpose();
  const HermitianEigen eig = hermitian_eigen(0.5 * (m + m.adjoint()));
  const double top = std::max(eig.values.maxCoeff(), 0.0);
  const double cut = static_cast<double>(g.order()) * 1e-12 * std::max(top, 1e-300);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = eig.values.size() - 1; i >= 0; --i)
    if (eig.values(i) > cut) keep.push_back(i);
  const auto n = static_cast<Eigen::Index>(g.order());
  const auto r = static_cast<Eigen::Index>(keep.size());
  Matrix factor(r, n);   // R = Lambda^{1/2} V^†
  Matrix inverse(n, r);  // R^+ = V Lambda^{-1/2}
  for (Eigen::Index c = 0; c < r; ++c) {
    const Eigen::Index idx = keep[static_cast<std::size_t>(c)];
    const double s = std::sqrt(eig.values(idx));
    factor.row(c) = s * eig.vectors.col(idx).adjoint();
    inverse.col(c) = eig.vectors.col(idx) / s;
  }
  GroupRepresentation rep{gp, {}, factor.col(static_cast<Eigen::Index>(g.identity()))};
  for (std::size_t a = 0; a < g.order(); ++a) rep.matrices.push_back(factor * permutation_matrix(g, a) * inverse);
  return rep;
}

GroupRepresentation left_regular_representation(const GroupPtr& group) {
  GroupRepresentation rep{group, {}, Vector::Zero(static_cast<Eigen::Index>(group->order()))};
  rep.cyclic(static_cast<Eigen::Index>(group->identity())) = 1.0;
  for (std::size_t a = 0; a < group->order(); ++a) rep.matrices.push_back(permutation_matrix(*group, a));
  return rep;
}

Matrix group_algebra_action(const GroupRepresentation& rep, const GroupFunction& f) {
  require_same_group(rep.group, f.group(), "group_algebra_action");
  const auto d = static_cast<Eigen::Index>(rep.dim());
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t g = 0; g < rep.matrices.size(); ++g) out += f(g) * rep.matrices[g];
  return out;
}

RepresentationDefects representation_defects(const GroupRepresentation& rep) {
  RepresentationDefects d;
  const FiniteGroup& g = *rep.group;
  const auto n = static_cast<Eigen::Index>(rep.dim());
  const Matrix id = Matrix::Identity(n, n);
  for (std::size_t a = 0; a < g.order(); ++a) {
    const Matrix& pa = rep.matrices[a];
    if (n > 0) d.unitarity = std::max(d.unitarity, (pa * pa.adjoint() - id).cwiseAbs().maxCoeff());
    for (std::size_t b = 0; b < g.order(); ++b)
      if (n > 0)
        d.homomorphism =
            std::max(d.homomorphism, (rep.matrices[g.multiply(a, b)] - pa * rep.matrices[b]).cwiseAbs().maxCoeff());
  }
  return d;
}

double reconstruction_residual(const GroupRepresentation& rep, const GroupFunction& psi) {
  require_same_group(rep.group, psi.group(), "reconstruction_residual");
  double r = 0.0;
  for (std::size_t g = 0; g < rep.matrices.size(); ++g)
    r = std::max(r, std::abs(psi(g) - rep.cyclic.dot(rep.matrices[g] * rep.cyclic)));
  return r;
}

std::vector<Matrix> group_intertwiners(const GroupRepresentation& a, const GroupRepresentation& b) {
  require_same_group(a.group, b.group, "group_intertwiners");
  if (a.dim() == 0 || b.dim() == 0) return {};
  return intertwiner_space(a.matrices, b.matrices);
}

OrthogonalityReport orthogonality_check(const GroupFunction& psi, const GroupFunction& psi_prime) {
  require_same_group(psi.group(), psi_prime.group(), "orthogonality_check");
  OrthogonalityReport rep{0.0, 0.0};
  for (std::size_t g = 0; g < psi.values().size(); ++g) rep.sum += psi_prime(g) * std::conj(psi(g));
  const GroupFunction c = convolve(psi, psi_prime);
  for (const Complex& v : c.values()) rep.convolution_norm = std::max(rep.convolution_norm, std::abs(v));
  return rep;
}

std::vector<GroupFunction> irreducible_characters(const GroupPtr& group) {
  const FiniteGroup& g = *group;
  const auto n = static_cast<Eigen::Index>(g.order());
  std::vector<Matrix> regular;
  for (std::size_t a = 0; a < g.order(); ++a) regular.push_back(permutation_matrix(g, a));

  // Class sums are central; a generic Hermitian combination of them separates
  // the isotypic components of the regular representation.
  const auto classes = g.conjugacy_classes();
  Matrix h = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    Matrix c = Matrix::Zero(n, n);
    for (std::size_t x : classes[k]) c += regular[x];
    const double w1 = 1.0 / std::sqrt(static_cast<double>(k) + std::sqrt(2.0));
    const double w2 = 1.0 / std::sqrt(static_cast<double>(k) + std::sqrt(5.0));
    h += w1 * (c + c.adjoint()) + Complex(0.0, w2) * (c - c.adjoint());
  }
  const HermitianEigen eig = hermitian_eigen(0.5 * (h + h.adjoint()));
  const double scale = std::max(1.0, eig.values.cwiseAbs().maxCoeff());

  std::vector<GroupFunction> chars;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && eig.values(stop) - eig.values(stop - 1) <= 1e-8 * scale) ++stop;
    const Matrix w = eig.vectors.middleCols(start, stop - start);
    const Matrix p = w * w.adjoint();
    const double dim = std::sqrt(static_cast<double>(stop - start));
    std::vector<Complex> values(g.order());
    for (std::size_t a = 0; a < g.order(); ++a) {
      Complex v = (p * regular[a]).trace() / dim;
      if (std::abs(v.real()) < 1e-12) v.real(0.0);
      if (std::abs(v.imag()) < 1e-12) v.imag(0.0);
      values[a] = v;
    }
    chars.emplace_back(group, std::move(values));
    start = stop;
  }
  auto key_less = [&](const GroupFunction& x, const GroupFunction& y) {
    const double dx = x(g.identity()).real();
    const double dy = y(g.identity()).real();
    if (std::abs(dx - dy) > 1e-6) return dx < dy;
    for (std::size_t a = 0; a < g.order(); ++a) {
      const Complex u = x(a);
      const Complex v = y(a);
      if (std::abs(u.real() - v.real()) > 1e-9) return u.real() > v.real();
      if (std::abs(u.imag() - v.imag()) > 1e-9) return u.imag() > v.imag();
    }
    return false;
  };
  std::stable_sort(chars.begin(), chars.end(), key_less);
  return chars;
}

}  // namespace aqt
