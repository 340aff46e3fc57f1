#include "doctest.h"

#include <cmath>
#include <limits>

#include "aqt/ccr_gaussian.hpp"
#include "ccr_instances.hpp"

using namespace aqt;
using aqt::testing::Rng;

namespace {

RealVector v2(double a, double b) {
  RealVector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_SUITE("ccr") {

TEST_CASE("space construction") {
  Rng rng(71);
  const CcrSpace s = aqt::testing::random_ccr_space(rng, 3);
  // K^* is the adjoint: <K q | q'> = <q | K^* q'>
  const RealVector q = aqt::testing::random_real_vector(rng, 3);
  const RealVector q2 = aqt::testing::random_real_vector(rng, 3);
  CHECK(s.inner(s.k() * q, q2) == doctest::Approx(s.inner(q, s.k_adjoint() * q2)).epsilon(1e-12));
  CHECK((s.s() - s.k() * s.k_adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(s.covariance_form(q) == doctest::Approx(q.dot(s.covariance() * q)).epsilon(1e-12));
  CHECK(s.gram_image(q).dot(q2) == doctest::Approx(s.inner(q2, q)).epsilon(1e-12));
  CHECK_THROWS_AS(CcrSpace(RealMatrix::Identity(2, 2), RealMatrix::Zero(2, 2)), DomainError);
  RealMatrix bad(2, 2);
  bad << 1, 2, 2, 1;
  CHECK_THROWS_AS(CcrSpace(bad, RealMatrix::Identity(2, 2)), DomainError);
  CHECK_THROWS_AS(CcrSpace(RealMatrix::Identity(2, 2), RealMatrix::Identity(3, 3)), ShapeError);
}

TEST_CASE("quasi-invariance factor and cocycle") {
  Rng rng(72);
  const CcrSpace s = aqt::testing::random_ccr_space(rng, 3);
  const RealVector u = aqt::testing::random_real_vector(rng, 3);
  CHECK(quasi_invariance_factor(s, RealVector::Zero(3), u) == 1.0);
  for (int k = 0; k < 100; ++k) {
    const RealVector q = 0.5 * aqt::testing::random_real_vector(rng, 3);
    const RealVector q2 = 0.5 * aqt::testing::random_real_vector(rng, 3);
    const RealVector w = aqt::testing::random_real_vector(rng, 3);
    CHECK(cocycle_residual(s, q, q2, w) <= 1e-10);
  }
}

TEST_CASE("one-dimensional shift identity by quadrature") {
  const CcrSpace s = CcrSpace::euclidean(1, std::sqrt(2.0));
  RealVector q(1);
  q << 0.7;
  RealVector uq = s.gram_image(q);
  // mu(u + u_q) = a(q, u)^2 mu(u) pointwise and in total mass
  double mass = 0.0;
  const double h = 1e-3;
  for (double x = -12.0; x <= 12.0 + 1e-12; x += h) {
    RealVector u(1);
    u << x;
    const double a = quasi_invariance_factor(s, q, u);
    const double lhs = gaussian_density(s, u + uq);
    CHECK(std::abs(lhs - a * a * gaussian_density(s, u)) <= 1e-12);
    mass += h * a * a * gaussian_density(s, u);
  }
  CHECK(std::abs(mass - 1.0) <= 1e-8);
}

TEST_CASE("Gaussian density") {
  RealMatrix one = RealMatrix::Identity(1, 1);
  CHECK(gaussian_density(one, RealVector::Zero(1)) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-15));
  CHECK(gaussian_density(one, RealVector::Zero(1)) == doctest::Approx(0.39894).epsilon(1e-5));
  RealMatrix c(2, 2);
  c << 1.5, 0.4, 0.4, 0.8;
  const RealVector w = v2(0.3, -1.2);
  CHECK(gaussian_density(c, w) == gaussian_density(c, -w));
  // trapezoid mass over [-8 sigma, 8 sigma] in one dimension
  RealMatrix var(1, 1);
  var << 2.3;
  const double sigma = std::sqrt(2.3);
  const int n = 4000;
  const double h = 16.0 * sigma / n;
  double mass = 0.0;
  for (int i = 0; i <= n; ++i) {
    RealVector x(1);
    x << -8.0 * sigma + i * h;
    mass += (i == 0 || i == n ? 0.5 : 1.0) * h * gaussian_density(var, x);
  }
  CHECK(std::abs(mass - 1.0) <= 1e-6);
  CHECK_THROWS_AS(gaussian_density(-one, RealVector::Zero(1)), DomainError);
}

TEST_CASE("Fock ladder in one mode") {
  const CcrSpace s = CcrSpace::euclidean(1, std::sqrt(2.0));
  const FockTruncation f = build_fock_operators(s, 3);
  CHECK(f.size() == 4);
  RealVector e(1);
  e << 1.0;
  const RealMatrix a = f.creation(e);
  for (int k = 0; k < 3; ++k) CHECK(a(k + 1, k) == doctest::Approx(std::sqrt(k + 1.0)).epsilon(1e-15));
  CHECK(std::abs(a.sum() - (1.0 + std::sqrt(2.0) + std::sqrt(3.0))) < 1e-14);
  const RealMatrix c = f.annihilation(e) * a - a * f.annihilation(e);
  // sqrt(k+1)^2 - sqrt(k)^2 is 1 up to rounding
  for (int k = 0; k < 3; ++k) CHECK(std::abs(c(k, k) - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon());
  CHECK((f.number_operator() * f.vacuum().real()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((f.annihilation(e) * f.vacuum().real()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Fock basis ordering and protected subspace") {
  const CcrSpace s = CcrSpace::euclidean(2, std::sqrt(2.0));
  const FockTruncation f = build_fock_operators(s, 2);
  // occupation <= 2 in two modes
  CHECK(f.size() == 6);
  CHECK(f.basis()[0] == std::vector<std::size_t>{0, 0});
  CHECK(f.basis()[1] == std::vector<std::size_t>{1, 0});
  CHECK(f.basis()[2] == std::vector<std::size_t>{0, 1});
  CHECK(f.protected_indices().size() == 3);
  const std::vector<std::size_t> occ{1, 1};
  CHECK(f.index_of(occ) == 4);
  CHECK(build_fock_operators(CcrSpace::euclidean(3, 1.0)).size() == 165);
}

TEST_CASE("CCR hold exactly on the protected subspace") {
  Rng rng(73);
  const CcrSpace s = aqt::testing::random_ccr_space(rng, 3);
  const FockTruncation f = build_fock_operators(s, 5);
  for (int k = 0; k < 10; ++k) {
    const RealVector q = aqt::testing::random_real_vector(rng, 3);
    const RealVector q2 = aqt::testing::random_real_vector(rng, 3);
    CHECK(f.ccr_residual(q, q2) <= 1e-12 * (1.0 + std::abs(s.inner(q, q2))));
    CHECK(f.heisenberg_residual(q, q2) <= 1e-12 * (1.0 + std::abs(s.inner(q, q2))));
    CHECK((f.annihilation(q) * f.vacuum().real()).cwiseAbs().maxCoeff() == 0.0);
  }
  // mode creators are orthonormal in the CCR sense
  const RealMatrix a0 = f.mode_creation(0);
  const RealMatrix a1 = f.mode_creation(1);
  const RealMatrix c = a0.transpose() * a1 - a1 * a0.transpose();
  for (std::size_t j : f.protected_indices()) CHECK(c.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("number operator counts occupations") {
  Rng rng(74);
  const CcrSpace s = aqt::testing::random_ccr_space(rng, 2);
  const FockTruncation f = build_fock_operators(s, 4);
  const RealMatrix n = f.number_operator();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& occ = f.basis()[i];
    CHECK(n(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) == doctest::Approx(static_cast<double>(occ[0] + occ[1])).epsilon(1e-12));
  }
  CHECK((n - RealMatrix(n.diagonal().asDiagonal())).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("vacuum shifts") {
  const CcrSpace s = CcrSpace::euclidean(2, std::sqrt(2.0));
  const VacuumShift none{RealVector::Zero(2), std::nullopt};
  auto m = shifted_vacuum_means(s, none, v2(1.0, 2.0));
  CHECK(m.first == 0.0);
  CHECK(m.second == 0.0);
  const VacuumShift sigma{v2(1.0, 0.0), std::nullopt};
  m = shifted_vacuum_means(s, sigma, v2(0.0, 1.0));
  CHECK(m.first == 0.0);
  CHECK(m.second == 0.0);
  m = shifted_vacuum_means(s, sigma, v2(2.0, 0.0));
  CHECK(m.first == 2.0);
  CHECK(m.second == 2.0);
  const FockTruncation f = build_fock_operators(s, 3);
  const auto t = shifted_vacuum_means(f, s, sigma, v2(2.0, 0.0));
  CHECK(t.first == 2.0);
  CHECK(t.second == 2.0);
}

TEST_CASE("shift norm verdicts") {
  const SeriesVerdict in = shift_norm_verdict({1.0, 1.0});
  CHECK(in.verdict == SeriesOutcome::convergent);
  CHECK(in.justification == "p-series");
  const SeriesVerdict out = shift_norm_verdict({1.0, 0.5});
  CHECK(out.verdict == SeriesOutcome::divergent);
  CHECK_THROWS_AS(shift_norm_verdict({1.0, 0.0}), DomainError);
}

TEST_CASE("Gaussian equivalence verdicts") {
  ModeFamily fock;
  fock.kind = ModeFamily::Kind::constant;
  fock.value = 2.0;
  const SeriesVerdict a = gaussian_equivalence_verdict(fock);
  CHECK(a.verdict == SeriesOutcome::convergent);
  CHECK(a.partial_sum == 0.0);

  ModeFamily tail;
  tail.kind = ModeFamily::Kind::power_tail;
  tail.amplitude = 1.0;
  tail.exponent = 2.0;
  const SeriesVerdict b = gaussian_equivalence_verdict(tail);
  CHECK(b.verdict == SeriesOutcome::convergent);
  CHECK(b.justification == "p-series");
  // sum_k k^-2 / 2 over the window
  double ref = 0.0;
  for (int k = 10000; k >= 1; --k) ref += 0.5 / (static_cast<double>(k) * k);
  CHECK(b.partial_sum == doctest::Approx(ref).epsilon(1e-12));

  for (double c : {0.5, 0.9, 1.1, 3.0}) {
    ModeFamily scaled;
    scaled.kind = ModeFamily::Kind::constant;
    scaled.value = 2.0 * c * c;
    const SeriesVerdict v = gaussian_equivalence_verdict(scaled);
    CHECK(v.verdict == SeriesOutcome::divergent);
    CHECK(v.justification == "constant-defect");
  }

  ModeFamily harmonic;
  harmonic.kind = ModeFamily::Kind::power_tail;
  harmonic.amplitude = 1.0;
  harmonic.exponent = 1.0;
  CHECK(gaussian_equivalence_verdict(harmonic).verdict == SeriesOutcome::divergent);

  ModeFamily finite;
  finite.kind = ModeFamily::Kind::finite;
  finite.values = {2.0, 3.0, 0.5};
  const SeriesVerdict fv = gaussian_equivalence_verdict(finite);
  CHECK(fv.verdict == SeriesOutcome::convergent);
  CHECK(fv.partial_sum == doctest::Approx(1.25).epsilon(1e-15));

  ModeFamily sampled;
  sampled.kind = ModeFamily::Kind::sampled;
  sampled.values = {2.1, 2.01, 2.001};
  CHECK(gaussian_equivalence_verdict(sampled).verdict == SeriesOutcome::undecided);
}

}  // TEST_SUITE
