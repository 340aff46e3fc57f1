#include "doctest.h"

#include <cmath>

#include "aqt/symmetry.hpp"
#include "pauli.hpp"
#include "random.hpp"

using namespace aqt;
using aqt::testing::pauli;
using aqt::testing::Rng;

namespace {

const StarAlgebra m2 = StarAlgebra::full_matrix(2);

InnerAutomorphism ad(const Matrix& u) { return InnerAutomorphism(m2.embed(0, u)); }

State diag2(double a, double b) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = b;
  return State::from_densities(m2, {d});
}

AutomorphismGroup pauli_group() {
  return AutomorphismGroup({ad(pauli(0)), ad(pauli(1)), ad(pauli(2)), ad(pauli(3))});
}

// The six Pauli eigenstates, the tracial state, and mixed states along each axis.
std::vector<State> pauli_suite_states() {
  std::vector<State> out;
  for (int k = 1; k <= 3; ++k)
    for (double s : {1.0, -1.0}) {
      out.push_back(State::from_densities(m2, {0.5 * (pauli(0) + s * pauli(k))}));
      out.push_back(State::from_densities(m2, {0.5 * (pauli(0) + 0.4 * s * pauli(k))}));
    }
  out.push_back(State::tracial(m2));
  out.push_back(State::from_densities(m2, {0.5 * (pauli(0) + 0.3 * pauli(1) + 0.5 * pauli(3))}));
  return out;
}

}  // namespace

TEST_SUITE("symmetry") {

TEST_CASE("automorphism construction") {
  CHECK_THROWS_AS(InnerAutomorphism(m2.embed(0, 2.0 * pauli(0))), DomainError);
  const StarAlgebra two({2, 2});
  const InnerAutomorphism swap(two.identity(), {1, 0});
  CHECK_FALSE(swap.is_inner());
  CHECK_THROWS_AS(InnerAutomorphism(StarAlgebra({2, 1}).identity(), {1, 0}), DomainError);
  CHECK_THROWS_AS(InnerAutomorphism(two.identity(), {0, 0}), DomainError);
  Rng rng(91);
  const AlgebraElement a = aqt::testing::random_element(two, rng);
  const AlgebraElement s = swap.apply(a);
  CHECK((s.block(0) - a.block(1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((s.block(1) - a.block(0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("automorphisms preserve products and adjoints") {
  const StarAlgebra alg({2, 3, 2});
  Rng rng(92);
  const AlgebraElement u(alg, {aqt::testing::random_unitary(rng, 2), aqt::testing::random_unitary(rng, 3),
                               aqt::testing::random_unitary(rng, 2)});
  const InnerAutomorphism rho(u, {2, 1, 0}, 1e-10);
  const AlgebraElement a = aqt::testing::random_element(alg, rng);
  const AlgebraElement b = aqt::testing::random_element(alg, rng);
  CHECK(rho.apply(a * b).max_abs_diff(rho.apply(a) * rho.apply(b)) < 1e-12);
  CHECK(rho.apply(a.adjoint()).max_abs_diff(rho.apply(a).adjoint()) < 1e-12);
  CHECK(rho.inverse().apply(rho.apply(a)).max_abs_diff(a) < 1e-12);
  CHECK(rho.apply(rho.inverse().apply(a)).max_abs_diff(a) < 1e-12);
}

TEST_CASE("pushforward examples") {
  Rng rng(93);
  const StarAlgebra alg({3, 2});
  const State f = aqt::testing::random_state(alg, rng);
  CHECK(dual_norm_distance(pushforward_state(f, InnerAutomorphism::identity(alg)), f) < 1e-14);
  const State flipped = pushforward_state(diag2(1, 0), ad(pauli(1)));
  CHECK(dual_norm_distance(flipped, diag2(0, 1)) < 1e-15);
}

TEST_CASE("pushforward evaluates the state on the transformed element") {
  const StarAlgebra alg({2, 2, 3});
  Rng rng(94);
  for (int k = 0; k < 10; ++k) {
    const AlgebraElement u(alg, {aqt::testing::random_unitary(rng, 2), aqt::testing::random_unitary(rng, 2),
                                 aqt::testing::random_unitary(rng, 3)});
    const InnerAutomorphism rho(u, k % 2 == 0 ? std::vector<std::size_t>{1, 0, 2} : std::vector<std::size_t>{}, 1e-10);
    const State f = aqt::testing::random_state(alg, rng);
    const State g = pushforward_state(f, rho);
    const AlgebraElement a = aqt::testing::random_element(alg, rng);
    CHECK(std::abs(g(a) - f(rho.apply(a))) < 1e-12);
  }
}

TEST_CASE("pushforward composes") {
  const StarAlgebra alg({2, 2});
  Rng rng(95);
  for (int k = 0; k < 10; ++k) {
    const AlgebraElement u(alg, {aqt::testing::random_unitary(rng, 2), aqt::testing::random_unitary(rng, 2)});
    const AlgebraElement v(alg, {aqt::testing::random_unitary(rng, 2), aqt::testing::random_unitary(rng, 2)});
    const InnerAutomorphism rho(u, {1, 0}, 1e-10);
    const InnerAutomorphism tau(v, {}, 1e-10);
    const State f = aqt::testing::random_state(alg, rng);
    // f o (rho o tau) = (f o rho) o tau
    const State lhs = pushforward_state(f, compose(rho, tau));
    const State rhs = pushforward_state(pushforward_state(f, rho), tau);
    CHECK(dual_norm_distance(lhs, rhs) < 1e-12);
    const AlgebraElement a = aqt::testing::random_element(alg, rng);
    CHECK(compose(rho, tau).apply(a).max_abs_diff(rho.apply(tau.apply(a))) < 1e-12);
  }
}

TEST_CASE("stationarity examples") {
  Rng rng(96);
  const State tr = State::tracial(m2);
  for (int k = 0; k < 5; ++k) CHECK(stationarity_check(tr, ad(aqt::testing::random_unitary(rng, 2))));
  CHECK_FALSE(stationarity_check(diag2(1, 0), ad(pauli(1))));
  CHECK(dual_norm_distance(diag2(1, 0), pushforward_state(diag2(1, 0), ad(pauli(1)))) == doctest::Approx(2.0));
  Matrix phase = Matrix::Zero(2, 2);
  phase(0, 0) = std::polar(1.0, 0.7);
  phase(1, 1) = std::polar(1.0, -1.9);
  CHECK(stationarity_check(diag2(1, 0), ad(phase)));
}

TEST_CASE("implementer examples") {
  const State tr = State::tracial(m2);
  const ImplementerResult id = unitary_implementer(tr, InnerAutomorphism::identity(m2));
  REQUIRE(id.unitary);
  CHECK((*id.unitary - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

  const GnsRep rep = gns_construct(tr);
  const ImplementerResult flip = unitary_implementer(rep, ad(pauli(1)));
  REQUIRE(flip.unitary);
  CHECK(flip.unitary->rows() == 4);
  CHECK(flip.unitarity_residual < 1e-12);
  CHECK(flip.cyclic_residual < 1e-12);
  CHECK(flip.intertwining_residual < 1e-12);

  const ImplementerResult none = unitary_implementer(diag2(1, 0), ad(pauli(1)));
  CHECK_FALSE(none.unitary);
  CHECK(none.isometry_defect > kIsometryTolerance);
}

TEST_CASE("stationarity matches implementer existence on the Pauli suite") {
  for (const State& f : pauli_suite_states())
    for (int k = 0; k <= 3; ++k) {
      const InnerAutomorphism rho = ad(pauli(k));
      const ImplementerResult r = unitary_implementer(f, rho);
      CHECK(stationarity_check(f, rho) == r.unitary.has_value());
      if (r.unitary) {
        CHECK(r.cyclic_residual < 1e-10);
        CHECK(r.intertwining_residual < 1e-10);
        CHECK(r.unitarity_residual < 1e-10);
      }
    }
}

TEST_CASE("stationarity matches implementer existence on random multi-block cases") {
  const StarAlgebra alg({2, 2});
  Rng rng(97);
  int stationary = 0;
  for (int k = 0; k < 20; ++k) {
    const Matrix w = aqt::testing::random_unitary(rng, 2);
    const State f = k % 2 == 0 ? aqt::testing::random_state(alg, rng)
                               : State::from_densities(alg, {0.3 * w * Matrix(RealVector::Constant(2, 0.5).cast<Complex>().asDiagonal()) * w.adjoint(),
                                                             0.7 * w * Matrix(RealVector::Constant(2, 0.5).cast<Complex>().asDiagonal()) * w.adjoint()});
    const AlgebraElement u(alg, {aqt::testing::random_unitary(rng, 2), aqt::testing::random_unitary(rng, 2)});
    const InnerAutomorphism rho(u, {}, 1e-10);
    const bool s = stationarity_check(f, rho);
    stationary += s;
    CHECK(s == unitary_implementer(f, rho).unitary.has_value());
  }
  CHECK(stationary > 0);
}

TEST_CASE("Pauli automorphism group") {
  const AutomorphismGroup g = pauli_group();
  CHECK(g.order() == 4);
  CHECK(g.identity() == 0);
  for (std::size_t a = 0; a < 4; ++a) {
    CHECK(g.multiply(a, a) == 0);
    CHECK(g.inverse(a) == a);
  }
  CHECK(g.multiply(1, 2) == 3);
  // sigma_x sigma_y = i sigma_z
  CHECK(std::abs(g.multiplier(1, 2) - Complex(0.0, 1.0)) < 1e-15);
  CHECK_THROWS_AS(AutomorphismGroup({ad(pauli(0)), ad(pauli(1)), ad(pauli(2))}), DomainError);
  CHECK_THROWS_AS(AutomorphismGroup({ad(pauli(1))}), DomainError);
  CHECK_THROWS_AS(AutomorphismGroup({ad(pauli(0)), ad(pauli(1)), ad(Complex(0, 1) * pauli(1))}), DomainError);
}

TEST_CASE("stabilizer and orbit") {
  const AutomorphismGroup g = pauli_group();
  const OrbitReport tr = stabilizer_orbit(State::tracial(m2), g);
  CHECK(tr.stabilizer.size() == 4);
  CHECK(tr.orbit.size() == 1);
  const OrbitReport z = stabilizer_orbit(diag2(1, 0), g);
  CHECK(z.stabilizer == std::vector<std::size_t>{0, 3});
  CHECK(z.orbit.size() == 2);
  CHECK(z.coset_count == 2);
  CHECK(z.lagrange_holds);
  CHECK(z.orbit_index == std::vector<std::size_t>{0, 1, 1, 0});
}

TEST_CASE("orbit law on subgroups and random states") {
  const AutomorphismGroup full = pauli_group();
  const std::vector<std::vector<int>> subgroups{{0}, {0, 1}, {0, 2}, {0, 3}, {0, 1, 2, 3}};
  Rng rng(98);
  for (const auto& sub : subgroups) {
    std::vector<InnerAutomorphism> elems;
    for (int k : sub) elems.push_back(ad(pauli(k)));
    const AutomorphismGroup g(elems);
    for (const State& f : pauli_suite_states()) {
      const OrbitReport r = stabilizer_orbit(f, g);
      CHECK(r.orbit.size() * r.stabilizer.size() == g.order());
    }
    const OrbitReport r = stabilizer_orbit(aqt::testing::random_state(m2, rng), g);
    CHECK(r.lagrange_holds);
  }
  // Z_3 acting by cyclic block permutations of C + C + C
  const StarAlgebra c3({1, 1, 1});
  const AutomorphismGroup z3({InnerAutomorphism(c3.identity()), InnerAutomorphism(c3.identity(), {1, 2, 0}),
                             InnerAutomorphism(c3.identity(), {2, 0, 1})});
  Matrix a(1, 1), b(1, 1);
  a << 0.5;
  b << 0.25;
  const OrbitReport r = stabilizer_orbit(State::from_densities(c3, {a, b, b}), z3);
  CHECK(r.stabilizer.size() == 1);
  CHECK(r.orbit.size() == 3);
  CHECK(r.lagrange_holds);
}

TEST_CASE("one-parameter flows") {
  const StarAlgebra m3 = StarAlgebra::full_matrix(3);
  Rng rng(99);
  const AlgebraElement a = aqt::testing::random_element(m3, rng);
  const AlgebraElement scalar = Complex(2.5) * m3.identity();
  CHECK(one_parameter_flow(scalar, 1.3, a).max_abs_diff(a) < 1e-13);
  const AlgebraElement b = aqt::testing::random_hermitian_element(m3, rng);
  CHECK(one_parameter_flow(b, 0.0, a).max_abs_diff(a) < 1e-13);
  // group law G_s G_t = G_{s+t}
  CHECK(one_parameter_flow(b, 0.4, one_parameter_flow(b, 0.3, a)).max_abs_diff(one_parameter_flow(b, 0.7, a)) < 1e-12);
  CHECK_THROWS_AS(one_parameter_flow(a, 0.1, a), DomainError);
}

TEST_CASE("flow generator residual halves with the step") {
  const StarAlgebra m3 = StarAlgebra::full_matrix(3);
  Rng rng(100);
  for (int k = 0; k < 10; ++k) {
    const AlgebraElement a = aqt::testing::random_element(m3, rng);
    const AlgebraElement b = aqt::testing::random_hermitian_element(m3, rng);
    const double r1 = flow_generator_residual(b, a, 1e-3);
    const double r2 = flow_generator_residual(b, a, 5e-4);
    CHECK(r1 / r2 == doctest::Approx(2.0).epsilon(0.05));
  }
}

}  // TEST_SUITE
