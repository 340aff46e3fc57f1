#include "doctest.h"

#include <cmath>
#include <random>

#include "aqt/free_field.hpp"
#include "aqt/wick.hpp"

using namespace aqt;

namespace {

const MassShellGrid& small_grid() {
  static const MassShellGrid g(1.0, 4.0, 9);
  return g;
}

Point4 random_point(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng), u(rng)};
}

// psi^F(p0, p) of a real test function: conj(psi^F(-p0, -p)) = psi^F(p0, p).
TestFunction smooth_real(const MassShellGrid& grid) {
  return TestFunction::sample(grid, [](double p0, const Momentum3& p) {
    const double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    const double phase = 0.3 * p0 - 0.2 * p[0] + 0.5 * p[2];
    const double tilt = p0 - 0.7 * p[0];
    return std::exp(-0.5 * p2 - 0.2 * tilt * tilt) * std::polar(1.0, phase);
  });
}

}  // namespace

TEST_SUITE("field") {

TEST_CASE("grid layout") {
  const MassShellGrid& g = small_grid();
  CHECK(g.size() == 729);
  CHECK(g.spacing() == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& p = g.momentum(i);
    const auto& q = g.momentum(g.mirror(i));
    for (int k = 0; k < 3; ++k) CHECK(p[static_cast<std::size_t>(k)] == -q[static_cast<std::size_t>(k)]);
    CHECK(g.weight(i) == doctest::Approx(1.0 / g.omega(i)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(MassShellGrid(1.0, 4.0, 8), DomainError);
  CHECK_THROWS_AS(MassShellGrid(0.0, 4.0, 9), DomainError);
}

TEST_CASE("equal-time Pauli-Jordan function vanishes exactly") {
  std::mt19937_64 rng(81);
  for (int k = 0; k < 20; ++k) {
    Point4 x = random_point(rng, 3.0);
    x[0] = 0.0;
    CHECK(pauli_jordan(small_grid(), x) == Complex(0.0, 0.0));
  }
}

TEST_CASE("Pauli-Jordan function is the sheet difference of its negative-frequency part") {
  std::mt19937_64 rng(82);
  for (int k = 0; k < 10; ++k) {
    const Point4 x = random_point(rng, 2.0);
    const Point4 mx{-x[0], -x[1], -x[2], -x[3]};
    const Complex d = pauli_jordan_minus(small_grid(), x) - pauli_jordan_minus(small_grid(), mx);
    CHECK(std::abs(pauli_jordan(small_grid(), x) - d) <= 1e-13);
    // D is real
    CHECK(std::abs(pauli_jordan(small_grid(), x).imag()) <= 1e-13);
  }
}

TEST_CASE("two-point function is translation covariant") {
  std::mt19937_64 rng(83);
  for (int k = 0; k < 10; ++k) {
    const Point4 x = random_point(rng);
    const Point4 y = random_point(rng);
    const Point4 a = random_point(rng, 0.5);
    const Point4 xa{x[0] + a[0], x[1] + a[1], x[2] + a[2], x[3] + a[3]};
    const Point4 ya{y[0] + a[0], y[1] + a[1], y[2] + a[2], y[3] + a[3]};
    CHECK(std::abs(wightman_two_point(small_grid(), x, y) - wightman_two_point(small_grid(), xa, ya)) <= 1e-12);
  }
}

TEST_CASE("Klein-Gordon residual shrinks fourfold under halving") {
  const MassShellGrid grid(1.0, 6.0, 17);
  const Point4 x{0.4, 0.3, -0.2, 0.5};
  const double r1 = klein_gordon_residual(grid, x, 0.05);
  const double r2 = klein_gordon_residual(grid, x, 0.025);
  CHECK(r1 / r2 >= 3.2);
  CHECK(r1 / r2 <= 4.8);
  CHECK_THROWS_AS(klein_gordon_residual(grid, x, 0.0), DomainError);
}

TEST_CASE("shell bilinear form examples") {
  const MassShellGrid& g = small_grid();
  const TestFunction psi = smooth_real(g);
  CHECK(shell_bilinear_form(g, psi, TestFunction::zero(g)) == Complex(0.0, 0.0));
  const std::size_t i = 100;
  TestFunction a = TestFunction::zero(g);
  TestFunction b = TestFunction::zero(g);
  a.neg[g.mirror(i)] = 1.0;
  b.pos[i] = 1.0;
  CHECK(std::abs(shell_bilinear_form(g, a, b) - g.weight(i)) == 0.0);
  CHECK(g.weight(i) == doctest::Approx(std::pow(g.spacing(), 3) / g.omega(i)).epsilon(1e-15));
  // positivity on real test functions
  CHECK(shell_bilinear_form(g, psi, psi).real() > 0.0);
  CHECK(std::abs(shell_bilinear_form(g, psi, psi).imag()) <= 1e-12);
  CHECK_THROWS_AS(shell_bilinear_form(MassShellGrid(1.0, 4.0, 7), psi, psi), ShapeError);
}

TEST_CASE("test functions that vanish on the shell are degenerate") {
  const MassShellGrid& g = small_grid();
  // (p0^2 - omega(p)^2) h(p0, p) is non-zero off the shell but zero on it
  const TestFunction psi = TestFunction::sample(g, [](double p0, const Momentum3& p) {
    const double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    return Complex((p0 * p0 - p2 - 1.0) * std::exp(-p2 - p0 * p0));
  });
  CHECK(std::abs(shell_bilinear_form(g, psi, psi)) <= 1e-14);
  const double off_shell = (2.0 * 2.0 - 1.0) * std::exp(-4.0);
  CHECK(off_shell > 0.0);
}

TEST_CASE("tau decomposition") {
  const MassShellGrid& g = small_grid();
  const TestFunction psi = smooth_real(g);
  CHECK(psi.reality_defect(g) <= 1e-15);
  const auto [even, odd] = sheet_parts(psi);
  const TauPair te = tau_decompose(g, even);
  const TauPair to = tau_decompose(g, odd);
  double me = 0.0;
  double mo = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    me = std::max(me, std::abs(te.minus[i]));
    mo = std::max(mo, std::abs(to.plus[i]));
  }
  CHECK(me == 0.0);
  CHECK(mo == 0.0);
  const TauPair t = tau_decompose(g, psi);
  CHECK(std::abs(momentum_form(g, t.plus, t.plus) - real_shell_form(g, even, even)) <= 1e-10);
  CHECK(std::abs(momentum_form(g, t.minus, t.minus) - real_shell_form(g, odd, odd)) <= 1e-10);
  TestFunction bad = psi;
  bad.neg[3] += 1.0;
  CHECK_THROWS_AS(tau_decompose(g, bad), DomainError);
}

TEST_CASE("Wightman n-point functions") {
  const MassShellGrid& g = small_grid();
  std::mt19937_64 rng(84);
  const Point4 x = random_point(rng);
  const std::vector<Point4> one{x};
  CHECK(wightman_n_point(g, one) == Complex(0.0, 0.0));
  const std::vector<Point4> two{x, x};
  const Complex d0 = pauli_jordan_minus(g, {0.0, 0.0, 0.0, 0.0});
  CHECK(std::abs(wightman_n_point(g, two) - d0 / Complex(0.0, 1.0)) <= 1e-15);
  std::vector<Point4> four;
  for (int k = 0; k < 4; ++k) four.push_back(random_point(rng));
  auto w = [&](int i, int j) { return wightman_two_point(g, four[static_cast<std::size_t>(i)], four[static_cast<std::size_t>(j)]); };
  const Complex expect = w(0, 1) * w(2, 3) + w(0, 2) * w(1, 3) + w(0, 3) * w(1, 2);
  CHECK(std::abs(wightman_n_point(g, four) - expect) <= 1e-14);
  // a scaled pair value scales the n-point function by its n/2-th power
  CHECK(std::abs(wightman_n_point(g, four, 2.0) - 4.0 * expect) <= 1e-13);
}

TEST_CASE("commutator identity") {
  const MassShellGrid& g = small_grid();
  const Point4 x{0.3, -0.2, 0.5, 0.1};
  CHECK(commutator_identity_residual(g, x, x) == 0.0);
  std::mt19937_64 rng(85);
  for (int k = 0; k < 20; ++k) CHECK(commutator_identity_residual(g, random_point(rng, 2.0), random_point(rng, 2.0)) <= 1e-10);
  Point4 y = random_point(rng);
  y[0] = x[0];
  CHECK(pauli_jordan(g, {0.0, x[1] - y[1], x[2] - y[2], x[3] - y[3]}) == Complex(0.0, 0.0));
  const Complex c = wightman_two_point(g, x, y) - wightman_two_point(g, y, x);
  CHECK(std::abs(c) <= 1e-15);
}

TEST_CASE("mass witness") {
  const MassWitnessReport same = mass_kernel_witness(1.0, 1.0, 6.0, 9);
  CHECK(same.verdict == WitnessVerdict::equivalent);
  CHECK_FALSE(same.profile);

  const MassWitnessReport r = mass_kernel_witness(1.0, 2.0, 6.0, 17);
  CHECK(r.verdict == WitnessVerdict::inequivalent);
  CHECK(r.form_mass_prime >= 1e4 * r.form_mass);
  CHECK(r.form_mass_prime > 0.0);
  CHECK(r.min_gap > 0.0);
  REQUIRE(r.profile);
  // the profile is a real test function on both grids
  const MassShellGrid g(1.0, 6.0, 17);
  CHECK(TestFunction::sample(g, r.profile).reality_defect(g) <= 1e-15);

  const MassWitnessReport s = mass_kernel_witness(2.0, 1.0, 6.0, 17);
  CHECK(s.verdict == WitnessVerdict::inequivalent);
  CHECK(s.min_gap == doctest::Approx(r.min_gap).epsilon(1e-14));
  CHECK(s.form_mass_prime >= 1e4 * s.form_mass);
}

TEST_CASE("Euclidean propagator") {
  const EuclideanSpec spec{1.0, 6.0, 9};
  const Point4 x{0.3, -0.7, 0.2, 1.1};
  CHECK(euclidean_propagator(spec, x) == euclidean_propagator(spec, {-x[0], -x[1], -x[2], -x[3]}));
  CHECK(euclidean_step(spec) == doctest::Approx(2.0 * M_PI / 48.0).epsilon(1e-15));
  CHECK_THROWS_AS(euclidean_propagator(EuclideanSpec{0.0, 6.0, 9}, x), DomainError);
}

TEST_CASE("lattice Green identity improves with resolution") {
  const double r17 = euclidean_green_residual({1.0, 6.0, 17});
  const double r21 = euclidean_green_residual({1.0, 6.0, 21});
  CHECK(r17 <= 0.05);
  CHECK(r21 < r17);
}

TEST_CASE("regulated Euclidean propagator decays monotonically along an axis") {
  for (double m : {0.5, 1.0, 2.0}) {
    const EuclideanSpec spec{m, 6.0, 17, 1.5};
    double prev = euclidean_propagator(spec, {0.0, 0.0, 0.0, 0.0});
    for (int k = 1; k <= 30; ++k) {
      const double v = euclidean_propagator(spec, {0.1 * k, 0.0, 0.0, 0.0});
      CHECK(v < prev);
      prev = v;
    }
    CHECK(prev > 0.0);
  }
  CHECK(euclidean_green_residual({1.0, 6.0, 17, 1.5}) <= 0.05);
}

TEST_CASE("sharp-cutoff propagator decays across its central lobe") {
  const EuclideanSpec spec{1.0, 6.0, 17};
  double prev = euclidean_propagator(spec, {0.0, 0.0, 0.0, 0.0});
  for (int k = 1; k <= 6; ++k) {
    const double v = euclidean_propagator(spec, {0.0, 0.1 * k, 0.0, 0.0});
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("chronological reorder") {
  std::mt19937_64 rng(86);
  const MassShellGrid& g = small_grid();
  auto w = [&](std::span<const Point4> pts) { return wightman_n_point(g, pts); };
  const Point4 x = random_point(rng);
  const std::vector<Point4> one{x};
  auto w1 = [](std::span<const Point4> pts) { return Complex(pts[0][1], pts[0][0]); };
  CHECK(chronological_reorder(w1, one) == w1(one));
  const Point4 late{0.9, 0.1, 0.2, 0.3};
  const Point4 early{-0.4, 0.5, -0.1, 0.2};
  const std::vector<Point4> two{late, early};
  CHECK(chronological_reorder(w, two) == w(two));
  const std::vector<Point4> swapped{early, late};
  CHECK(std::abs(chronological_reorder(w, swapped) - chronological_reorder(w, two)) <= 1e-12);
  // equal times average the two orderings
  const Point4 a{0.2, 0.1, 0.0, 0.0};
  const Point4 b{0.2, -0.3, 0.4, 0.0};
  const std::vector<Point4> tie{a, b};
  const std::vector<Point4> eit{b, a};
  CHECK(std::abs(chronological_reorder(w, tie) - 0.5 * (w(tie) + w(eit))) <= 1e-15);
  std::vector<Point4> seven(7, x);
  CHECK_THROWS_AS(chronological_reorder(w, seven), DomainError);
}

TEST_CASE("chronological products are symmetric") {
  std::mt19937_64 rng(87);
  const MassShellGrid& g = small_grid();
  auto w = [&](std::span<const Point4> pts) { return wightman_n_point(g, pts); };
  std::vector<Point4> pts;
  for (int k = 0; k < 4; ++k) pts.push_back(random_point(rng));
  const Complex base = chronological_reorder(w, pts);
  std::vector<Point4> perm{pts[2], pts[0], pts[3], pts[1]};
  CHECK(std::abs(chronological_reorder(w, perm) - base) <= 1e-12);
}

}  // TEST_SUITE
