#include "aqt/free_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "aqt/wick.hpp"

namespace aqt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dot3(const Momentum3& p, const Point4& x) { return p[0] * x[1] + p[1] * x[2] + p[2] * x[3]; }

Point4 difference(const Point4& x, const Point4& y) { return {x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]}; }

void require_grid(const MassShellGrid& grid, const TestFunction& f, const char* what) {
  if (!(f.grid == grid.spec()) || f.pos.size() != grid.size() || f.neg.size() != grid.size())
    throw ShapeError(std::string(what) + ": test function lives on a different grid");
}

// In a compact bump exp(-1 / (1 - (x/r)^2)) for |x| < r, zero outside.
double bump(double x, double r) {
  const double t = x / r;
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

}  // namespace

// Grid ///////////////////////////////////////////////////////////////////////

MassShellGrid::MassShellGrid(GridSpec spec) : spec_(spec) {
  if (!(spec_.mass > 0.0) || !std::isfinite(spec_.mass)) throw DomainError("MassShellGrid: mass must be positive");
  if (!(spec_.cutoff > 0.0) || !std::isfinite(spec_.cutoff)) throw DomainError("MassShellGrid: cutoff must be positive");
  if (spec_.points < 3 || spec_.points % 2 == 0) throw DomainError("MassShellGrid: points per axis must be odd and >= 3");
  const std::size_t n = spec_.points;
  dp_ = 2.0 * spec_.cutoff / static_cast<double>(n - 1);
  const double vol = dp_ * dp_ * dp_;
  momenta_.reserve(n * n * n);
  // Coordinates are computed symmetrically so that the lattice is exactly
  // invariant under p -> -p.
  std::vector<double> axis(n);
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i) - static_cast<double>(half);
    axis[i] = k * dp_;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const Momentum3 p{axis[a], axis[b], axis[c]};
        const double w = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + spec_.mass * spec_.mass);
        momenta_.push_back(p);
        omega_.push_back(w);
        weight_.push_back(vol / w);
      }
}

// Pauli-Jordan ///////////////////////////////////////////////////////////////

Complex pauli_jordan_minus(const MassShellGrid& grid, const Point4& x) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double angle = -grid.omega(i) * x[0] + dot3(grid.momentum(i), x);
    const double h = 0.5 * grid.weight(i);
    re += h * std::cos(angle);
    im += h * std::sin(angle);
  }
  const double norm = 1.0 / (kTwoPi * kTwoPi * kTwoPi);
  return Complex(0.0, norm) * Complex(re, im);
}

Complex pauli_jordan(const MassShellGrid& grid, const Point4& x) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = dot3(grid.momentum(i), x);
    const double a_pos = -grid.omega(i) * x[0] + s;
    const double a_neg = grid.omega(i) * x[0] + s;
    const double h = 0.5 * grid.weight(i);
    re += h * (std::cos(a_pos) - std::cos(a_neg));
    im += h * (std::sin(a_pos) - std::sin(a_neg));
  }
  const double norm = 1.0 / (kTwoPi * kTwoPi * kTwoPi);
  return Complex(0.0, norm) * Complex(re, im);
}

Complex wightman_two_point(const MassShellGrid& grid, const Point4& x, const Point4& y, double pair_scale) {
  return Complex(0.0, -pair_scale) * pauli_jordan_minus(grid, difference(x, y));
}

double klein_gordon_residual(const MassShellGrid& grid, const Point4& x, double h) {
  if (!(h > 0.0)) throw DomainError("klein_gordon_residual: step must be positive");
  const Complex centre = pauli_jordan_minus(grid, x);
  Complex box = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    Point4 up = x;
    Point4 down = x;
    up[static_cast<std::size_t>(mu)] += h;
    down[static_cast<std::size_t>(mu)] -= h;
    const Complex second = (pauli_jordan_minus(grid, up) - 2.0 * centre + pauli_jordan_minus(grid, down)) / (h * h);
    box += mu == 0 ? second : -second;
  }
  return std::abs(box + grid.mass() * grid.mass() * centre);
}

// Test functions and forms ///////////////////////////////////////////////////

TestFunction TestFunction::sample(const MassShellGrid& grid, const std::function<Complex(double, const Momentum3&)>& f) {
  TestFunction t{grid.spec(), std::vector<Complex>(grid.size()), std::vector<Complex>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    t.pos[i] = f(grid.omega(i), grid.momentum(i));
    t.neg[i] = f(-grid.omega(i), grid.momentum(i));
  }
  return t;
}

TestFunction TestFunction::zero(const MassShellGrid& grid) {
  return TestFunction{grid.spec(), std::vector<Complex>(grid.size(), 0.0), std::vector<Complex>(grid.size(), 0.0)};
}

double TestFunction::reality_defect(const MassShellGrid& g) const {
  require_grid(g, *this, "reality_defect");
  double d = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) d = std::max(d, std::abs(neg[i] - std::conj(pos[g.mirror(i)])));
  return d;
}

Complex shell_bilinear_form(const MassShellGrid& grid, const TestFunction& psi, const TestFunction& psi2) {
  require_grid(grid, psi, "shell_bilinear_form");
  require_grid(grid, psi2, "shell_bilinear_form");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) acc += grid.weight(i) * psi.neg[grid.mirror(i)] * psi2.pos[i];
  return acc;
}

Complex real_shell_form(const MassShellGrid& grid, const TestFunction& psi, const TestFunction& psi2) {
  require_grid(grid, psi, "real_shell_form");
  require_grid(grid, psi2, "real_shell_form");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::size_t j = grid.mirror(i);
    acc += grid.weight(i) * (psi.neg[j] * psi2.pos[i] + psi.pos[j] * psi2.neg[i]);
  }
  return 0.5 * acc;
}

std::pair<TestFunction, TestFunction> sheet_parts(const TestFunction& psi) {
  TestFunction even = psi;
  TestFunction odd = psi;
  for (std::size_t i = 0; i < psi.pos.size(); ++i) {
    const Complex e = 0.5 * (psi.pos[i] + psi.neg[i]);
    const Complex o = 0.5 * (psi.pos[i] - psi.neg[i]);
    even.pos[i] = e;
    even.neg[i] = e;
    odd.pos[i] = o;
    odd.neg[i] = -o;
  }
  return {even, odd};
}

TauPair tau_decompose(const MassShellGrid& grid, const TestFunction& psi, double reality_tol) {
  const double scale = std::max(1.0, std::accumulate(psi.pos.begin(), psi.pos.end(), 0.0,
                                                     [](double m, const Complex& z) { return std::max(m, std::abs(z)); }));
  if (psi.reality_defect(grid) > reality_tol * scale) throw DomainError("tau_decompose: test function is not real");
  TauPair t{std::vector<Complex>(grid.size()), std::vector<Complex>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = 1.0 / std::sqrt(grid.omega(i));
    t.plus[i] = r * 0.5 * (psi.pos[i] + psi.neg[i]);
    t.minus[i] = r * (psi.pos[i] - psi.neg[i]) / Complex(0.0, 2.0);
  }
  return t;
}

Complex momentum_form(const MassShellGrid& grid, std::span<const Complex> q, std::span<const Complex> q2) {
  if (q.size() != grid.size() || q2.size() != grid.size()) throw ShapeError("momentum_form: size mismatch");
  const double vol = grid.spacing() * grid.spacing() * grid.spacing();
  Complex acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) acc += q[grid.mirror(i)] * q2[i];
  return vol * acc;
}

// n-point functions //////////////////////////////////////////////////////////

Complex wightman_n_point(const MassShellGrid& grid, std::span<const Point4> points, double pair_scale) {
  return wick_sum<Complex>(points.size(), [&](std::size_t i, std::size_t j) {
    return wightman_two_point(grid, points[i], points[j], pair_scale);
  });
}

double commutator_identity_residual(const MassShellGrid& grid, const Point4& x, const Point4& y) {
  const Complex lhs = wightman_two_point(grid, x, y) - wightman_two_point(grid, y, x);
  return std::abs(lhs + Complex(0.0, 1.0) * pauli_jordan(grid, difference(x, y)));
}

// Mass witness ///////////////////////////////////////////////////////////////

std::string to_string(WitnessVerdict v) {
  switch (v) {
    case WitnessVerdict::inequivalent: return "inequivalent";
    case WitnessVerdict::equivalent: return "equivalent";
    case WitnessVerdict::undecided: return "undecided";
  }
  return "undecided";
}

MassWitnessReport mass_kernel_witness(double mass, double mass_prime, double cutoff, std::size_t points) {
  const MassShellGrid grid(mass, cutoff, points);
  const MassShellGrid grid_prime(mass_prime, cutoff, points);
  MassWitnessReport rep;
  rep.mass = mass;
  rep.mass_prime = mass_prime;
  if (mass == mass_prime) {
    rep.verdict = WitnessVerdict::equivalent;
    rep.note = "equal masses: identical shell forms";
    return rep;
  }
  double gap = std::numeric_limits<double>::infinity();
  double omega_max = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    gap = std::min(gap, std::abs(grid.omega(i) - grid_prime.omega(i)));
    omega_max = std::max({omega_max, grid.omega(i), grid_prime.omega(i)});
  }
  rep.min_gap = gap;
  rep.half_width = 0.5 * gap;
  if (rep.half_width < 1e-9 * omega_max) {
    rep.verdict = WitnessVerdict::undecided;
    rep.note = "shells unresolved: lower the cutoff or increase the mass difference";
    return rep;
  }
  const double width = cutoff / 4.0;
  const double r = rep.half_width;
  rep.profile = [width, r, mp = mass_prime](double p0, const Momentum3& p) -> Complex {
    const double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    const double om = std::sqrt(p2 + mp * mp);
    const double g = std::exp(-p2 / (2.0 * width * width));
    return g * (bump(p0 - om, r) + bump(-p0 - om, r));
  };
  const TestFunction on_m = TestFunction::sample(grid, rep.profile);
  const TestFunction on_mp = TestFunction::sample(grid_prime, rep.profile);
  rep.form_mass = shell_bilinear_form(grid, on_m, on_m).real();
  rep.form_mass_prime = shell_bilinear_form(grid_prime, on_mp, on_mp).real();
  for (std::size_t i = 0; i < grid_prime.size(); ++i) {
    const Momentum3& p = grid_prime.momentum(i);
    const double g = std::exp(-(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) / (2.0 * width * width));
    rep.scale += grid_prime.weight(i) * g * g;
  }
  if (rep.form_mass <= 1e-8 * rep.scale && rep.form_mass_prime >= 0.1 * rep.scale) {
    rep.verdict = WitnessVerdict::inequivalent;
    rep.note = "witness in the kernel of the m-form but not of the m'-form";
  } else {
    rep.verdict = WitnessVerdict::undecided;
    rep.note = "witness forms not separated";
  }
  return rep;
}

// Euclidean propagator ///////////////////////////////////////////////////////

namespace {

bool valid_euclidean(const EuclideanSpec& spec) {
  return spec.mass > 0.0 && spec.cutoff > 0.0 && spec.points >= 3 && spec.points % 2 == 1 && spec.regulator >= 0.0;
}

// sum_p dp^4 r(p) f(p) over the symmetric 4-lattice.
template <class F>
double euclidean_lattice_sum(const EuclideanSpec& spec, F&& f) {
  if (!valid_euclidean(spec))
    throw DomainError("euclidean lattice: need m > 0, cutoff > 0, regulator >= 0 and an odd number of points >= 3");
  const std::size_t n = spec.points;
  const double dp = 2.0 * spec.cutoff / static_cast<double>(n - 1);
  const auto half = static_cast<double>(n / 2);
  std::vector<double> axis(n);
  for (std::size_t i = 0; i < n; ++i) axis[i] = (static_cast<double>(i) - half) * dp;
  const double inv2s2 = spec.regulator > 0.0 ? 1.0 / (2.0 * spec.regulator * spec.regulator) : 0.0;
  double acc = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          const std::array<double, 4> p{axis[a], axis[b], axis[c], axis[d]};
          const double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
          const double r = inv2s2 > 0.0 ? std::exp(-p2 * inv2s2) : 1.0;
          acc += r * f(p, p2);
        }
  return dp * dp * dp * dp * acc;
}

}  // namespace

double euclidean_propagator(const EuclideanSpec& spec, const Point4& x) {
  const double m2 = spec.mass * spec.mass;
  return euclidean_lattice_sum(spec, [&](const std::array<double, 4>& p, double p2) {
    return std::cos(p[0] * x[0] + p[1] * x[1] + p[2] * x[2] + p[3] * x[3]) / (p2 + m2);
  });
}

double euclidean_step(const EuclideanSpec& spec) {
  return kTwoPi / (spec.cutoff * static_cast<double>(spec.points - 1));
}

double euclidean_green_residual(const EuclideanSpec& spec) {
  const double h = euclidean_step(spec);
  const Point4 origin{0.0, 0.0, 0.0, 0.0};
  const double w0 = euclidean_propagator(spec, origin);
  double lap = 0.0;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    Point4 up = origin;
    up[mu] = h;
    // w is even, so w(-h e_mu) = w(h e_mu).
    lap += 2.0 * (euclidean_propagator(spec, up) - w0) / (h * h);
  }
  const double lhs = -lap + spec.mass * spec.mass * w0;
  const double delta = euclidean_lattice_sum(spec, [](const std::array<double, 4>&, double) { return 1.0; });
  return std::abs(lhs - delta) / delta;
}

// Chronological products /////////////////////////////////////////////////////

Complex chronological_reorder(const std::function<Complex(std::span<const Point4>)>& w, std::span<const Point4> points) {
  const std::size_t k = points.size();
  if (k > kChronologicalMaxPoints) throw DomainError("chronological_reorder: at most 6 points are supported");
  if (k == 0) return w(points);
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Point4> ordered(k);
  Complex total = 0.0;
  do {
    double weight = 1.0;
    for (std::size_t i = 0; i + 1 < k && weight != 0.0; ++i) {
      const double dt = points[perm[i]][0] - points[perm[i + 1]][0];
      weight *= dt > 0.0 ? 1.0 : (dt < 0.0 ? 0.0 : 0.5);
    }
    if (weight == 0.0) continue;
    for (std::size_t i = 0; i < k; ++i) ordered[i] = points[perm[i]];
    total += weight * w(ordered);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace aqt
