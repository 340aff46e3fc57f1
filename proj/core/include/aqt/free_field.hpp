#pragma once

// Free scalar field of mass m on a symmetric 3-momentum lattice: Pauli-Jordan
// functions, the mass-shell bilinear form, the tau decomposition, Wick
// n-point functions, mass witnesses, the Euclidean propagator and
// chronological products.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aqt/algebra.hpp"

namespace aqt {

using Point4 = std::array<double, 4>;  // (x0, x1, x2, x3)
using Momentum3 = std::array<double, 3>;

struct GridSpec {
  double mass = 1.0;
  double cutoff = 6.0;     // Lambda: momenta in [-Lambda, Lambda] per axis
  std::size_t points = 33;  // N per axis, odd

  bool operator==(const GridSpec&) const = default;
};

/// Lattice p = -Lambda + i dp per axis, dp = 2 Lambda / (N - 1), with shell
/// weights w(p) = dp^3 / omega(p), omega = sqrt(p^2 + m^2).
class MassShellGrid {
 public:
  explicit MassShellGrid(GridSpec spec);
  MassShellGrid(double mass, double cutoff, std::size_t points) : MassShellGrid(GridSpec{mass, cutoff, points}) {}

  const GridSpec& spec() const { return spec_; }
  double mass() const { return spec_.mass; }
  double spacing() const { return dp_; }
  std::size_t size() const { return omega_.size(); }

  const Momentum3& momentum(std::size_t i) const { return momenta_[i]; }
  double omega(std::size_t i) const { return omega_[i]; }
  double weight(std::size_t i) const { return weight_[i]; }
  /// Index of -p.
  std::size_t mirror(std::size_t i) const { return size() - 1 - i; }

 private:
  GridSpec spec_;
  double dp_;
  std::vector<Momentum3> momenta_;
  std::vector<double> omega_;
  std::vector<double> weight_;
};

/// D-(x) = i (2 pi)^-3 sum_p (w/2) exp(-i(omega x0 - p.x)); the 1/2 comes
/// from delta(p^2 - m^2) theta(p0) = delta(p0 - omega) / (2 omega).
Complex pauli_jordan_minus(const MassShellGrid& grid, const Point4& x);

/// D(x) = D-(x) - D-(-x), summed as the per-point difference of the two sheets.
Complex pauli_jordan(const MassShellGrid& grid, const Point4& x);

/// W2(x, y) = D-(x - y) / i, times pair_scale (1 for the Fock state).
Complex wightman_two_point(const MassShellGrid& grid, const Point4& x, const Point4& y, double pair_scale = 1.0);

/// |(box_h + m^2) D-(x)| with centred second differences of step h in all four coordinates.
double klein_gordon_residual(const MassShellGrid& grid, const Point4& x, double h);

/// Fourier data of a real test function on the two sheets:
/// pos[i] = psi^F(omega, p_i), neg[i] = psi^F(-omega, p_i).
struct TestFunction {
  GridSpec grid;
  std::vector<Complex> pos;
  std::vector<Complex> neg;

  /// Samples psi^F(p0, p) on both sheets of the grid.
  static TestFunction sample(const MassShellGrid& grid, const std::function<Complex(double, const Momentum3&)>& f);
  static TestFunction zero(const MassShellGrid& grid);

  /// max_i |neg[i] - conj(pos[-i])|.
  double reality_defect(const MassShellGrid& grid) const;
};

/// (psi|psi')_m = sum_p w psi^F(-omega, -p) psi'^F(omega, p).
Complex shell_bilinear_form(const MassShellGrid& grid, const TestFunction& psi, const TestFunction& psi2);

/// (psi|psi')_L = (1/2) sum_p w [psi^F(-omega,-p) psi'^F(omega,p) + psi^F(omega,-p) psi'^F(-omega,p)].
Complex real_shell_form(const MassShellGrid& grid, const TestFunction& psi, const TestFunction& psi2);

/// Sheet-even and sheet-odd parts psi_+- = (psi(omega) +- psi(-omega)) / 2, as test functions.
std::pair<TestFunction, TestFunction> sheet_parts(const TestFunction& psi);

/// tau_+(p) = omega^-1/2 (pos + neg)/2, tau_-(p) = omega^-1/2 (pos - neg)/(2i).
struct TauPair {
  std::vector<Complex> plus;
  std::vector<Complex> minus;
};
TauPair tau_decompose(const MassShellGrid& grid, const TestFunction& psi, double reality_tol = 1e-12);

/// <q|q'> = sum_p dp^3 q(-p) q'(p).
Complex momentum_form(const MassShellGrid& grid, std::span<const Complex> q, std::span<const Complex> q2);

/// Wick expansion of the n-point function from W2; 0 for odd n, 1 for n = 0.
Complex wightman_n_point(const MassShellGrid& grid, std::span<const Point4> points, double pair_scale = 1.0);

/// |W2(x,y) - W2(y,x) + i D(x - y)|.
double commutator_identity_residual(const MassShellGrid& grid, const Point4& x, const Point4& y);

enum class WitnessVerdict { inequivalent, equivalent, undecided };
std::string to_string(WitnessVerdict v);

struct MassWitnessReport {
  WitnessVerdict verdict = WitnessVerdict::undecided;
  double mass = 0.0;
  double mass_prime = 0.0;
  double form_mass = 0.0;        // (psi|psi)_m
  double form_mass_prime = 0.0;  // (psi|psi)_m'
  double scale = 0.0;            // sum_p w' g(p)^2, the profile norm on the m' grid
  double min_gap = 0.0;          // min_p |omega_m(p) - omega_m'(p)|
  double half_width = 0.0;       // support half-width of the p0 bump
  std::string note;
  /// psi^F(p0, p) = g(p) [b(p0 - omega'(p)) + b(-p0 - omega'(p))].
  std::function<Complex(double, const Momentum3&)> profile;
};

/// A real test function living on the m'-shell and vanishing on the m-shell.
MassWitnessReport mass_kernel_witness(double mass, double mass_prime, double cutoff, std::size_t points);

struct EuclideanSpec {
  double mass = 1.0;
  double cutoff = 6.0;
  std::size_t points = 17;
  /// s > 0 multiplies each term by exp(-p^2 / (2 s^2)); 0 keeps the sharp cutoff.
  double regulator = 0.0;
};

/// w(x) = sum_p dp^4 r(p) cos(p.x) / (p^2 + m^2) over the symmetric 4-lattice,
/// r = 1 for the sharp cutoff.
double euclidean_propagator(const EuclideanSpec& spec, const Point4& x);

/// Finite-difference step matched to the lattice, h = 2 pi / (Lambda (N - 1)).
double euclidean_step(const EuclideanSpec& spec);

/// |(-Delta_h + m^2) w(0) - sum_p dp^4 r(p)| / sum_p dp^4 r(p) with h = euclidean_step(spec).
double euclidean_green_residual(const EuclideanSpec& spec);

/// Time-ordered product: sum over permutations pi of
/// prod_i theta(x0_pi(i) - x0_pi(i+1)) W(x_pi(1), ..., x_pi(k)), theta(0) = 1/2.
inline constexpr std::size_t kChronologicalMaxPoints = 6;
Complex chronological_reorder(const std::function<Complex(std::span<const Point4>)>& w, std::span<const Point4> points);

}  // namespace aqt
