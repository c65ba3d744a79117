#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pdmspec/ambiguity.hpp"
#include "pdmspec/analytic.hpp"
#include "pdmspec/model.hpp"

namespace pdmspec {

/// Uniform 1D grid with Dirichlet endpoints at x_min and x_max and n_points
/// interior nodes: x_i = x_min + (i+1) h, h = (x_max - x_min)/(n_points + 1).
struct Grid1D {
  Grid1D(double x_min_in, double x_max_in, int n_points_in);

  double x_min;
  double x_max;
  int n_points;

  double spacing() const { return (x_max - x_min) / (n_points + 1); }
  double node(int i) const { return x_min + (i + 1) * spacing(); }

  /// Same interval with spacing exactly halved (n -> 2n + 1).
  Grid1D refined() const { return Grid1D(x_min, x_max, 2 * n_points + 1); }
};

struct EigenResult {
  int level_index = 0;
  double value = 0.0;
  Grid1D grid;
  double convergence_estimate = 0.0;  // absolute, from the Richardson step
  bool converged = false;
};

/// k algebraically smallest eigenvalues of the symmetric tridiagonal matrix,
/// by bisection on the Sturm sequence count (eigenvector-free), each to
/// relative accuracy ~1e-10. offdiagonal.size() must be diagonal.size() - 1.
std::vector<double> tridiag_lowest_eigs(std::span<const double> diagonal,
                                        std::span<const double> offdiagonal, int k);

/// Number of eigenvalues of the matrix strictly below x (Sturm count).
int sturm_count_below(std::span<const double> diagonal, std::span<const double> offdiagonal,
                      double x);

struct RichardsonResult {
  double extrapolated = 0.0;
  double error_estimate = 0.0;
};

/// Eliminates the leading O(h^2) error from values computed at spacings h and
/// h/2: ((4 v_2N - v_N)/3, |v_2N - v_N|/3).
RichardsonResult richardson(double value_n, double value_2n, int order = 2);

struct OracleSettings {
  int n_points = 2000;        // base grid; the Richardson partner halves the spacing
  double axial_tol = 1e-6;    // relative; converged flag and well comparisons
  double loose_axial_tol = 1e-4;  // cot^2-well conformance and Morse-reference checks
  double radial_tol = 1e-5;
  double morse_window_left = 12.0;   // domain [-left/eps, right/eps]
  double morse_window_right = 30.0;
  double rho_max = 0.0;              // 0 = choose from the problem scales
  double selfconsistent_tol = 1e-8;  // |lambda + kz2| <= tol (1 + |kz2|)
};

/// Raised when a solve cannot certify its tolerance or a root bracket fails.
struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Natural solve domain for an axial potential: the well and the cotangent
/// well use their exact wall-to-wall interval (the potential is only ever
/// evaluated at interior nodes, one spacing off the walls); Morse uses a
/// truncated window where the potential is large on the left and the bound
/// tail is negligible on the right.
Grid1D default_axial_grid(const AxialPotential& vz, const OracleSettings& s = {});

/// Lowest n_levels of -d^2/dz^2 + V~(z) on the grid (values are k_z^2),
/// second-order central differences refined by one Richardson step.
std::vector<EigenResult> solve_axial(const AxialPotential& vz, const Grid1D& grid, int n_levels,
                                     double tol = 1e-6);

/// Radial domain [0, rho_max] sized from the confining scales of the problem.
Grid1D default_radial_grid(double ell, const RadialPotential& vr, const MassProfile& mp,
                           double e_fixed, int n_levels, const OracleSettings& s = {});

/// Lowest n_levels of -d^2/drho^2 + (l^2 - 1/4)/rho^2 + V~(rho)
/// - b rho^(2u+1) E_fixed with Dirichlet ends (first node one spacing off the
/// origin), Richardson-refined. Values are to be compared with -k_z^2.
std::vector<EigenResult> solve_radial_linear(double ell, const RadialPotential& vr,
                                             const MassProfile& mp, double e_fixed,
                                             const Grid1D& grid, int n_levels, double tol = 1e-5);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Solves the energy-dependent radial problem: finds E with
/// lambda_{n_rho}(E) = -kz2, where the operator carries the -b rho^(2u+1) E
/// term. For b > 0 the map E -> lambda is strictly decreasing, so bisection on
/// F(E) = lambda_{n_rho}(E) + kz2 has a unique root in a sign-changing
/// bracket. Throws OracleError (with F at both ends) if no bracket is found.
double solve_selfconsistent_E(Family family, const MassProfile& mp, const RadialPotential& vr,
                              const AmbiguityParameters& p, int m, int n_rho, double kz2,
                              std::optional<Bracket> bracket = std::nullopt,
                              const OracleSettings& s = {});

/// Max relative mismatch of the derivation identities, evaluated with analytic
/// derivatives of smooth test functions (never finite differences):
///   - the axial and azimuthal first-derivative elimination identities,
///   - the radial substitution R = rho^u U identity,
///   - the potential composition identity over the six closed-form
///     mass/potential pairings (deterministic sample set).
struct IdentityReport {
  double potential_composition = 0.0;
  double axial_substitution = 0.0;
  double azimuthal_substitution = 0.0;
  double radial_substitution = 0.0;

  double worst() const;
};

IdentityReport identity_residuals(int potential_samples = 10000);

}  // namespace pdmspec
