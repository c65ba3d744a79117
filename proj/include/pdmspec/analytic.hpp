#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdmspec/ambiguity.hpp"
#include "pdmspec/model.hpp"

namespace pdmspec {

enum class Family { harmonic, coulomb };

const char* family_name(Family f);

/// Axial separation constant of the box of width L: (n_z pi / L)^2, n_z >= 1.
double axial_well_kz2(double L, int n_z);

/// Separation constant of the Morse axial channel in the form the closed-form
/// energy family tabulates it: sqrt(D)/eps - n~ - 1/2 (linear in the level).
/// positive_ok reflects the enforced positivity condition; callers keep
/// failing levels and mark them. Note this form differs from the Morse ODE
/// eigenvalue -eps^2 (sqrt(D)/eps - n~ - 1/2)^2; the verify pipeline reports
/// both values side by side.
struct MorseKz2 {
  double value = 0.0;
  bool positive_ok = false;
};
MorseKz2 axial_morse_kz2(double D, double epsilon, int n_tilde_z);

/// Standard Morse bound-state energy -eps^2 (sqrt(D)/eps - n - 1/2)^2, used as
/// the independent reference for the axial oracle.
double morse_reference_energy(double D, double epsilon, int n);

/// C = (pi / 2d) (1 + sqrt(1 + 4 U0 d^2 / pi^2)).
double rosen_morse_C(double U0, double d);

/// k_z^2 = (C d + n~ pi)^2 / d^2 - U0.
double axial_rosen_morse_kz2(double U0, double d, int n_tilde_z);

/// Harmonic-mass family energy:
///   E = a^2/(4b) - (1/(4b)) [ k_z^2 / (2 n_rho + |l~_{1/2}| + 1) ]^2.
/// Empty when the reality constraint fails (complex marker, never NaN).
std::optional<double> harmonic_energy(double a, double b, int m, int n_rho, double kz2,
                                      const AmbiguityParameters& p);

/// Inverse relation k_z^2 = -sqrt(a^2 - 4 b E) (2 n_rho + l~ + 1), the
/// first-power bracket consistent with harmonic_energy. Rejects a^2 - 4bE < 0.
double harmonic_kz2_relation(double a, double b, double energy, int n_rho, double ell);

enum class Branch { plus, minus, none };
const char* branch_name(Branch b);

/// Coulombic-mass family energy (b~ = b/2):
///   E = +/- (k_z / b~) (n_rho + |l~_{-1}| + 1) - A~ / b~.
std::optional<double> coulomb_energy(double A_tilde, double b, int m, int n_rho, double kz,
                                     const AmbiguityParameters& p, Branch branch);

struct QuantumNumbers {
  int n_rho = 0;
  int m = 0;
  int n_axial = 0;  // well levels start at 1, Morse/Rosen-Morse at 0
};

/// One spectrum record per quantum-number tuple (and branch, for the
/// Coulombic family). Oracle columns are filled by the verify pipeline.
struct SpectrumLine {
  QuantumNumbers qn;
  Branch branch = Branch::none;
  double kz2_analytic = 0.0;
  std::optional<double> e_analytic;  // empty = complex marker
  bool constraint_ok = true;         // reality constraint on the ordering triple
  bool axial_ok = true;              // e.g. Morse positivity condition
  std::optional<double> kz2_oracle;
  std::optional<double> e_oracle;
  std::optional<double> residual_kz2;  // relative
  std::optional<double> residual_e;    // absolute
  std::vector<std::string> flags;

  bool has_flag(const std::string& f) const;
  void add_flag(std::string f);
};

struct QuantumRanges {
  int n_rho_min = 0, n_rho_max = 0;
  int m_min = 0, m_max = 0;
  int n_axial_min = 1, n_axial_max = 1;
};

/// Full closed-form spectrum over the requested ranges, ordered
/// lexicographically by (n_rho, m, n_axial, branch). The Coulombic family
/// emits both branches per tuple. Rejects inconsistent family / mass / radial
/// pairings and the Free axial channel (no discrete separation constant).
std::vector<SpectrumLine> assemble_spectrum(Family family, const MassProfile& mp,
                                            const RadialPotential& vr, const AxialPotential& vz,
                                            const AmbiguityParameters& p,
                                            const QuantumRanges& ranges);

}  // namespace pdmspec
