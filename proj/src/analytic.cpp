#include "pdmspec/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdmspec {

const char* family_name(Family f)
{
  return f == Family::harmonic ? "harmonic" : "coulomb";
}

const char* branch_name(Branch b)
{
  switch (b) {
    case Branch::plus: return "plus";
    case Branch::minus: return "minus";
    case Branch::none: return "n/a";
  }
  return "?";
}

double axial_well_kz2(double L, int n_z)
{
  if (!(L > 0.0)) {
    throw std::invalid_argument("well width L must be positive");
  }
  if (n_z < 1) {
    throw std::invalid_argument("well levels start at n_z = 1");
  }
  const double k = static_cast<double>(n_z) * M_PI / L;
  return k * k;
}

MorseKz2 axial_morse_kz2(double D, double epsilon, int n_tilde_z)
{
  if (!(D > 0.0) || !(epsilon > 0.0)) {
    throw std::invalid_argument("Morse parameters require D > 0 and epsilon > 0");
  }
  if (n_tilde_z < 0) {
    throw std::invalid_argument("Morse levels start at n~_z = 0");
  }
  const double value = std::sqrt(D) / epsilon - n_tilde_z - 0.5;
  return {value, value > 0.0};
}

double morse_reference_energy(double D, double epsilon, int n)
{
  const double s = std::sqrt(D) / epsilon - n - 0.5;
  return -epsilon * epsilon * s * s;
}

double rosen_morse_C(double U0, double d)
{
  if (!(U0 > 0.0) || !(d > 0.0)) {
    throw std::invalid_argument("Rosen-Morse parameters require U0 > 0 and d > 0");
  }
  return 0.5 * M_PI / d * (1.0 + std::sqrt(1.0 + 4.0 * U0 * d * d / (M_PI * M_PI)));
}

double axial_rosen_morse_kz2(double U0, double d, int n_tilde_z)
{
  if (n_tilde_z < 0) {
    throw std::invalid_argument("Rosen-Morse levels start at n~_z = 0");
  }
  const double cd = rosen_morse_C(U0, d) * d + n_tilde_z * M_PI;
  return cd * cd / (d * d) - U0;
}

std::optional<double> harmonic_energy(double a, double b, int m, int n_rho, double kz2,
                                      const AmbiguityParameters& p)
{
  if (b == 0.0) {
    throw std::invalid_argument("harmonic energy requires b != 0");
  }
  if (n_rho < 0) {
    throw std::invalid_argument("radial node count n_rho must be >= 0");
  }
  const EllTilde ell = ell_tilde(0.5, m, p);
  if (!ell.real()) {
    return std::nullopt;
  }
  const double denom = 2.0 * n_rho + *ell.value + 1.0;
  const double ratio = kz2 / denom;
  return a * a / (4.0 * b) - ratio * ratio / (4.0 * b);
}

double harmonic_kz2_relation(double a, double b, double energy, int n_rho, double ell)
{
  const double disc = a * a - 4.0 * b * energy;
  if (disc < 0.0) {
    throw std::invalid_argument("harmonic relation requires a^2 - 4 b E >= 0");
  }
  return -std::sqrt(disc) * (2.0 * n_rho + ell + 1.0);
}

std::optional<double> coulomb_energy(double A_tilde, double b, int m, int n_rho, double kz,
                                     const AmbiguityParameters& p, Branch branch)
{
  if (b == 0.0) {
    throw std::invalid_argument("coulomb energy requires b != 0");
  }
  if (n_rho < 0) {
    throw std::invalid_argument("radial node count n_rho must be >= 0");
  }
  if (branch == Branch::none) {
    throw std::invalid_argument("coulomb energy requires an explicit branch");
  }
  const EllTilde ell = ell_tilde(-1.0, m, p);
  if (!ell.real()) {
    return std::nullopt;
  }
  const double b_tilde = 0.5 * b;
  const double sign = branch == Branch::plus ? 1.0 : -1.0;
  return sign * kz / b_tilde * (n_rho + *ell.value + 1.0) - A_tilde / b_tilde;
}

bool SpectrumLine::has_flag(const std::string& f) const
{
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

void SpectrumLine::add_flag(std::string f)
{
  if (!has_flag(f)) {
    flags.push_back(std::move(f));
  }
}

namespace {

struct AxialLevel {
  double kz2 = 0.0;
  bool ok = true;
};

AxialLevel axial_level(const AxialPotential& vz, int n_axial)
{
  return std::visit(
      [n_axial](const auto& v) -> AxialLevel {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, InfiniteWell>) {
          return {axial_well_kz2(v.L, n_axial), true};
        } else if constexpr (std::is_same_v<T, MorseAxial>) {
          const MorseKz2 r = axial_morse_kz2(v.D, v.epsilon, n_axial);
          return {r.value, r.positive_ok};
        } else if constexpr (std::is_same_v<T, RosenMorseTrig>) {
          return {axial_rosen_morse_kz2(v.U0, v.d, n_axial), true};
        } else {
          throw std::invalid_argument("free axial channel has no discrete separation constant");
        }
      },
      vz);
}

void validate_pairing(Family family, const MassProfile& mp, const RadialPotential& vr)
{
  if (family == Family::harmonic) {
    if (mp.upsilon != 0.5 || !std::holds_alternative<HarmonicRadial>(vr)) {
      throw std::invalid_argument(
          "harmonic family requires upsilon = 1/2 and a harmonic radial potential");
    }
  } else {
    if (mp.upsilon != -1.0 || !std::holds_alternative<CoulombRadial>(vr)) {
      throw std::invalid_argument(
          "coulomb family requires upsilon = -1 and a Coulombic radial potential");
    }
  }
}

}  // namespace

std::vector<SpectrumLine> assemble_spectrum(Family family, const MassProfile& mp,
                                            const RadialPotential& vr, const AxialPotential& vz,
                                            const AmbiguityParameters& p,
                                            const QuantumRanges& ranges)
{
  validate_pairing(family, mp, vr);
  if (ranges.n_rho_min < 0 || ranges.n_rho_min > ranges.n_rho_max || ranges.m_min < 0 ||
      ranges.m_min > ranges.m_max || ranges.n_axial_min > ranges.n_axial_max) {
    throw std::invalid_argument("invalid quantum-number ranges");
  }
  const int axial_floor = std::holds_alternative<InfiniteWell>(vz) ? 1 : 0;
  if (ranges.n_axial_min < axial_floor) {
    throw std::invalid_argument(axial_floor == 1 ? "well levels start at n_z = 1"
                                                 : "axial levels start at n~_z = 0");
  }

  std::vector<SpectrumLine> lines;
  for (int n_rho = ranges.n_rho_min; n_rho <= ranges.n_rho_max; ++n_rho) {
    for (int m = ranges.m_min; m <= ranges.m_max; ++m) {
      const bool constraint_ok =
          family == Family::harmonic ? reality_ok_harmonic(p, m) : reality_ok_coulomb(p, m);
      const EllTilde ell = ell_tilde(family == Family::harmonic ? 0.5 : -1.0, m, p);
      for (int n_ax = ranges.n_axial_min; n_ax <= ranges.n_axial_max; ++n_ax) {
        const AxialLevel ax = axial_level(vz, n_ax);
        auto make_line = [&](Branch branch) {
          SpectrumLine line;
          line.qn = {n_rho, m, n_ax};
          line.branch = branch;
          line.kz2_analytic = ax.kz2;
          line.constraint_ok = constraint_ok;
          line.axial_ok = ax.ok;
          if (!ax.ok) {
            line.add_flag("axial_condition_failed");
          }
          if (!constraint_ok) {
            line.add_flag("constraint_violated");
          }
          if (ell.real() && *ell.value == 0.0) {
            // boundary of the reality constraint: critical -1/4 rho^-2 channel
            line.add_flag("critical_inverse_square");
          }
          if (family == Family::harmonic) {
            const auto& hr = std::get<HarmonicRadial>(vr);
            line.e_analytic = harmonic_energy(hr.a, mp.b, m, n_rho, ax.kz2, p);
          } else {
            const auto& cr = std::get<CoulombRadial>(vr);
            if (ax.kz2 < 0.0) {
              // k_z imaginary: complex pair, no real closed-form energy
              line.e_analytic = std::nullopt;
              line.add_flag("complex_pair");
            } else {
              line.e_analytic =
                  coulomb_energy(cr.A_tilde, mp.b, m, n_rho, std::sqrt(ax.kz2), p, branch);
            }
          }
          if (!line.e_analytic.has_value()) {
            line.add_flag("complex_energy");
          }
          lines.push_back(std::move(line));
        };
        if (family == Family::harmonic) {
          make_line(Branch::none);
        } else {
          make_line(Branch::plus);
          make_line(Branch::minus);
        }
      }
    }
  }
  return lines;
}

}  // namespace pdmspec
