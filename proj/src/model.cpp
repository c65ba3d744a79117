#include "pdmspec/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pdmspec {

MassProfile::MassProfile(double upsilon_in, double b_in) : upsilon(upsilon_in), b(b_in)
{
  if (b == 0.0 || !std::isfinite(b) || !std::isfinite(upsilon)) {
    throw std::invalid_argument("mass profile requires finite upsilon and nonzero b");
  }
}

double mass_at(const MassProfile& mp, double rho)
{
  if (!(rho > 0.0)) {
    throw std::invalid_argument("mass profile is defined on rho > 0");
  }
  return 0.5 * mp.b * std::pow(rho, 2.0 * mp.upsilon + 1.0);
}

double radial_tilde_v(const RadialPotential& vr, double rho)
{
  if (!(rho > 0.0)) {
    throw std::invalid_argument("radial potential is defined on rho > 0");
  }
  return std::visit(
      [rho](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HarmonicRadial>) {
          return 0.25 * v.a * v.a * rho * rho;
        } else if constexpr (std::is_same_v<T, CoulombRadial>) {
          return -2.0 * v.A_tilde / rho;
        } else {
          return 0.0;
        }
      },
      vr);
}

PotentialSample axial_tilde_v(const AxialPotential& vz, double z)
{
  return std::visit(
      [z](const auto& v) -> PotentialSample {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, InfiniteWell>) {
          if (z <= 0.0 || z >= v.L) {
            return {0.0, true};
          }
          return {0.0, false};
        } else if constexpr (std::is_same_v<T, MorseAxial>) {
          const double e1 = std::exp(-v.epsilon * z);
          return {v.D * (e1 * e1 - 2.0 * e1), false};
        } else if constexpr (std::is_same_v<T, RosenMorseTrig>) {
          if (z <= 0.0 || z >= v.d) {
            return {0.0, true};
          }
          const double c = 1.0 / std::tan(M_PI * z / v.d);
          return {v.U0 * c * c, false};
        } else {
          return {0.0, false};
        }
      },
      vz);
}

Interval axial_sampling_window(const AxialPotential& vz)
{
  return std::visit(
      [](const auto& v) -> Interval {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, InfiniteWell>) {
          return {0.01 * v.L, 0.99 * v.L};
        } else if constexpr (std::is_same_v<T, MorseAxial>) {
          return {-2.0 / v.epsilon, 10.0 / v.epsilon};
        } else if constexpr (std::is_same_v<T, RosenMorseTrig>) {
          return {0.01 * v.d, 0.99 * v.d};
        } else {
          return {-10.0, 10.0};
        }
      },
      vz);
}

PotentialSample ComposedPotential::operator()(double rho, double z) const
{
  if (!(rho > 0.0)) {
    throw std::invalid_argument("composed potential is defined on rho > 0");
  }
  const PotentialSample vz = axial_tilde_v(axial_, z);
  if (vz.infinite) {
    return {0.0, true};
  }
  const double vr = radial_tilde_v(radial_, rho);
  return {(vr + vz.value) / (2.0 * mass_at(mass_, rho)), false};
}

ComposedPotential compose_full_potential(const MassProfile& mp, const RadialPotential& vr,
                                         const AxialPotential& vz)
{
  return ComposedPotential(mp, vr, vz);
}

double potential_identity_residual(const MassProfile& mp, const RadialPotential& vr,
                                   const AxialPotential& vz, std::span<const SamplePoint> samples,
                                   const PotentialField& v)
{
  double worst = 0.0;
  for (const auto& [rho, z] : samples) {
    const PotentialSample vz_s = axial_tilde_v(vz, z);
    if (vz_s.infinite) {
      throw std::invalid_argument("identity sample lies in an infinite-potential region");
    }
    const PotentialSample full = v(rho, z);
    if (full.infinite) {
      throw std::invalid_argument("composed potential infinite at a finite-region sample");
    }
    const double vr_s = radial_tilde_v(vr, rho);
    const double lhs = 2.0 * mass_at(mp, rho) * full.value;
    const double scale = 1.0 + std::abs(lhs) + std::abs(vr_s) + std::abs(vz_s.value);
    worst = std::max(worst, std::abs(lhs - vr_s - vz_s.value) / scale);
  }
  return worst;
}

double potential_identity_residual(const MassProfile& mp, const RadialPotential& vr,
                                   const AxialPotential& vz, std::span<const SamplePoint> samples)
{
  const ComposedPotential composed(mp, vr, vz);
  return potential_identity_residual(
      mp, vr, vz, samples, [&composed](double rho, double z) { return composed(rho, z); });
}

const char* separability_case_name(SeparabilityCase c)
{
  switch (c) {
    case SeparabilityCase::I_fk_unit: return "I_fk_unit";
    case SeparabilityCase::II_kg_unit: return "II_kg_unit";
    case SeparabilityCase::III_fg_unit: return "III_fg_unit";
    case SeparabilityCase::IV_upsilon_neg32_k: return "IV_upsilon_neg32_k";
    case SeparabilityCase::V_upsilon_neg32_f: return "V_upsilon_neg32_f";
    case SeparabilityCase::NotSeparable: return "NotSeparable";
  }
  return "?";
}

SeparabilityCase classify_separability(double upsilon, bool f_is_unit, bool k_is_unit,
                                       bool g_is_unit)
{
  if (f_is_unit && k_is_unit) {
    return SeparabilityCase::I_fk_unit;
  }
  if (k_is_unit && g_is_unit) {
    return SeparabilityCase::II_kg_unit;
  }
  if (f_is_unit && g_is_unit) {
    return SeparabilityCase::III_fg_unit;
  }
  if (upsilon == -1.5 && !k_is_unit && f_is_unit) {
    return SeparabilityCase::IV_upsilon_neg32_k;
  }
  if (upsilon == -1.5 && k_is_unit && !f_is_unit) {
    return SeparabilityCase::V_upsilon_neg32_f;
  }
  return SeparabilityCase::NotSeparable;
}

}  // namespace pdmspec
