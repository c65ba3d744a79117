#pragma once

#include <functional>
#include <span>
#include <utility>
#include <variant>

namespace pdmspec {

/// Radial power-law mass g(rho) = (b/2) rho^(2u+1), defined on rho > 0.
struct MassProfile {
  MassProfile(double upsilon_in, double b_in);

  double upsilon;
  double b;  // nonzero
};

/// (b/2) rho^(2u+1); rejects rho <= 0.
double mass_at(const MassProfile& mp, double rho);

struct HarmonicRadial {
  double a = 0.0;  // V~(rho) = a^2 rho^2 / 4
};
struct CoulombRadial {
  double A_tilde = 0.0;  // V~(rho) = -2 A~ / rho
};
struct NoRadial {};
using RadialPotential = std::variant<NoRadial, HarmonicRadial, CoulombRadial>;

/// V~(rho) for the chosen radial variant; rejects rho <= 0.
double radial_tilde_v(const RadialPotential& vr, double rho);

struct InfiniteWell {
  double L = 1.0;  // V~(z) = 0 on 0 < z < L, infinite elsewhere
};
struct MorseAxial {
  double D = 1.0;        // > 0
  double epsilon = 1.0;  // > 0; V~(z) = D (e^{-2 eps z} - 2 e^{-eps z})
};
struct RosenMorseTrig {
  double U0 = 1.0;  // > 0
  double d = 1.0;   // > 0; V~(z) = U0 cot^2(pi z / d) on [0, d]
};
struct FreeAxial {};
using AxialPotential = std::variant<FreeAxial, InfiniteWell, MorseAxial, RosenMorseTrig>;

/// A potential value at one point. Wall regions carry an explicit marker so
/// infinities never enter matrix assembly as large floats.
struct PotentialSample {
  double value = 0.0;
  bool infinite = false;
};

PotentialSample axial_tilde_v(const AxialPotential& vz, double z);

/// Finite-potential z-interval suitable for sampling (open interval for wall
/// potentials; a decaying window for Morse; the whole line for Free).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};
Interval axial_sampling_window(const AxialPotential& vz);

/// Full interaction potential composed through the separability identity
/// 2 g(rho) V(rho, z) = V~(rho) + V~(z) under azimuthal symmetry.
class ComposedPotential {
 public:
  ComposedPotential(MassProfile mp, RadialPotential vr, AxialPotential vz)
      : mass_(mp), radial_(std::move(vr)), axial_(std::move(vz))
  {
  }

  /// V(rho, z); rejects rho <= 0, propagates the wall marker.
  PotentialSample operator()(double rho, double z) const;

  const MassProfile& mass() const { return mass_; }
  const RadialPotential& radial() const { return radial_; }
  const AxialPotential& axial() const { return axial_; }

 private:
  MassProfile mass_;
  RadialPotential radial_;
  AxialPotential axial_;
};

ComposedPotential compose_full_potential(const MassProfile& mp, const RadialPotential& vr,
                                         const AxialPotential& vz);

using PotentialField = std::function<PotentialSample(double, double)>;
using SamplePoint = std::pair<double, double>;  // (rho, z)

/// max over samples of |2 g(rho) V(rho,z) - V~(rho) - V~(z)|, normalized by
/// (1 + sum of term magnitudes). Samples must lie in the finite region.
double potential_identity_residual(const MassProfile& mp, const RadialPotential& vr,
                                   const AxialPotential& vz, std::span<const SamplePoint> samples,
                                   const PotentialField& v);

/// Same, with V composed from (mp, vr, vz).
double potential_identity_residual(const MassProfile& mp, const RadialPotential& vr,
                                   const AxialPotential& vz, std::span<const SamplePoint> samples);

enum class SeparabilityCase {
  I_fk_unit,
  II_kg_unit,
  III_fg_unit,
  IV_upsilon_neg32_k,
  V_upsilon_neg32_f,
  NotSeparable,
};

const char* separability_case_name(SeparabilityCase c);

/// Classifies the mass-factor pattern (f(phi), k(z), g(rho) trivial or not)
/// against the five separable patterns. Overlaps resolve to the
/// lowest-numbered matching case; IV/V additionally require upsilon = -3/2.
SeparabilityCase classify_separability(double upsilon, bool f_is_unit, bool k_is_unit,
                                       bool g_is_unit);

}  // namespace pdmspec
