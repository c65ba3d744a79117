#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "pdmspec/rational.hpp"

namespace pdmspec {

/// von Roos kinetic-operator ordering triple (alpha, beta, gamma).
/// Construction enforces alpha + beta + gamma = -1 exactly.
struct AmbiguityParameters {
  AmbiguityParameters(Rational alpha_in, Rational beta_in, Rational gamma_in);

  Rational alpha;
  Rational beta;
  Rational gamma;

  bool operator==(const AmbiguityParameters&) const = default;
};

/// Historical ordering choices, all satisfying the constraint.
enum class OrderingSet {
  GoraWilliams,           // (-1, 0, 0)
  LiKuhn,                 // (0, -1/2, -1/2)
  BenDanielDuke,          // (0, -1, 0)
  ZhuKroemer,             // (-1/2, 0, -1/2)
  MustafaMazharimousavi,  // (-1/4, -1/2, -1/4)
};

inline constexpr std::array<OrderingSet, 5> kAllOrderingSets = {
    OrderingSet::GoraWilliams,   OrderingSet::LiKuhn,
    OrderingSet::BenDanielDuke,  OrderingSet::ZhuKroemer,
    OrderingSet::MustafaMazharimousavi,
};

AmbiguityParameters named_ordering(OrderingSet set);
std::string_view ordering_name(OrderingSet set);
std::optional<OrderingSet> ordering_from_name(std::string_view name);

/// zeta = alpha(alpha-1) + gamma(gamma-1) - beta(beta+1), exact.
Rational zeta(const AmbiguityParameters& p);

/// zeta - beta = alpha(alpha-1) + gamma(gamma-1) - beta(beta+2), exact.
Rational zeta_minus_beta(const AmbiguityParameters& p);

/// Reality constraint for the harmonic-mass family: zeta - beta <= (m^2+3)/2.
/// Inclusive at the boundary; evaluated in exact arithmetic.
bool reality_ok_harmonic(const AmbiguityParameters& p, int m);

/// Reality constraint for the Coulombic-mass family: zeta - beta <= 2 m^2 + 3/2.
bool reality_ok_coulomb(const AmbiguityParameters& p, int m);

/// Effective (generally irrational) magnetic quantum number |l~| for the
/// inverse-square channel of the separated radial equation.
///
/// A negative radicand is reported through the marker (value empty), never as
/// a NaN: it signals a reality-constraint violation the caller may tabulate.
struct EllTilde {
  double upsilon = 0.0;
  int m = 0;
  double radicand = 0.0;
  std::optional<double> value;  // nonnegative root when radicand >= 0

  bool real() const { return value.has_value(); }
};

/// radicand = u(u+1) + m^2 + 1/4 - (2u+1)^2 (zeta - beta - 1) / 2.
/// For the closed-form mass exponents u = 1/2 and u = -1 the radicand is
/// evaluated in exact rational arithmetic first, so boundary cases (radicand
/// exactly zero) cannot flip sign under rounding.
EllTilde ell_tilde(double upsilon, int m, const AmbiguityParameters& p);

/// Rescaled squared quantum number of the u = -3/2 special case:
/// (m^2 + 3) - 2 (zeta - beta) + 2 E. May be negative; returned as-is.
double ell_tilde_rescaled_special(int m, const AmbiguityParameters& p, double energy);

}  // namespace pdmspec
