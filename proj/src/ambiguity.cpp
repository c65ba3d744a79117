#include "pdmspec/ambiguity.hpp"

#include <cmath>
#include <stdexcept>

namespace pdmspec {

AmbiguityParameters::AmbiguityParameters(Rational alpha_in, Rational beta_in, Rational gamma_in)
    : alpha(alpha_in), beta(beta_in), gamma(gamma_in)
{
  if (alpha + beta + gamma != Rational(-1)) {
    throw std::invalid_argument("ordering parameters must satisfy alpha + beta + gamma = -1, got " +
                                to_string(alpha) + " + " + to_string(beta) + " + " +
                                to_string(gamma));
  }
}

AmbiguityParameters named_ordering(OrderingSet set)
{
  switch (set) {
    case OrderingSet::GoraWilliams:
      return {Rational(-1), Rational(0), Rational(0)};
    case OrderingSet::LiKuhn:
      return {Rational(0), Rational(-1, 2), Rational(-1, 2)};
    case OrderingSet::BenDanielDuke:
      return {Rational(0), Rational(-1), Rational(0)};
    case OrderingSet::ZhuKroemer:
      return {Rational(-1, 2), Rational(0), Rational(-1, 2)};
    case OrderingSet::MustafaMazharimousavi:
      return {Rational(-1, 4), Rational(-1, 2), Rational(-1, 4)};
  }
  throw std::invalid_argument("unknown ordering set");
}

std::string_view ordering_name(OrderingSet set)
{
  switch (set) {
    case OrderingSet::GoraWilliams: return "GoraWilliams";
    case OrderingSet::LiKuhn: return "LiKuhn";
    case OrderingSet::BenDanielDuke: return "BenDanielDuke";
    case OrderingSet::ZhuKroemer: return "ZhuKroemer";
    case OrderingSet::MustafaMazharimousavi: return "MustafaMazharimousavi";
  }
  return "?";
}

std::optional<OrderingSet> ordering_from_name(std::string_view name)
{
  for (OrderingSet set : kAllOrderingSets) {
    if (name == ordering_name(set)) {
      return set;
    }
  }
  return std::nullopt;
}

Rational zeta(const AmbiguityParameters& p)
{
  return p.alpha * (p.alpha - 1) + p.gamma * (p.gamma - 1) - p.beta * (p.beta + 1);
}

Rational zeta_minus_beta(const AmbiguityParameters& p)
{
  return zeta(p) - p.beta;
}

namespace {

int require_nonnegative_m(int m)
{
  if (m < 0) {
    throw std::invalid_argument("magnetic quantum number m must be >= 0");
  }
  return m;
}

}  // namespace

bool reality_ok_harmonic(const AmbiguityParameters& p, int m)
{
  require_nonnegative_m(m);
  return zeta_minus_beta(p) <= Rational(static_cast<long long>(m) * m + 3, 2);
}

bool reality_ok_coulomb(const AmbiguityParameters& p, int m)
{
  require_nonnegative_m(m);
  return zeta_minus_beta(p) <= Rational(4 * static_cast<long long>(m) * m + 3, 2);
}

EllTilde ell_tilde(double upsilon, int m, const AmbiguityParameters& p)
{
  require_nonnegative_m(m);
  EllTilde result;
  result.upsilon = upsilon;
  result.m = m;

  const long long m2 = static_cast<long long>(m) * m;
  const Rational zmb = zeta_minus_beta(p);

  if (upsilon == 0.5) {
    // (m^2 + 3) - 2 (zeta - beta), kept exact so the boundary case is exact
    const Rational rad = Rational(m2 + 3) - 2 * zmb;
    result.radicand = to_double(rad);
    if (rad >= Rational(0)) {
      result.value = std::sqrt(result.radicand);
    }
    return result;
  }
  if (upsilon == -1.0) {
    // (m^2 + 3/4) - (zeta - beta)/2
    const Rational rad = Rational(4 * m2 + 3, 4) - zmb / 2;
    result.radicand = to_double(rad);
    if (rad >= Rational(0)) {
      result.value = std::sqrt(result.radicand);
    }
    return result;
  }

  const double two_u_plus_1 = 2.0 * upsilon + 1.0;
  result.radicand = upsilon * (upsilon + 1.0) + static_cast<double>(m2) + 0.25 -
                    two_u_plus_1 * two_u_plus_1 * (to_double(zmb) - 1.0) / 2.0;
  if (result.radicand >= 0.0) {
    result.value = std::sqrt(result.radicand);
  }
  return result;
}

double ell_tilde_rescaled_special(int m, const AmbiguityParameters& p, double energy)
{
  require_nonnegative_m(m);
  const long long m2 = static_cast<long long>(m) * m;
  return to_double(Rational(m2 + 3) - 2 * zeta_minus_beta(p)) + 2.0 * energy;
}

}  // namespace pdmspec
