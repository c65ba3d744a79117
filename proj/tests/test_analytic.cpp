#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pdmspec/analytic.hpp"

using namespace pdmspec;

namespace {

const AmbiguityParameters kBdd = named_ordering(OrderingSet::BenDanielDuke);
const AmbiguityParameters kGw = named_ordering(OrderingSet::GoraWilliams);

}  // namespace

TEST_CASE("well separation constant")
{
  CHECK(axial_well_kz2(M_PI, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(axial_well_kz2(1.0, 3) == doctest::Approx(9.0 * M_PI * M_PI).epsilon(1e-15));
  CHECK(axial_well_kz2(2.0, 2) == doctest::Approx(M_PI * M_PI).epsilon(1e-15));
  CHECK_THROWS_AS(axial_well_kz2(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(axial_well_kz2(0.0, 1), std::invalid_argument);
}

TEST_CASE("Morse separation constant, linear form with positivity flag")
{
  const MorseKz2 r0 = axial_morse_kz2(4.0, 1.0, 0);
  CHECK(r0.value == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(r0.positive_ok);

  const MorseKz2 r2 = axial_morse_kz2(4.0, 1.0, 2);
  CHECK(r2.value == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK_FALSE(r2.positive_ok);

  // boundary: sqrt(D)/eps - 1/2 = 0 is not strictly positive
  const MorseKz2 rb = axial_morse_kz2(1.0, 2.0, 0);
  CHECK(rb.value == doctest::Approx(0.0));
  CHECK_FALSE(rb.positive_ok);

  CHECK_THROWS_AS(axial_morse_kz2(-1.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(axial_morse_kz2(1.0, 1.0, -1), std::invalid_argument);
}

TEST_CASE("Morse reference energy (quadratic bound-state form)")
{
  CHECK(morse_reference_energy(4.0, 1.0, 0) == doctest::Approx(-2.25).epsilon(1e-15));
  CHECK(morse_reference_energy(4.0, 1.0, 1) == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("Rosen-Morse separation constant")
{
  // U0 = 1, d = pi: C is the golden ratio and kz2 = C^2 - 1 = C
  const double golden = 0.5 * (1.0 + std::sqrt(5.0));
  CHECK(rosen_morse_C(1.0, M_PI) == doctest::Approx(golden).epsilon(1e-15));
  CHECK(axial_rosen_morse_kz2(1.0, M_PI, 0) == doctest::Approx(golden).epsilon(1e-14));

  const double C51 = 0.5 * M_PI * (1.0 + std::sqrt(1.0 + 20.0 / (M_PI * M_PI)));
  CHECK(rosen_morse_C(5.0, 1.0) == doctest::Approx(C51).epsilon(1e-15));
  CHECK(axial_rosen_morse_kz2(5.0, 1.0, 1) ==
        doctest::Approx((C51 + M_PI) * (C51 + M_PI) - 5.0).epsilon(1e-14));

  CHECK_THROWS_AS(rosen_morse_C(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(axial_rosen_morse_kz2(1.0, 1.0, -1), std::invalid_argument);
}

TEST_CASE("Rosen-Morse approaches the well to first order in U0")
{
  // kz2(U0) = ((n+1) pi / d)^2 + (2n+1) U0 + O(U0^2)
  for (double d : {1.0, M_PI}) {
    for (int n = 0; n <= 2; ++n) {
      const double well = axial_well_kz2(d, n + 1);
      for (double u0 : {1e-3, 1e-4}) {
        const double rm = axial_rosen_morse_kz2(u0, d, n);
        CHECK(std::abs(rm - well - (2 * n + 1) * u0) <= 20.0 * u0 * u0 * d * d);
      }
    }
  }
}

TEST_CASE("harmonic energy golden values")
{
  // BenDanielDuke at m=0 has ell = 1, so the denominator is 2 n_rho + 2
  const auto e = harmonic_energy(2.0, 2.0, 0, 0, 1.0, kBdd);
  REQUIRE(e.has_value());
  CHECK(*e == doctest::Approx(0.46875).epsilon(1e-15));

  // kz2 = 0: pure constant shift for any quantum numbers
  for (int n_rho : {0, 1, 5}) {
    const auto shift = harmonic_energy(2.0, 2.0, 0, n_rho, 0.0, kBdd);
    CHECK(*shift == doctest::Approx(0.5).epsilon(1e-15));
  }

  // constraint violation yields the marker, not NaN
  CHECK_FALSE(harmonic_energy(2.0, 2.0, 0, 0, 1.0, kGw).has_value());
  CHECK(harmonic_energy(2.0, 2.0, 2, 0, 1.0, kGw).has_value());  // m=2 passes

  CHECK_THROWS_AS(harmonic_energy(2.0, 0.0, 0, 0, 1.0, kBdd), std::invalid_argument);
}

TEST_CASE("harmonic energy is even in kz2 and monotone")
{
  for (double kz2 : {0.25, 1.0, 2.5}) {
    CHECK(*harmonic_energy(2.0, 2.0, 0, 0, kz2, kBdd) ==
          doctest::Approx(*harmonic_energy(2.0, 2.0, 0, 0, -kz2, kBdd)).epsilon(1e-15));
  }
  // decreasing in |kz2|, increasing in n_rho for fixed kz2 != 0
  double prev = *harmonic_energy(2.0, 2.0, 0, 0, 0.0, kBdd);
  for (double kz2 : {0.5, 1.0, 2.0, 4.0}) {
    const double e = *harmonic_energy(2.0, 2.0, 0, 0, kz2, kBdd);
    CHECK(e < prev);
    prev = e;
  }
  prev = *harmonic_energy(2.0, 2.0, 0, 0, 1.0, kBdd);
  for (int n_rho : {1, 2, 3}) {
    const double e = *harmonic_energy(2.0, 2.0, 0, n_rho, 1.0, kBdd);
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("harmonic kz2 relation inverts the energy formula")
{
  CHECK(harmonic_kz2_relation(2.0, 2.0, 0.5, 0, 1.0) == 0.0);  // radicand vanishes
  CHECK(harmonic_kz2_relation(2.0, 2.0, 0.375, 0, 1.0) == doctest::Approx(-2.0).epsilon(1e-14));
  // a^2 - 4bE = 4, ell = 1, n = 1 -> -2 * 4
  CHECK(harmonic_kz2_relation(2.0, 2.0, 0.0, 1, 1.0) == doctest::Approx(-8.0).epsilon(1e-15));
  CHECK_THROWS_AS(harmonic_kz2_relation(2.0, 2.0, 1.0, 0, 1.0), std::invalid_argument);

  // round trip through harmonic_energy for negative kz2
  for (double kz2 : {-2.0, -1.0, -0.5}) {
    for (int n_rho : {0, 1}) {
      const double e = *harmonic_energy(2.0, 2.0, 0, n_rho, kz2, kBdd);
      CHECK(harmonic_kz2_relation(2.0, 2.0, e, n_rho, 1.0) ==
            doctest::Approx(kz2).epsilon(1e-12));
    }
  }
}

TEST_CASE("coulomb energy golden values and branch structure")
{
  // BenDanielDuke: ell_{-1} = 1/2, b~ = 1
  const auto plus = coulomb_energy(1.0, 2.0, 0, 0, 1.0, kBdd, Branch::plus);
  const auto minus = coulomb_energy(1.0, 2.0, 0, 0, 1.0, kBdd, Branch::minus);
  REQUIRE(plus.has_value());
  REQUIRE(minus.has_value());
  CHECK(*plus == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(*minus == doctest::Approx(-2.5).epsilon(1e-15));

  // kz = 0: constant shift on both branches
  CHECK(*coulomb_energy(1.0, 2.0, 0, 3, 0.0, kBdd, Branch::plus) ==
        doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(*coulomb_energy(1.0, 2.0, 0, 3, 0.0, kBdd, Branch::minus) ==
        doctest::Approx(-1.0).epsilon(1e-15));

  CHECK_FALSE(coulomb_energy(1.0, 2.0, 0, 0, 1.0, kGw, Branch::plus).has_value());
  CHECK_THROWS_AS(coulomb_energy(1.0, 2.0, 0, 0, 1.0, kBdd, Branch::none),
                  std::invalid_argument);
}

TEST_CASE("branch mirror symmetry about -A/b~")
{
  for (int m : {0, 1, 2}) {
    for (int n_rho : {0, 1, 3}) {
      for (double kz : {0.3, 1.0, 2.7}) {
        const auto p = coulomb_energy(1.0, 2.0, m, n_rho, kz, kBdd, Branch::plus);
        const auto q = coulomb_energy(1.0, 2.0, m, n_rho, kz, kBdd, Branch::minus);
        CHECK(*p + *q == doctest::Approx(-2.0).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("spectrum assembly: harmonic well reference")
{
  const QuantumRanges ranges{0, 1, 0, 0, 1, 2};
  const auto lines = assemble_spectrum(Family::harmonic, MassProfile(0.5, 2.0),
                                       HarmonicRadial{2.0}, InfiniteWell{M_PI}, kBdd, ranges);
  REQUIRE(lines.size() == 4);
  // lexicographic (n_rho, m, n_axial)
  CHECK(lines[0].qn.n_rho == 0);
  CHECK(lines[0].qn.n_axial == 1);
  CHECK(lines[1].qn.n_axial == 2);
  CHECK(lines[2].qn.n_rho == 1);

  CHECK(*lines[0].e_analytic == doctest::Approx(0.46875).epsilon(1e-15));
  CHECK(*lines[1].e_analytic == doctest::Approx(0.0));
  CHECK(*lines[2].e_analytic == doctest::Approx(0.4921875).epsilon(1e-15));
  CHECK(*lines[3].e_analytic == doctest::Approx(0.375).epsilon(1e-15));
  for (const auto& line : lines) {
    CHECK(line.branch == Branch::none);
    CHECK(line.constraint_ok);
    CHECK(line.axial_ok);
  }
}

TEST_CASE("spectrum assembly: coulomb well has mirrored branch pairs")
{
  const QuantumRanges ranges{0, 1, 0, 0, 1, 2};
  const auto lines = assemble_spectrum(Family::coulomb, MassProfile(-1.0, 2.0),
                                       CoulombRadial{1.0}, InfiniteWell{M_PI}, kBdd, ranges);
  REQUIRE(lines.size() == 8);
  for (std::size_t i = 0; i < lines.size(); i += 2) {
    CHECK(lines[i].branch == Branch::plus);
    CHECK(lines[i + 1].branch == Branch::minus);
    CHECK(lines[i].qn.n_rho == lines[i + 1].qn.n_rho);
    CHECK(*lines[i].e_analytic + *lines[i + 1].e_analytic ==
          doctest::Approx(-2.0).epsilon(1e-13));
  }
  CHECK(*lines[0].e_analytic == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(*lines[1].e_analytic == doctest::Approx(-2.5).epsilon(1e-14));
}

TEST_CASE("spectrum assembly: coulomb Morse uses sqrt(kz2) and marks complex pairs")
{
  const QuantumRanges ranges{0, 0, 0, 0, 0, 2};
  const auto lines = assemble_spectrum(Family::coulomb, MassProfile(-1.0, 2.0),
                                       CoulombRadial{1.0}, MorseAxial{4.0, 1.0}, kBdd, ranges);
  REQUIRE(lines.size() == 6);
  // n~ = 0: kz2 = 3/2, E+ = sqrt(1.5) (0 + 1/2 + 1) - 1
  CHECK(*lines[0].e_analytic == doctest::Approx(std::sqrt(1.5) * 1.5 - 1.0).epsilon(1e-14));
  // n~ = 2: kz2 = -1/2 -> no real closed-form energy, flagged
  CHECK(lines[4].qn.n_axial == 2);
  CHECK_FALSE(lines[4].axial_ok);
  CHECK_FALSE(lines[4].e_analytic.has_value());
  CHECK(lines[4].has_flag("complex_pair"));
}

TEST_CASE("spectrum assembly: Gora-Williams rows carry the complex marker")
{
  const QuantumRanges ranges{0, 0, 0, 1, 1, 1};
  const auto lines = assemble_spectrum(Family::harmonic, MassProfile(0.5, 2.0),
                                       HarmonicRadial{2.0}, InfiniteWell{M_PI}, kGw, ranges);
  REQUIRE(lines.size() == 2);
  CHECK_FALSE(lines[0].constraint_ok);  // m = 0 violates the constraint
  CHECK_FALSE(lines[0].e_analytic.has_value());
  CHECK(lines[0].has_flag("complex_energy"));
  CHECK(lines[1].constraint_ok);  // m = 1 passes
  CHECK(lines[1].e_analytic.has_value());
}

TEST_CASE("spectrum assembly rejects inconsistent pairings")
{
  const QuantumRanges ranges{0, 0, 0, 0, 1, 1};
  CHECK_THROWS_AS(assemble_spectrum(Family::harmonic, MassProfile(-1.0, 2.0), HarmonicRadial{2.0},
                                    InfiniteWell{1.0}, kBdd, ranges),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble_spectrum(Family::harmonic, MassProfile(0.5, 2.0), CoulombRadial{1.0},
                                    InfiniteWell{1.0}, kBdd, ranges),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble_spectrum(Family::coulomb, MassProfile(-1.0, 2.0), CoulombRadial{1.0},
                                    FreeAxial{}, kBdd, ranges),
                  std::invalid_argument);
  const QuantumRanges bad_well{0, 0, 0, 0, 0, 1};
  CHECK_THROWS_AS(assemble_spectrum(Family::harmonic, MassProfile(0.5, 2.0), HarmonicRadial{2.0},
                                    InfiniteWell{1.0}, kBdd, bad_well),
                  std::invalid_argument);
}
