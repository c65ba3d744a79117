"""Spectra of radial power-law position-dependent-mass models.

Thin wrapper over the compiled extension; see the individual functions'
docstrings in pdmspec._core.
"""

from ._core import (
    __version__,
    axial_morse_kz2,
    axial_rosen_morse_kz2,
    axial_well_kz2,
    classify_separability,
    coulomb_energy,
    ell_tilde,
    ell_tilde_rescaled_special,
    harmonic_energy,
    harmonic_kz2_relation,
    identity_residuals,
    mass_at,
    morse_reference_energy,
    named_ordering,
    ordering_sets,
    reality_ok_coulomb,
    reality_ok_harmonic,
    rosen_morse_C,
    run_spectrum,
    run_verify,
    solve_axial,
    solve_radial_linear,
    solve_selfconsistent_energy,
    zeta,
    zeta_minus_beta,
)

__all__ = [
    "__version__",
    "axial_morse_kz2",
    "axial_rosen_morse_kz2",
    "axial_well_kz2",
    "classify_separability",
    "coulomb_energy",
    "ell_tilde",
    "ell_tilde_rescaled_special",
    "harmonic_energy",
    "harmonic_kz2_relation",
    "identity_residuals",
    "mass_at",
    "morse_reference_energy",
    "named_ordering",
    "ordering_sets",
    "reality_ok_coulomb",
    "reality_ok_harmonic",
    "rosen_morse_C",
    "run_spectrum",
    "run_verify",
    "solve_axial",
    "solve_radial_linear",
    "solve_selfconsistent_energy",
    "zeta",
    "zeta_minus_beta",
]
