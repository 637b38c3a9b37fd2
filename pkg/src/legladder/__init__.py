"""Ladder-operator calculus for normalized associated Legendre functions
and spherical harmonics: exact generator actions on (l, m) coefficient
space, differential realizations on Gauss-Legendre grids, per-channel
Legendre transforms, spherical analysis/synthesis, and verification suites
for the identities tying them together."""

__version__ = "0.1.0"

from .modes import CoeffVector, ModeIndex, Truncation, is_admissible, lattice
from .alp import (GridFunction, QuadratureRule, eval_T, eval_T_derivative,
                  eval_T_second, gauss_legendre, phase_relation_check,
                  sample_T)
from .algebra import (DIAGONAL_GENERATORS, GENERATORS, SparseOperator,
                      anticommutator, apply, casimir, casimir_eigenvalue,
                      commutator, element, generate_mode, generator,
                      spectrum)
from .diffops import (apply_diff, ladder_diff_consistency,
                      legendre_ode_residual, ode_residual_from_casimir,
                      x_dx_commutator_residual)
from .transforms import (ChannelSpectrum, analyze, coeffs_to_spectrum,
                         completeness_kernel, inner_product, parseval_check,
                         spectrum_to_coeffs, synthesize)
from .sphere import (SphereField, SphereGrid, apply_primed, eval_Y, sample_Y,
                     sht_analyze, sht_synthesize, standard_grid)
from .verify import run_all, run_suite

__all__ = [
    "CoeffVector", "ModeIndex", "Truncation", "is_admissible", "lattice",
    "GridFunction", "QuadratureRule", "eval_T", "eval_T_derivative",
    "eval_T_second", "gauss_legendre", "phase_relation_check", "sample_T",
    "DIAGONAL_GENERATORS", "GENERATORS", "SparseOperator", "anticommutator",
    "apply", "casimir", "casimir_eigenvalue", "commutator", "element",
    "generate_mode", "generator", "spectrum",
    "apply_diff", "ladder_diff_consistency", "legendre_ode_residual",
    "ode_residual_from_casimir", "x_dx_commutator_residual",
    "ChannelSpectrum", "analyze", "coeffs_to_spectrum", "completeness_kernel",
    "inner_product", "parseval_check", "spectrum_to_coeffs", "synthesize",
    "SphereField", "SphereGrid", "apply_primed", "eval_Y", "sample_Y",
    "sht_analyze", "sht_synthesize", "standard_grid",
    "run_all", "run_suite",
]
