"""Exact eigenvalue order statistics of reduced density matrices.

For a bipartite system with subsystem dimensions m <= n in the Gaussian
ensemble of random complex pure states, this package derives the exact
probability density of every ordered eigenvalue of the reduced density
matrix in arbitrary-precision rational arithmetic, computes moments and
cumulant descriptors, and validates everything against a seeded Monte Carlo
ensemble simulator.
"""

from .exactnum import Poly, Rational, decimal_str
from .laplace import cdf_monotone_check, det_psi, inverse_laplace, largest_pdf, psi_entry
from .ordstat import (
    SpectrumFamily,
    SystemDims,
    coeff_poly,
    family_moment_check,
    order_statistic_pdf,
    purity_expectation,
    smallest_moment,
    smallest_pdf,
    spectrum_family,
    trace_moment,
)
from .steppoly import DescriptorSet, StepPolyDensity, StepTerm
from .ensemble import EnsembleStats, compare, reduced_spectrum, run_ensemble, sample_state

__version__ = "1.0.0"

__all__ = [
    "Poly",
    "Rational",
    "decimal_str",
    "psi_entry",
    "det_psi",
    "inverse_laplace",
    "largest_pdf",
    "cdf_monotone_check",
    "SystemDims",
    "SpectrumFamily",
    "smallest_pdf",
    "smallest_moment",
    "coeff_poly",
    "order_statistic_pdf",
    "spectrum_family",
    "trace_moment",
    "family_moment_check",
    "purity_expectation",
    "StepTerm",
    "StepPolyDensity",
    "DescriptorSet",
    "EnsembleStats",
    "sample_state",
    "reduced_spectrum",
    "run_ensemble",
    "compare",
]
