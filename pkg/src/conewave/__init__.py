"""Orthogonal-series solver for the wave equation on the cone ||x|| <= c t.

The forcing e^{-t} f is expanded in the mu = 0 cone orthogonal polynomials,
the coefficients are transferred to the Sobolev-orthogonal mu = -1 family, and
U = e^{-t} u is synthesised.  Everything exact runs on :class:`MultiPoly`.
"""

from .analysis import CoefficientSet, analyze_exact, analyze_quadrature, smoothness_functional
from .conebasis import BasisSpec, ConeIndex, Q, Q_norm, convert_m1_to_0, enumerate_indices
from .expr import parse_expr, parse_poly
from .polyalg import MultiPoly, Surd, conjugated_wave, eigen_operator, laplace_x, operator_D
from .wavesolver import (
    SolutionSeries,
    amn_bound_check,
    rescale_speed,
    residual_report,
    solve_coefficients,
    synthesize,
)

__all__ = [
    "BasisSpec",
    "CoefficientSet",
    "ConeIndex",
    "MultiPoly",
    "Q",
    "Q_norm",
    "SolutionSeries",
    "Surd",
    "amn_bound_check",
    "analyze_exact",
    "analyze_quadrature",
    "conjugated_wave",
    "convert_m1_to_0",
    "eigen_operator",
    "enumerate_indices",
    "laplace_x",
    "operator_D",
    "parse_expr",
    "parse_poly",
    "rescale_speed",
    "residual_report",
    "smoothness_functional",
    "solve_coefficients",
    "synthesize",
]

__version__ = "0.1.0"
