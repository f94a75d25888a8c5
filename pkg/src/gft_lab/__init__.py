"""Numerical laboratory for the exponential starlike and convex classes.

Members of S*_ex and C_ex are generated from Schwarz functions through the
subordination equations zf'/f = exp(alpha*w) and 1 + zf''/f' = exp(alpha*w).
The package evaluates logarithmic coefficients and their Hankel/Toeplitz
determinants and checks the published bounds numerically.
"""

from gft_lab.series import TruncatedSeries
from gft_lab.caratheodory import KernelMixture, TauTriple
from gft_lab.classes import ClassKind, ClassTag, ClassMember, build_member, extremal
from gft_lab.functionals import LogCoeffs, log_coeffs, hankel, toeplitz

__all__ = [
    "TruncatedSeries",
    "KernelMixture",
    "TauTriple",
    "ClassKind",
    "ClassTag",
    "ClassMember",
    "build_member",
    "extremal",
    "LogCoeffs",
    "log_coeffs",
    "hankel",
    "toeplitz",
]

__version__ = "0.1.0"
