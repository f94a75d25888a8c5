"""Members of S*_ex and C_ex built from Schwarz data.

Both classes reduce to one recursion. With g = exp(alpha*w) the starlike
condition z f'/f = g becomes z F' = F (g - 1) for F = f/z, and the convex
condition 1 + z f''/f' = g becomes z h' = h (g - 1) for h = f'. The
recursion n H_n = sum_{j=1..n} (g - 1)_j H_{n-j}, H_0 = 1, solves both.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from gft_lab.caratheodory import schwarz_from_p
from gft_lab.series import (
    DEFAULT_ORDER,
    SeriesError,
    TruncatedSeries,
    series_div,
    series_exp,
)


class ClassKind(str, enum.Enum):
    STARLIKE = "starlike"
    CONVEX = "convex"


@dataclass(frozen=True)
class ClassTag:
    kind: ClassKind
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "kind", ClassKind(self.kind))
        a = float(self.alpha)
        if not (0.0 < a <= 1.0):
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)


@dataclass(frozen=True)
class ClassMember:
    tag: ClassTag
    omega: TruncatedSeries
    a: TruncatedSeries = field(repr=False)

    @property
    def order(self) -> int:
        return self.a.order

    def coefficient(self, n: int) -> complex:
        return complex(self.a.coeffs[n])

    def subordination_residual(self) -> float:
        """Max coefficient gap between the defining quotient and exp(alpha*w).

        Only orders 0..N-1 are compared; the quotient loses the top
        coefficient when f is divided by z.
        """
        n = self.order
        a = self.a.coeffs
        k = np.arange(n + 1)
        g = series_exp(self.tag.alpha * self.omega.coeffs)[:n]
        if self.tag.kind is ClassKind.STARLIKE:
            f_over_z = a[1:]
            zfp_over_z = (k * a)[1:]
            lhs = series_div(zfp_over_z, f_over_z)
        else:
            fp = (k * a)[1:]
            zfpp = (k * (k - 1) * a)[1:]
            lhs = series_div(fp + zfpp, fp)
        return float(np.max(np.abs(lhs - g)))


def solve_log_derivative(gm1: np.ndarray) -> np.ndarray:
    """H with H_0 = 1 and z H' = H * gm1; gm1 must vanish at 0 (batched)."""
    n1 = gm1.shape[-1]
    h = np.zeros(gm1.shape, dtype=complex)
    h[..., 0] = 1.0
    for n in range(1, n1):
        acc = np.zeros(gm1.shape[:-1], dtype=complex)
        for j in range(1, n + 1):
            acc = acc + gm1[..., j] * h[..., n - j]
        h[..., n] = acc / n
    return h


def batch_member_coeffs(kind: ClassKind, alpha: float, omega: np.ndarray) -> np.ndarray:
    """Taylor coefficients a_0..a_N of f for a batch of Schwarz coefficient rows."""
    gm1 = series_exp(alpha * omega)
    gm1[..., 0] -= 1.0
    hh = solve_log_derivative(gm1)
    a = np.zeros(omega.shape, dtype=complex)
    if ClassKind(kind) is ClassKind.STARLIKE:
        a[..., 1:] = hh[..., :-1]
    else:
        n = np.arange(1, omega.shape[-1])
        a[..., 1:] = hh[..., :-1] / n
    return a


def batch_coeffs_from_p(kind: ClassKind, alpha: float, p: np.ndarray) -> np.ndarray:
    """Same as ``batch_member_coeffs`` but starting from rows of p-coefficients."""
    num = p.copy()
    num[..., 0] = 0.0
    den = p.copy()
    den[..., 0] = 2.0
    return batch_member_coeffs(kind, alpha, series_div(num, den))


def build_member(tag: ClassTag, omega: TruncatedSeries, n_max: int | None = None) -> ClassMember:
    if omega.coeffs[0] != 0:
        raise SeriesError("the Schwarz function must vanish at the origin")
    if n_max is None:
        n_max = omega.order
    omega = omega.truncate(n_max)
    a = batch_member_coeffs(tag.kind, tag.alpha, omega.coeffs)
    return ClassMember(tag, omega, TruncatedSeries(a))


def member_from_p(tag: ClassTag, p: TruncatedSeries, n_max: int | None = None) -> ClassMember:
    return build_member(tag, schwarz_from_p(p), n_max)


def closed_form_a(tag: ClassTag, c) -> tuple[complex, complex, complex, complex]:
    """a_2..a_5 as polynomials in the Carathéodory coefficients c_1..c_4."""
    c1, c2, c3, c4 = (complex(v) for v in c)
    al = tag.alpha
    if tag.kind is ClassKind.STARLIKE:
        a2 = al / 2 * c1
        a3 = al / 4 * c2 + al / 16 * (3 * al - 2) * c1**2
        a4 = (al / 6 * c3 + al / 24 * (5 * al - 4) * c1 * c2
              + al / 288 * (17 * al**2 - 30 * al + 12) * c1**3)
        a5 = (al / 8 * c4 + al / 16 * (al - 1) * c2**2 + al / 48 * (7 * al - 6) * c1 * c3
              + al / 96 * (10 * al**2 - 20 * al + 9) * c1**2 * c2
              + al / 1152 * (19 * al**3 - 60 * al**2 + 60 * al - 18) * c1**4)
    else:
        a2 = al / 4 * c1
        a3 = al / 12 * c2 + al / 48 * (3 * al - 2) * c1**2
        a4 = (al / 24 * c3 + al / 96 * (5 * al - 4) * c1 * c2
              + al / 1152 * (17 * al**2 - 30 * al + 12) * c1**3)
        a5 = (al / 40 * c4 + al / 80 * (al - 1) * c2**2 + al / 240 * (7 * al - 6) * c1 * c3
              + al / 480 * (10 * al**2 - 20 * al + 9) * c1**2 * c2
              + al / 5760 * (19 * al**3 - 60 * al**2 + 60 * al - 18) * c1**4)
    return a2, a3, a4, a5


def extremal_exponent(k: int) -> tuple[ClassKind, int]:
    if k not in range(1, 9):
        raise ValueError(f"extremal index must be in 1..8, got {k!r}")
    if k <= 4:
        return ClassKind.STARLIKE, k
    return ClassKind.CONVEX, k - 4


def extremal(k: int, alpha: float, n_max: int = DEFAULT_ORDER) -> ClassMember:
    """f_k generated by p(z) = (1 + z^j)/(1 - z^j), i.e. w(z) = z^j.

    j = k for the starlike witnesses f_1..f_4 and j = k - 4 for the convex
    witnesses f_5..f_8.
    """
    kind, j = extremal_exponent(k)
    return build_member(ClassTag(kind, alpha), TruncatedSeries.monomial(j, n_max))
