"""Logarithmic coefficients and their Hankel / Toeplitz determinants.

gamma_n is half the n-th coefficient of log(f(z)/z). Indexing is 1-based
everywhere in the public surface; ``LogCoeffs.gamma[0]`` holds gamma_1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from gft_lab.caratheodory import TauTriple
from gft_lab.classes import ClassKind, ClassMember, ClassTag
from gft_lab.series import series_log


class InsufficientOrder(ValueError):
    pass


@dataclass(frozen=True)
class LogCoeffs:
    gamma: np.ndarray
    source: ClassMember | None = None

    @property
    def m(self) -> int:
        return self.gamma.size

    def __getitem__(self, n: int) -> complex:
        if not 1 <= n <= self.m:
            raise InsufficientOrder(f"gamma_{n} not available (have 1..{self.m})")
        return complex(self.gamma[n - 1])


class DeterminantKind(str, enum.Enum):
    HANKEL = "hankel"
    TOEPLITZ = "toeplitz"


@dataclass(frozen=True)
class DeterminantValue:
    kind: DeterminantKind
    q: int
    n: int
    value: complex


def batch_log_coeffs(a: np.ndarray, m: int) -> np.ndarray:
    """gamma_1..gamma_m for rows of Taylor coefficients a_0..a_N (a_1 = 1)."""
    if a.shape[-1] < m + 2:
        raise InsufficientOrder(f"need a_1..a_{m + 1}, have order {a.shape[-1] - 1}")
    f_over_z = a[..., 1 : m + 2]
    return 0.5 * series_log(f_over_z)[..., 1:]


def log_coeffs(member: ClassMember, m: int | None = None) -> LogCoeffs:
    if m is None:
        m = member.order - 1
    if m < 1 or member.order < m + 1:
        raise InsufficientOrder(f"member of order {member.order} cannot give gamma_1..gamma_{m}")
    return LogCoeffs(batch_log_coeffs(member.a.coeffs, m), member)


def log_coeffs_closed(a2, a3, a4, a5) -> tuple[complex, complex, complex, complex]:
    return (
        a2 / 2,
        (a3 - a2**2 / 2) / 2,
        (a4 - a2 * a3 + a2**3 / 3) / 2,
        (a5 - a2 * a4 + a2**2 * a3 - a3**2 / 2 - a2**4 / 4) / 2,
    )


def det(mat: np.ndarray) -> np.ndarray:
    """Determinant over the last two axes: cofactors for q <= 3, LU beyond."""
    q = mat.shape[-1]
    if q == 1:
        return mat[..., 0, 0]
    if q == 2:
        return mat[..., 0, 0] * mat[..., 1, 1] - mat[..., 0, 1] * mat[..., 1, 0]
    if q == 3:
        m = mat
        return (m[..., 0, 0] * (m[..., 1, 1] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 1])
                - m[..., 0, 1] * (m[..., 1, 0] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 0])
                + m[..., 0, 2] * (m[..., 1, 0] * m[..., 2, 1] - m[..., 1, 1] * m[..., 2, 0]))
    return np.linalg.det(mat)


def hankel_matrix(gamma: np.ndarray, q: int, n: int) -> np.ndarray:
    # entry (i, j), 0-based, is gamma_{n+i+j}
    need = n + 2 * q - 2
    if q < 1 or n < 1 or gamma.shape[-1] < need:
        raise InsufficientOrder(f"H_{{{q},{n}}} needs gamma_1..gamma_{need}")
    idx = n - 1 + np.add.outer(np.arange(q), np.arange(q))
    return gamma[..., idx]


def toeplitz_matrix(gamma: np.ndarray, q: int, n: int) -> np.ndarray:
    need = n + q - 1
    if q < 1 or n < 1 or gamma.shape[-1] < need:
        raise InsufficientOrder(f"T_{{{q},{n}}} needs gamma_1..gamma_{need}")
    idx = n - 1 + np.abs(np.subtract.outer(np.arange(q), np.arange(q)))
    return gamma[..., idx]


def hankel(gamma: LogCoeffs, q: int, n: int) -> DeterminantValue:
    value = det(hankel_matrix(gamma.gamma, q, n))
    return DeterminantValue(DeterminantKind.HANKEL, q, n, complex(value))


def toeplitz(gamma: LogCoeffs, q: int, n: int) -> DeterminantValue:
    value = det(toeplitz_matrix(gamma.gamma, q, n))
    return DeterminantValue(DeterminantKind.TOEPLITZ, q, n, complex(value))


def hankel21_closed(tag: ClassTag, *, c=None, tau: TauTriple | None = None) -> complex:
    """H_{2,1} from c_1..c_3 or, for real tau_1 in [0, 1], from the tau triple."""
    al = tag.alpha
    if (c is None) == (tau is None):
        raise ValueError("pass exactly one of c or tau")
    if c is not None:
        c1, c2, c3 = (complex(v) for v in c[:3])
        if tag.kind is ClassKind.STARLIKE:
            return al**2 / 9216 * (192 * c1 * c3 - 144 * c2**2 - 24 * (2 - al) * c1**2 * c2
                                   + (-al**2 - 12 * al + 12) * c1**4)
        return al**2 / 36864 * (96 * c1 * c3 - 64 * c2**2 - 8 * (4 - 3 * al) * c1**2 * c2
                                + (al**2 - 12 * al + 8) * c1**4)

    # the tau forms assume tau_1 rotated onto [0, 1]
    if abs(tau.tau1.imag) > 1e-15 or not 0 <= tau.tau1.real <= 1:
        raise ValueError("the tau form needs real tau_1 in [0, 1]")
    t1, t2, t3 = tau.tau1.real, tau.tau2, tau.tau3
    r1 = 1 - t1**2
    r2 = 1 - abs(t2) ** 2
    if tag.kind is ClassKind.STARLIKE:
        return al**2 / 576 * (-al**2 * t1**4 + 12 * al * r1 * t1**2 * t2
                              + 48 * r1 * r2 * t1 * t3 - 12 * r1 * (3 + t1**2) * t2**2)
    return al**2 / 2304 * (al**2 * t1**4 + 12 * al * r1 * t1**2 * t2
                           + 24 * r1 * r2 * t1 * t3 - 8 * r1 * (2 + t1**2) * t2**2)


def toeplitz21_closed(tag: ClassTag, c1, c2) -> complex:
    al = tag.alpha
    c1, c2 = complex(c1), complex(c2)
    if tag.kind is ClassKind.STARLIKE:
        return al**2 / 1024 * (64 * c1**2 - 16 * c2**2 + 8 * (2 - al) * c1**2 * c2
                               - (al**2 - 4 * al + 4) * c1**4)
    return al**2 / 36864 * (576 * c1**2 - 64 * c2**2 + 16 * (4 - 3 * al) * c1**2 * c2
                            - (9 * al**2 - 24 * al + 16) * c1**4)
