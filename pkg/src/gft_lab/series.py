"""Truncated power series over the complex numbers.

A series of order N stores c_0..c_N and represents sum c_k z^k mod z^(N+1).
The ``series_*`` kernels work on plain numpy arrays whose last axis is the
coefficient axis, so the same recursions drive both single series and the
batched evaluations used by the supremum search. ``TruncatedSeries`` is a
thin immutable wrapper around one coefficient vector.
"""

from __future__ import annotations

from typing import Iterable, Union

import numpy as np

DEFAULT_ORDER = 12

Number = Union[int, float, complex]


class SeriesError(ValueError):
    """Base class for rejected series inputs."""


class OrderMismatch(SeriesError):
    pass


class SingularSeries(SeriesError, ZeroDivisionError):
    """Raised when a constant term that must be nonzero vanishes."""


# --------------------------------------------------------------------------
# array kernels (last axis = coefficients)
# --------------------------------------------------------------------------


def series_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Cauchy product truncated to the common order."""
    n1 = a.shape[-1]
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=complex)
    for i in range(n1):
        out[..., i:] += a[..., i : i + 1] * b[..., : n1 - i]
    return out


def series_div(s: np.ndarray, t: np.ndarray) -> np.ndarray:
    t0 = t[..., 0]
    if np.any(t0 == 0):
        raise SingularSeries("divisor has zero constant term")
    n1 = s.shape[-1]
    q = np.zeros(np.broadcast_shapes(s.shape, t.shape), dtype=complex)
    for k in range(n1):
        acc = s[..., k].astype(complex)
        for i in range(k):
            acc = acc - q[..., i] * t[..., k - i]
        q[..., k] = acc / t0
    return q


def series_exp(s: np.ndarray) -> np.ndarray:
    # E' = s' E  =>  k E_k = sum_{j=1..k} j s_j E_{k-j}
    n1 = s.shape[-1]
    e = np.zeros(s.shape, dtype=complex)
    e[..., 0] = np.exp(s[..., 0])
    for k in range(1, n1):
        acc = np.zeros(s.shape[:-1], dtype=complex)
        for j in range(1, k + 1):
            acc = acc + j * s[..., j] * e[..., k - j]
        e[..., k] = acc / k
    return e


def series_log(s: np.ndarray) -> np.ndarray:
    # L' = s'/s  =>  k s_0 L_k = k s_k - sum_{j=1..k-1} j L_j s_{k-j}
    s0 = s[..., 0]
    if np.any(s0 == 0):
        raise SingularSeries("logarithm of a series with zero constant term")
    n1 = s.shape[-1]
    out = np.zeros(s.shape, dtype=complex)
    out[..., 0] = np.log(s0.astype(complex))
    for k in range(1, n1):
        acc = k * s[..., k].astype(complex)
        for j in range(1, k):
            acc = acc - j * out[..., j] * s[..., k - j]
        out[..., k] = acc / (k * s0)
    return out


def series_compose(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    if np.any(inner[..., 0] != 0):
        raise SeriesError("inner series must vanish at 0")
    n1 = outer.shape[-1]
    shape = np.broadcast_shapes(outer.shape, inner.shape)
    out = np.zeros(shape, dtype=complex)
    out[..., 0] = outer[..., n1 - 1]
    for k in range(n1 - 2, -1, -1):
        out = series_mul(out, inner)
        out[..., 0] += outer[..., k]
    return out


def series_deriv(s: np.ndarray) -> np.ndarray:
    n1 = s.shape[-1]
    out = np.zeros(s.shape, dtype=complex)
    out[..., : n1 - 1] = s[..., 1:] * np.arange(1, n1)
    return out


# --------------------------------------------------------------------------
# value type
# --------------------------------------------------------------------------


class TruncatedSeries:
    """Immutable complex coefficient vector c_0..c_N."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Number], order: int | None = None):
        c = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs, dtype=complex)
        if c.ndim != 1:
            raise SeriesError("coefficients must be one-dimensional")
        if order is not None:
            if order < 0:
                raise SeriesError("order must be non-negative")
            if c.size > order + 1:
                c = c[: order + 1]
            elif c.size < order + 1:
                c = np.concatenate([c, np.zeros(order + 1 - c.size, dtype=complex)])
        if c.size == 0:
            raise SeriesError("a series needs at least one coefficient")
        c = c.copy()
        c.setflags(write=False)
        self._c = c

    @classmethod
    def constant(cls, value: Number, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls([value], order)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls([0], order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, k: int, order: int = DEFAULT_ORDER, coeff: Number = 1) -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=complex)
        if k <= order:
            c[k] = coeff
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def __len__(self) -> int:
        return self._c.size

    def __getitem__(self, k):
        return self._c[k]

    def __iter__(self):
        return iter(self._c)

    def __repr__(self) -> str:
        return f"TruncatedSeries({self._c.tolist()!r})"

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self._c, order)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self._c)))

    def max_abs_diff(self, other: "TruncatedSeries") -> float:
        _check_orders(self, other)
        return float(np.max(np.abs(self._c - other._c)))

    def __call__(self, z):
        """Horner evaluation of the truncated polynomial."""
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z) + self._c[-1]
        for c in self._c[-2::-1]:
            acc = acc * z + c
        return acc

    # arithmetic sugar
    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return add(self, other)
        return TruncatedSeries(self._c + np.r_[other, np.zeros(self.order)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self._c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return TruncatedSeries(self._c * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return div(self, other)
        return TruncatedSeries(self._c / other)


def _check_orders(s: TruncatedSeries, t: TruncatedSeries) -> None:
    if s.order != t.order:
        raise OrderMismatch(f"orders differ: {s.order} vs {t.order}")


def add(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    _check_orders(s, t)
    return TruncatedSeries(s.coeffs + t.coeffs)


def mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    _check_orders(s, t)
    return TruncatedSeries(series_mul(s.coeffs, t.coeffs))


def div(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    _check_orders(s, t)
    return TruncatedSeries(series_div(s.coeffs, t.coeffs))


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner(z)); inner must vanish at the origin."""
    _check_orders(outer, inner)
    return TruncatedSeries(series_compose(outer.coeffs, inner.coeffs))


def exp_series(s: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(series_exp(s.coeffs))


def log_series(s: TruncatedSeries) -> TruncatedSeries:
    """Principal-branch logarithm; log(1) = 0 when s_0 = 1."""
    return TruncatedSeries(series_log(s.coeffs))


def derivative(s: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(series_deriv(s.coeffs))


def exp_taylor(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Coefficients 1/k! of exp(x), for use as an ``outer`` in compose."""
    c = [1.0]
    for k in range(1, order + 1):
        c.append(c[-1] / k)
    return TruncatedSeries(c)

