"""Carathéodory functions p(0)=1, Re p > 0 and their Schwarz functions.

Two exact parametrizations are provided:

* ``KernelMixture``: p(z) = sum_j lam_j (1 + x_j z)/(1 - x_j z) with |x_j| = 1,
  giving c_n = 2 sum_j lam_j x_j^n. Mixtures of at most five kernels reach
  every attainable (c_1, .., c_4), which makes them the search space.
* ``TauTriple``: the (tau_1, tau_2, tau_3) description of c_1..c_3 together
  with the unique extremal rational p on the boundary regimes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from gft_lab.series import DEFAULT_ORDER, SeriesError, TruncatedSeries, series_div

UNIT_TOL = 1e-12


class InvalidSpec(ValueError):
    pass


@dataclass(frozen=True)
class KernelMixture:
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.points, dtype=complex)).copy()
        lam = np.atleast_1d(np.asarray(self.weights, dtype=float)).copy()
        if x.ndim != 1 or x.shape != lam.shape or x.size < 1:
            raise InvalidSpec("points and weights must be 1-d arrays of equal, nonzero length")
        if np.any(np.abs(np.abs(x) - 1.0) > UNIT_TOL):
            raise InvalidSpec("kernel points must be unimodular")
        if np.any(lam < 0) or not np.all(np.isfinite(lam)):
            raise InvalidSpec("weights must be non-negative")
        if abs(lam.sum() - 1.0) > UNIT_TOL:
            raise InvalidSpec(f"weights must sum to 1 (got {lam.sum()!r})")
        x.setflags(write=False)
        lam.setflags(write=False)
        object.__setattr__(self, "points", x)
        object.__setattr__(self, "weights", lam)

    @classmethod
    def from_angles(cls, angles, weights) -> "KernelMixture":
        return cls(np.exp(1j * np.asarray(angles, dtype=float)), weights)

    @property
    def m(self) -> int:
        return self.points.size

    @property
    def angles(self) -> np.ndarray:
        return np.mod(np.angle(self.points), 2 * np.pi)

    def __call__(self, z):
        """Exact evaluation of the rational p (no truncation)."""
        z = np.asarray(z, dtype=complex)[..., None]
        return np.sum(self.weights * (1 + self.points * z) / (1 - self.points * z), axis=-1)


@dataclass(frozen=True)
class TauTriple:
    tau1: complex
    tau2: complex = 0
    tau3: complex = 0

    def __post_init__(self):
        for name in ("tau1", "tau2", "tau3"):
            v = complex(getattr(self, name))
            if not np.isfinite(v) or abs(v) > 1 + UNIT_TOL:
                raise InvalidSpec(f"|{name}| must be at most 1")
            object.__setattr__(self, name, v)

    def regime(self) -> int | None:
        """Index of the Lemma 2.4 uniqueness regime, or None for interior triples."""
        on = lambda t: abs(abs(t) - 1) <= UNIT_TOL
        if on(self.tau1):
            return 1
        if on(self.tau2):
            return 2
        if on(self.tau3):
            return 3
        return None


CaratheodorySpec = Union[KernelMixture, TauTriple]


def kernel_coeffs(spec: KernelMixture, n_max: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Series 1 + sum c_n z^n with c_n = 2 sum lam_j x_j^n."""
    if not isinstance(spec, KernelMixture):
        raise InvalidSpec("kernel_coeffs expects a KernelMixture")
    c = batch_kernel_coeffs(spec.points[None, :], spec.weights[None, :], n_max)[0]
    return TruncatedSeries(c)


def batch_kernel_coeffs(points: np.ndarray, weights: np.ndarray, n_max: int) -> np.ndarray:
    """Rows of p-coefficients for a batch of mixtures; shapes (B, m) -> (B, n_max+1)."""
    powers = points[..., None] ** np.arange(n_max + 1)
    c = 2 * np.sum(weights[..., None] * powers, axis=-2)
    c[..., 0] = 1.0
    return c


def tau_coeffs(spec: TauTriple) -> tuple[complex, complex, complex]:
    t1, t2, t3 = spec.tau1, spec.tau2, spec.tau3
    r1 = 1 - abs(t1) ** 2
    r2 = 1 - abs(t2) ** 2
    c1 = 2 * t1
    c2 = 2 * t1**2 + 2 * r1 * t2
    c3 = 2 * t1**3 + 4 * r1 * t1 * t2 - 2 * r1 * t1.conjugate() * t2**2 + 2 * r1 * r2 * t3
    return c1, c2, c3


def tau_rational(spec: TauTriple) -> tuple[np.ndarray, np.ndarray]:
    """Numerator and denominator coefficients of the unique p for a boundary triple."""
    t1, t2, t3 = spec.tau1, spec.tau2, spec.tau3
    b1, b2 = t1.conjugate(), t2.conjugate()
    regime = spec.regime()
    if regime == 1:
        return np.array([1, t1]), np.array([1, -t1])
    if regime == 2:
        num = [1, b1 * t2 + t1, t2]
        den = [1, b1 * t2 - t1, -t2]
        return np.array(num), np.array(den)
    if regime == 3:
        num = [1, b2 * t3 + b1 * t2 + t1, b1 * t3 + t1 * b2 * t3 + t2, t3]
        den = [1, b2 * t3 + b1 * t2 - t1, b1 * t3 - t1 * b2 * t3 - t2, -t3]
        return np.array(num), np.array(den)
    raise InvalidSpec("interior tau triple does not determine p beyond c_3")


def tau_function(spec: TauTriple, n_max: int = DEFAULT_ORDER) -> TruncatedSeries:
    num, den = tau_rational(spec)
    s = TruncatedSeries(num, n_max)
    t = TruncatedSeries(den, n_max)
    return TruncatedSeries(series_div(s.coeffs, t.coeffs))


def evaluate_rational(num: np.ndarray, den: np.ndarray, z):
    z = np.asarray(z, dtype=complex)
    return np.polyval(num[::-1], z) / np.polyval(den[::-1], z)


def schwarz_from_p(p: TruncatedSeries) -> TruncatedSeries:
    """w = (p - 1)/(p + 1), so that p = (1 + w)/(1 - w)."""
    if p.coeffs[0] != 1:
        raise SeriesError("p must satisfy p(0) = 1")
    num = p.coeffs.copy()
    num[0] = 0
    den = p.coeffs.copy()
    den[0] = 2
    return TruncatedSeries(series_div(num, den))


def p_from_schwarz(w: TruncatedSeries) -> TruncatedSeries:
    if w.coeffs[0] != 0:
        raise SeriesError("w must vanish at 0")
    num = w.coeffs.copy()
    num[0] = 1
    den = -w.coeffs
    den[0] = 1
    return TruncatedSeries(series_div(num, den))


def sample_mixture(m: int, rng_seed) -> KernelMixture:
    """Uniform kernel points, Dirichlet(1,..,1) weights; deterministic in the seed."""
    if not 1 <= m <= 6:
        raise InvalidSpec("m must lie in 1..6")
    rng = np.random.default_rng(rng_seed)
    angles = rng.uniform(0.0, 2 * np.pi, m)
    w = rng.dirichlet(np.ones(m)) if m > 1 else np.ones(1)
    w = w / w.sum()
    return KernelMixture.from_angles(angles, w)
