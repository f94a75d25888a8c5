"""Executable coefficient lemmas for the Carathéodory class, with oracles.

Each piecewise formula here has an independent brute-force counterpart:
``psi`` against ``psi_oracle`` (grid maximization over the closed disk),
and the three coefficient inequalities against sampled kernel mixtures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from gft_lab.caratheodory import batch_kernel_coeffs

TIE_TOL = 1e-12


@dataclass(frozen=True)
class PsiInput:
    A: float
    B: float
    C: float

    def __post_init__(self):
        for name in ("A", "B", "C"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, v)


def ma_minda_bound(v: float) -> float:
    """Sharp bound for |c_2 - v c_1^2| over the Carathéodory class."""
    if v < 0:
        return -4 * v + 2
    if v <= 1:
        return 2.0
    return 4 * v - 2


def lemma22_lower(B: float, source_form: bool = False) -> float:
    # printed hypothesis: 2B(2B-1) <= D; the cited source has B(2B-1) <= D
    return (1 if source_form else 2) * B * (2 * B - 1)


def lemma22_applicable(B: float, D: float, source_form: bool = False) -> bool:
    """Hypothesis region for |c_3 - 2B c_1 c_2 + D c_1^3| <= 2.

    The default is the region as printed, 2B(2B-1) <= D <= B. That region is
    too large: B = 1/4, D = -1/4 with kernels at exp(+-i*phi), cos(phi) =
    -sqrt(2/3), gives (8/3)sqrt(2/3) > 2. ``source_form=True`` uses the
    original B(2B-1) <= D <= B.
    """
    return 0 <= B <= 1 and lemma22_lower(B, source_form) <= D <= B


def lemma23_combination(beta: float, gamma: float, delta: float, xi: float) -> float:
    """Left side minus right side of the four-parameter condition (<= 0 required)."""
    lhs = (8 * xi * (1 - xi) * ((beta * gamma - 2 * delta) ** 2 + (beta * (xi + beta) - gamma) ** 2)
           + beta * (1 - beta) * (gamma - 2 * beta * xi) ** 2)
    return lhs - 4 * beta**2 * (1 - beta) ** 2 * xi * (1 - xi)


def lemma23_applicable(beta: float, gamma: float, delta: float, xi: float) -> bool:
    if not (0 < beta < 1 and 0 < xi < 1):
        return False
    return lemma23_combination(beta, gamma, delta, xi) <= 0


def _le(x: float, y: float):
    """x <= y as True/False, or None when the two sides tie to rounding."""
    if abs(x - y) <= TIE_TOL * (1 + abs(x) + abs(y)):
        return None
    return x <= y


def _lt(x: float, y: float):
    t = _le(x, y)
    return t if t is None else x < y


def _branch(cond, if_true, if_false) -> list[float]:
    # a tied condition contributes both adjacent branches
    if cond is None:
        return if_true() + if_false()
    return if_true() if cond else if_false()


def _quad(base: float, B: float, d: float) -> list[float]:
    # base + B^2/(4d); with d = 0 the branch is only reached through a tie and drops out
    return [base + B * B / (4 * d)] if d > 0 else []


def psi(inp: PsiInput) -> float:
    """max over the closed unit disk of |A + Bz + Cz^2| + 1 - |z|^2 (piecewise form)."""
    A, B, C = inp.A, inp.B, inp.C
    aA, aB, aC = abs(A), abs(B), abs(C)

    def case_i() -> list[float]:
        return _branch(
            _le(2 * (1 - aC), aB),
            lambda: [aA + aB + aC],
            lambda: _quad(1 + aA, B, 1 - aC),
        )

    def r_value() -> list[float]:
        return _branch(
            _le(aC * (aB + 4 * aA), abs(A * B)),
            lambda: [aA + aB - aC],
            lambda: _branch(
                _le(abs(A * B), aC * (aB - 4 * aA)),
                lambda: [-aA + aB + aC],
                lambda: [(aC + aA) * math.sqrt(1 - B * B / (4 * A * C))],
            ),
        )

    def case_ii() -> list[float]:
        K = -4 * A * (1 / C - C)
        first = _le(K, B * B)
        first_b = _lt(aB, 2 * (1 - aC))
        if first is False or first_b is False:
            cond1 = False
        elif first is None or first_b is None:
            cond1 = None
        else:
            cond1 = True
        return _branch(
            cond1,
            lambda: _quad(1 - aA, B, 1 - aC),
            lambda: _branch(
                _lt(B * B, min(4 * (1 + aC) ** 2, K)),
                lambda: [1 + aA + B * B / (4 * (1 + aC))],
                r_value,
            ),
        )

    candidates = case_i() if A * C >= 0 else case_ii()
    return max(candidates)


def psi_oracle(inp: PsiInput, grid_n: int = 256) -> float:
    """Brute-force maximization on a polar grid with one local refinement pass."""
    if grid_n < 64:
        raise ValueError("grid_n must be at least 64")
    A, B, C = inp.A, inp.B, inp.C

    def objective(r, th):
        z = r * np.exp(1j * th)
        return np.abs(A + B * z + C * z * z) + 1 - r * r

    r = np.linspace(0.0, 1.0, grid_n)[:, None]
    th = np.linspace(0.0, 2 * np.pi, 4 * grid_n, endpoint=False)[None, :]
    vals = objective(r, th)
    i, j = np.unravel_index(np.argmax(vals), vals.shape)
    best = vals[i, j]

    dr = 1.0 / (grid_n - 1)
    dth = 2 * np.pi / (4 * grid_n)
    rr = np.clip(r[i, 0] + np.linspace(-dr, dr, 41), 0.0, 1.0)[:, None]
    tt = th[0, j] + np.linspace(-dth, dth, 41)[None, :]
    return float(max(best, np.max(objective(rr, tt))))


# --------------------------------------------------------------------------
# empirical suites over sampled Carathéodory coefficients
# --------------------------------------------------------------------------


@dataclass
class EmpiricalResult:
    name: str
    samples: int
    violations: int
    worst_excess: float
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0


def sample_coefficients(samples: int, seed: int, m: int = 5, n_max: int = 4) -> np.ndarray:
    """Rows (1, c_1, .., c_n_max) from random five-kernel mixtures.

    Half the rows use Dirichlet(0.3) weights so that near-extremal,
    few-kernel configurations are well represented.
    """
    rng = np.random.default_rng(seed)
    angles = rng.uniform(0, 2 * np.pi, (samples, m))
    conc = np.where(np.arange(samples)[:, None] % 2 == 0, 0.3, 1.0) * np.ones((1, m))
    g = rng.gamma(conc)
    w = g / g.sum(axis=1, keepdims=True)
    return batch_kernel_coeffs(np.exp(1j * angles), w, n_max)


LEMMA21_VS = (-1.0, -0.1, 0.0, 0.3, 0.7, 1.0, 1.5)


def lemma21_witness_value(v: float) -> float:
    """|c_2 - v c_1^2| at the equality case: (1+z^2)/(1-z^2) for 0<v<1, else (1+z)/(1-z)."""
    if 0 < v < 1:
        pts, wts = np.array([1, -1]), np.array([0.5, 0.5])
    else:
        pts, wts = np.array([1]), np.array([1.0])
    c = batch_kernel_coeffs(pts.astype(complex), wts, 2)
    return float(abs(c[2] - v * c[1] ** 2))


def empirical_lemma21(samples: int = 10_000, seed: int = 0, vs=LEMMA21_VS, tol: float = 1e-9) -> EmpiricalResult:
    c = sample_coefficients(samples, seed)
    violations = 0
    worst = -math.inf
    witness_gap = 0.0
    for v in vs:
        bound = ma_minda_bound(v)
        vals = np.abs(c[:, 2] - v * c[:, 1] ** 2)
        violations += int(np.sum(vals > bound + tol))
        worst = max(worst, float(np.max(vals - bound)))
        witness_gap = max(witness_gap, bound - lemma21_witness_value(v))
    return EmpiricalResult("lemma 2.1", samples * len(vs), violations, worst,
                           {"witness_gap": witness_gap})


def empirical_lemma22(samples: int = 10_000, seed: int = 0, tol: float = 1e-9,
                      source_form: bool = False) -> EmpiricalResult:
    rng = np.random.default_rng([seed, 22])
    c = sample_coefficients(samples, seed)
    # the printed region is empty for B > 3/4
    B = rng.uniform(0, 1 if source_form else 0.75, samples)
    lo = lemma22_lower(B, source_form)
    D = lo + rng.uniform(0, 1, samples) * (B - lo)
    vals = np.abs(c[:, 3] - 2 * B * c[:, 1] * c[:, 2] + D * c[:, 1] ** 3)
    name = "lemma 2.2 (source form)" if source_form else "lemma 2.2"
    bad = vals > 2 + tol
    details = {}
    if bad.any():
        i = int(np.argmax(vals))
        details = {"worst_B": float(B[i]), "worst_D": float(D[i]), "worst_value": float(vals[i])}
    return EmpiricalResult(name, samples, int(np.sum(bad)), float(np.max(vals) - 2), details)


def sample_lemma23_parameters(count: int, seed: int) -> np.ndarray:
    """Rows (beta, gamma, delta, xi) satisfying the four-parameter condition."""
    rng = np.random.default_rng([seed, 23])
    out = []
    while sum(len(o) for o in out) < count:
        n = 4 * count
        beta = rng.uniform(0.01, 0.99, n)
        xi = rng.uniform(0.01, 0.99, n)
        gamma = beta * (xi + beta) + rng.normal(0, 0.2, n)
        delta = beta * gamma / 2 + rng.normal(0, 0.2, n)
        ok = lemma23_combination(beta, gamma, delta, xi) <= 0
        out.append(np.stack([beta, gamma, delta, xi], axis=1)[ok])
    return np.concatenate(out)[:count]


def empirical_lemma23(samples: int = 10_000, seed: int = 0, tol: float = 1e-9) -> EmpiricalResult:
    c = sample_coefficients(samples, seed)
    beta, gamma, delta, xi = sample_lemma23_parameters(samples, seed).T
    c1, c2, c3, c4 = c[:, 1], c[:, 2], c[:, 3], c[:, 4]
    vals = np.abs(delta * c1**4 + xi * c2**2 + 2 * beta * c1 * c3 - 1.5 * gamma * c1**2 * c2 - c4)
    return EmpiricalResult("lemma 2.3", samples, int(np.sum(vals > 2 + tol)), float(np.max(vals) - 2))


def psi_suite(samples: int = 1000, seed: int = 0, grid_n: int = 256,
              agree_tol: float = 2e-3, under_tol: float = 1e-9) -> EmpiricalResult:
    rng = np.random.default_rng([seed, 25])
    abc = rng.uniform(-3, 3, (samples, 3))
    violations = 0
    worst = 0.0
    worst_under = -math.inf
    for A, B, C in abc:
        inp = PsiInput(A, B, C)
        p, o = psi(inp), psi_oracle(inp, grid_n)
        worst = max(worst, abs(p - o))
        worst_under = max(worst_under, o - p)
        if p < o - under_tol or abs(p - o) > agree_tol:
            violations += 1
    return EmpiricalResult("lemma 2.5", samples, violations, worst,
                           {"max_oracle_minus_psi": worst_under})
