"""Numerical verification of the coefficient and determinant bounds.

A claim pairs a functional (|gamma_n|, |H_{2,1}| or |T_{2,1}|) with a class
and a bound formula in alpha. ``search_sup`` estimates the supremum of the
functional over the class by searching five-kernel Carathéodory mixtures:
a seeded random sweep over half the budget, then compass refinement of the
ten best points. Sharp claims are also checked at their extremal function.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from gft_lab.caratheodory import KernelMixture, batch_kernel_coeffs
from gft_lab.classes import ClassKind, ClassTag, batch_coeffs_from_p, extremal
from gft_lab.functionals import batch_log_coeffs, det, hankel_matrix, toeplitz_matrix
from gft_lab.lemmas import sample_coefficients

N_KERNELS = 5
N_PARAMS = 2 * N_KERNELS - 1
CHUNK = 4096
N_STARTS = 10
INITIAL_STEP = 0.1
SHRINKS = 3
CLAIM_TOL = 1e-6
MIN_BUDGET = 1000


class NoWitness(LookupError):
    """The claim has no extremal function attached."""


class FunctionalKind(str, enum.Enum):
    GAMMA = "gamma"
    HANKEL21 = "hankel21"
    TOEPLITZ21 = "toeplitz21"


@dataclass(frozen=True)
class BoundClaim:
    functional: FunctionalKind
    tag_kind: ClassKind
    n: int = 0  # coefficient index, gamma claims only

    def __post_init__(self):
        object.__setattr__(self, "functional", FunctionalKind(self.functional))
        object.__setattr__(self, "tag_kind", ClassKind(self.tag_kind))
        if self.functional is FunctionalKind.GAMMA:
            if self.n not in (1, 2, 3, 4):
                raise ValueError(f"gamma claims cover n = 1..4, got {self.n!r}")
        elif self.n != 0:
            raise ValueError("n is only meaningful for gamma claims")

    @property
    def name(self) -> str:
        if self.functional is FunctionalKind.GAMMA:
            return f"gamma{self.n}"
        return self.functional.value

    @property
    def sharp(self) -> bool:
        return self.functional is not FunctionalKind.TOEPLITZ21

    @property
    def formula(self) -> str:
        star = self.tag_kind is ClassKind.STARLIKE
        if self.functional is FunctionalKind.GAMMA:
            return f"alpha/{2 * self.n}" if star else f"alpha/{2 * self.n * (self.n + 1)}"
        if self.functional is FunctionalKind.HANKEL21:
            return "alpha^2/16" if star else "alpha^2/144"
        return "5*alpha^2/16" if star else "5*alpha^2/72"

    def claimed(self, alpha: float) -> float:
        star = self.tag_kind is ClassKind.STARLIKE
        n = self.n
        if self.functional is FunctionalKind.GAMMA:
            return alpha / (2 * n) if star else alpha / (2 * n * (n + 1))
        if self.functional is FunctionalKind.HANKEL21:
            return alpha**2 / 16 if star else alpha**2 / 144
        return 5 * alpha**2 / 16 if star else 5 * alpha**2 / 72

    @property
    def witness_index(self) -> int | None:
        """k of the extremal f_k, or None for the Toeplitz claims."""
        offset = 0 if self.tag_kind is ClassKind.STARLIKE else 4
        if self.functional is FunctionalKind.GAMMA:
            return self.n + offset
        if self.functional is FunctionalKind.HANKEL21:
            return 2 + offset
        return None

    @property
    def gamma_count(self) -> int:
        """How many log coefficients the functional reads."""
        return {FunctionalKind.GAMMA: self.n, FunctionalKind.HANKEL21: 3,
                FunctionalKind.TOEPLITZ21: 2}[self.functional]


def all_claims() -> list[BoundClaim]:
    out = []
    for kind in ClassKind:
        out += [BoundClaim(FunctionalKind.GAMMA, kind, n) for n in (1, 2, 3, 4)]
        out += [BoundClaim(FunctionalKind.HANKEL21, kind), BoundClaim(FunctionalKind.TOEPLITZ21, kind)]
    return out


def functional_values(claim: BoundClaim, alpha: float, gamma: np.ndarray) -> np.ndarray:
    if claim.functional is FunctionalKind.GAMMA:
        return np.abs(gamma[..., claim.n - 1])
    if claim.functional is FunctionalKind.HANKEL21:
        return np.abs(det(hankel_matrix(gamma, 2, 1)))
    return np.abs(det(toeplitz_matrix(gamma, 2, 1)))


# --------------------------------------------------------------------------
# parametrization of five-kernel mixtures
# --------------------------------------------------------------------------


def weights_from_sticks(u: np.ndarray) -> np.ndarray:
    """Stick-breaking map [0,1]^(m-1) -> simplex; last axis is the stick axis."""
    u = np.clip(u, 0.0, 1.0)
    rest = np.cumprod(1 - u, axis=-1)
    w = np.empty(u.shape[:-1] + (u.shape[-1] + 1,))
    w[..., 0] = u[..., 0]
    w[..., 1:-1] = rest[..., :-1] * u[..., 1:]
    w[..., -1] = rest[..., -1]
    return w


def mixture_from_params(x: np.ndarray) -> KernelMixture:
    w = weights_from_sticks(np.asarray(x[N_KERNELS:]))
    return KernelMixture.from_angles(np.mod(x[:N_KERNELS], 2 * np.pi), w / w.sum())


def evaluate_params(claim: BoundClaim, alpha: float, x: np.ndarray) -> np.ndarray:
    """Functional values for parameter rows x of shape (B, 9)."""
    m = claim.gamma_count
    pts = np.exp(1j * x[..., :N_KERNELS])
    w = weights_from_sticks(x[..., N_KERNELS:])
    p = batch_kernel_coeffs(pts, w, m + 1)
    a = batch_coeffs_from_p(claim.tag_kind, alpha, p)
    return functional_values(claim, alpha, batch_log_coeffs(a, m))


def _random_params(rng: np.random.Generator, count: int) -> np.ndarray:
    return np.concatenate([rng.uniform(0, 2 * np.pi, (count, N_KERNELS)),
                           rng.uniform(0, 1, (count, N_PARAMS - N_KERNELS))], axis=1)


# --------------------------------------------------------------------------
# search
# --------------------------------------------------------------------------


@dataclass
class SearchReport:
    claim: BoundClaim
    alpha: float
    estimated_sup: float
    argmax: KernelMixture
    claimed: float
    witness_value: float | None
    budget: int
    seed: int
    evaluations: int
    best_params: np.ndarray = field(repr=False)

    @property
    def slack(self) -> float:
        return self.claimed - self.estimated_sup

    @property
    def no_counterexample(self) -> bool:
        return self.estimated_sup <= self.claimed + CLAIM_TOL

    @property
    def sharp_ok(self) -> bool:
        if not self.claim.sharp:
            return True
        best = max(self.estimated_sup, self.witness_value or 0.0)
        return self.claimed - best <= CLAIM_TOL

    @property
    def ok(self) -> bool:
        return self.no_counterexample and self.sharp_ok


def _check_inputs(alpha: float, budget: int) -> None:
    if not (0 < alpha <= 1):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")
    if budget < MIN_BUDGET:
        raise ValueError(f"budget must be at least {MIN_BUDGET}, got {budget!r}")


def _coarse(claim, alpha, count, seed):
    # chunk k is drawn from its own stream, so a larger budget replays the
    # samples of every smaller one
    best_x, best_v = np.empty((0, N_PARAMS)), np.empty(0)
    for k in range(math.ceil(count / CHUNK)):
        n = min(CHUNK, count - k * CHUNK)
        x = _random_params(np.random.default_rng([seed, k]), CHUNK)[:n]
        v = evaluate_params(claim, alpha, x)
        xs = np.concatenate([best_x, x])
        vs = np.concatenate([best_v, v])
        keep = np.argsort(-vs, kind="stable")[:N_STARTS]
        best_x, best_v = xs[keep], vs[keep]
    return best_x, best_v


def compass(claim: BoundClaim, alpha: float, x0: np.ndarray, max_evals: int,
            step: float = INITIAL_STEP, shrinks: int = SHRINKS):
    """Batched compass search; every start polls its 2*9 neighbours each round.

    A start halves its step when no neighbour improves and retires after
    ``shrinks`` halvings. Returns (points, values, evaluations used).
    """
    x = np.array(x0, dtype=float)
    v = evaluate_params(claim, alpha, x)
    used = len(x)
    h = np.full(len(x), step)
    left = np.full(len(x), shrinks)
    dirs = np.concatenate([np.eye(N_PARAMS), -np.eye(N_PARAMS)])
    while np.any(left >= 0):
        live = np.flatnonzero(left >= 0)
        trials = x[live, None, :] + h[live, None, None] * dirs[None]
        trials[..., N_KERNELS:] = np.clip(trials[..., N_KERNELS:], 0.0, 1.0)
        n_new = trials.shape[0] * trials.shape[1]
        if used + n_new > max_evals:
            break
        tv = evaluate_params(claim, alpha, trials.reshape(-1, N_PARAMS)).reshape(len(live), -1)
        used += n_new
        j = np.argmax(tv, axis=1)
        gain = tv[np.arange(len(live)), j] > v[live]
        moved = live[gain]
        x[moved] = trials[gain, j[gain]]
        v[moved] = tv[gain, j[gain]]
        stuck = live[~gain]
        h[stuck] /= 2
        left[stuck] -= 1
    return x, v, used


def search_sup(claim: BoundClaim, alpha: float, budget: int = 100_000, seed: int = 42,
               extra_starts: np.ndarray | None = None) -> SearchReport:
    """Estimate sup |functional| over the class for one alpha.

    ``extra_starts`` (rows of 9 parameters) are refined alongside the ten
    best random samples; ``search_ladder`` uses this to carry the argmax of a
    smaller budget into a larger one.
    """
    _check_inputs(alpha, budget)
    coarse_n = budget // 2
    xs, _ = _coarse(claim, alpha, coarse_n, seed)
    if extra_starts is not None:
        xs = np.concatenate([np.atleast_2d(extra_starts), xs])
    x, v, used = compass(claim, alpha, xs, budget - coarse_n)
    i = int(np.argmax(v))
    witness = check_witness(claim, alpha) if claim.witness_index is not None else None
    return SearchReport(
        claim=claim, alpha=float(alpha), estimated_sup=float(v[i]),
        argmax=mixture_from_params(x[i]), claimed=claim.claimed(alpha),
        witness_value=witness, budget=int(budget), seed=int(seed),
        evaluations=coarse_n + used, best_params=x[i].copy(),
    )


def search_ladder(claim: BoundClaim, alpha: float, budgets=(1_000, 10_000, 100_000),
                  seed: int = 42) -> list[SearchReport]:
    """Searches over increasing budgets, each warm-started from the last argmax.

    Compass steps only accept improvements, so the estimates are
    non-decreasing along the ladder.
    """
    out = []
    carry = None
    for b in sorted(budgets):
        rep = search_sup(claim, alpha, b, seed, extra_starts=carry)
        out.append(rep)
        carry = rep.best_params[None, :]
    return out


# --------------------------------------------------------------------------
# witnesses and the triangle-inequality chain
# --------------------------------------------------------------------------


def check_witness(claim: BoundClaim, alpha: float) -> float:
    """|functional| at the claim's extremal function f_k."""
    k = claim.witness_index
    if k is None:
        raise NoWitness(f"{claim.name}: no sharp witness claimed")
    ClassTag(claim.tag_kind, alpha)
    member = extremal(k, alpha, n_max=claim.gamma_count + 1)
    gamma = batch_log_coeffs(member.a.coeffs, claim.gamma_count)
    return float(functional_values(claim, alpha, gamma))


def toeplitz_reference(claim: BoundClaim, alpha: float) -> float:
    """|T_{2,1}| at f_1 (starlike) or f_5 (convex): a lower bound for the sup."""
    k = 1 if claim.tag_kind is ClassKind.STARLIKE else 5
    member = extremal(k, alpha, n_max=3)
    gamma = batch_log_coeffs(member.a.coeffs, 2)
    return float(np.abs(det(toeplitz_matrix(gamma, 2, 1))))


@dataclass(frozen=True)
class TriangleBound:
    analytic: float
    sampled_max: float
    samples: int


def triangle_bound_t21(tag: ClassTag, alpha: float | None = None,
                       samples: int = 20_000, seed: int = 0) -> TriangleBound:
    """The T_{2,1} bound obtained through the triangle inequality.

    Starlike: |T| <= (a^2/1024)(64|c1|^2 + 16|c2 - v c1^2|^2) with
    v = (2 - a)/4, which Lemma 2.1 caps at 5a^2/16. Convex: the same shape
    with 36864, 576, 64 and v = (4 - 3a)/8, capped at 5a^2/72.
    """
    al = tag.alpha if alpha is None else ClassTag(tag.kind, alpha).alpha
    c = sample_coefficients(samples, seed, n_max=2)
    c1, c2 = c[:, 1], c[:, 2]
    if tag.kind is ClassKind.STARLIKE:
        v = (2 - al) / 4
        inter = al**2 / 1024 * (64 * np.abs(c1) ** 2 + 16 * np.abs(c2 - v * c1**2) ** 2)
        analytic = 5 * al**2 / 16
    else:
        v = (4 - 3 * al) / 8
        inter = al**2 / 36864 * (576 * np.abs(c1) ** 2 + 64 * np.abs(c2 - v * c1**2) ** 2)
        analytic = 5 * al**2 / 72
    return TriangleBound(analytic, float(np.max(inter)), samples)
