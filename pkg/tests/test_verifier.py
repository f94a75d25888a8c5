import numpy as np
import pytest

from gft_lab.classes import ClassKind, ClassTag
from gft_lab.verifier import (
    BoundClaim,
    FunctionalKind,
    NoWitness,
    all_claims,
    check_witness,
    search_ladder,
    search_sup,
    toeplitz_reference,
    triangle_bound_t21,
    weights_from_sticks,
)

S, C = ClassKind.STARLIKE, ClassKind.CONVEX


def gamma(n, kind=S):
    return BoundClaim(FunctionalKind.GAMMA, kind, n)


def test_claim_table():
    claims = all_claims()
    assert len(claims) == 12
    assert sum(not c.sharp for c in claims) == 2
    assert gamma(2).claimed(1.0) == pytest.approx(0.25)
    assert BoundClaim(FunctionalKind.HANKEL21, C).claimed(1.0) == pytest.approx(1 / 144)
    with pytest.raises(ValueError):
        BoundClaim(FunctionalKind.GAMMA, S, 5)
    with pytest.raises(ValueError):
        BoundClaim(FunctionalKind.HANKEL21, S, 1)


def test_stick_breaking_weights():
    u = np.random.default_rng(0).uniform(size=(100, 4))
    w = weights_from_sticks(u)
    assert w.shape == (100, 5)
    assert np.all(w >= 0)
    assert np.allclose(w.sum(axis=1), 1)


def test_gamma2_starlike_search():
    rep = search_sup(gamma(2), 1.0, 100_000, 42)
    assert 0.2499 <= rep.estimated_sup <= 0.25 + 1e-9
    assert rep.ok
    # mass concentrates on two antipodal kernels
    w = np.asarray(rep.argmax.weights)
    pts = np.asarray(rep.argmax.points)
    p0 = pts[np.argmax(w)]
    near = w[np.abs(pts - p0) < 0.05].sum()
    opposite = w[np.abs(pts + p0) < 0.05].sum()
    assert near + opposite > 0.95
    assert min(near, opposite) > 0.4


def test_convex_hankel_at_half():
    claim = BoundClaim(FunctionalKind.HANKEL21, C)
    rep = search_sup(claim, 0.5, 100_000, 42)
    assert rep.estimated_sup <= claim.claimed(0.5) + 1e-6
    assert rep.witness_value == pytest.approx(0.25 / 144, rel=1e-9)


def test_toeplitz_search_between_reference_and_bound():
    claim = BoundClaim(FunctionalKind.TOEPLITZ21, S)
    rep = search_sup(claim, 1.0, 100_000, 42)
    assert rep.estimated_sup <= 5 / 16 + 1e-9
    assert rep.estimated_sup >= 15 / 64 - 1e-9
    assert rep.witness_value is None and rep.sharp_ok


@pytest.mark.parametrize("claim,alpha,expected", [
    (gamma(3), 0.7, 0.7 / 6),
    (gamma(4, C), 1.0, 1 / 40),
    (BoundClaim(FunctionalKind.HANKEL21, S), 0.6, 0.36 / 16),
])
def test_witness_values(claim, alpha, expected):
    assert check_witness(claim, alpha) == pytest.approx(expected, rel=1e-12)


def test_toeplitz_has_no_witness():
    with pytest.raises(NoWitness):
        check_witness(BoundClaim(FunctionalKind.TOEPLITZ21, C), 1.0)


@pytest.mark.parametrize("kind,f", [
    (S, lambda a: a**2 / 4 - a**4 / 64),
    (C, lambda a: a**2 / 16 - a**4 / 256),
])
def test_toeplitz_reference_values(kind, f):
    claim = BoundClaim(FunctionalKind.TOEPLITZ21, kind)
    for a in (0.25, 0.5, 1.0):
        assert toeplitz_reference(claim, a) == pytest.approx(f(a), rel=1e-12)


def test_search_is_deterministic():
    a = search_sup(gamma(3, C), 0.8, 5000, 7)
    b = search_sup(gamma(3, C), 0.8, 5000, 7)
    assert a.estimated_sup == b.estimated_sup
    assert np.array_equal(a.best_params, b.best_params)


def test_ladder_is_monotone():
    reps = search_ladder(BoundClaim(FunctionalKind.HANKEL21, S), 0.9, (1000, 10_000, 100_000), 3)
    vals = [r.estimated_sup for r in reps]
    assert vals == sorted(vals)
    assert [r.budget for r in reps] == [1000, 10_000, 100_000]


def test_search_rejects_bad_inputs():
    with pytest.raises(ValueError):
        search_sup(gamma(1), 1.0, 999)
    with pytest.raises(ValueError):
        search_sup(gamma(1), 0.0, 5000)
    with pytest.raises(ValueError):
        search_sup(gamma(1), 1.5, 5000)


def test_evaluations_within_budget():
    rep = search_sup(gamma(4), 1.0, 20_000, 1)
    assert rep.evaluations <= 20_000


@pytest.mark.parametrize("claim", [gamma(1), gamma(2, C), BoundClaim(FunctionalKind.HANKEL21, S)])
def test_sup_scaling_in_alpha(claim):
    # gamma bounds are linear in alpha, the starlike Hankel bound quadratic
    for a in (0.25, 0.5):
        rep = search_sup(claim, a, 20_000, 42)
        assert rep.estimated_sup == pytest.approx(claim.claimed(a), rel=1e-4)


@pytest.mark.parametrize("kind,alpha,analytic", [(S, 1.0, 5 / 16), (C, 1.0, 5 / 72), (S, 0.5, 5 / 64)])
def test_triangle_bound(kind, alpha, analytic):
    tb = triangle_bound_t21(ClassTag(kind, alpha))
    assert tb.analytic == pytest.approx(analytic)
    assert tb.sampled_max <= analytic + 1e-12
    assert tb.sampled_max >= 0.75 * analytic


@pytest.mark.parametrize("kind,f", [
    (S, lambda a: a**2 / 4 + a**4 / 64),
    (C, lambda a: a**2 / 16 + a**4 / 256),
])
def test_toeplitz_sup_closed_form(kind, f):
    # the Toeplitz sup is not a pure power of alpha
    claim = BoundClaim(FunctionalKind.TOEPLITZ21, kind)
    for a in (0.25, 0.5, 1.0):
        assert search_sup(claim, a, 20_000, 42).estimated_sup == pytest.approx(f(a), rel=1e-4)
