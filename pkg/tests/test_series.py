import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gft_lab.series import (
    OrderMismatch,
    SeriesError,
    SingularSeries,
    TruncatedSeries,
    add,
    compose,
    derivative,
    div,
    exp_series,
    exp_taylor,
    log_series,
    mul,
)

TS = TruncatedSeries


def close(s, expected, tol=1e-12):
    return np.max(np.abs(s.coeffs - np.asarray(expected, dtype=complex))) <= tol


def test_add_examples():
    assert close(add(TS([1, 1]), TS([1, -1])), [2, 0])
    s = TS([1, 2, 3])
    assert close(add(s, TS.zero(2)), s.coeffs)
    assert close(add(TS([0, 1, 2]), TS([3, 0, 1])), [3, 1, 3])


def test_order_mismatch_rejected():
    for op in (add, mul, div):
        with pytest.raises(OrderMismatch):
            op(TS([1, 2]), TS([1, 2, 3]))


def test_mul_examples():
    assert close(mul(TS([1, 1, 0]), TS([1, -1, 0])), [1, 0, -1])
    s = TS([1, 2, 3])
    assert close(mul(s, TS.one(2)), s.coeffs)
    assert close(mul(TS([0, 1]), TS([0, 1])), [0, 0])


def test_div_examples():
    assert close(div(TS.one(3), TS([1, -1, 0, 0])), [1, 1, 1, 1])
    s = TS([2, 1, -3, 0.5])
    assert close(div(s, s), [1, 0, 0, 0])
    t = TS([1, 1 + 1e-7, 3e-9, 0])
    q = div(TS([1, 1, 0, 0]), t)
    assert close(mul(q, t), [1, 1, 0, 0])


def test_div_by_zero_constant():
    with pytest.raises(SingularSeries):
        div(TS([1, 1]), TS([0, 1]))
    with pytest.raises(ZeroDivisionError):
        div(TS([1, 1]), TS([0, 1]))


def test_compose_examples():
    outer = TS([1, 1, 1])
    z = TS([0, 1, 0])
    assert close(compose(outer, z), [1, 1, 1])
    al = 0.7
    assert close(compose(exp_taylor(4), TS([0, al, 0, 0, 0])),
                 [1, al, al**2 / 2, al**3 / 6, al**4 / 24])
    out = TS([1, 2, 3, 4, 5, 6, 7])
    r = compose(out, TS.monomial(2, 6))
    assert close(r, [1, 0, 2, 0, 3, 0, 4])


def test_compose_rejects_nonzero_inner_constant():
    with pytest.raises(SeriesError):
        compose(TS([1, 1]), TS([1, 1]))


def test_exp_examples():
    assert close(exp_series(TS.zero(4)), [1, 0, 0, 0, 0])
    assert close(exp_series(TS([0, 1, 0, 0])), [1, 1, 0.5, 1 / 6])
    assert close(exp_series(log_series(TS([1, 1, 0, 0, 0]))), [1, 1, 0, 0, 0])


def test_log_examples():
    assert close(log_series(TS.one(3)), [0, 0, 0, 0])
    assert close(log_series(TS([1, 1, 0, 0])), [0, 1, -0.5, 1 / 3])
    with pytest.raises(SingularSeries):
        log_series(TS([0, 1, 0]))


def test_log_principal_branch():
    s = log_series(TS([-1, 0, 0]))
    assert s.coeffs[0] == pytest.approx(1j * math.pi)


def test_derivative_examples():
    assert close(derivative(TS([0, 0, 1])), [0, 2, 0])
    assert close(derivative(TS([5, 0, 0])), [0, 0, 0])
    assert close(derivative(TS([1, 1, 1, 1])), [1, 2, 3, 0])


def test_value_semantics():
    s = TS([1, 2, 3])
    with pytest.raises(ValueError):
        s.coeffs[0] = 5
    assert TS([1, 2], order=4).order == 4
    assert TS([1, 2, 3, 4], order=1).coeffs.tolist() == [1, 2]
    assert s(0.5) == pytest.approx(1 + 1 + 0.75)


def test_operators():
    s = TS([1, 2, 0])
    assert close(s + 1, [2, 2, 0])
    assert close(s * 2, [2, 4, 0])
    assert close(s - s, [0, 0, 0])
    assert close(s / s, [1, 0, 0])


# ---------------------------------------------------------------- properties

coef = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@st.composite
def series(draw, order=None, const=None):
    n = draw(st.integers(1, 16)) if order is None else order
    c = draw(st.lists(coef, min_size=n + 1, max_size=n + 1))
    if const is not None:
        c[0] = const
    return TS(c)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_exp_log_round_trip(data):
    # modest coefficients keep exp(L) well conditioned; the contract is s0 = 1
    n = data.draw(st.integers(1, 16))
    c = data.draw(st.lists(st.complex_numbers(max_magnitude=1, allow_nan=False, allow_infinity=False),
                           min_size=n, max_size=n))
    s = TS([1, *c])
    assert s.max_abs_diff(exp_series(log_series(s))) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_log_exp_round_trip(data):
    n = data.draw(st.integers(1, 16))
    c = data.draw(st.lists(st.complex_numbers(max_magnitude=0.5, allow_nan=False, allow_infinity=False),
                           min_size=n, max_size=n))
    s = TS([0, *c])
    assert s.max_abs_diff(log_series(exp_series(s))) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_div_mul_round_trip(data):
    n = data.draw(st.integers(1, 16))
    s = data.draw(series(order=n))
    # divisors with a dominant constant term keep the long division stable
    t = data.draw(series(order=n, const=data.draw(st.sampled_from([10, -10, 10j]))))
    t = TS(np.r_[t.coeffs[0], t.coeffs[1:] / 10])
    assert s.max_abs_diff(mul(div(s, t), t)) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_mul_commutative_associative(data):
    n = data.draw(st.integers(1, 16))
    r, s, t = (data.draw(series(order=n)) for _ in range(3))
    scale = 1 + max(np.max(np.abs(x.coeffs)) for x in (r, s, t)) ** 3
    assert mul(s, t).max_abs_diff(mul(t, s)) <= 1e-13 * scale
    assert mul(mul(r, s), t).max_abs_diff(mul(r, mul(s, t))) <= 1e-13 * scale * n


@settings(max_examples=100, deadline=None)
@given(series())
def test_compose_with_z_is_identity(s):
    z = TS.monomial(1, s.order)
    assert np.array_equal(compose(s, z).coeffs, s.coeffs)


@settings(max_examples=100, deadline=None)
@given(series(const=0))
def test_exp_of_zero_constant_is_exactly_one(s):
    assert exp_series(s).coeffs[0] == 1
