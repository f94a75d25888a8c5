"""Sign checks for the polynomial inequalities used in the bound proofs.

Each check reduces to a quantity that must be strictly positive on
alpha in [step, 1] (and, for two-variable checks, tau in [0, 1]). It is
evaluated on a grid and the minimum is lowered by a second-order
interpolation error bound, so a positive reported margin bounds the
continuum minimum. Polynomials are built exactly with sympy; the
curvature bound M for a polynomial sum c_ij a^i t^j on the unit box is
sum |c_ij| i(i-1) along alpha (resp. j(j-1) along tau), and a grid cell
of widths (h_a, h_t) loses at most (M_a h_a^2 + M_t h_t^2)/8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import sympy as sp

DEFAULT_ALPHA_STEP = 1 / 256
DEFAULT_TAU_STEP = 1 / 512
MAX_ALPHA_STEP = 1 / 64
IDENTITY_TOL = 1e-9

a, t = sp.symbols("alpha tau")


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst_margin: float
    details: dict = field(default_factory=dict)


@dataclass
class BatteryReport:
    checks: list[CheckResult]
    findings: list[str]
    alpha_step: float
    tau_step: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


# --------------------------------------------------------------------------
# grid machinery
# --------------------------------------------------------------------------


def _grid(step: float, start: int) -> np.ndarray:
    k = round(1 / step)
    return np.arange(start, k + 1) / k


def corrected_min(expr, alpha_step: float, tau_step: float | None = None) -> tuple[float, float]:
    """(grid minimum, corrected minimum) of a polynomial in alpha (and tau)."""
    poly = sp.Poly(sp.expand(expr), a, t)
    m_a = m_t = 0.0
    for (i, j), c in poly.terms():
        m_a += abs(float(c)) * i * (i - 1)
        m_t += abs(float(c)) * j * (j - 1)
    f = sp.lambdify((a, t), poly.as_expr(), "numpy")
    al = _grid(alpha_step, 1)[:, None]
    if tau_step is None:
        vals = f(al, 0.0 * al)
        corr = m_a * alpha_step**2 / 8
    else:
        ta = _grid(tau_step, 0)[None, :]
        vals = f(al, ta)
        corr = (m_a * alpha_step**2 + m_t * tau_step**2) / 8
    low = float(np.min(vals))
    return low, low - corr


def _sign_check(name, expr, alpha_step, tau_step=None, **details) -> CheckResult:
    low, margin = corrected_min(expr, alpha_step, tau_step)
    details["grid_min"] = low
    return CheckResult(name, margin > 0, margin, details)


# --------------------------------------------------------------------------
# the expressions
# --------------------------------------------------------------------------


def lemma23_expr(beta, gamma, delta, xi):
    return sp.expand(8 * xi * (1 - xi) * ((beta * gamma - 2 * delta) ** 2 + (beta * (xi + beta) - gamma) ** 2)
                     + beta * (1 - beta) * (gamma - 2 * beta * xi) ** 2
                     - 4 * beta**2 * (1 - beta) ** 2 * xi * (1 - xi))


def starlike_gamma4_params():
    beta = xi = (2 - a) / 4
    return beta, (a**2 - 6 * a + 6) / 12, -(a**3 - 12 * a**2 + 36 * a - 24) / 192, xi


def convex_gamma4_params():
    return ((4 - 3 * a) / 8, (45 * a**2 - 160 * a + 108) / 216,
            -(27 * a**3 - 180 * a**2 + 320 * a - 144) / 1152, (18 - 13 * a) / 36)


STAR_INNER = -a**6 + 8 * a**5 - 16 * a**4 - 144 * a**2 + 288
CONVEX_PRINTED = (492804 * a**8 - 2190240 * a**7 - 848655 * a**6 + 3799884 * a**5
                  + 17604926 * a**4 + 754272 * a**3 - 49802688 * a**2 + 30233088)
PSI1_DERIV_FACTOR = 4 * (-a**2 + 12 * a + 12) * t**2 + 24 * (2 - a)
PRINTED_CUBIC = -9 * a**3 + 96 * a**2 + 464 * a + 576
PRINTED_SEXTIC = -147 * a**6 + 12 * a**5 + 5664 * a**4 + 27752 * a**3 + 62077 * a**2 + 71424 * a + 20736
P_XI = (a**2 - 8) * t**4 - 8 * t**2 + 16


def psi2(tau, al):
    return -(al**2 + 12 * al + 8) * tau**4 - 4 * (2 - 3 * al) * tau**2 + 16


def p_roots(al):
    """Roots t_1 < t_2 of (3a^2-8a+24)t^2 + 8(3-2a)t - 48."""
    s = np.sqrt(13 * al**2 - 36 * al + 81)
    d = 3 * al**2 - 8 * al + 24
    return (-4 * (3 - 2 * al) - 4 * s) / d, (-4 * (3 - 2 * al) + 4 * s) / d


def q_roots(al):
    """Roots s_1 < s_2 of Q(t) = (3a^2+8a+24)t^2 + 8(3+2a)t - 48."""
    s = np.sqrt(13 * al**2 + 36 * al + 81)
    d = 3 * al**2 + 8 * al + 24
    return (-4 * (3 + 2 * al) - 4 * s) / d, (-4 * (3 + 2 * al) + 4 * s) / d


def xi_definition(tau, al):
    """24 tau (1 - tau^2)(|C|+|A|) sqrt(1 - B^2/(4AC)) with the convex A_2, B_2, C_2."""
    A = al**2 * tau**3 / (24 * (1 - tau**2))
    B = al * tau / 2
    C = -(2 + tau**2) / (3 * tau)
    return 24 * tau * (1 - tau**2) * (abs(C) + abs(A)) * np.sqrt(1 - B**2 / (4 * A * C))


def xi_closed(tau, al):
    return ((al**2 - 8) * tau**4 - 8 * tau**2 + 16) * np.sqrt((13 - 7 * tau**2) / (2 * (2 + tau**2)))


def xi_printed(tau, al):
    return ((al**2 - 8) * tau**4 - 8 * tau**2 + 16) * np.sqrt((11 - 8 * tau**2) / (2 + tau**2))


# --------------------------------------------------------------------------
# checks (a)-(i)
# --------------------------------------------------------------------------


def check_a(hs):
    comb = lemma23_expr(*starlike_gamma4_params())
    printed = -(4 - a**2) / 18432 * STAR_INNER
    identity = sp.simplify(comb - printed) == 0
    inner_at_1 = int(STAR_INNER.subs(a, 1))
    res = _sign_check("a", STAR_INNER, hs, identity_exact=identity, inner_at_alpha1=inner_at_1)
    res.passed = res.passed and identity and inner_at_1 == 135
    return res


def check_b(hs):
    comb = lemma23_expr(*convex_gamma4_params())
    true_poly = sp.expand(-483729408 * comb)
    _, margin_printed = corrected_min(CONVEX_PRINTED, hs)
    coeffs = [int(c) for c in sp.Poly(true_poly, a).all_coeffs()]
    return _sign_check("b", true_poly, hs, combination_at_alpha1=float(comb.subs(a, 1)),
                       matches_printed=sp.expand(true_poly - CONVEX_PRINTED) == 0,
                       derived_coefficients=coeffs, printed_margin=margin_printed)


def check_c(hs, ht):
    return _sign_check("c", PSI1_DERIV_FACTOR, hs, ht)


def check_d(hs):
    # P(0) = -48 < 0 and P has positive leading coefficient, so t_2 > 1 iff P(1) < 0
    p1 = sp.expand((3 * a**2 - 8 * a + 24) + 8 * (3 - 2 * a) - 48)
    al = _grid(hs, 1)
    t1, t2 = p_roots(al)
    _, printed_margin = corrected_min(PRINTED_CUBIC, hs)
    res = _sign_check("d", -p1, hs, min_t2_minus_1=float(np.min(t2 - 1)), max_t1=float(np.max(t1)),
                      printed_cubic_margin=printed_margin)
    res.passed = res.passed and np.all(t2 > 1) and np.all(t1 < 0)
    return res


def check_e(hs):
    al = _grid(hs, 1)
    s1, s2 = q_roots(al)
    q = lambda s: (3 * al**2 + 8 * al + 24) * s**2 + 8 * (3 + 2 * al) * s - 48
    residual = float(np.max(np.abs(q(s2))))
    q1 = sp.expand(((3 * a**2 + 8 * a + 24) + 8 * (3 + 2 * a) - 48))
    # with Q(0) = -48, 0 < s_2 < 1 iff Q(1) > 0, and s_1 s_2 < 0 gives s_1 < 0
    res = _sign_check("e", q1, hs, min_minus_s1=float(np.min(-s1)), min_s2=float(np.min(s2)),
                      min_one_minus_s2=float(np.min(1 - s2)), root_residual=residual,
                      q_at_1=str(q1))
    res.passed = (res.passed and residual < 1e-12 and np.all(s1 < 0)
                  and np.all((s2 > 0) & (s2 < 1)))
    return res


def check_f(hs):
    # (a^2+12a+8) s_2 + 2(2-3a) >= 0  <=>  L sqrt(D) >= R, and R > 0 on (0, 1]
    L = 4 * (a**2 + 12 * a + 8)
    D = 13 * a**2 + 36 * a + 81
    Rr = sp.expand(L * (3 + 2 * a) - 2 * (2 - 3 * a) * (3 * a**2 + 8 * a + 24))
    # L^2 D - R^2 = 4 (3a^2+8a+24) * quartic, and the first factor is positive
    quartic, rem = sp.div(sp.expand(L**2 * D - Rr**2), 4 * (3 * a**2 + 8 * a + 24), a)
    if rem != 0:
        raise ArithmeticError("unexpected factorization in check (f)")
    al = _grid(hs, 1)
    _, s2 = q_roots(al)
    direct = (al**2 + 12 * al + 8) * s2 + 2 * (2 - 3 * al)
    _, r_margin = corrected_min(Rr, hs)
    _, printed_margin = corrected_min(PRINTED_SEXTIC, hs)
    res = _sign_check("f", quartic, hs, min_direct=float(np.min(direct)),
                      equivalent_polynomial=f"{sp.expand(-quartic)} <= 0", rhs_margin=r_margin,
                      printed_sextic_margin=printed_margin)
    res.passed = res.passed and r_margin > 0 and np.all(direct > 0)
    return res


def check_g(hs, ht):
    # -dxi/dtau * sqrt(u) (4 + 2t^2)^2 / (2t), u = (13 - 7t^2)/(2(2 + t^2)); checked on all of [0, 1]
    g = 4 * ((8 - a**2) * t**2 + 4) * (13 - 7 * t**2) * (4 + 2 * t**2) + 54 * P_XI
    printed = 4 * ((8 - a**2) * t**2 + 4) * (11 - 8 * t**2) * (2 + t**2) + 27 * P_XI
    _, printed_margin = corrected_min(printed, hs, ht)
    return _sign_check("g", g, hs, ht, printed_form_margin=printed_margin)


def check_h(hs):
    al = _grid(hs, 1)
    _, s2 = q_roots(al)
    tp = np.sqrt(s2)
    gap = np.abs(xi_definition(tp, al) - psi2(tp, al))
    closed_gap = np.abs(xi_closed(tp, al) - xi_definition(tp, al))
    printed_gap = np.abs(xi_printed(tp, al) - psi2(tp, al))
    worst = float(np.max(gap))
    return CheckResult("h", worst < IDENTITY_TOL and float(np.max(closed_gap)) < IDENTITY_TOL,
                       worst, {"closed_form_gap": float(np.max(closed_gap)),
                               "printed_xi_gap": float(np.max(printed_gap)),
                               "printed_xi_at_alpha1": float(xi_printed(tp[-1], 1.0)),
                               "psi2_at_alpha1": float(psi2(tp[-1], 1.0))})


def check_i(hs, ht):
    # 4 tau (|B_1| - 2(1 - |C_1|)) = (a + 2) tau^2 - 8 tau + 6
    return _sign_check("i", (a + 2) * t**2 - 8 * t + 6, hs, ht)


CHECK_NAMES = tuple("abcdefghi")

CHECK_TITLES = {
    "a": "starlike gamma4 Lemma 2.3 combination <= 0",
    "b": "convex gamma4 Lemma 2.3 combination <= 0",
    "c": "d psi1 / d tau1 <= 0",
    "d": "t2 > 1",
    "e": "s1 < 0 < s2 < 1",
    "f": "d psi2 / d tau1 <= 0 at tau1'",
    "g": "xi decreasing in tau1",
    "h": "xi(tau1') = psi2(tau1')",
    "i": "|B1| > 2(1 - |C1|)",
}


def psi2_monotonicity_finding(hs: float) -> str | None:
    """psi_2 rises on (0, tau1'] when 3 alpha > 2; report the largest excess over psi_2(0)."""
    al = _grid(hs, 1)
    _, s2 = q_roots(al)
    worst, at = 0.0, None
    for x, s in zip(al, s2):
        tau = np.linspace(0, math.sqrt(s), 2049)
        excess = float(np.max(psi2(tau, x)) - 16)
        if excess > worst:
            worst, at = excess, x
    if at is None:
        return None
    return (f"psi2 is not decreasing on (0, tau1'] for alpha > 2/3: max psi2 - psi2(0) = {worst:.6g} "
            f"at alpha = {at:.6g}; the convex H21 supremum is alpha^2/2304 * "
            f"(16 + (6 alpha - 4)^2 / (alpha^2 + 12 alpha + 8)) there")


def proof_inequality_battery(alpha_step: float = DEFAULT_ALPHA_STEP,
                             tau_step: float = DEFAULT_TAU_STEP) -> BatteryReport:
    if not (0 < alpha_step <= MAX_ALPHA_STEP):
        raise ValueError(f"alpha step must lie in (0, 1/64], got {alpha_step!r}")
    if not (0 < tau_step <= DEFAULT_TAU_STEP):
        raise ValueError(f"tau step must lie in (0, 1/512], got {tau_step!r}")
    hs, ht = alpha_step, tau_step
    checks = [check_a(hs), check_b(hs), check_c(hs, ht), check_d(hs), check_e(hs),
              check_f(hs), check_g(hs, ht), check_h(hs), check_i(hs, ht)]
    for c in checks:
        c.passed = bool(c.passed)
    findings = []
    b = checks[1]
    if not b.details["matches_printed"]:
        findings.append("(b): the convex gamma4 combination differs from the printed degree-8 polynomial; "
                        f"derived coefficients {b.details['derived_coefficients']}")
    if checks[7].details["printed_xi_gap"] > IDENTITY_TOL:
        findings.append("(h): the printed xi closed form does not meet psi2 at tau1'; "
                        "the defining expression equals P(tau) sqrt((13-7 tau^2)/(2(2+tau^2)))")
    f = psi2_monotonicity_finding(hs)
    if f:
        findings.append(f)
    return BatteryReport(checks, findings, alpha_step, tau_step)
