"""Plot data (no rendering) for the spiral, phi, psi1 and xi figures.

Each function returns (header, rows) ready for CSV output.
"""

from __future__ import annotations

import numpy as np

from gft_lab.battery import xi_closed, xi_printed

SPIRAL_ALPHAS = (0.25, 0.5, 0.75, 1.0)
FIGURES = ("spiral", "phi", "psi1", "xi")


def spiral(points: int = 361):
    """Boundary curve theta -> exp(alpha e^{i theta}) for each alpha."""
    theta = np.linspace(0, 2 * np.pi, points)
    rows = []
    for al in SPIRAL_ALPHAS:
        w = np.exp(al * np.exp(1j * theta))
        rows += [(al, th, z.real, z.imag) for th, z in zip(theta, w)]
    return ("alpha", "theta", "re", "im"), rows


def phi(points: int = 101):
    al = np.linspace(0, 1, points)
    phi1 = (2 - al) / 4
    phi2 = (al**2 - 6 * al + 6) / 24
    return ("alpha", "phi1", "phi2"), list(zip(al, phi1, phi2))


def psi1_value(tau, al):
    return -(-al**2 + 12 * al + 12) * tau**4 - 12 * (2 - al) * tau**2 + 36


def _surface(fn, points):
    tau = np.linspace(0, 1, points)
    al = np.linspace(0, 1, points)
    return [(x, y, *fn(x, y)) for y in al for x in tau]


def psi1(points: int = 51):
    return ("tau1", "alpha", "value"), _surface(lambda x, y: (psi1_value(x, y),), points)


def xi(points: int = 51):
    # value uses the defining expression; the printed closed form rides along
    return ("tau1", "alpha", "value", "printed"), _surface(
        lambda x, y: (xi_closed(x, y), xi_printed(x, y)), points)


def figure_data(which: str, points: int | None = None):
    fn = {"spiral": spiral, "phi": phi, "psi1": psi1, "xi": xi}.get(which)
    if fn is None:
        raise ValueError(f"unknown figure {which!r}; choose from {', '.join(FIGURES)}")
    header, rows = fn() if points is None else fn(points)
    return header, [tuple(float(v) for v in r) for r in rows]
