"""Small quadrature helpers used by the envelope and reservoir modules.

All routines accept complex-valued integrands; tolerances are absolute.
"""

import numpy as np

from .errors import DivergenceError

#: hard cap on adaptive bisection depth (interval shrinks by 2**-60)
_MAX_DEPTH = 60


def adaptive_simpson(f, a, b, tol, max_depth=_MAX_DEPTH):
    """Adaptive Simpson integration of a complex-valued ``f`` on [a, b].

    Returns ``(value, err_estimate)``. The integrand is evaluated at scalar
    points. Subdivision stops once the local Richardson error estimate is
    below the locally apportioned tolerance.
    """
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    value, err = _simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth)
    if not np.isfinite(value):
        raise DivergenceError("adaptive quadrature produced a non-finite value")
    return value, err


def _simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0, abs(delta) / 15.0
    lv, le = _simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
    rv, re = _simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    return lv + rv, le + re


def composite_simpson(values, dx):
    """Composite Simpson rule along the last axis of ``values``.

    The sample count must be odd (an even number of panels).
    """
    v = np.asarray(values)
    n = v.shape[-1] - 1
    if n % 2 != 0:
        raise ValueError("composite_simpson needs an even number of panels")
    return (dx / 3.0) * (v[..., 0] + v[..., -1]
                         + 4.0 * v[..., 1:-1:2].sum(axis=-1)
                         + 2.0 * v[..., 2:-1:2].sum(axis=-1))


def gauss_legendre_nodes(n, a, b):
    """Gauss-Legendre nodes and weights mapped onto [a, b]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w
