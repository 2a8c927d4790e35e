"""Bracketed scalar root finding (Brent's method with bisection fallback)."""

from __future__ import annotations

import math
from typing import Callable

from .errors import BracketError, ConvergenceError

_EPS = 2.220446049250313e-16


def solve_bracketed_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    maxiter: int = 200,
) -> float:
    """Return a root of f inside [lo, hi].

    Combines inverse quadratic interpolation, secant steps and bisection; the
    bracket always keeps a sign change, so the returned point lies within
    ``tol`` of a true root of a continuous f.

    Raises:
        BracketError: f(lo) and f(hi) have the same strict sign.
        ConvergenceError: no convergence within ``maxiter`` iterations.
    """
    if not (tol > 0):
        raise ValueError("tol must be positive")
    a, b = float(lo), float(hi)
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if math.isnan(fa) or math.isnan(fb) or fa * fb > 0:
        raise BracketError(f"no sign change on [{lo}, {hi}]: f(lo)={fa!r}, f(hi)={fb!r}")

    c, fc = a, fa
    d = e = b - a
    for _ in range(maxiter):
        if fb * fc > 0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * _EPS * abs(b) + 0.5 * tol
        xm = 0.5 * (c - b)
        if abs(xm) <= tol1 or fb == 0.0:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = xm
        else:
            d = e = xm
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, xm)
        fb = f(b)
    raise ConvergenceError(f"root not bracketed to {tol} after {maxiter} iterations")
