"""Adaptive quadrature on finite and semi-infinite intervals.

Integrals over ``[lo, inf)`` with ``lo > 0`` are mapped to ``(0, 1]`` through
``t = lo / x`` so power-law tails become algebraic endpoint behaviour, which the
QUADPACK Gauss-Kronrod driver handles with extrapolation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

from scipy import integrate

from .errors import ConvergenceError, DivergenceError

# probe points for the tail-exponent divergence check, in the mapped variable
_TAIL_PROBES = (1e-12, 1e-9)


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    limit: int = 500


DEFAULT_QUAD = QuadratureConfig()


def _tail_exponent(g: Callable[[float], float]) -> float | None:
    """Local power exponent k of g(t) ~ t**k as t -> 0+, or None if g vanishes."""
    t1, t2 = _TAIL_PROBES
    g1, g2 = g(t1), g(t2)
    if not (g1 > 0 and g2 > 0) or not (math.isfinite(g1) and math.isfinite(g2)):
        if g1 == math.inf or g2 == math.inf:
            return -math.inf
        return None
    return math.log(g1 / g2) / math.log(t1 / t2)


def _quad(g, lo, hi, cfg: QuadratureConfig) -> float:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, err = integrate.quad(g, lo, hi, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.limit)
    if not math.isfinite(value):
        raise DivergenceError("integral is not finite", sign=int(math.copysign(1, value)) if value == value else 0)
    budget = max(cfg.abs_tol, cfg.rel_tol * abs(value))
    if caught and err > 100 * budget:
        raise ConvergenceError(f"quadrature error estimate {err:.3g} exceeds tolerance {budget:.3g}")
    return value


def integrate_semi_infinite(f: Callable[[float], float], lo: float, cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Integrate f over [lo, inf) for lo > 0 via t = lo/x.

    Raises DivergenceError when the mapped integrand behaves like t**k with
    k <= -1 near t = 0, i.e. the tail of f decays no faster than 1/x.
    """
    if lo <= 0:
        raise ValueError("lower bound must be positive for the t = lo/x map")

    def g(t: float) -> float:
        if t <= 0.0:
            return 0.0
        x = lo / t
        return f(x) * lo / (t * t)

    k = _tail_exponent(g)
    if k is not None and k <= -1.0 + 1e-6:
        raise DivergenceError(f"integrand tail decays like x**{-(k + 2):.4g}; integral diverges", sign=1)
    return _quad(g, 0.0, 1.0, cfg)


def integrate_interval(
    f: Callable[[float], float], lo: float, hi: float, cfg: QuadratureConfig = DEFAULT_QUAD
) -> float:
    """Integrate f over [lo, hi]; either bound may be infinite."""
    if hi < lo:
        return -integrate_interval(f, hi, lo, cfg)
    if math.isinf(hi) and not math.isinf(lo):
        if lo > 0:
            return integrate_semi_infinite(f, lo, cfg)
        return _quad(f, lo, 1.0, cfg) + integrate_semi_infinite(f, 1.0, cfg)
    if math.isinf(lo) and not math.isinf(hi):
        return integrate_interval(lambda x: f(-x), -hi, math.inf, cfg)
    if math.isinf(lo) and math.isinf(hi):
        return integrate_interval(f, 0.0, math.inf, cfg) + integrate_interval(f, -math.inf, 0.0, cfg)
    return _quad(f, lo, hi, cfg)
