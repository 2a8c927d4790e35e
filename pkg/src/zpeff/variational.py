"""Least-effort variational problem: maximize the efficiency at fixed mean achievement.

Stationarity of  eta - lam*(sum p - 1) - c*(sum p x - mu)  gives

    (1-a)/a * p_i**(-a) = lam + c*x_i,   i.e.  p_i ∝ (x_i + s)**(-1/a),  s = lam/c,

a shifted discrete power law. Normalization is explicit in the parametrization
below, so only the mean constraint needs a bracketed root solve.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, FeasibilityError, InsufficientDataError, ValidationError
from .measures import Distribution, discrete_efficiency
from .rootfind import solve_bracketed_root

CONSTRAINT_TOL = 1e-12
MIN_POWER_LAW_POINTS = 10
_TAU_MAX = 700.0


@dataclass(frozen=True)
class VariationalProblem:
    """Achievement levels, coefficient a, and exactly one of a mean target or a multiplier c."""

    values: np.ndarray
    a: float
    mean_target: float | None = None
    multiplier: float | None = None

    def __post_init__(self):
        x = np.array(self.values, dtype=float).ravel()
        if x.size < 1 or not np.all(np.isfinite(x)) or np.any(x <= 0):
            raise ValidationError("values must be finite and positive")
        if np.any(np.diff(x) <= 0):
            raise ValidationError("values must be strictly increasing")
        x.setflags(write=False)
        object.__setattr__(self, "values", x)
        if not (0.0 < self.a < 0.5):
            raise ValidationError(f"a must lie in (0, 1/2), got {self.a}")
        if (self.mean_target is None) == (self.multiplier is None):
            raise ValidationError("supply exactly one of mean_target and multiplier")
        if self.multiplier is not None and not (self.multiplier > 0):
            raise ValidationError("multiplier c must be positive")


@dataclass(frozen=True)
class VariationalSolution:
    distribution: Distribution
    multipliers: tuple[float, float]  # (lam, c)
    shift: float
    fitted_exponent: float
    residual: float
    window: tuple[int, int] = field(default=(0, 0))  # 1-based rank range used for the fit

    @property
    def probs(self) -> np.ndarray:
        return self.distribution.probs

    @property
    def values(self) -> np.ndarray:
        return self.distribution.values

    def to_dict(self) -> dict:
        return {
            "values": self.values.tolist(),
            "distribution": self.probs.tolist(),
            "multipliers": {"lam": self.multipliers[0], "c": self.multipliers[1]},
            "shift": _json_num(self.shift),
            "fitted_exponent": _json_num(self.fitted_exponent),
            "residual": self.residual,
            "window": list(self.window),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "x_i", "p_i"])
        for i, (x, p) in enumerate(zip(self.values, self.probs), start=1):
            w.writerow([i, f"{x:.9g}", f"{p:.9g}"])
        return buf.getvalue()


def _json_num(v: float):
    return v if math.isfinite(v) else None


def _log_softmax(logw: np.ndarray) -> np.ndarray:
    m = logw.max()
    return logw - (m + math.log(np.exp(logw - m).sum()))


def _family_logp(z: np.ndarray, tau: float, a: float) -> np.ndarray:
    """log p for p ∝ (1 + theta*z)**(-1/a) with theta = e**tau - 1 > -1."""
    theta = math.expm1(tau)
    base = np.log1p(theta * z) if theta > -0.5 else np.log(np.exp(tau) * z + (1.0 - z))
    return _log_softmax(-base / a)


def _degenerate(prob: VariationalProblem, index: int) -> VariationalSolution:
    p = np.zeros(prob.values.size)
    p[index] = 1.0
    return VariationalSolution(Distribution(p, prob.values), (math.nan, math.nan), math.nan, math.nan, 0.0)


def _finish(prob: VariationalProblem, logp: np.ndarray, lam: float, c: float) -> VariationalSolution:
    x, a = prob.values, prob.a
    p = np.exp(logp)
    p[np.argmax(p)] += 1.0 - math.fsum(p)
    dist = Distribution(p, x)
    grad = (1.0 - a) / a * np.exp(-a * logp)
    stationarity = float(np.max(np.abs(grad - lam - c * x)) / np.max(np.abs(grad)))
    span = max(x[-1] - x[0], 1.0)
    mean_err = abs(dist.mean() - prob.mean_target) / span if prob.mean_target is not None else 0.0
    residual = max(stationarity, abs(math.fsum(p) - 1.0), mean_err)
    shift = lam / c if abs(c) > 1e-12 * abs(lam) else math.inf
    window = _fit_window(x.size)
    exponent = math.nan
    if math.isfinite(shift) and np.all(x + shift > 0) and x.size >= 2:
        lo, hi = window
        exponent = ols_slope(np.log(x[lo - 1:hi] + shift), logp[lo - 1:hi])
    return VariationalSolution(dist, (float(lam), float(c)), float(shift), exponent, residual, window)


def ols_slope(u: np.ndarray, v: np.ndarray) -> float:
    du = u - u.mean()
    return float(np.dot(du, v - v.mean()) / np.dot(du, du))


def _fit_window(w: int) -> tuple[int, int]:
    """Ranks 3..w - w//10 (drop the top 2 ranks and the bottom decile); whole range when too short."""
    lo, hi = 3, w - w // 10
    if hi - lo + 1 < 3:
        return 1, w
    return lo, hi


def _solve_fixed_mean(prob: VariationalProblem, tol: float) -> VariationalSolution:
    x, a, mu = prob.values, prob.a, prob.mean_target
    if not (x[0] <= mu <= x[-1]):
        raise FeasibilityError(f"mean target {mu} outside [{x[0]}, {x[-1]}]")
    if x.size == 1 or mu == x[0]:
        return _degenerate(prob, 0)
    if mu == x[-1]:
        return _degenerate(prob, x.size - 1)
    span = x[-1] - x[0]
    z = (x - x[0]) / span

    def excess(tau: float) -> float:
        return float(np.dot(np.exp(_family_logp(z, tau, a)), x)) - mu

    lo, hi = -1.0, 1.0
    while excess(lo) < 0 and lo > -_TAU_MAX:
        lo *= 2.0
    while excess(hi) > 0 and hi < _TAU_MAX:
        hi *= 2.0
    if excess(lo) < 0 or excess(hi) > 0:
        raise ConvergenceError(f"mean target {mu} too close to the support edge to resolve")
    tau = solve_bracketed_root(excess, lo, hi, tol=1e-15, maxiter=500)

    logp = _family_logp(z, tau, a)
    theta = math.expm1(tau)
    # p_i = K (1 + theta z_i)^(-1/a); z_0 = 0 so K = p_0
    scale = (1.0 - a) / a * math.exp(-a * logp[0])
    c = scale * theta / span
    lam = scale - c * x[0]
    sol = _finish(prob, logp, lam, c)
    if sol.residual > tol:
        raise ConvergenceError(f"stationarity residual {sol.residual:.3g} exceeds tolerance {tol:.3g}")
    return sol


def _solve_multiplier(prob: VariationalProblem, tol: float) -> VariationalSolution:
    x, a, c = prob.values, prob.a, prob.multiplier
    k = a / (1.0 - a)

    # u = log(lam + c*x_0); total mass is decreasing in u
    def log_mass(u: float) -> float:
        logp = -np.log(k * (math.exp(u) + c * (x - x[0]))) / a
        m = logp.max()
        return m + math.log(np.exp(logp - m).sum())

    lo, hi = -1.0, 1.0
    while log_mass(lo) < 0 and lo > -_TAU_MAX:
        lo *= 2.0
    while log_mass(hi) > 0 and hi < _TAU_MAX:
        hi *= 2.0
    u = solve_bracketed_root(log_mass, lo, hi, tol=1e-15, maxiter=500)
    lam = math.exp(u) - c * x[0]
    logp = -np.log(k * (lam + c * x)) / a
    sol = _finish(prob, _log_softmax(logp), lam, c)
    if sol.residual > tol:
        raise ConvergenceError(f"stationarity residual {sol.residual:.3g} exceeds tolerance {tol:.3g}")
    return sol


def solve_stationary(prob: VariationalProblem, tol: float = 1e-9) -> VariationalSolution:
    """Stationary point of the efficiency under normalization plus either a mean target or a fixed c.

    The fixed-mean form is the canonical one: it is the unique maximizer of the
    (strictly concave) efficiency on the feasible slice of the simplex.
    """
    if not (tol > 0):
        raise ValidationError("tol must be positive")
    if prob.mean_target is not None:
        return _solve_fixed_mean(prob, tol)
    return _solve_multiplier(prob, tol)


def ccdf_exponent(values: np.ndarray, probs: np.ndarray, shift: float = 0.0) -> tuple[float, tuple[int, int]]:
    """Log-log slope fit of the discrete CCDF P(X > x_i) against the shifted midpoint abscissa.

    P(X > x_i) is the mass strictly above x_i, which for a discretized density is
    sampled at the cell boundary (x_i + x_{i+1})/2. Ranks 3..max(w//10, 10) are
    used, keeping clear of the top of the law and of the truncation at the last level.
    """
    x = np.asarray(values, dtype=float)
    p = np.asarray(probs, dtype=float)
    w = x.size
    if w < MIN_POWER_LAW_POINTS:
        raise InsufficientDataError(f"need at least {MIN_POWER_LAW_POINTS} support points, got {w}")
    tail = np.cumsum(p[::-1])[::-1]
    ccdf = tail[1:]  # P(X > x_i) for i = 0..w-2
    mid = 0.5 * (x[:-1] + x[1:]) + shift
    lo, hi = 3, min(max(w // 10, 10), w - 1)
    idx = np.arange(lo - 1, hi)
    idx = idx[(ccdf[idx] > 0) & (mid[idx] > 0)]
    if idx.size < 3:
        raise InsufficientDataError("fewer than 3 usable CCDF points in the fit window")
    return -ols_slope(np.log(mid[idx]), np.log(ccdf[idx])), (lo, hi)


def verify_power_law(sol: VariationalSolution, a: float | None = None) -> float:
    """Fitted CCDF tail exponent of a solution; compare with 1/a - 1."""
    shift = sol.shift if math.isfinite(sol.shift) else 0.0
    beta, _ = ccdf_exponent(sol.values, sol.probs, shift)
    return beta


def grid_search_maximizer(values: Sequence[float], a: float, mu: float, step: float = 1e-4,
                          refine: float = 1e-6) -> np.ndarray:
    """Brute-force maximizer of the efficiency on {p : sum p = 1, sum p x = mu} for 2 or 3 levels.

    Independent of :func:`solve_stationary`; used as its oracle.
    """
    x = np.asarray(values, dtype=float)
    if x.size == 2:
        p1 = (x[1] - mu) / (x[1] - x[0])
        if not (0 <= p1 <= 1):
            raise FeasibilityError("mean target infeasible")
        return np.array([p1, 1.0 - p1])
    if x.size != 3:
        raise ValueError("grid search supports 2 or 3 levels only")

    def slice_points(p1: np.ndarray):
        # p2, p3 from sum = 1 - p1 and p2 x2 + p3 x3 = mu - p1 x1
        rest, m = 1.0 - p1, mu - p1 * x[0]
        p3 = (m - rest * x[1]) / (x[2] - x[1])
        p2 = rest - p3
        return np.stack([p1, p2, p3], axis=1)

    def best(grid: np.ndarray) -> float:
        pts = slice_points(grid)
        ok = np.all(pts >= 0, axis=1)
        pts, grid = pts[ok], grid[ok]
        if grid.size == 0:
            raise FeasibilityError("mean target infeasible")
        eta = (np.sum(np.where(pts > 0, pts, 0) ** (1.0 - a), axis=1) - 1.0) / a
        return float(grid[np.argmax(eta)])

    p1 = best(np.arange(0.0, 1.0 + step / 2, step))
    p1 = best(np.clip(np.arange(p1 - step, p1 + step + refine / 2, refine), 0.0, 1.0))
    return slice_points(np.array([p1]))[0]
