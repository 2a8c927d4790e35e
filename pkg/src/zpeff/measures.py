"""Efficiency functional: engine ratio, composition law, per-state and ensemble forms.

The per-state efficiency of a state with probability p is ``(p**-a - 1) / a``;
its probability-weighted average gives the discrete functional
``(sum(p**(1 - a)) - 1) / a`` and the continuous one ``(int rho**(1 - a) - 1) / a``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, ValidationError
from .quadrature import DEFAULT_QUAD, QuadratureConfig, integrate_interval

NORMALIZATION_TOL = 1e-12
# below this |a| the analytic a -> 0 branch (Shannon form) is used
SMALL_A = 1e-10


@dataclass(frozen=True)
class EfficiencyParams:
    """Loss coefficient ``a`` with optional enforcement of the Zipf-Pareto range 0 < a < 1/2."""

    a: float
    strict_range: bool = False

    def __post_init__(self):
        if not math.isfinite(self.a):
            raise DomainError(f"a must be finite, got {self.a}")
        if self.strict_range and not (0.0 < self.a < 0.5):
            raise DomainError(f"strict range requires 0 < a < 0.5, got {self.a}")


def _coef(a: float | EfficiencyParams) -> float:
    return a.a if isinstance(a, EfficiencyParams) else float(a)


@dataclass(frozen=True, eq=False)
class Distribution:
    """Normalized probability vector, optionally paired with achievement values x_i.

    No silent renormalization: use :meth:`from_weights` to normalize raw counts.
    """

    probs: np.ndarray
    values: np.ndarray | None = field(default=None)

    def __post_init__(self):
        p = np.array(self.probs, dtype=float).ravel()
        if p.size == 0:
            raise ValidationError("distribution must have at least one state")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise ValidationError("probabilities must be finite and non-negative")
        total = math.fsum(p)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValidationError(f"probabilities sum to {total!r}, not 1 (tolerance {NORMALIZATION_TOL})")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)
        if self.values is not None:
            x = np.array(self.values, dtype=float).ravel()
            if x.shape != p.shape:
                raise ValidationError(f"{x.size} values for {p.size} probabilities")
            if not np.all(np.isfinite(x)):
                raise ValidationError("values must be finite")
            x.setflags(write=False)
            object.__setattr__(self, "values", x)

    @classmethod
    def from_weights(cls, weights: Sequence[float], values: Sequence[float] | None = None) -> "Distribution":
        w = np.asarray(weights, dtype=float)
        if w.size == 0 or np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValidationError("weights must be finite and non-negative")
        total = w.sum()
        if total <= 0:
            raise ValidationError("weights sum to zero")
        p = w / total
        # push the rounding residue onto the largest entry so the sum is exact to ~1 ulp
        p[np.argmax(p)] += 1.0 - math.fsum(p)
        return cls(p, values)

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        if n < 1:
            raise ValidationError("uniform distribution needs n >= 1")
        return cls(_uniform_exact(n))

    @classmethod
    def degenerate(cls, n: int, index: int = 0) -> "Distribution":
        p = np.zeros(n)
        p[index] = 1.0
        return cls(p)

    def renormalized(self) -> "Distribution":
        return Distribution.from_weights(self.probs, self.values)

    @property
    def size(self) -> int:
        return int(self.probs.size)

    def is_degenerate(self) -> bool:
        return int(np.count_nonzero(self.probs)) == 1

    def mean(self) -> float:
        if self.values is None:
            raise ValidationError("distribution carries no achievement values")
        return float(np.dot(self.probs, self.values))

    def __len__(self) -> int:
        return self.size


def _uniform_exact(n: int) -> np.ndarray:
    p = np.full(n, 1.0 / n)
    p[0] += 1.0 - math.fsum(p)
    return p


@dataclass(frozen=True)
class EngineExchange:
    """One engine cycle: work delivered and heat absorbed."""

    work: float
    heat: float

    def __post_init__(self):
        if not (self.heat > 0):
            raise DomainError(f"heat must be strictly positive, got {self.heat}")

    def inverse(self) -> "EngineExchange":
        """Roles swapped, giving the heat-per-work ratio."""
        return EngineExchange(work=self.heat, heat=self.work)


@dataclass(frozen=True)
class PdfSpec:
    """Probability density on [lower, upper]; upper may be ``math.inf``.

    Normalization is checked by quadrature on construction unless ``check=False``.
    """

    density: Callable[[float], float]
    lower: float
    upper: float = math.inf
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValidationError("support must satisfy lower < upper")
        if self.check:
            mass = integrate_interval(self.density, self.lower, self.upper)
            if abs(mass - 1.0) > 1e-9:
                raise ValidationError(f"density integrates to {mass!r}, not 1")

    def __call__(self, x: float) -> float:
        return self.density(x)


def engine_efficiency(e: EngineExchange) -> float:
    return e.work / e.heat


def compose_efficiency(eta1: float, eta2: float, a: float | EfficiencyParams) -> float:
    """Efficiency of two engines in series: eta1 + eta2 + a*eta1*eta2.

    a = -1 gives the reversible (Carnot) rule 1 - (1 - eta1)(1 - eta2).
    """
    a = _coef(a)
    if not all(math.isfinite(v) for v in (eta1, eta2, a)):
        raise DomainError("efficiencies and a must be finite")
    return eta1 + eta2 + a * eta1 * eta2


def per_state_efficiency(p: float, a: float | EfficiencyParams) -> float:
    """(p**-a - 1)/a, or -ln p when |a| < 1e-10."""
    a = _coef(a)
    if not (0.0 < p <= 1.0):
        raise DomainError(f"per-state efficiency needs 0 < p <= 1, got {p}")
    if abs(a) < SMALL_A:
        return -math.log(p)
    # expm1 keeps precision when a*ln p is small
    return math.expm1(-a * math.log(p)) / a


def _check_discrete_a(a: float) -> None:
    if not (0.0 <= a <= 1.0):
        raise DomainError(f"discrete efficiency needs 0 <= a <= 1, got {a}")


def discrete_efficiency(p: Distribution, a: float | EfficiencyParams) -> float:
    """Ensemble efficiency (sum p_i**(1-a) - 1)/a; zero-probability states contribute 0.

    For a -> 0 the Shannon entropy -sum p ln p is returned. At a = 1 the value is the
    number of occupied states minus one.
    """
    if not isinstance(p, Distribution):
        raise ValidationError("expected a Distribution")
    a = _coef(a)
    _check_discrete_a(a)
    q = p.probs[p.probs > 0]
    if abs(a) < SMALL_A:
        return float(-np.sum(q * np.log(q)))
    # sum p (p^-a - 1)/a == sum p expm1(-a ln p)/a, accurate for small a
    value = float(np.sum(q * np.expm1(-a * np.log(q)))) / a
    return max(value, 0.0)


def continuous_efficiency(
    pdf: PdfSpec, a: float | EfficiencyParams, quad: QuadratureConfig = DEFAULT_QUAD
) -> float:
    """(int rho**(1-a) dx - 1)/a by adaptive quadrature; may be negative.

    Raises DivergenceError when the integral of rho**(1-a) does not converge.
    """
    a = _coef(a)
    if not (0.0 < a < 1.0):
        raise DomainError(f"continuous efficiency needs 0 < a < 1, got {a}")
    expo = 1.0 - a

    def integrand(x: float) -> float:
        r = pdf(x)
        return r**expo if r > 0 else 0.0

    return (integrate_interval(integrand, pdf.lower, pdf.upper, quad) - 1.0) / a
