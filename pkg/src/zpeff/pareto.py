"""Pareto/Zipf model algebra, closed-form ZP efficiency, Gini coupling and thresholds."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .entropy import shannon_pareto
from .errors import DivergenceError, DomainError, ValidationError
from .measures import PdfSpec
from .rootfind import solve_bracketed_root

__all__ = [
    "ParetoModel",
    "ZipfModel",
    "a_from_beta",
    "appendix_g",
    "beta_from_a",
    "gini_from_beta",
    "solve_bracketed_root",
    "zero_efficiency_threshold",
    "zero_shannon_threshold",
    "zipf_curve",
    "zp_efficiency",
    "zp_efficiency_from_a",
]

# bracket for the zero of g; endpoint signs are re-checked on every solve
G_BRACKET = (0.01, 0.49)
SHANNON_BRACKET = (1.0 + 1e-9, 10.0)


def beta_from_a(a: float) -> float:
    """Tail index beta = 1/a - 1 for 0 < a < 1."""
    if not (0.0 < a < 1.0):
        raise DomainError(f"a must lie in (0, 1), got {a}")
    return 1.0 / a - 1.0


def a_from_beta(beta: float) -> float:
    """Inverse of :func:`beta_from_a`: a = 1/(beta + 1)."""
    if not (beta > 0 and math.isfinite(beta)):
        raise DomainError(f"beta must be positive and finite, got {beta}")
    return 1.0 / (beta + 1.0)


@dataclass(frozen=True)
class ParetoModel:
    """Continuous Pareto law with P(X > x) = (x_min/x)**beta on [x_min, inf)."""

    beta: float
    x_min: float = 1.0

    def __post_init__(self):
        if not (self.x_min > 0 and math.isfinite(self.x_min)):
            raise ValidationError(f"x_min must be positive, got {self.x_min}")
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ValidationError(f"beta must be positive, got {self.beta}")

    @property
    def a(self) -> float:
        return a_from_beta(self.beta)

    def _check_support(self, x: float) -> None:
        if x < self.x_min:
            raise DomainError(f"x = {x} is below x_min = {self.x_min}")

    def ccdf(self, x: float) -> float:
        self._check_support(x)
        return (self.x_min / x) ** self.beta

    def pdf(self, x: float) -> float:
        self._check_support(x)
        return self.beta * self.x_min**self.beta * x ** (-(self.beta + 1.0))

    def sample(self, n: int, seed: int = 0) -> np.ndarray:
        """Inverse-CDF draws x_min * u**(-1/beta), u uniform on (0, 1]."""
        if n < 1:
            raise DomainError("sample size must be >= 1")
        u = 1.0 - np.random.default_rng(seed).random(n)
        return self.x_min * u ** (-1.0 / self.beta)

    def as_pdf(self, check: bool = False) -> PdfSpec:
        xm, b = self.x_min, self.beta
        coef = b * xm**b
        return PdfSpec(lambda x: coef * x ** (-(b + 1.0)) if x >= xm else 0.0, xm, math.inf, check=check)

    def to_json(self) -> str:
        return json.dumps({"x_min": self.x_min, "beta": self.beta})

    @classmethod
    def from_json(cls, text: str | dict) -> "ParetoModel":
        obj = json.loads(text) if isinstance(text, str) else text
        try:
            return cls(beta=float(obj["beta"]), x_min=float(obj.get("x_min", 1.0)))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed Pareto model: {obj!r}") from exc


@dataclass(frozen=True)
class ZipfModel:
    """Rank law x_r = x1 / r**alpha."""

    x1: float
    alpha: float

    def __post_init__(self):
        if not (self.x1 > 0 and self.alpha > 0):
            raise ValidationError("Zipf model needs x1 > 0 and alpha > 0")

    def value(self, r: float) -> float:
        return self.x1 / r**self.alpha


def zipf_curve(z: ZipfModel, R: int) -> list[tuple[int, float]]:
    if R < 1:
        raise DomainError("R must be >= 1")
    return [(r, z.value(r)) for r in range(1, R + 1)]


def zp_efficiency(beta: float) -> float:
    """Efficiency of the unit-scale Pareto density: (beta+1)[beta**(-1/(beta+1)) beta/(beta-1) - 1].

    Raises DivergenceError (sign +1) for beta <= 1.
    """
    if not (beta > 0):
        raise DomainError(f"beta must be positive, got {beta}")
    if beta <= 1.0:
        raise DivergenceError(f"ZP efficiency diverges for beta <= 1 (beta = {beta})", sign=1)
    if math.isinf(beta):
        raise DivergenceError("ZP efficiency diverges as beta -> inf", sign=-1)
    return (beta + 1.0) * (math.exp(-math.log(beta) / (beta + 1.0)) * beta / (beta - 1.0) - 1.0)


def zp_efficiency_from_a(a: float) -> float:
    """Same closed form in terms of a: (1/a)[(a/(1-a))**a (1-a)/(1-2a) - 1]."""
    if a <= 0.0:
        raise DivergenceError("ZP efficiency diverges as a -> 0", sign=-1)
    if a >= 0.5:
        raise DivergenceError("ZP efficiency diverges for a >= 1/2", sign=1)
    return ((a / (1.0 - a)) ** a * (1.0 - a) / (1.0 - 2.0 * a) - 1.0) / a


def gini_from_beta(beta: float) -> float:
    """Gini coefficient of a Pareto law, 1/(2 beta - 1)."""
    if not (beta > 0.5):
        raise DomainError(f"Gini of a Pareto law needs beta > 1/2, got {beta}")
    if math.isinf(beta):
        return 0.0
    return 1.0 / (2.0 * beta - 1.0)


def appendix_g(x: float) -> float:
    """x**x (1-x)**(1-x) - (1 - 2x); its zero in (0, 1/2) is where ZP efficiency vanishes."""
    if x == 0.0:
        return 0.0
    return x**x * (1.0 - x) ** (1.0 - x) - (1.0 - 2.0 * x)


def zero_efficiency_threshold(tol: float = 1e-12) -> float:
    """The unique a* in (0, 1/2) with zp_efficiency(1/a* - 1) = 0."""
    if not (tol > 0):
        raise DomainError("tol must be positive")
    lo, hi = G_BRACKET
    if not (appendix_g(lo) < 0 < appendix_g(hi)):
        raise AssertionError("g does not change sign on its fixed bracket")
    return solve_bracketed_root(appendix_g, lo, hi, tol)


def zero_shannon_threshold(tol: float = 1e-12) -> float:
    """beta* solving ln beta = 1 + 1/beta, where the Pareto differential entropy changes sign."""
    if not (tol > 0):
        raise DomainError("tol must be positive")
    return solve_bracketed_root(shannon_pareto, *SHANNON_BRACKET, tol)
