"""Shannon and varentropy measures, discrete and continuous (Pareto) forms."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, DomainError, ValidationError
from .measures import Distribution, PdfSpec
from .quadrature import DEFAULT_QUAD, QuadratureConfig, integrate_interval

# S_V^P is reported as divergent below this beta
POLE_GUARD = 1e-9


@dataclass(frozen=True)
class VarentropyConfig:
    """Parameters of the continuous power-law varentropy.

    ``c`` is the constant value of the invariant-measure integral int rho*m dx; only
    that integral enters the result, so m itself is never needed.
    """

    b: float
    z: float
    c: float = 1.0
    A: float = 1.0

    def __post_init__(self):
        if self.b in (0.0, 1.0) or not math.isfinite(self.b):
            raise ValidationError(f"b must be finite and not 0 or 1, got {self.b}")
        if not (self.z > 0):
            raise ValidationError(f"normalization Z must be positive, got {self.z}")
        if self.A != 1.0:
            raise ValidationError("dimension constant A is fixed to 1")

    @classmethod
    def for_pareto(cls, beta: float, c: float = 1.0) -> "VarentropyConfig":
        """Z = 1/beta, b = 1/(beta + 1): the choice that makes (Z rho)**(-b) = x for unit scale."""
        return cls(b=1.0 / (beta + 1.0), z=1.0 / beta, c=c)


def _require_dist(p) -> None:
    if not isinstance(p, Distribution):
        raise ValidationError("expected a Distribution")


def shannon_discrete(p: Distribution) -> float:
    _require_dist(p)
    q = p.probs[p.probs > 0]
    return float(max(-np.sum(q * np.log(q)), 0.0))


def shannon_pareto(beta: float) -> float:
    """Differential entropy of the unit-scale Pareto density: 1 + 1/beta - ln beta."""
    if not (beta > 0):
        raise DomainError(f"beta must be positive, got {beta}")
    return -math.log(beta) + 1.0 + 1.0 / beta


def differential_entropy(pdf: PdfSpec, quad: QuadratureConfig = DEFAULT_QUAD) -> float:
    """-int rho ln rho dx by quadrature."""

    def integrand(x: float) -> float:
        r = pdf(x)
        return -r * math.log(r) if r > 0 else 0.0

    return integrate_interval(integrand, pdf.lower, pdf.upper, quad)


def varentropy_discrete(p: Distribution, b: float) -> float:
    """(sum p_i**(1-b) - 1)/(1-b) for 0 < b < 1; zero on degenerate p and as b -> 0."""
    _require_dist(p)
    if not (0.0 < b < 1.0):
        raise DomainError(f"varentropy exponent b must lie in (0, 1), got {b}")
    q = p.probs[p.probs > 0]
    # p**(1-b) - p = p*expm1(-b ln p) keeps the b -> 0 limit exact
    return float(max(np.sum(q * np.expm1(-b * np.log(q))), 0.0)) / (1.0 - b)


def varentropy_bs_pareto(beta: float, c: float = -1.0) -> float:
    """Boltzmann-Shannon varentropy of the unit-scale Pareto density, 1 + 1/beta + C.

    The default C = -1 leaves 1/beta = a/(1-a).
    """
    if not (beta > 0):
        raise DomainError(f"beta must be positive, got {beta}")
    if math.isinf(beta):
        return 1.0 + c
    return 1.0 + 1.0 / beta + c


def varentropy_power_numeric(
    pdf: PdfSpec, cfg: VarentropyConfig, quad: QuadratureConfig = DEFAULT_QUAD
) -> float:
    """(int rho (Z rho)**(-b) dx - C)/(1 - b) by quadrature."""
    b, z = cfg.b, cfg.z

    def integrand(x: float) -> float:
        r = pdf(x)
        return r * (z * r) ** (-b) if r > 0 else 0.0

    return (integrate_interval(integrand, pdf.lower, pdf.upper, quad) - cfg.c) / (1.0 - b)


def varentropy_power_pareto(beta: float, c: float = 1.0) -> float:
    """Power-law varentropy of the unit-scale Pareto density, (beta+1)/beta * (beta/(beta-1) - C).

    With the default C = 1 this is (beta+1)/(beta(beta-1)). Raises DivergenceError for
    beta <= 1 + 1e-9.
    """
    if not (beta > 0):
        raise DomainError(f"beta must be positive, got {beta}")
    if beta <= 1.0 + POLE_GUARD:
        raise DivergenceError(f"power-law varentropy diverges as beta -> 1+ (beta = {beta})", sign=1)
    if math.isinf(beta):
        return 1.0 - c
    return (beta + 1.0) / beta * (beta / (beta - 1.0) - c)
