"""Lesche stability of the discrete efficiency functional.

Analytic side: the uniform-distribution supremum, the Hoelder-type bound on
sum |p_i**(1-a) - q_i**(1-a)| and the constant M bounding x**a/|1 - x**a| on
[2, inf). Empirical side: a seeded Monte Carlo harness drawing L1-close pairs
and comparing the normalized efficiency gap with M * delta**(1-a).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateError, DomainError, ValidationError
from .measures import Distribution, discrete_efficiency

# slack for floating-point comparison of ratio against analytic bounds
BOUND_RTOL = 1e-9
# adversarial pairs sit just inside the L1 budget
INSIDE = 0.999


def _check_a(a: float) -> None:
    if not (0.0 < a < 1.0):
        raise DomainError(f"a must lie in (0, 1), got {a}")


def _as_probs(p) -> np.ndarray:
    return p.probs if isinstance(p, Distribution) else np.asarray(p, dtype=float)


def efficiency_sup(N: int, a: float) -> float:
    """Maximum of the efficiency over N-state distributions, (N**a - 1)/a."""
    _check_a(a)
    if N < 1:
        raise DomainError("N must be >= 1")
    return math.expm1(a * math.log(N)) / a


def lemma1_gap(p, q, a: float) -> tuple[float, float]:
    """Both sides of sum|p_i**(1-a) - q_i**(1-a)| <= N**a * ||p - q||_1**(1-a)."""
    _check_a(a)
    p, q = _as_probs(p), _as_probs(q)
    if p.shape != q.shape:
        raise ValidationError(f"support sizes differ: {p.size} vs {q.size}")
    lhs = float(np.sum(np.abs(p ** (1.0 - a) - q ** (1.0 - a))))
    rhs = p.size**a * float(np.sum(np.abs(p - q))) ** (1.0 - a)
    return lhs, rhs


def lemma2_function(x, a: float):
    xa = np.power(x, a)
    return xa / np.abs(1.0 - xa)


def lemma2_bound(a: float) -> float:
    """M = 2**a/(2**a - 1), the value at x = 2 of the decreasing map x**a/|1 - x**a|."""
    _check_a(a)
    return 2.0**a / math.expm1(a * math.log(2.0))


def lemma2_bound_numeric(a: float, hi: float = 1e6, points: int = 200_001) -> float:
    """Grid maximum of x**a/|1 - x**a| over [2, hi]; cross-check for :func:`lemma2_bound`."""
    _check_a(a)
    xs = np.geomspace(2.0, hi, points)
    return float(np.max(lemma2_function(xs, a)))


def stability_ratio(p, q, a: float) -> float:
    """|E(p) - E(q)| / E_N,max for two distributions on the same N >= 2 states."""
    _check_a(a)
    pd = p if isinstance(p, Distribution) else Distribution(p)
    qd = q if isinstance(q, Distribution) else Distribution(q)
    if pd.size != qd.size:
        raise ValidationError(f"support sizes differ: {pd.size} vs {qd.size}")
    if pd.size < 2:
        raise DegenerateError("stability ratio needs N >= 2 (the supremum is 0 for N = 1)")
    # E(p) - E(q) = (sum p^(1-a) - sum q^(1-a)) / a; the 1/a cancels against the supremum
    gap = abs(math.fsum(pd.probs ** (1.0 - a)) - math.fsum(qd.probs ** (1.0 - a)))
    return gap / math.expm1(a * math.log(pd.size))


def chain_bound(N: int, dist: float, a: float) -> float:
    """N**a * dist**(1-a) / (N**a - 1), the middle link of the stability proof."""
    na = N**a
    return na * dist ** (1.0 - a) / (na - 1.0)


def delta_for_epsilon(epsilon: float, a: float) -> float:
    """The L1 budget (epsilon/M)**(1/(1-a)) guaranteeing ratio < epsilon for every N."""
    _check_a(a)
    if not (epsilon > 0):
        raise DomainError("epsilon must be positive")
    return (epsilon / lemma2_bound(a)) ** (1.0 / (1.0 - a))


def project_to_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.size + 1)
    rho = np.count_nonzero(u - css / idx > 0)
    theta = css[rho - 1] / rho
    return np.maximum(v - theta, 0.0)


def _renorm(x: np.ndarray) -> np.ndarray:
    x = x / x.sum()
    x[np.argmax(x)] += 1.0 - math.fsum(x)
    return x


def perturbed_pair(N: int, delta: float, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Dirichlet(1,...,1) point p and a simplex point q with ||p - q||_1 < delta."""
    p = _renorm(rng.dirichlet(np.ones(N)))
    e = rng.exponential(size=N + 1)
    signs = rng.choice((-1.0, 1.0), size=N)
    step = delta * signs * e[:N] / e.sum()
    q = _renorm(project_to_simplex(p + step))
    dist = float(np.sum(np.abs(p - q)))
    if dist >= delta:
        q = _renorm(p + (q - p) * (INSIDE * delta / dist))
    return p, q


def adversarial_pairs(N: int, delta: float) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairs pushing mass into empty states or off the uniform point, where the gap is largest."""
    d = INSIDE * delta / 2.0
    pairs = []
    corner = np.zeros(N)
    corner[0] = 1.0
    # corner -> mass spread over all empty states
    spread = np.full(N, d / (N - 1))
    spread[0] = 1.0 - d
    pairs.append((corner, _renorm(spread)))
    # corner -> mass moved into a single empty state
    single = corner.copy()
    single[0], single[1] = 1.0 - d, d
    pairs.append((corner, single))
    uniform = np.full(N, 1.0 / N)
    # uniform -> mass exchanged between two states
    shift = min(d, 1.0 / N)
    moved = uniform.copy()
    moved[0] += shift
    moved[1] -= shift
    pairs.append((uniform, _renorm(moved)))
    # uniform -> towards the corner
    t = INSIDE * delta / (2.0 * (1.0 - 1.0 / N))
    pairs.append((uniform, _renorm((1.0 - min(t, 1.0)) * uniform + min(t, 1.0) * corner)))
    return pairs


@dataclass(frozen=True)
class StabilityTrialConfig:
    a: float
    n_values: tuple[int, ...]
    delta: float
    trials: int = 100
    seed: int = 0

    def __post_init__(self):
        _check_a(self.a)
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        if not (self.delta > 0):
            raise ValidationError("delta must be positive")
        if not self.n_values or any(n < 2 for n in self.n_values):
            raise ValidationError("every support size must be >= 2")
        if self.trials < 1:
            raise ValidationError("trials must be >= 1")


@dataclass(frozen=True)
class StabilityCell:
    n: int
    delta: float
    max_ratio: float
    lemma1_bound: float
    m_delta_bound: float
    chain_ok: bool
    passed: bool
    max_l1: float = field(default=0.0)


@dataclass(frozen=True)
class StabilityReport:
    a: float
    cells: tuple[StabilityCell, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    @property
    def max_ratio(self) -> float:
        return max(c.max_ratio for c in self.cells)

    def to_dict(self) -> dict:
        return {"a": self.a, "passed": self.passed, "cells": [asdict(c) for c in self.cells]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "delta", "max_ratio", "lemma1_bound", "m_delta_bound", "pass"])
        for c in self.cells:
            w.writerow([c.n, f"{c.delta:.9g}", f"{c.max_ratio:.9g}", f"{c.lemma1_bound:.9g}",
                        f"{c.m_delta_bound:.9g}", str(c.passed).lower()])
        return buf.getvalue()


def _run_cell(cfg: StabilityTrialConfig, cell_index: int, N: int) -> StabilityCell:
    a, delta = cfg.a, cfg.delta
    M = lemma2_bound(a)
    pairs = adversarial_pairs(N, delta)
    for t in range(cfg.trials):
        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, cell_index, t]))
        pairs.append(perturbed_pair(N, delta, rng))
    max_ratio = max_l1 = 0.0
    chain_ok = True
    for p, q in pairs:
        dist = float(np.sum(np.abs(p - q)))
        ratio = stability_ratio(p, q, a)
        bound = chain_bound(N, dist, a)
        chain_ok &= ratio <= bound * (1 + BOUND_RTOL) + 1e-15 and bound <= M * dist ** (1 - a) * (1 + BOUND_RTOL)
        max_ratio = max(max_ratio, ratio)
        max_l1 = max(max_l1, dist)
    m_delta = M * delta ** (1.0 - a)
    return StabilityCell(
        n=N,
        delta=delta,
        max_ratio=max_ratio,
        lemma1_bound=chain_bound(N, delta, a),
        m_delta_bound=m_delta,
        chain_ok=bool(chain_ok),
        passed=bool(chain_ok and max_ratio < m_delta and max_l1 < delta),
        max_l1=max_l1,
    )


def run_stability_trials(cfg: StabilityTrialConfig) -> StabilityReport:
    """Run every (N, delta) cell; each trial seeds itself from (seed, cell, trial)."""
    cells = tuple(_run_cell(cfg, i, N) for i, N in enumerate(cfg.n_values))
    return StabilityReport(a=cfg.a, cells=cells)
