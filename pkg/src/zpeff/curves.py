"""Figure data as tables: efficiency, Gini and entropy curves over p, a and beta grids.

Divergent points are stored as signed infinities and rendered as ``inf``/``-inf``
in CSV and as ``null`` plus a per-column divergence sign in JSON.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .entropy import shannon_pareto, varentropy_bs_pareto, varentropy_power_pareto
from .errors import DivergenceError, DomainError, ValidationError
from .measures import Distribution, discrete_efficiency
from .pareto import a_from_beta, gini_from_beta, zp_efficiency, zp_efficiency_from_a

FIGURE_A_VALUES = tuple(round(0.1 * k, 1) for k in range(1, 10))
BETA_MAX = 50.0
MIN_GRID = 10


def fmt(v: float) -> str:
    return f"{v:.9g}"


@dataclass(frozen=True)
class CurveTable:
    """Named equal-length columns; the first column is the strictly increasing grid."""

    name: str
    columns: dict[str, list[float]]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.columns:
            raise ValidationError("curve table has no columns")
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) != 1:
            raise ValidationError(f"columns have unequal lengths {sorted(lengths)}")
        grid = np.asarray(next(iter(self.columns.values())), dtype=float)
        if np.any(np.diff(grid) <= 0):
            raise ValidationError("grid column must be strictly increasing")

    @property
    def grid_name(self) -> str:
        return next(iter(self.columns))

    def __len__(self) -> int:
        return len(next(iter(self.columns.values())))

    def rows(self):
        return zip(*self.columns.values())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(self.columns))
        for row in self.rows():
            w.writerow([fmt(v) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, name: str = "") -> "CurveTable":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        cols: dict[str, list[float]] = {h: [] for h in header}
        for row in reader:
            for h, cell in zip(header, row):
                cols[h].append(float(cell))
        return cls(name, cols)

    def to_dict(self) -> dict:
        data, diverges = {}, {}
        for k, vals in self.columns.items():
            data[k] = [v if math.isfinite(v) else None for v in vals]
            diverges[k] = [0 if math.isfinite(v) else int(math.copysign(1, v)) for v in vals]
        return {"name": self.name, "metadata": self.metadata, "columns": data, "diverges": diverges}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, obj: dict) -> "CurveTable":
        cols = {}
        for k, vals in obj["columns"].items():
            signs = obj.get("diverges", {}).get(k, [0] * len(vals))
            cols[k] = [float(v) if v is not None else math.copysign(math.inf, s or 1) for v, s in zip(vals, signs)]
        return cls(obj.get("name", ""), cols, obj.get("metadata", {}))


def _or_inf(fn: Callable[[float], float], x: float) -> float:
    try:
        return fn(x)
    except DivergenceError as exc:
        return math.copysign(math.inf, exc.sign or 1)


def _beta_grid(grid: int) -> np.ndarray:
    # beta = 1 is kept as the first point so the pole shows up as a marker
    return 1.0 + (BETA_MAX - 1.0) * np.arange(grid) / (grid - 1)


def _figure1(grid: int) -> CurveTable:
    p = np.arange(1, grid + 1) / (grid + 1)
    cols: dict[str, list[float]] = {"p": p.tolist()}
    dists = [Distribution([pk, 1.0 - pk]) for pk in p]
    for a in FIGURE_A_VALUES:
        cols[f"eta_a{a:g}"] = [discrete_efficiency(d, a) for d in dists]
    return CurveTable("figure1", cols, {"figure": 1, "grid": grid, "states": 2, "a": list(FIGURE_A_VALUES)})


def _figure2(grid: int) -> CurveTable:
    a = 0.5 * np.arange(grid) / (grid - 1)
    cols = {
        "a": a.tolist(),
        "beta": [math.inf if ak == 0 else 1.0 / ak - 1.0 for ak in a],
        "eta": [_or_inf(zp_efficiency_from_a, ak) for ak in a],
    }
    return CurveTable("figure2", cols, {"figure": 2, "grid": grid, "a_range": [0.0, 0.5]})


def _figure345(figure: int, grid: int) -> CurveTable:
    beta = _beta_grid(grid)
    cols = {
        "beta": beta.tolist(),
        "a": [a_from_beta(b) for b in beta],
    }
    if figure == 3:
        cols["gini"] = [gini_from_beta(b) for b in beta]
    cols["eta"] = [_or_inf(zp_efficiency, b) for b in beta]
    if figure == 4:
        cols["shannon"] = [shannon_pareto(b) for b in beta]
    if figure == 5:
        cols["varentropy_bs"] = [varentropy_bs_pareto(b) for b in beta]
        cols["varentropy_power"] = [_or_inf(varentropy_power_pareto, b) for b in beta]
    return CurveTable(f"figure{figure}", cols, {"figure": figure, "grid": grid, "beta_range": [1.0, BETA_MAX]})


def emit_curves(figure: int, grid: int = 200) -> CurveTable:
    """Data table for figure 1..5 on ``grid`` points."""
    if figure not in (1, 2, 3, 4, 5):
        raise DomainError(f"figure must be 1..5, got {figure}")
    if grid < MIN_GRID:
        raise DomainError(f"grid must be >= {MIN_GRID}, got {grid}")
    if figure == 1:
        return _figure1(grid)
    if figure == 2:
        return _figure2(grid)
    return _figure345(figure, grid)
