"""Corpus and sample ingestion, rank-frequency tables, Zipf/Pareto fits and empirical Gini."""

from __future__ import annotations

import csv
import io
import math
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import DegenerateError, DomainError, EmptyInputError, InsufficientDataError, ValidationError
from .measures import Distribution

# runs of letters/digits; underscore and every other non-alphanumeric scalar split tokens
_TOKEN_RE = re.compile(r"[^\W_]+")


@dataclass(frozen=True)
class TokenizerOptions:
    casefold: bool = True
    min_length: int = 1


class RankEntry(NamedTuple):
    rank: int
    token: str | None
    frequency: int


@dataclass(frozen=True)
class RankFrequency:
    """Entries ranked 1..n by descending frequency."""

    entries: tuple[RankEntry, ...]

    def __post_init__(self):
        entries = tuple(RankEntry(*e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        for i, e in enumerate(entries, start=1):
            if e.rank != i:
                raise ValidationError(f"ranks must be contiguous from 1; got {e.rank} at position {i}")
            if not e.frequency > 0:
                raise ValidationError(f"frequency must be positive at rank {i}")
            if i > 1 and e.frequency > entries[i - 2].frequency:
                raise ValidationError(f"frequencies increase at rank {i}")

    @classmethod
    def from_counts(cls, counts: Mapping[str, int]) -> "RankFrequency":
        """Rank by descending count, ties broken by token order."""
        ordered = sorted(((tok, int(n)) for tok, n in counts.items() if n > 0), key=lambda kv: (-kv[1], kv[0]))
        return cls(tuple(RankEntry(r, tok, n) for r, (tok, n) in enumerate(ordered, start=1)))

    @classmethod
    def from_frequencies(cls, freqs: Iterable[int]) -> "RankFrequency":
        ordered = sorted((int(f) for f in freqs if f > 0), reverse=True)
        return cls(tuple(RankEntry(r, None, f) for r, f in enumerate(ordered, start=1)))

    @property
    def total(self) -> int:
        return sum(e.frequency for e in self.entries)

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([e.frequency for e in self.entries], dtype=float)

    def __len__(self) -> int:
        return len(self.entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rank", "token", "frequency"])
        for e in self.entries:
            w.writerow([e.rank, "" if e.token is None else e.token, e.frequency])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "RankFrequency":
        rows = list(csv.DictReader(io.StringIO(text)))
        return cls(tuple(RankEntry(int(r["rank"]), r["token"] or None, int(r["frequency"])) for r in rows))


def tokenize_corpus(text: bytes | str, opts: TokenizerOptions = TokenizerOptions()) -> RankFrequency:
    """Count case-folded alphanumeric tokens. Invalid UTF-8 is replaced, not rejected."""
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    if opts.casefold:
        text = text.casefold()
    counts = Counter(tok for tok in _TOKEN_RE.findall(text) if len(tok) >= opts.min_length)
    if not counts:
        raise EmptyInputError("no tokens in input")
    return RankFrequency.from_counts(counts)


def detokenize(rf: RankFrequency) -> str:
    """Text that tokenizes back to ``rf``: each token repeated by its frequency."""
    return "\n".join(" ".join([e.token] * e.frequency) for e in rf.entries if e.token is not None)


def empirical_distribution(rf: RankFrequency) -> Distribution:
    """p_r = n_r / N in rank order."""
    if len(rf) == 0 or rf.total <= 0:
        raise EmptyInputError("rank-frequency table is empty")
    return Distribution.from_weights(rf.frequencies)


def top_share(rf: RankFrequency, fraction: float) -> float:
    """Share of the total held by the top ceil(fraction * n) ranks."""
    if not (0.0 < fraction <= 1.0):
        raise DomainError("fraction must lie in (0, 1]")
    k = max(1, math.ceil(fraction * len(rf)))
    f = rf.frequencies
    return float(f[:k].sum() / f.sum())


class ZipfFit(NamedTuple):
    alpha: float
    x1: float
    r_squared: float
    window: tuple[int, int]


def default_zipf_window(n: int) -> tuple[int, int]:
    """Ranks 5..max(50, n//10), clipped to n; the full table when that leaves fewer than 3 ranks."""
    lo, hi = 5, min(max(50, n // 10), n)
    if hi - lo + 1 < 3:
        return 1, n
    return lo, hi


def fit_zipf(rf: RankFrequency, window: tuple[int, int] | None = None) -> ZipfFit:
    """Least squares of ln(frequency) on ln(rank) over an inclusive 1-based rank window."""
    n = len(rf)
    lo, hi = window if window is not None else default_zipf_window(n)
    lo, hi = max(1, int(lo)), min(n, int(hi))
    if hi - lo + 1 < 3:
        raise InsufficientDataError(f"Zipf fit needs at least 3 ranks in the window, got [{lo}, {hi}] of {n}")
    ranks = np.arange(lo, hi + 1, dtype=float)
    u = np.log(ranks)
    v = np.log(rf.frequencies[lo - 1:hi])
    du, dv = u - u.mean(), v - v.mean()
    slope = float(np.dot(du, dv) / np.dot(du, du))
    intercept = float(v.mean() - slope * u.mean())
    ss_res = float(np.sum((dv - slope * du) ** 2))
    ss_tot = float(np.dot(dv, dv))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return ZipfFit(alpha=-slope, x1=math.exp(intercept), r_squared=r2, window=(lo, hi))


@dataclass(frozen=True, eq=False)
class SampleSet:
    values: np.ndarray
    x_min: float | None = None

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if v.size == 0:
            raise EmptyInputError("sample set is empty")
        if not np.all(np.isfinite(v)) or np.any(v <= 0):
            raise ValidationError("sample values must be finite and positive")
        if self.x_min is not None and self.x_min > v.min():
            raise ValidationError(f"declared x_min {self.x_min} exceeds the sample minimum {v.min()}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def resolved_x_min(self) -> float:
        return float(self.values.min()) if self.x_min is None else float(self.x_min)

    def __len__(self) -> int:
        return int(self.values.size)


class HillFit(NamedTuple):
    beta: float
    std_err: float
    x_min: float
    n: int


def fit_pareto_hill(s: SampleSet) -> HillFit:
    """Pareto MLE beta = n / sum ln(x_i/x_min), standard error beta/sqrt(n)."""
    n = len(s)
    if n < 2:
        raise InsufficientDataError("Hill estimator needs at least 2 samples")
    xm = s.resolved_x_min
    if np.any(s.values < xm):
        raise ValidationError("sample contains values below x_min")
    log_sum = math.fsum(np.log(s.values / xm))
    if log_sum <= 0:
        raise DegenerateError("all samples equal x_min; tail index undefined")
    beta = n / log_sum
    return HillFit(beta=beta, std_err=beta / math.sqrt(n), x_min=xm, n=n)


def empirical_gini(s: SampleSet | Sequence[float]) -> float:
    """sum_ij |x_i - x_j| / (2 n^2 mean), via the sorted-rank identity."""
    x = np.sort(s.values if isinstance(s, SampleSet) else np.asarray(s, dtype=float))
    n = x.size
    if n < 2:
        raise InsufficientDataError("Gini needs at least 2 samples")
    total = math.fsum(x)
    if not total > 0:
        raise DomainError("Gini needs a positive mean")
    weights = 2.0 * np.arange(1, n + 1) - n - 1.0
    return max(float(np.dot(weights, x) / (n * total)), 0.0)


def parse_numbers(text: str) -> list[float]:
    """One value per line; blank lines and ``#`` comments ignored."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(float(line))
        except ValueError as exc:
            raise ValidationError(f"line {lineno}: not a number: {line!r}") from exc
    return out


def read_samples(path: str | Path, x_min: float | None = None) -> SampleSet:
    return SampleSet(parse_numbers(Path(path).read_text(encoding="utf-8")), x_min)


def read_count_table(path: str | Path) -> RankFrequency:
    """CSV rows ``token,count``; a non-numeric first row is treated as a header."""
    counts: Counter[str] = Counter()
    with open(path, newline="", encoding="utf-8") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if not row or row[0].startswith("#"):
                continue
            if len(row) < 2:
                raise ValidationError(f"row {i + 1}: expected token,count")
            try:
                n = int(row[1])
            except ValueError:
                if i == 0:
                    continue
                raise ValidationError(f"row {i + 1}: count {row[1]!r} is not an integer") from None
            if n < 0:
                raise ValidationError(f"row {i + 1}: negative count")
            counts[row[0]] += n
    if not counts or sum(counts.values()) == 0:
        raise EmptyInputError("count table is empty")
    return RankFrequency.from_counts(counts)
