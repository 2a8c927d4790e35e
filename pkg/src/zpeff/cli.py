"""Command-line entry point.

Subcommands: measure, curves, fit, stability, roots, maximize. Results go to
stdout as CSV (default) or JSON; diagnostics go to stderr unless --quiet.
Exit status: 0 success, 1 domain/validation/IO error, 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .curves import emit_curves, fmt
from .entropy import shannon_discrete, shannon_pareto, varentropy_discrete
from .errors import DivergenceError, ZPError
from .ingest import (
    SampleSet,
    empirical_distribution,
    empirical_gini,
    fit_pareto_hill,
    fit_zipf,
    parse_numbers,
    read_count_table,
    read_samples,
    tokenize_corpus,
    top_share,
)
from .measures import Distribution, discrete_efficiency
from .pareto import (
    a_from_beta,
    appendix_g,
    beta_from_a,
    gini_from_beta,
    zero_efficiency_threshold,
    zero_shannon_threshold,
    zp_efficiency,
)
from .stability import StabilityTrialConfig, delta_for_epsilon, efficiency_sup, run_stability_trials
from .variational import VariationalProblem, solve_stationary, verify_power_law

log = logging.getLogger("zpeff")


class UsageError(Exception):
    pass


def _csv_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None


def _numbers_or_file(text: str) -> list[float]:
    path = Path(text)
    if path.is_file():
        return parse_numbers(path.read_text(encoding="utf-8"))
    return _csv_list(text)


def _emit_pairs(pairs: list[tuple[str, object]], fmt_name: str) -> str:
    """Two-column quantity,value output."""
    if fmt_name == "json":
        return json.dumps({k: _jsonable(v) for k, v in pairs}, indent=2) + "\n"
    lines = ["quantity,value"]
    for k, v in pairs:
        lines.append(f"{k},{fmt(v) if isinstance(v, float) else v}")
    return "\n".join(lines) + "\n"


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def _or_inf(fn, x: float) -> float:
    try:
        return fn(x)
    except DivergenceError as exc:
        return math.copysign(math.inf, exc.sign or 1)


def cmd_measure(args) -> str:
    if (args.dist is None) == (args.input is None):
        raise UsageError("measure needs exactly one of --dist and --input")
    probs = args.dist if args.dist is not None else parse_numbers(Path(args.input).read_text(encoding="utf-8"))
    p = Distribution.from_weights(probs) if args.normalize else Distribution(probs)
    b = args.a if args.b is None else args.b
    pairs: list[tuple[str, object]] = [
        ("states", p.size),
        ("a", float(args.a)),
        ("efficiency", discrete_efficiency(p, args.a)),
        ("efficiency_sup", efficiency_sup(p.size, args.a) if 0 < args.a < 1 else math.nan),
        ("shannon", shannon_discrete(p)),
        ("b", float(b)),
        ("varentropy", varentropy_discrete(p, b)),
    ]
    return _emit_pairs(pairs, args.format)


def cmd_curves(args) -> str:
    table = emit_curves(args.figure, args.grid)
    return table.to_json() + "\n" if args.format == "json" else table.to_csv()


def cmd_fit(args) -> str:
    sources = [s for s in (args.corpus, args.samples, args.counts) if s is not None]
    if len(sources) != 1:
        raise UsageError("fit needs exactly one of --corpus, --samples, --counts")
    if args.samples is not None:
        s = read_samples(args.samples, args.xmin)
        hill = fit_pareto_hill(s)
        pairs = [
            ("n", hill.n),
            ("x_min", hill.x_min),
            ("beta", hill.beta),
            ("std_err", hill.std_err),
            ("a", a_from_beta(hill.beta)),
            ("gini_empirical", empirical_gini(s)),
            ("gini_pareto", gini_from_beta(hill.beta) if hill.beta > 0.5 else math.nan),
            ("zp_efficiency", _or_inf(zp_efficiency, hill.beta)),
        ]
        return _emit_pairs(pairs, args.format)
    if args.corpus is not None:
        rf = tokenize_corpus(Path(args.corpus).read_bytes())
    else:
        rf = read_count_table(args.counts)
    if args.dump:
        Path(args.dump).write_text(rf.to_csv(), encoding="utf-8")
        log.info("wrote rank-frequency table to %s", args.dump)
    zf = fit_zipf(rf, args.window)
    p = empirical_distribution(rf)
    pairs = [
        ("tokens", rf.total),
        ("types", len(rf)),
        ("alpha", zf.alpha),
        ("x1", zf.x1),
        ("r_squared", zf.r_squared),
        ("window_lo", zf.window[0]),
        ("window_hi", zf.window[1]),
        ("top20_share", top_share(rf, 0.2)),
        ("shannon", shannon_discrete(p)),
    ]
    return _emit_pairs(pairs, args.format)


def cmd_stability(args) -> str:
    delta = args.delta if args.delta is not None else delta_for_epsilon(args.epsilon, args.a)
    cfg = StabilityTrialConfig(a=args.a, n_values=tuple(int(n) for n in args.sizes), delta=delta,
                               trials=args.trials, seed=args.seed)
    report = run_stability_trials(cfg)
    if not report.passed:
        log.warning("stability bound violated in at least one cell")
    return report.to_json() + "\n" if args.format == "json" else report.to_csv()


def cmd_roots(args) -> str:
    a_star = zero_efficiency_threshold(args.tol)
    beta_star = beta_from_a(a_star)
    pairs = [
        ("a_star", a_star),
        ("beta_star", beta_star),
        ("gini_star", gini_from_beta(beta_star)),
        ("zp_efficiency_at_beta_star", zp_efficiency(beta_star)),
        ("g_residual", appendix_g(a_star)),
        ("shannon_zero_beta", zero_shannon_threshold(args.tol)),
    ]
    pairs.append(("shannon_at_zero_beta", shannon_pareto(pairs[-1][1])))
    return _emit_pairs(pairs, args.format)


def cmd_maximize(args) -> str:
    if (args.mean is None) == (args.multiplier is None):
        raise UsageError("maximize needs exactly one of --mean and --multiplier")
    prob = VariationalProblem(np.asarray(args.values), args.a, mean_target=args.mean, multiplier=args.multiplier)
    sol = solve_stationary(prob, args.tol)
    ccdf_beta = verify_power_law(sol) if sol.values.size >= 10 and math.isfinite(sol.shift) else math.nan
    log.info("efficiency %.9g, density exponent %.9g, ccdf exponent %.9g (target %.9g), residual %.3g",
             discrete_efficiency(sol.distribution, args.a), sol.fitted_exponent, ccdf_beta,
             1.0 / args.a - 1.0, sol.residual)
    if args.format == "json":
        obj = sol.to_dict()
        obj["efficiency"] = discrete_efficiency(sol.distribution, args.a)
        obj["ccdf_exponent"] = _jsonable(ccdf_beta)
        return json.dumps(obj, indent=2) + "\n"
    return sol.to_csv()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="zpeff", description="Zipf-Pareto efficiency toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--quiet", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", parents=[common], help="efficiency and entropies of a distribution")
    p.add_argument("--dist", type=_csv_list, help="comma-separated probabilities")
    p.add_argument("--input", help="file with one probability (or weight, with --normalize) per line")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, help="varentropy exponent (default: a)")
    p.add_argument("--normalize", action="store_true", help="treat inputs as weights and normalize")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("curves", parents=[common], help="figure data tables")
    p.add_argument("--figure", type=int, required=True, choices=range(1, 6))
    p.add_argument("--grid", type=int, default=200)
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("fit", parents=[common], help="Zipf fit of a corpus or Hill fit of samples")
    p.add_argument("--corpus", help="UTF-8 text file")
    p.add_argument("--samples", help="numeric sample file, one value per line")
    p.add_argument("--counts", help="CSV table token,count")
    p.add_argument("--xmin", type=float)
    p.add_argument("--window", type=_window, help="rank window lo:hi for the Zipf fit")
    p.add_argument("--dump", help="write the rank-frequency table (rank,token,frequency) here")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("stability", parents=[common], help="Monte Carlo Lesche-stability check")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--delta", type=float, help="L1 budget (default: derived from --epsilon)")
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--sizes", type=_csv_list, default=[2, 100, 10000])
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("roots", parents=[common], help="sign-change thresholds")
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("maximize", parents=[common], help="maximize efficiency at fixed mean")
    p.add_argument("--values", type=_numbers_or_file, required=True, help="file or comma-separated levels")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--mean", type=float)
    p.add_argument("--multiplier", type=float)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_maximize)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    handler = logging.StreamHandler(stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.handlers[:] = [handler]
    log.propagate = False
    log.setLevel(logging.WARNING if args.quiet else logging.INFO)

    try:
        out = args.func(args)
    except UsageError as exc:
        parser.print_usage(stderr)
        print(f"zpeff {args.command}: error: {exc}", file=stderr)
        return 2
    except (ZPError, ValueError, OSError) as exc:
        print(f"zpeff {args.command}: error: {exc}", file=stderr)
        return 1
    stdout.write(out)
    return 0


def main() -> None:
    sys.exit(run())
