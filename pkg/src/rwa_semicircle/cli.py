"""Command line front end.

Subcommands:

* ``moment``      -- table of exact moments of the weighted average, both
                     routes side by side, for k = 0..k_max.
* ``lemma-check`` -- the gamma-ratio composition identity for r = 0..r_max.
* ``sample``      -- draw from the building-block laws or the average itself.
* ``verify``      -- KS + moment-band verification of one (n, a) instance.
* ``plot-data``   -- histogram-vs-target-density table for external plotting.

Exit codes: 0 all checks passed / output written, 1 a check failed or an
I/O problem, 2 bad usage (argparse handles this).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .distributions import Arcsine, PowerSemicircle, sample_spacings
from .exactmath import HalfInteger, composition_count
from .gof import ks_critical_one_sample, ks_statistic
from .moments import (
    MomentReport,
    decimal_str,
    empirical_moment,
    lemma_lhs,
    lemma_rhs,
    oracle_term_count,
    rwa_moment_closed,
    rwa_moment_oracle,
)
from .rwa import RwaSpec, rwa_batch

__all__ = ["VerifyConfig", "VerifyOutcome", "build_parser", "main", "run_verification"]

_TERM_WARN_LIMIT = 10_000_000


# ---------------------------------------------------------------------------
# argparse type converters (bad values -> exit code 2)


def _int_any(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")


def _positive_int(text: str) -> int:
    v = _int_any(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _nonneg_int(text: str) -> int:
    v = _int_any(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {text!r}")
    return v


def _size(text: str) -> int:
    v = _int_any(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"the average needs n >= 2, got {text!r}")
    return v


def _sample_count(text: str) -> int:
    v = _int_any(text)
    if v < 100:
        raise argparse.ArgumentTypeError(f"verification needs at least 100 draws, got {text!r}")
    return v


def _bin_count(text: str) -> int:
    v = _int_any(text)
    if v < 10:
        raise argparse.ArgumentTypeError(f"need at least 10 bins, got {text!r}")
    return v


def _float_any(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")


def _positive_float(text: str) -> float:
    v = _float_any(text)
    if not (v > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def _nonneg_float(text: str) -> float:
    v = _float_any(text)
    if not (v >= 0):
        raise argparse.ArgumentTypeError(f"expected a number >= 0, got {text!r}")
    return v


def _probability(text: str) -> float:
    v = _float_any(text)
    if not (0.0 < v < 1.0):
        raise argparse.ArgumentTypeError(f"expected a value in (0, 1), got {text!r}")
    return v


def _half_integer_list(text: str) -> tuple[HalfInteger, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("expected at least one parameter")
    try:
        return tuple(HalfInteger.parse(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


# ---------------------------------------------------------------------------
# small output helpers


def _warn_term_count(count: int) -> None:
    if count > _TERM_WARN_LIMIT:
        print(
            f"warning: this enumeration visits {count} compositions "
            f"(> {_TERM_WARN_LIMIT}); expect a long run",
            file=sys.stderr,
        )


def _emit(text: str, out: str | None) -> None:
    data = text if text.endswith("\n") else text + "\n"
    if out is None:
        sys.stdout.write(data)
    else:
        Path(out).write_bytes(data.encode("ascii"))


def _exact_scale(a: float) -> Fraction:
    """The scale as an exact rational, read decimally: 2.5 -> 5/2, 0.1 -> 1/10.

    Used only where exact scaled rationals are displayed; samplers of course
    work with the float itself.
    """
    return Fraction(str(a))


def _rational_json(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator), "decimal": decimal_str(q)}


# ---------------------------------------------------------------------------
# verify: one (n, a) instance against its target law


@dataclass(frozen=True)
class VerifyConfig:
    """Everything one verification run depends on."""

    spec: RwaSpec
    sample_count: int = 100_000
    seed: int = 1234
    max_moment_k: int = 3
    alpha: float = 0.01
    shards: int = 1
    lambda_override: float | None = None

    def __post_init__(self) -> None:
        if self.sample_count < 100:
            raise ValueError(f"sample_count must be >= 100, got {self.sample_count}")
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.max_moment_k < 0:
            raise ValueError(f"max_moment_k must be >= 0, got {self.max_moment_k}")

    def to_json_dict(self) -> dict:
        return {
            "n": self.spec.n,
            "a": self.spec.a,
            "sample_count": self.sample_count,
            "seed": self.seed,
            "max_moment_k": self.max_moment_k,
            "alpha": self.alpha,
            "shards": self.shards,
            "lambda_override": self.lambda_override,
        }


@dataclass(frozen=True)
class VerifyOutcome:
    """KS verdict plus one MomentReport per even order."""

    config: VerifyConfig
    ks_statistic: float
    ks_critical: float
    moment_rows: tuple[MomentReport, ...]

    @property
    def ks_pass(self) -> bool:
        return self.ks_statistic < self.ks_critical

    @property
    def overall_pass(self) -> bool:
        return self.ks_pass and all(row.within_band() for row in self.moment_rows)

    def to_json_dict(self) -> dict:
        return {
            "config": self.config.to_json_dict(),
            "ks_statistic": self.ks_statistic,
            "ks_critical": self.ks_critical,
            "ks_pass": self.ks_pass,
            "moment_rows": [row.to_json_dict() for row in self.moment_rows],
            "overall_pass": self.overall_pass,
        }


def run_verification(cfg: VerifyConfig) -> VerifyOutcome:
    """Draw one batch and test it: one-sample KS against the target power
    semicircle (exponent (n-1)/2, or the override for negative-control
    testing), then a 4-standard-error band check of each empirical even
    moment up to order 2*max_moment_k against the exact values.
    """
    n, a = cfg.spec.n, cfg.spec.a
    batch = rwa_batch(cfg.spec, cfg.sample_count, cfg.seed, shards=cfg.shards)

    lam = (n - 1) / 2.0 if cfg.lambda_override is None else cfg.lambda_override
    law = PowerSemicircle(lam=lam, a=a)
    d = ks_statistic(batch.values, law.cdf)
    critical = ks_critical_one_sample(cfg.alpha, cfg.sample_count)

    scale = Fraction(a)
    rows = []
    for k in range(0, cfg.max_moment_k + 1):
        closed = rwa_moment_closed(n, k) * scale ** (2 * k)
        oracle = rwa_moment_oracle(n, 2 * k) * scale ** (2 * k)
        mean, se = empirical_moment(batch.values, k)
        rows.append(
            MomentReport(
                n=n,
                a=a,
                k=k,
                closed_form=closed,
                oracle=oracle,
                empirical=mean,
                std_error=se,
                mc_count=cfg.sample_count,
                seed=cfg.seed,
            )
        )
    return VerifyOutcome(
        config=cfg, ks_statistic=d, ks_critical=critical, moment_rows=tuple(rows)
    )


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_moment(args: argparse.Namespace) -> int:
    total_terms = sum(oracle_term_count(args.n, 2 * k) for k in range(args.k_max + 1))
    _warn_term_count(total_terms)
    scale = _exact_scale(args.a)
    rows = []
    for k in range(args.k_max + 1):
        closed = rwa_moment_closed(args.n, k) * scale ** (2 * k)
        oracle = rwa_moment_oracle(args.n, 2 * k) * scale ** (2 * k)
        if args.literal_parity:
            literal = rwa_moment_oracle(args.n, 2 * k, literal_parity=True) * scale ** (2 * k)
            if literal != oracle:
                print(f"literal-parity oracle disagrees at k={k}", file=sys.stderr)
                return 1
        rows.append((k, closed, oracle, closed == oracle))
    all_equal = all(eq for _, _, _, eq in rows)

    if args.json:
        payload = {
            "n": args.n,
            "a": args.a,
            "rows": [
                {
                    "k": k,
                    "order": 2 * k,
                    "closed_form": _rational_json(closed),
                    "oracle": _rational_json(oracle),
                    "equal": eq,
                }
                for k, closed, oracle, eq in rows
            ],
            "all_equal": all_equal,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"moments of the weighted average: n = {args.n}, a = {args.a:g}")
        print(f"{'k':>3} {'closed form':>16} {'oracle':>16} {'decimal':>32} equal")
        for k, closed, oracle, eq in rows:
            print(
                f"{k:>3} {str(closed):>16} {str(oracle):>16} "
                f"{decimal_str(closed):>32} {'yes' if eq else 'NO'}"
            )
    return 0 if all_equal else 1


def _cmd_lemma_check(args: argparse.Namespace) -> int:
    params = args.params
    total_terms = sum(composition_count(r, len(params)) for r in range(args.r_max + 1))
    _warn_term_count(total_terms)
    rows = []
    for r in range(args.r_max + 1):
        lhs = lemma_lhs(params, r)
        rhs = lemma_rhs(params, r)
        rows.append((r, lhs, rhs, lhs == rhs))
    all_equal = all(eq for _, _, _, eq in rows)

    if args.json:
        payload = {
            "params": [str(p) for p in params],
            "rows": [
                {
                    "r": r,
                    "lhs": {"num": str(lhs.numerator), "den": str(lhs.denominator)},
                    "rhs": {"num": str(rhs.numerator), "den": str(rhs.denominator)},
                    "equal": eq,
                }
                for r, lhs, rhs, eq in rows
            ],
            "all_equal": all_equal,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"identity check for params = [{', '.join(str(p) for p in params)}]")
        print(f"{'r':>3} {'composition sum':>20} {'gamma ratio':>20} equal")
        for r, lhs, rhs, eq in rows:
            print(f"{r:>3} {str(lhs):>20} {str(rhs):>20} {'yes' if eq else 'NO'}")
    return 0 if all_equal else 1


def _matrix_csv(rows: np.ndarray, header: list[str]) -> str:
    lines = [",".join(header)]
    for row in np.atleast_2d(rows):
        lines.append(",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def _column_csv(values: np.ndarray) -> str:
    lines = ["value"]
    lines.extend(repr(float(v)) for v in values)
    return "\n".join(lines) + "\n"


def _cmd_sample_arcsine(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    values = Arcsine(a=args.a).sample(rng, args.count)
    _emit(_column_csv(values), args.out)
    return 0


def _cmd_sample_psc(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    values = PowerSemicircle(lam=args.lam, a=args.a).sample(rng, args.count)
    _emit(_column_csv(values), args.out)
    return 0


def _cmd_sample_spacings(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    rows = sample_spacings(args.n, rng, size=args.count, method=args.method)
    header = [f"w{i + 1}" for i in range(args.n)]
    _emit(_matrix_csv(rows, header), args.out)
    return 0


def _cmd_sample_rwa(args: argparse.Namespace) -> int:
    spec = RwaSpec(n=args.n, a=args.a)
    batch = rwa_batch(spec, args.count, args.seed, shards=args.shards)
    if args.out is None:
        sys.stdout.write(batch.csv_bytes().decode("ascii"))
    else:
        batch.write_csv(args.out)
    if args.envelope is not None:
        batch.write_envelope(args.envelope)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = VerifyConfig(
        spec=RwaSpec(n=args.n, a=args.a),
        sample_count=args.count,
        seed=args.seed,
        max_moment_k=args.k_max,
        alpha=args.alpha,
        shards=args.shards,
        lambda_override=args.lambda_override,
    )
    outcome = run_verification(cfg)

    ks_tag = "PASS" if outcome.ks_pass else "FAIL"
    print(
        f"[{ks_tag}] ks: D = {outcome.ks_statistic:.5f} vs critical "
        f"{outcome.ks_critical:.5f} (alpha = {cfg.alpha:g}, N = {cfg.sample_count})"
    )
    for row in outcome.moment_rows:
        gap = abs(row.empirical - float(row.closed_form))
        z = gap / row.std_error if row.std_error > 0 else (0.0 if gap == 0 else math.inf)
        ok = row.within_band()
        print(
            f"[{'PASS' if ok else 'FAIL'}] moment order {2 * row.k}: "
            f"empirical {row.empirical:.6g} vs exact {decimal_str(row.closed_form, 8)} "
            f"(z = {z:.2f} vs 4.0)"
        )
    print(f"verify: {'PASS' if outcome.overall_pass else 'FAIL'}")

    if args.json is not None:
        Path(args.json).write_text(
            json.dumps(outcome.to_json_dict(), indent=2, sort_keys=True) + "\n",
            encoding="ascii",
        )
    return 0 if outcome.overall_pass else 1


def _cmd_plot_data(args: argparse.Namespace) -> int:
    spec = RwaSpec(n=args.n, a=args.a)
    batch = rwa_batch(spec, args.count, args.seed, shards=args.shards)
    bins = args.bins if args.bins is not None else max(10, math.ceil(2.0 * args.count ** (1.0 / 3.0)))
    density, edges = np.histogram(batch.values, bins=bins, range=(-args.a, args.a), density=True)
    centers = 0.5 * (edges[:-1] + edges[1:])
    law = PowerSemicircle(lam=(args.n - 1) / 2.0, a=args.a)
    theoretical = law.pdf(centers)
    lines = ["bin_center,empirical_density,theoretical_density"]
    for center, emp, tgt in zip(centers, density, theoretical):
        lines.append(f"{repr(float(center))},{repr(float(emp))},{repr(float(tgt))}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# parser wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rwa",
        description=(
            "Exact and Monte Carlo checks that the randomly weighted average "
            "of arcsine variables follows a power semicircle law."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_moment = sub.add_parser("moment", help="exact moment table, both routes side by side")
    p_moment.add_argument("--n", type=_size, required=True, help="number of averaged variables (>= 2)")
    p_moment.add_argument("--k-max", type=_nonneg_int, required=True, help="table covers E S^(2k) for k = 0..k_max")
    p_moment.add_argument("--a", type=_positive_float, default=1.0, help="arcsine scale (default 1)")
    p_moment.add_argument("--literal-parity", action="store_true", help="re-check each row without the odd-term shortcut (slow)")
    p_moment.add_argument("--json", action="store_true", help="emit the table as JSON")
    p_moment.set_defaults(func=_cmd_moment)

    p_lemma = sub.add_parser("lemma-check", help="gamma-ratio composition identity for r = 0..r_max")
    p_lemma.add_argument("--params", type=_half_integer_list, required=True, help="comma-separated half-integers, e.g. '1/2,1,3/2'")
    p_lemma.add_argument("--r-max", type=_nonneg_int, required=True, help="check every exponent r = 0..r_max")
    p_lemma.add_argument("--json", action="store_true", help="emit the result as JSON")
    p_lemma.set_defaults(func=_cmd_lemma_check)

    p_sample = sub.add_parser("sample", help="draw from one of the laws involved")
    sample_sub = p_sample.add_subparsers(dest="source", required=True)

    p_arc = sample_sub.add_parser("arcsine", help="arcsine law on (-a, a)")
    p_arc.add_argument("--a", type=_positive_float, default=1.0)
    p_arc.add_argument("--count", type=_positive_int, required=True)
    p_arc.add_argument("--seed", type=_int_any, required=True)
    p_arc.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p_arc.set_defaults(func=_cmd_sample_arcsine)

    p_psc = sample_sub.add_parser("psc", help="power semicircle law on (-a, a)")
    p_psc.add_argument("--lambda", dest="lam", type=_nonneg_float, required=True, help="exponent (>= 0)")
    p_psc.add_argument("--a", type=_positive_float, default=1.0)
    p_psc.add_argument("--count", type=_positive_int, required=True)
    p_psc.add_argument("--seed", type=_int_any, required=True)
    p_psc.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p_psc.set_defaults(func=_cmd_sample_psc)

    p_spc = sample_sub.add_parser("spacings", help="uniform spacing weights (flat Dirichlet rows)")
    p_spc.add_argument("--n", type=_size, required=True, help="number of spacings per row (>= 2)")
    p_spc.add_argument("--count", type=_positive_int, required=True)
    p_spc.add_argument("--seed", type=_int_any, required=True)
    p_spc.add_argument("--method", choices=["sorted-uniforms", "exponential"], default="sorted-uniforms")
    p_spc.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p_spc.set_defaults(func=_cmd_sample_spacings)

    p_rwa = sample_sub.add_parser("rwa", help="the randomly weighted average itself")
    p_rwa.add_argument("--n", type=_size, required=True)
    p_rwa.add_argument("--a", type=_positive_float, default=1.0)
    p_rwa.add_argument("--count", type=_positive_int, required=True)
    p_rwa.add_argument("--seed", type=_int_any, required=True)
    p_rwa.add_argument("--shards", type=_positive_int, default=1)
    p_rwa.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p_rwa.add_argument("--envelope", default=None, help="also write a JSON envelope with a values digest")
    p_rwa.set_defaults(func=_cmd_sample_rwa)

    p_verify = sub.add_parser("verify", help="KS + moment-band verification of one (n, a) instance")
    p_verify.add_argument("--n", type=_size, required=True)
    p_verify.add_argument("--a", type=_positive_float, default=1.0)
    p_verify.add_argument("--count", type=_sample_count, default=100_000, help="Monte Carlo draws (>= 100, default 100000)")
    p_verify.add_argument("--seed", type=_int_any, default=1234)
    p_verify.add_argument("--k-max", type=_nonneg_int, default=3, help="band-check moments up to order 2*k_max (default 3)")
    p_verify.add_argument("--alpha", type=_probability, default=0.01, help="KS significance level (default 0.01)")
    p_verify.add_argument("--shards", type=_positive_int, default=1)
    p_verify.add_argument("--json", default=None, help="also write the full outcome as JSON to this path")
    p_verify.add_argument("--lambda-override", type=_nonneg_float, default=None, help="(testing only) force this exponent as the KS null instead of (n-1)/2")
    p_verify.set_defaults(func=_cmd_verify)

    p_plot = sub.add_parser("plot-data", help="histogram vs target density, as CSV")
    p_plot.add_argument("--n", type=_size, required=True)
    p_plot.add_argument("--a", type=_positive_float, default=1.0)
    p_plot.add_argument("--count", type=_positive_int, required=True)
    p_plot.add_argument("--seed", type=_int_any, required=True)
    p_plot.add_argument("--shards", type=_positive_int, default=1)
    p_plot.add_argument("--bins", type=_bin_count, default=None, help="histogram bins, >= 10 (default: Rice rule)")
    p_plot.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p_plot.set_defaults(func=_cmd_plot_data)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
