"""Exact moment machinery: identity checker, closed form, and oracle.

Two independent routes to the moments of the randomly weighted average are
kept deliberately separate so they can police each other:

* :func:`rwa_moment_closed` -- the closed form, a single ratio of rising
  factorials (itself computed twice internally, once via an intermediate
  factorial expression, once fully reduced).
* :func:`rwa_moment_oracle` -- brute composition sum: expand the power of
  the average multinomially, take expectations factor by factor (flat
  Dirichlet joint moments in factorial form, arcsine moments in central
  binomial form), and add everything up.

Both are exact rationals, so "agree" means ``==``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactmath import (
    Composition,
    HalfInteger,
    composition_count,
    compositions,
    multinomial,
    rising_gamma_ratio,
)
from .rwa import RwaSpec, rwa_batch

__all__ = [
    "MomentReport",
    "decimal_str",
    "dirichlet_moment",
    "empirical_moment",
    "lemma_lhs",
    "lemma_rhs",
    "moment_report",
    "oracle_term_count",
    "psc_moment",
    "rwa_moment_closed",
    "rwa_moment_oracle",
]


def dirichlet_moment(params: Sequence[HalfInteger], exponents: Composition) -> Fraction:
    """Joint moment E(prod V_j^{i_j}) of a Dirichlet(params) vector.

    Equals prod_j Gamma(a_j + i_j)/Gamma(a_j) over Gamma(A + r)/Gamma(A)
    with A the parameter total and r the exponent total.
    """
    if len(params) != len(exponents):
        raise ValueError(
            f"{len(params)} parameters but {len(exponents)} exponents"
        )
    r = sum(exponents)
    total = _param_total(params)
    num = Fraction(1)
    for a_j, i_j in zip(params, exponents):
        num *= rising_gamma_ratio(a_j, i_j)
    return num / rising_gamma_ratio(total, r)


def _param_total(params: Sequence[HalfInteger]) -> HalfInteger:
    if not params:
        raise ValueError("need at least one Dirichlet parameter")
    total = params[0]
    for p in params[1:]:
        total = total + p
    return total


def lemma_lhs(params: Sequence[HalfInteger], r: int) -> Fraction:
    """Composition-sum side of the gamma-ratio identity.

    sum over compositions (i_1, ..., i_n) of r of
    multinomial(r; i) * prod_j Gamma(a_j + i_j)/Gamma(a_j).
    """
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    total = Fraction(0)
    for comp in compositions(r, len(params)):
        term = Fraction(multinomial(r, comp))
        for a_j, i_j in zip(params, comp):
            term *= rising_gamma_ratio(a_j, i_j)
        total += term
    return total


def lemma_rhs(params: Sequence[HalfInteger], r: int) -> Fraction:
    """Closed side of the same identity: Gamma(A + r)/Gamma(A), A = sum a_j."""
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    return rising_gamma_ratio(_param_total(params), r)


def rwa_moment_closed(n: int, k: int) -> Fraction:
    """E S^(2k) for the weighted average of n unit arcsine variables.

    Computed two ways -- an intermediate factorial expression and the fully
    reduced ratio of rising factorials -- and cross-checked before return.
    """
    if n < 2:
        raise ValueError(f"need n >= 2 variables, got {n}")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    intermediate = Fraction(
        math.factorial(2 * k) * math.factorial(n - 1),
        math.factorial(2 * k + n - 1) * math.factorial(k),
    ) * rising_gamma_ratio(Fraction(n, 2), k)
    reduced = rising_gamma_ratio(Fraction(1, 2), k) / rising_gamma_ratio(
        Fraction(n + 1, 2), k
    )
    if intermediate != reduced:
        raise ArithmeticError(
            f"internal moment forms disagree at n={n}, k={k}: "
            f"{intermediate} vs {reduced}"
        )
    return reduced


def _arcsine_moment_binomial(order: int) -> Fraction:
    """Unit arcsine moment in central binomial form: C(2m, m) / 4^m.

    Lives here (not in distributions) so the oracle shares no moment code
    with the closed form.
    """
    if order % 2 == 1:
        return Fraction(0)
    m = order // 2
    return Fraction(math.comb(2 * m, m), 4**m)


def _flat_dirichlet_moment(n: int, exponents: Composition) -> Fraction:
    """E(prod R_j^(i_j)) for flat Dirichlet weights, in factorial form:
    (n-1)! * prod i_j! / (r + n - 1)!."""
    r = sum(exponents)
    num = math.factorial(n - 1)
    for i_j in exponents:
        num *= math.factorial(i_j)
    return Fraction(num, math.factorial(r + n - 1))


def rwa_moment_oracle(n: int, r: int, *, literal_parity: bool = False) -> Fraction:
    """E S^r by direct expansion over compositions.

    Default mode: odd r returns 0 outright (every term carries an odd
    arcsine moment), and even r = 2k enumerates only the surviving
    compositions, i.e. the doubled compositions of k.

    literal_parity=True instead walks every composition of r and applies
    the parity factor prod_j (1 + (-1)^(i_j)) / 2 term by term -- much
    slower, but it verifies rather than assumes the odd cancellation.
    """
    if n < 2:
        raise ValueError(f"need n >= 2 variables, got {n}")
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")

    if literal_parity:
        total = Fraction(0)
        for comp in compositions(r, n):
            parity = Fraction(1)
            for i_j in comp:
                parity *= Fraction(1 + (-1) ** i_j, 2)
                if parity == 0:
                    break
            if parity == 0:
                continue
            term = parity * multinomial(r, comp) * _flat_dirichlet_moment(n, comp)
            for i_j in comp:
                term *= _arcsine_moment_binomial(i_j)
            total += term
        return total

    if r % 2 == 1:
        return Fraction(0)
    k = r // 2
    total = Fraction(0)
    for half in compositions(k, n):
        comp = tuple(2 * m for m in half)
        term = Fraction(multinomial(r, comp)) * _flat_dirichlet_moment(n, comp)
        for i_j in comp:
            term *= _arcsine_moment_binomial(i_j)
        total += term
    return total


def oracle_term_count(n: int, r: int, *, literal_parity: bool = False) -> int:
    """How many compositions the oracle would walk for these arguments."""
    if literal_parity:
        return composition_count(r, n)
    if r % 2 == 1:
        return 0
    return composition_count(r // 2, n)


def psc_moment(lam, k: int) -> Fraction:
    """E X^(2k) of the unit-scale power semicircle with exponent lam.

    lam must be a non-negative half-integer (0, 1/2, 1, 3/2, ...); the
    moment is rising(1/2, k) / rising(lam + 1, k).
    """
    q = Fraction(lam)
    if q < 0:
        raise ValueError(f"exponent must be >= 0, got {lam}")
    if q.denominator not in (1, 2):
        raise ValueError(f"exponent must be a half-integer, got {lam}")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    return rising_gamma_ratio(Fraction(1, 2), k) / rising_gamma_ratio(q + 1, k)


def empirical_moment(values: np.ndarray, k: int) -> tuple[float, float]:
    """Sample mean of v^(2k) and its standard error."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        raise ValueError("need at least one value")
    powers = v ** (2 * k)
    mean = float(powers.mean())
    var = float((powers**2).mean() - mean * mean)
    se = math.sqrt(max(var, 0.0) / v.size)
    return mean, se


def decimal_str(q: Fraction, digits: int = 30) -> str:
    """Decimal rendering of an exact rational to `digits` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


def _rational_json(q: Fraction) -> dict:
    return {
        "num": str(q.numerator),
        "den": str(q.denominator),
        "decimal": decimal_str(q),
    }


@dataclass(frozen=True)
class MomentReport:
    """Everything known about one even moment order at one problem size."""

    n: int
    a: float
    k: int
    closed_form: Fraction
    oracle: Fraction
    empirical: float | None = None
    std_error: float | None = None
    mc_count: int | None = None
    seed: int | None = None

    @property
    def consistent(self) -> bool:
        """Exact agreement of the two symbolic routes."""
        return self.closed_form == self.oracle

    def within_band(self, z: float = 4.0) -> bool:
        """Is the Monte Carlo estimate within z standard errors of exact?"""
        if self.empirical is None or self.std_error is None:
            raise ValueError("no Monte Carlo estimate attached to this report")
        return abs(self.empirical - float(self.closed_form)) <= z * self.std_error

    def to_json_dict(self) -> dict:
        out = {
            "n": self.n,
            "a": self.a,
            "k": self.k,
            "order": 2 * self.k,
            "closed_form": _rational_json(self.closed_form),
            "oracle": _rational_json(self.oracle),
            "consistent": self.consistent,
        }
        if self.empirical is not None:
            out["empirical"] = self.empirical
            out["std_error"] = self.std_error
            out["mc_count"] = self.mc_count
            out["seed"] = self.seed
        return out


def moment_report(
    spec: RwaSpec,
    k: int,
    mc_count: int | None = None,
    seed: int | None = None,
    *,
    shards: int = 1,
) -> MomentReport:
    """Compute the order-2k moment both exact ways (scaled by a**(2k)),
    optionally alongside a seeded Monte Carlo estimate."""
    scale = Fraction(spec.a) ** (2 * k)
    closed = rwa_moment_closed(spec.n, k) * scale
    oracle = rwa_moment_oracle(spec.n, 2 * k) * scale
    if mc_count is None:
        return MomentReport(
            n=spec.n, a=spec.a, k=k, closed_form=closed, oracle=oracle
        )
    if seed is None:
        raise ValueError("a Monte Carlo estimate needs an explicit seed")
    batch = rwa_batch(spec, mc_count, seed, shards=shards)
    mean, se = empirical_moment(batch.values, k)
    return MomentReport(
        n=spec.n,
        a=spec.a,
        k=k,
        closed_form=closed,
        oracle=oracle,
        empirical=mean,
        std_error=se,
        mc_count=mc_count,
        seed=seed,
    )
