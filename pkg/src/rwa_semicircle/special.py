"""Regularized incomplete beta function, vectorized over x.

The goodness-of-fit path evaluates the power semicircle CDF on ~1e5 sorted
sample points at once, so the continued fraction below runs in lockstep over
whole arrays instead of looping per point.  Algorithm: the standard modified
Lentz evaluation of the continued fraction for I_x(a, b), switching to the
symmetric tail 1 - I_{1-x}(b, a) past the pivot x = (a+1)/(a+b+2) where the
fraction converges fastest.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["betainc"]

_EPS = 1e-15
_FPMIN = 1e-300
_MAXIT = 500


def _betacf(a: float, b: float, x: np.ndarray) -> np.ndarray:
    """Continued fraction for the incomplete beta, elementwise in x."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    np.copyto(d, _FPMIN, where=np.abs(d) < _FPMIN)
    d = 1.0 / d
    h = d.copy()
    for m in range(1, _MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        np.copyto(d, _FPMIN, where=np.abs(d) < _FPMIN)
        c = 1.0 + aa / c
        np.copyto(c, _FPMIN, where=np.abs(c) < _FPMIN)
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        np.copyto(d, _FPMIN, where=np.abs(d) < _FPMIN)
        c = 1.0 + aa / c
        np.copyto(c, _FPMIN, where=np.abs(c) < _FPMIN)
        d = 1.0 / d
        delta = d * c
        h *= delta
        if np.all(np.abs(delta - 1.0) < _EPS):
            break
    return h


def betainc(a: float, b: float, x) -> np.ndarray | float:
    """Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].

    Scalar x in, scalar out; array x in, array out.
    """
    if a <= 0 or b <= 0:
        raise ValueError(f"shape parameters must be positive, got a={a}, b={b}")
    scalar = np.isscalar(x) or (isinstance(x, np.ndarray) and x.ndim == 0)
    xs = np.asarray(x, dtype=np.float64)
    if xs.size and (np.min(xs) < 0.0 or np.max(xs) > 1.0):
        raise ValueError("x must lie in [0, 1]")

    out = np.empty_like(xs, dtype=np.float64)
    at_zero = xs == 0.0
    at_one = xs == 1.0
    out[at_zero] = 0.0
    out[at_one] = 1.0
    interior = ~(at_zero | at_one)

    if np.any(interior):
        xi = xs[interior]
        # log of the prefactor x^a (1-x)^b / (a B(a, b)); the fraction below
        # absorbs the leading 1/a.
        log_pref = (
            math.lgamma(a + b)
            - math.lgamma(a)
            - math.lgamma(b)
            + a * np.log(xi)
            + b * np.log1p(-xi)
        )
        bt = np.exp(log_pref)
        pivot = (a + 1.0) / (a + b + 2.0)
        direct = xi < pivot
        res = np.empty_like(xi)
        if np.any(direct):
            res[direct] = bt[direct] * _betacf(a, b, xi[direct]) / a
        if np.any(~direct):
            res[~direct] = 1.0 - bt[~direct] * _betacf(b, a, 1.0 - xi[~direct]) / b
        if a == b:
            # symmetric case: the midpoint is exactly 1/2, and enforcing it
            # keeps CDF(0) of a symmetric law honest to the last bit.
            res[xi == 0.5] = 0.5
        out[interior] = np.clip(res, 0.0, 1.0)

    if scalar:
        return float(out)
    return out
