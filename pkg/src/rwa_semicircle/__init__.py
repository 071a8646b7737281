"""Randomly weighted averages of arcsine variables vs the power semicircle family.

The average of n i.i.d. arcsine variables under uniform-spacing weights
follows the power semicircle law with exponent (n - 1) / 2.  This package
computes the moments of both sides exactly, checks the combinatorial
identity underneath, and verifies the match by seeded Monte Carlo.
"""

from .distributions import Arcsine, PowerSemicircle, arcsine_moment, sample_spacings
from .exactmath import (
    Composition,
    HalfInteger,
    composition_count,
    compositions,
    multinomial,
    rising_gamma_ratio,
)
from .gof import (
    ks_coefficient,
    ks_critical_one_sample,
    ks_critical_two_sample,
    ks_statistic,
    ks_statistic_two_sample,
)
from .moments import (
    MomentReport,
    dirichlet_moment,
    empirical_moment,
    lemma_lhs,
    lemma_rhs,
    moment_report,
    psc_moment,
    rwa_moment_closed,
    rwa_moment_oracle,
)
from .rwa import RwaSpec, SampleBatch, rwa_batch, rwa_sample
from .special import betainc

__version__ = "0.1.0"

__all__ = [
    "Arcsine",
    "Composition",
    "HalfInteger",
    "MomentReport",
    "PowerSemicircle",
    "RwaSpec",
    "SampleBatch",
    "arcsine_moment",
    "betainc",
    "composition_count",
    "compositions",
    "dirichlet_moment",
    "empirical_moment",
    "ks_coefficient",
    "ks_critical_one_sample",
    "ks_critical_two_sample",
    "ks_statistic",
    "ks_statistic_two_sample",
    "lemma_lhs",
    "lemma_rhs",
    "moment_report",
    "multinomial",
    "psc_moment",
    "rising_gamma_ratio",
    "rwa_batch",
    "rwa_moment_closed",
    "rwa_moment_oracle",
    "rwa_sample",
    "sample_spacings",
]
