"""Seeded, shardable Monte Carlo for the randomly weighted average.

One draw of the average at size n is sum_i R_i X_i where (R_1, ..., R_n) are
the spacings of n-1 ordered uniforms and the X_i are i.i.d. arcsine on
(-a, a), independent of the weights.

Draw-order contract (what makes runs byte-reproducible): each shard gets its
own generator from SeedSequence(seed, spawn_key=(shard_index,)) and consumes,
in order, one (count, n-1) block of uniforms for the weights, then one
(count, n) block of uniforms for the arcsine draws.  Shard outputs are
concatenated in shard order.  The scale multiplies the completed unit-scale
sum, so a batch at scale a is bitwise a times the unit-scale batch for the
same seed and shard count.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["RwaSpec", "SampleBatch", "rwa_batch", "rwa_sample"]

_THREADS_ENV = "RWA_THREADS"


@dataclass(frozen=True)
class RwaSpec:
    """Problem size for the weighted average: n variables, arcsine scale a."""

    n: int
    a: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"need an integer n >= 2, got {self.n!r}")
        if not (self.a > 0):
            raise ValueError(f"scale must be positive, got a={self.a}")


def _sample_block(
    spec: RwaSpec,
    count: int,
    rng: np.random.Generator,
    x_fill: float | None = None,
) -> np.ndarray:
    """Draw `count` averages; weights block first, then the X block.

    x_fill pins every X_i to a constant c (the X-block uniforms are still
    consumed, and the scale does not apply), turning the average into
    c * sum R_i for testing: the result equals c up to the rounding of the
    weight sum.
    """
    u_w = rng.random((count, spec.n - 1))
    u_w.sort(axis=1)
    padded = np.empty((count, spec.n + 1))
    padded[:, 0] = 0.0
    padded[:, 1:-1] = u_w
    padded[:, -1] = 1.0
    weights = np.diff(padded, axis=1)

    u_x = rng.random((count, spec.n))
    if x_fill is None:
        x = np.cos(math.pi * u_x)
        return spec.a * (weights * x).sum(axis=1)
    x = np.full((count, spec.n), float(x_fill))
    return (weights * x).sum(axis=1)


def _shard_rng(seed: int, shard_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(shard_index,)))


def rwa_sample(spec: RwaSpec, rng: np.random.Generator) -> float:
    """One draw of the weighted average (a count-1 block)."""
    return float(_sample_block(spec, 1, rng)[0])


def _shard_counts(count: int, shards: int) -> list[int]:
    base, extra = divmod(count, shards)
    return [base + (1 if i < extra else 0) for i in range(shards)]


def rwa_batch(
    spec: RwaSpec,
    count: int,
    seed: int,
    *,
    shards: int = 1,
    x_fill: float | None = None,
) -> "SampleBatch":
    """Draw `count` averages, reproducibly, split over `shards` streams.

    The per-shard streams depend only on (seed, shard index), so the output
    is byte-identical across runs and across worker counts; RWA_THREADS caps
    the thread pool (the split itself is fixed by `shards` alone).
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if shards < 1:
        raise ValueError(f"shards must be >= 1, got {shards}")
    if shards > count:
        raise ValueError(f"cannot split {count} draws over {shards} shards")

    counts = _shard_counts(count, shards)

    def draw(i: int) -> np.ndarray:
        return _sample_block(spec, counts[i], _shard_rng(seed, i), x_fill)

    if shards == 1:
        pieces = [draw(0)]
    else:
        cap = os.environ.get(_THREADS_ENV)
        max_workers = min(shards, int(cap)) if cap else min(shards, os.cpu_count() or 1)
        max_workers = max(max_workers, 1)
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            pieces = list(pool.map(draw, range(shards)))

    values = np.concatenate(pieces)
    return SampleBatch(values=values, spec=spec, seed=seed, count=count, shards=shards)


@dataclass(frozen=True)
class SampleBatch:
    """A reproducible batch of draws plus everything needed to re-derive it."""

    values: np.ndarray
    spec: RwaSpec
    seed: int
    count: int
    shards: int

    def csv_bytes(self) -> bytes:
        """CSV with a single `value` column; floats rendered by repr so the
        round-trip is exact, LF line endings."""
        lines = ["value"]
        lines.extend(repr(float(v)) for v in self.values)
        return ("\n".join(lines) + "\n").encode("ascii")

    def write_csv(self, path: str | Path) -> None:
        Path(path).write_bytes(self.csv_bytes())

    def values_digest(self) -> str:
        return hashlib.sha256(self.csv_bytes()).hexdigest()

    def envelope(self) -> dict:
        return {
            "spec": {"n": self.spec.n, "a": self.spec.a},
            "seed": self.seed,
            "count": self.count,
            "shards": self.shards,
            "values_sha256": self.values_digest(),
        }

    def envelope_bytes(self) -> bytes:
        return (json.dumps(self.envelope(), indent=2, sort_keys=True) + "\n").encode("ascii")

    def write_envelope(self, path: str | Path) -> None:
        Path(path).write_bytes(self.envelope_bytes())
