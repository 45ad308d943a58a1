"""Monte Carlo realization of the Gaussian neighbour-field dephasing.

A fluctuating field dZ ~ Normal(0, variance) rotates a qubit about Z by
2 J dZ.  Averaged over dZ this is the dephasing channel with coherence shrink
exp(-2 J^2 variance); the samplers here measure that average directly.

Random numbers come from a Philox stream keyed by the seed.  Samples are
grouped in fixed-size chunks and chunk ``c`` of stream ``s`` always starts at
counter (0, 0, s, c), so sample ``i`` is a pure function of ``(seed, i)``.
Per-chunk partial results are merged in chunk order, which keeps outputs
bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

import numpy as np

from .qubit_state import BlochState, DriveParams

CHUNK = 1 << 16

T = TypeVar("T")


def chunk_generator(seed: int, chunk: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, stream, chunk]))


def chunk_bounds(n_samples: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + CHUNK, n_samples)) for lo in range(0, n_samples, CHUNK)]


def map_chunks(fn: Callable[[int, int, int], T], n_samples: int, workers: int = 1) -> list[T]:
    """Apply ``fn(chunk_index, lo, hi)`` to every chunk; results come back in chunk order."""
    bounds = chunk_bounds(n_samples)
    args = [(c, lo, hi) for c, (lo, hi) in enumerate(bounds)]
    if workers <= 1 or len(args) == 1:
        return [fn(*a) for a in args]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda a: fn(*a), args))


@dataclass(frozen=True)
class Moments:
    """Running count / mean / sum of squared deviations, mergeable in a fixed order."""

    n: int
    mean: np.ndarray
    m2: np.ndarray

    @classmethod
    def of(cls, values: np.ndarray) -> "Moments":
        mean = values.mean(axis=0)
        return cls(len(values), mean, ((values - mean) ** 2).sum(axis=0))

    def merge(self, other: "Moments") -> "Moments":
        n = self.n + other.n
        delta = other.mean - self.mean
        mean = self.mean + delta * (other.n / n)
        m2 = self.m2 + other.m2 + delta**2 * (self.n * other.n / n)
        return Moments(n, mean, m2)

    @property
    def stderr(self) -> np.ndarray:
        if self.n < 2:
            return np.zeros_like(self.mean)
        return np.sqrt(self.m2 / (self.n - 1) / self.n)


def merge_all(parts: Sequence[Moments]) -> Moments:
    total = parts[0]
    for part in parts[1:]:
        total = total.merge(part)
    return total


@dataclass(frozen=True)
class SamplerConfig:
    n_samples: int
    seed: int
    J: float
    variance: float
    stream: int = 0

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be positive, got {self.n_samples}")
        if self.variance < 0:
            raise ValueError(f"variance must be non-negative, got {self.variance}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def _kick_angles(cfg: SamplerConfig, chunk: int, lo: int, hi: int) -> np.ndarray:
    dz = chunk_generator(cfg.seed, chunk, cfg.stream).standard_normal(hi - lo) * math.sqrt(cfg.variance)
    return 2.0 * cfg.J * dz


def kick_moments(cfg: SamplerConfig, workers: int = 1) -> Moments:
    """Mean and spread of (cos 2J dZ, sin 2J dZ)."""

    def part(c, lo, hi):
        theta = _kick_angles(cfg, c, lo, hi)
        return Moments.of(np.column_stack([np.cos(theta), np.sin(theta)]))

    return merge_all(map_chunks(part, cfg.n_samples, workers))


def empirical_shrink(cfg: SamplerConfig, workers: int = 1) -> float:
    """Measured coherence shrink factor, the sample mean of cos(2 J dZ)."""
    return float(kick_moments(cfg, workers).mean[0])


def sample_dephase(
    s: BlochState, cfg: SamplerConfig, workers: int = 1
) -> tuple[BlochState, tuple[float, float, float]]:
    """Ensemble average of randomly Z-rotated copies of ``s`` and per-component standard errors."""
    if cfg.variance == 0 or cfg.J == 0:
        return s, (0.0, 0.0, 0.0)

    def part(c, lo, hi):
        theta = _kick_angles(cfg, c, lo, hi)
        cos, sin = np.cos(theta), np.sin(theta)
        return Moments.of(np.column_stack([s.x * cos + s.y * sin, s.y * cos - s.x * sin]))

    m = merge_all(map_chunks(part, cfg.n_samples, workers))
    err = m.stderr
    return BlochState(float(m.mean[0]), float(m.mean[1]), s.z), (float(err[0]), float(err[1]), 0.0)


def discrete_shrink_exact(n_neighbors: int, z: float, J: float) -> float:
    """E[cos 2J dZ] when dZ is a sum of independent +/-1 spins with mean z, minus n z."""
    a = complex(math.cos(2 * J), math.sin(2 * J))
    one_spin = 0.5 * (1 + z) * a + 0.5 * (1 - z) * a.conjugate()
    phase = complex(math.cos(2 * J * n_neighbors * z), -math.sin(2 * J * n_neighbors * z))
    return (one_spin**n_neighbors * phase).real


def discrete_shrink(n_neighbors: int, z: float, J: float, n_samples: int, seed: int, workers: int = 1) -> Moments:
    """Sampled version of :func:`discrete_shrink_exact`.

    Diagnostic only: it shows how far a handful of binary neighbours sit from
    the Gaussian limit at the same variance n (1 - z^2).
    """

    def part(c, lo, hi):
        up = chunk_generator(seed, c).random((hi - lo, n_neighbors)) < 0.5 * (1 + z)
        dz = np.where(up, 1.0, -1.0).sum(axis=1) - n_neighbors * z
        return Moments.of(np.cos(2 * J * dz)[:, None])

    return merge_all(map_chunks(part, n_samples, workers))


@dataclass
class TrajectoryResult:
    """Ensemble-mean Bloch vectors per step, with standard errors."""

    means: list[BlochState]
    stderrs: list[tuple[float, float, float]]


def run_trajectories(
    params: DriveParams, xi: float, n_samples: int, seed: int, workers: int = 1
) -> TrajectoryResult:
    """Dissipative mean field unravelled into sampled Z kicks.

    Each trajectory gets the kick and the self-consistent rotation
    J xi z (z = ensemble mean after the kick), plus its own Gaussian
    fluctuation of variance xi (1 - z^2).  The ensemble mean follows the
    deterministic dissipative engine up to sampling noise.
    """
    ens = np.zeros((n_samples, 3))
    ens[:, 2] = 1.0
    means = [BlochState(0.0, 0.0, 1.0)]
    errs = [(0.0, 0.0, 0.0)]
    c, s = math.cos(2 * params.h), math.sin(2 * params.h)
    bounds = chunk_bounds(n_samples)

    for step in range(params.steps):
        y, z = ens[:, 1].copy(), ens[:, 2].copy()
        ens[:, 1] = y * c - z * s
        ens[:, 2] = z * c + y * s
        z_field = float(np.sum([ens[lo:hi, 2].sum() for lo, hi in bounds]) / n_samples)
        z_field = max(-1.0, min(1.0, z_field))
        sigma = math.sqrt(max(xi * (1 - z_field * z_field), 0.0))

        def part(ci, lo, hi):
            dz = chunk_generator(seed, ci, stream=step + 1).standard_normal(hi - lo) * sigma
            theta = 2 * params.J * (xi * z_field + dz)
            cos, sin = np.cos(theta), np.sin(theta)
            x, y = ens[lo:hi, 0].copy(), ens[lo:hi, 1].copy()
            ens[lo:hi, 0] = x * cos + y * sin
            ens[lo:hi, 1] = y * cos - x * sin
            return Moments.of(ens[lo:hi])

        m = merge_all(map_chunks(part, n_samples, workers))
        means.append(BlochState.from_array(m.mean))
        errs.append(tuple(float(e) for e in m.stderr))
    return TrajectoryResult(means, errs)
