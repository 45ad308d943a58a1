"""Analytic decay of the theta_h = pi/2 stabilizer away from the Clifford point.

Near theta_h = pi/2 the stabilizer sign flips with probability
p0 = (1 - exp(-2 dalpha^2)) / 2 per step, with the random-kick variance
interpolated linearly in the distance from pi/2:

    dalpha = (pi/2) (1 - 2 theta_h / pi),  so  <Z'(t)> = (1 - 2 p0)^t
           = exp[-t (pi^2/2) (1 - 2 theta_h / pi)^2].

``form="linear"`` keeps the unsquared variance (pi^2/4)(1 - 2 theta_h/pi) for
comparison; it does not reproduce the closed-form decay above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .stochastic import chunk_generator, map_chunks

Form = Literal["squared", "linear"]


def _check_theta(theta_h: float) -> None:
    if not 0.0 <= theta_h <= math.pi / 2:
        raise ValueError(f"theta_h must lie in [0, pi/2], got {theta_h}")


@dataclass(frozen=True)
class StabilizerParams:
    theta_h: float
    steps: int = 0

    def __post_init__(self):
        _check_theta(self.theta_h)
        if self.steps < 0:
            raise ValueError(f"steps must be non-negative, got {self.steps}")


def alpha_variance(theta_h: float, form: Form = "squared") -> float:
    _check_theta(theta_h)
    d = 1.0 - 2.0 * theta_h / math.pi
    if form == "squared":
        return math.pi**2 / 4 * d * d
    if form == "linear":
        return math.pi**2 / 4 * d
    raise ValueError(f"unknown form {form!r}")


def flip_probability(theta_h: float, form: Form = "squared") -> float:
    return 0.5 * (1.0 - math.exp(-2.0 * alpha_variance(theta_h, form)))


def stabilizer_expectation(params: StabilizerParams, form: Form = "squared") -> float:
    return (1.0 - 2.0 * flip_probability(params.theta_h, form)) ** params.steps


def stabilizer_closed_form(params: StabilizerParams) -> float:
    d = 1.0 - 2.0 * params.theta_h / math.pi
    return math.exp(-params.steps * math.pi**2 / 2 * d * d)


def flip_process_simulate(
    params: StabilizerParams, n_samples: int, seed: int, workers: int = 1, form: Form = "squared"
) -> tuple[float, float]:
    """Monte Carlo of the +/-1 sign chain; returns (mean, standard error)."""
    if n_samples < 1:
        raise ValueError(f"n_samples must be positive, got {n_samples}")
    p0 = flip_probability(params.theta_h, form)
    t = params.steps

    def part(c, lo, hi):
        if t == 0 or p0 == 0.0:
            return hi - lo, float(hi - lo)
        flips = (chunk_generator(seed, c).random((hi - lo, t)) < p0).sum(axis=1)
        vals = 1.0 - 2.0 * (flips % 2)
        return hi - lo, float(vals.sum())

    parts = map_chunks(part, n_samples, workers)
    total = 0.0
    for _, s in parts:
        total += s
    mean = total / n_samples
    # values are +/-1, so the variance follows from the mean
    var = max(1.0 - mean * mean, 0.0) * n_samples / max(n_samples - 1, 1)
    return mean, math.sqrt(var / n_samples)
