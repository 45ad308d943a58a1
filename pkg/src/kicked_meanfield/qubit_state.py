"""Single-qubit mixed states as Bloch vectors.

Conventions: rho = (1 + x X + y Y + z Z) / 2, and every operation acts in the
Schroedinger picture, rho -> u rho u^dagger.

``rotate_x(s, h)`` applies u = exp(-i h X) and ``rotate_z(s, a)`` applies
u = exp(i a Z); in both cases the Bloch vector turns by twice the exponent
coefficient.  With these signs |0> goes to -Y under a quarter turn of
``rotate_x``, and the Heisenberg images under exp(i a Z) are
X -> X cos 2a + Y sin 2a, Y -> Y cos 2a - X sin 2a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NORM_SLACK = 1e-12

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class BlochState:
    x: float = 0.0
    y: float = 0.0
    z: float = 1.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.z)):
            raise ValueError(f"non-finite Bloch vector {self}")
        if self.norm() ** 2 > 1 + NORM_SLACK:
            raise ValueError(f"Bloch vector outside the unit ball: {self}")

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    @property
    def coherence(self) -> float:
        """Length of the transverse (x, y) component."""
        return math.hypot(self.x, self.y)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @classmethod
    def from_array(cls, v) -> "BlochState":
        return cls(float(v[0]), float(v[1]), float(v[2]))

    def density_matrix(self) -> np.ndarray:
        return 0.5 * (PAULI_I + self.x * PAULI_X + self.y * PAULI_Y + self.z * PAULI_Z)

    @classmethod
    def from_density_matrix(cls, rho: np.ndarray) -> "BlochState":
        return cls(
            float(np.trace(rho @ PAULI_X).real),
            float(np.trace(rho @ PAULI_Y).real),
            float(np.trace(rho @ PAULI_Z).real),
        )


GROUND = BlochState(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class DriveParams:
    """Circuit angles of one Trotter step and the number of steps.

    ``J`` and ``h`` are half-angles: theta_J = 2J, theta_h = 2h.
    """

    J: float
    h: float
    steps: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.J) and math.isfinite(self.h)):
            raise ValueError("drive angles must be finite")
        if self.steps < 0:
            raise ValueError(f"steps must be non-negative, got {self.steps}")

    @classmethod
    def from_thetas(cls, theta_j: float, theta_h: float, steps: int = 0) -> "DriveParams":
        return cls(J=theta_j / 2, h=theta_h / 2, steps=steps)

    @property
    def theta_j(self) -> float:
        return 2 * self.J

    @property
    def theta_h(self) -> float:
        return 2 * self.h


def rotate_x(s: BlochState, h: float) -> BlochState:
    c, sn = math.cos(2 * h), math.sin(2 * h)
    return BlochState(s.x, s.y * c - s.z * sn, s.z * c + s.y * sn)


def rotate_z(s: BlochState, angle: float) -> BlochState:
    c, sn = math.cos(2 * angle), math.sin(2 * angle)
    return BlochState(s.x * c + s.y * sn, s.y * c - s.x * sn, s.z)


def dephase(s: BlochState, p: float) -> BlochState:
    """Kraus map rho -> (1 - p) rho + p Z rho Z."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"dephasing probability must lie in [0, 1], got {p}")
    shrink = 1.0 - 2.0 * p
    return BlochState(s.x * shrink, s.y * shrink, s.z)


def dephasing_probability(variance: float, J: float) -> float:
    """Flip probability p = (1 - exp(-2 J^2 variance)) / 2 of a Gaussian Z kick.

    ``variance`` is the variance of the fluctuating neighbour field, not its
    standard deviation.
    """
    if variance < 0:
        raise ValueError(f"variance must be non-negative, got {variance}")
    return 0.5 * (1.0 - math.exp(-2.0 * J * J * variance))
