"""Homogeneous mean-field engines for the kicked Ising circuit.

Every qubit carries the same state.  One Trotter step applies the transverse
kick exp(-i h X), then the mean-field Ising rotation exp(i J xi z Z), and in
dissipative mode the dephasing channel whose strength follows from the
neighbour-field variance xi (1 - z^2).

The field value z is the magnetization right after the kick.  U_zz is
diagonal in Z, so this is the neighbour magnetization the coupling actually
sees; it is also the only reading under which the pi/2 kick leaves u_zz = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .qubit_state import (
    GROUND,
    BlochState,
    DriveParams,
    dephase,
    dephasing_probability,
    rotate_x,
    rotate_z,
)

Mode = Literal["unitary", "dissipative"]


@dataclass
class MeanFieldTrace:
    states: list[BlochState]
    params: DriveParams
    xi: float
    mode: Mode
    probabilities: list[float] = field(default_factory=list)
    variances: list[float] = field(default_factory=list)

    @property
    def z(self) -> list[float]:
        return [s.z for s in self.states]

    @property
    def final(self) -> BlochState:
        return self.states[-1]


def step_unitary(s: BlochState, params: DriveParams, xi: float, z_field: float | None = None) -> BlochState:
    """One coherent mean-field step.

    ``z_field`` overrides the neighbour magnetization; by default it is the
    z of the state after the kick.
    """
    kicked = rotate_x(s, params.h)
    z = kicked.z if z_field is None else z_field
    return rotate_z(kicked, params.J * xi * z)


def step_dissipative(
    s: BlochState, params: DriveParams, xi: float, z_field: float | None = None
) -> tuple[BlochState, float]:
    """One dissipative step; returns the new state and the dephasing probability used."""
    kicked = rotate_x(s, params.h)
    z = kicked.z if z_field is None else z_field
    rotated = rotate_z(kicked, params.J * xi * z)
    p = dephasing_probability(field_variance(xi, z), params.J)
    return dephase(rotated, p), p


def field_variance(xi: float, z: float) -> float:
    """Variance xi (1 - z^2) of the summed neighbour magnetization about its mean."""
    # |z| can exceed 1 by rounding only
    return max(xi * (1.0 - z * z), 0.0)


def run(params: DriveParams, xi: float, mode: Mode = "dissipative") -> MeanFieldTrace:
    if mode not in ("unitary", "dissipative"):
        raise ValueError(f"unknown mean-field mode {mode!r}")
    states = [GROUND]
    probs: list[float] = []
    variances: list[float] = []
    s = GROUND
    for _ in range(params.steps):
        if mode == "unitary":
            s = step_unitary(s, params, xi)
        else:
            variances.append(field_variance(xi, rotate_x(s, params.h).z))
            s, p = step_dissipative(s, params, xi)
            probs.append(p)
        states.append(s)
    return MeanFieldTrace(states, params, xi, mode, probs, variances)
