import math

import numpy as np
from hypothesis import settings

from kicked_meanfield.qubit_state import BlochState

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

XI_EAGLE = 288 / 127


def conjugate(s: BlochState, u: np.ndarray) -> BlochState:
    """Schroedinger-picture oracle: rho -> u rho u^dagger on the 2x2 matrix."""
    rho = s.density_matrix()
    return BlochState.from_density_matrix(u @ rho @ u.conj().T)


def expm_pauli(coeff: float, pauli: np.ndarray) -> np.ndarray:
    """exp(i coeff P) for a Pauli matrix P."""
    return math.cos(coeff) * np.eye(2) + 1j * math.sin(coeff) * pauli

