"""Dissipative mean-field dynamics of the kicked transverse-field Ising circuit."""

from .qubit_state import BlochState, DriveParams
from .topology import ConnectivityGraph, heavy_hex

__all__ = ["BlochState", "DriveParams", "ConnectivityGraph", "heavy_hex"]
