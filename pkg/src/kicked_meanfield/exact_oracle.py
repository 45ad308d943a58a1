"""Dense statevector simulation of the kicked Ising Floquet map U = U_zz U_x.

Bit order is little-endian: qubit j is bit j of the basis index, so qubit 0
is the least significant bit.  ``_qubit_view`` (amplitude access) and
``_bits`` (basis labels) are the only places that encode this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .qubit_state import DriveParams
from .topology import ConnectivityGraph

DEFAULT_QUBIT_CAP = 22


class ResourceError(RuntimeError):
    """Requested simulation exceeds the configured memory guard."""


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        need = (2**n) * 16
        raise ResourceError(
            f"{n} qubits exceeds the cap of {cap}: the state alone needs {need / 2**20:.0f} MiB; "
            f"raise --qubit-cap to proceed"
        )


def _bits(n: int) -> np.ndarray:
    """(2^n, n) array; entry [b, j] is the value of qubit j in basis state b."""
    idx = np.arange(2**n)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.int8)


def z_signs(n: int) -> np.ndarray:
    """Z eigenvalues (+1 for bit 0, -1 for bit 1), shape (2^n, n)."""
    return 1 - 2 * _bits(n).astype(np.int64)


@dataclass
class StateVector:
    amplitudes: np.ndarray
    n: int

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (2**self.n,):
            raise ValueError(f"expected {2**self.n} amplitudes, got shape {self.amplitudes.shape}")

    @classmethod
    def zeros(cls, n: int, cap: int = DEFAULT_QUBIT_CAP) -> "StateVector":
        _check_cap(n, cap)
        amp = np.zeros(2**n, dtype=complex)
        amp[0] = 1.0
        return cls(amp, n)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy(), self.n)


def _qubit_view(amp: np.ndarray, n: int, q: int) -> np.ndarray:
    # axis 1 is qubit q; axis 0 holds higher qubits, axis 2 lower ones
    return amp.reshape(2 ** (n - q - 1), 2, 2**q)


def apply_single(psi: StateVector, u: np.ndarray, q: int) -> StateVector:
    """Apply a 2x2 unitary to qubit ``q``."""
    v = _qubit_view(psi.amplitudes, psi.n, q)
    out = np.empty_like(v)
    out[:, 0, :] = u[0, 0] * v[:, 0, :] + u[0, 1] * v[:, 1, :]
    out[:, 1, :] = u[1, 0] * v[:, 0, :] + u[1, 1] * v[:, 1, :]
    return StateVector(out.reshape(-1), psi.n)


def rx_matrix(h: float) -> np.ndarray:
    """exp(-i h X)."""
    c, s = np.cos(h), np.sin(h)
    return np.array([[c, -1j * s], [-1j * s, c]])


def apply_ux(psi: StateVector, h: float) -> StateVector:
    u = rx_matrix(h)
    for q in range(psi.n):
        psi = apply_single(psi, u, q)
    return psi


def ising_energies(g: ConnectivityGraph) -> np.ndarray:
    """Integer sum over edges of sigma_j sigma_k for every basis state."""
    sig = z_signs(g.n_qubits)
    e = np.zeros(2**g.n_qubits, dtype=np.int64)
    for j, k in g.sorted_edges():
        e += sig[:, j] * sig[:, k]
    return e


def uzz_phases(J: float, g: ConnectivityGraph, energies: np.ndarray | None = None) -> np.ndarray:
    e = ising_energies(g) if energies is None else energies
    m = g.n_edges
    table = np.exp(1j * J * np.arange(-m, m + 1))
    return table[e + m]


def apply_uzz(psi: StateVector, J: float, g: ConnectivityGraph, phases: np.ndarray | None = None) -> StateVector:
    """exp(i J sum_edges Z_j Z_k), a diagonal phase per basis state."""
    if g.n_qubits != psi.n:
        raise ValueError(f"graph has {g.n_qubits} qubits but the state has {psi.n}")
    ph = uzz_phases(J, g) if phases is None else phases
    return StateVector(psi.amplitudes * ph, psi.n)


_PAULI = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def expectation_pauli_string(psi: StateVector, ops: dict[int, str]) -> float:
    """<psi| P |psi> for the tensor-product Pauli string ``ops`` (qubit -> 'X'|'Y'|'Z')."""
    phi = psi
    for q, name in sorted(ops.items()):
        if not 0 <= q < psi.n:
            raise ValueError(f"qubit {q} out of range for {psi.n} qubits")
        if name not in _PAULI:
            raise ValueError(f"unknown Pauli {name!r}")
        phi = apply_single(phi, _PAULI[name], q)
    val = np.vdot(psi.amplitudes, phi.amplitudes)
    if abs(val.imag) > 1e-10:
        raise ArithmeticError(f"Pauli expectation has imaginary part {val.imag}")
    return float(val.real)


def single_site_expectations(psi: StateVector) -> dict[str, np.ndarray]:
    """<X_j>, <Y_j>, <Z_j> for every qubit."""
    n = psi.n
    xs, ys, zs = np.empty(n), np.empty(n), np.empty(n)
    for q in range(n):
        v = _qubit_view(psi.amplitudes, n, q)
        a0, a1 = v[:, 0, :], v[:, 1, :]
        off = np.vdot(a0, a1)  # sum conj(a0) a1
        xs[q] = 2 * off.real
        ys[q] = 2 * off.imag
        zs[q] = np.sum(np.abs(a0) ** 2) - np.sum(np.abs(a1) ** 2)
    return {"X": xs, "Y": ys, "Z": zs}


@dataclass
class StepRecord:
    step: int
    z: np.ndarray
    x: np.ndarray | None = None
    y: np.ndarray | None = None

    @property
    def mean_z(self) -> float:
        return float(np.mean(self.z))


def evolve(
    g: ConnectivityGraph,
    params: DriveParams,
    cap: int = DEFAULT_QUBIT_CAP,
    transverse: bool = False,
    return_state: bool = False,
):
    """Run ``params.steps`` Trotter steps from |0...0>, recording per-step observables.

    With ``transverse`` the records also carry <X_j> and <Y_j>.  With
    ``return_state`` the final StateVector is returned alongside the records.
    """
    _check_cap(g.n_qubits, cap)
    psi = StateVector.zeros(g.n_qubits, cap)
    phases = uzz_phases(params.J, g)
    u = rx_matrix(params.h)

    def record(step):
        obs = single_site_expectations(psi)
        if transverse:
            return StepRecord(step, obs["Z"], obs["X"], obs["Y"])
        return StepRecord(step, obs["Z"])

    records = [record(0)]
    for t in range(1, params.steps + 1):
        for q in range(psi.n):
            psi = apply_single(psi, u, q)
        psi = StateVector(psi.amplitudes * phases, psi.n)
        records.append(record(t))
    if return_state:
        return records, psi
    return records


# Independent dense-matrix path, used to cross-check the gate-wise one.


def _kron_diag(n: int, sites: dict[int, np.ndarray]) -> np.ndarray:
    """Diagonal of a product of diagonal single-qubit operators (identity elsewhere)."""
    one = np.ones(2)
    # kron(A, B) puts A on the more significant bits, so list qubits high to low
    return reduce(np.kron, [sites.get(q, one) for q in reversed(range(n))], np.ones(1))


def dense_floquet(g: ConnectivityGraph, params: DriveParams) -> np.ndarray:
    """Full 2^n x 2^n matrix of U_zz U_x built from Kronecker products."""
    n = g.n_qubits
    ux = reduce(np.kron, [rx_matrix(params.h)] * n, np.eye(1))
    zdiag = np.array([1.0, -1.0])
    hzz = np.zeros(2**n)
    for j, k in g.sorted_edges():
        hzz += _kron_diag(n, {j: zdiag, k: zdiag})
    return np.exp(1j * params.J * hzz)[:, None] * ux


def dense_evolve(g: ConnectivityGraph, params: DriveParams) -> list[np.ndarray]:
    """Per-step <Z_j> for every qubit by repeated dense matrix-vector products."""
    n = g.n_qubits
    u = dense_floquet(g, params)
    zdiag = np.array([1.0, -1.0])
    zops = np.array([_kron_diag(n, {j: zdiag}) for j in range(n)])
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = 1
    out = []
    for t in range(params.steps + 1):
        if t:
            psi = u @ psi
        out.append(zops @ (np.abs(psi) ** 2))
    return out


def dense_evolve_mean_z(g: ConnectivityGraph, params: DriveParams) -> list[float]:
    return [float(np.mean(z)) for z in dense_evolve(g, params)]
