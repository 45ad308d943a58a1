import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kicked_meanfield.qubit_state import (
    PAULI_Z,
    BlochState,
    DriveParams,
    dephase,
    dephasing_probability,
    rotate_x,
    rotate_z,
)

from .conftest import XI_EAGLE, conjugate, expm_pauli

angles = st.floats(-10, 10, allow_nan=False)
probs = st.floats(0, 1)


@st.composite
def bloch_states(draw):
    v = np.array([draw(st.floats(-1, 1)) for _ in range(3)])
    r = draw(st.floats(0, 1))
    n = np.linalg.norm(v)
    v = v / n * r if n > 1e-9 else np.zeros(3)
    return BlochState(*map(float, v))


def close(a: BlochState, b: BlochState, tol=1e-12):
    return np.allclose(a.as_array(), b.as_array(), atol=tol, rtol=0)


def test_rotate_x_examples():
    g = BlochState(0, 0, 1)
    assert close(rotate_x(g, 0), g)
    assert close(rotate_x(g, math.pi / 4), BlochState(0, -1, 0))
    assert close(rotate_x(rotate_x(g, math.pi / 8), math.pi / 8), BlochState(0, -1, 0))


def test_rotate_z_examples():
    s = BlochState(0.3, -0.2, 0.5)
    assert close(rotate_z(s, 0), s)
    assert close(rotate_z(BlochState(1, 0, 0), math.pi / 4), BlochState(0, -1, 0))
    for a in (0.1, 1.3, -2.0):
        assert rotate_z(BlochState(0, 0, 0.7), a) == BlochState(0, 0, 0.7)


@given(bloch_states(), angles)
def test_rotate_x_matches_matrix_oracle(s, h):
    assert close(rotate_x(s, h), conjugate(s, expm_pauli(-h, np.array([[0, 1], [1, 0]]))))


@given(bloch_states(), angles)
def test_rotate_z_matches_matrix_oracle(s, a):
    assert close(rotate_z(s, a), conjugate(s, expm_pauli(a, PAULI_Z)))


def test_rotate_z_heisenberg_handedness():
    # X -> X cos 2a + Y sin 2a under exp(-iaZ) X exp(iaZ)
    a = 0.37
    u = expm_pauli(a, PAULI_Z)
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Y = np.array([[0, -1j], [1j, 0]])
    assert np.allclose(u.conj().T @ X @ u, X * math.cos(2 * a) + Y * math.sin(2 * a))
    assert np.allclose(u.conj().T @ Y @ u, Y * math.cos(2 * a) - X * math.sin(2 * a))


def test_dephase_examples():
    s = BlochState(0.6, 0.3, 0.5)
    assert dephase(s, 0) == s
    assert close(dephase(s, 0.5), BlochState(0, 0, 0.5))
    assert close(dephase(BlochState(0.6, 0, 0.8), 0.25), BlochState(0.3, 0, 0.8))
    with pytest.raises(ValueError):
        dephase(s, 1.2)
    with pytest.raises(ValueError):
        dephase(s, -0.1)


@given(bloch_states(), probs)
def test_dephase_matches_kraus_oracle(s, p):
    rho = s.density_matrix()
    out = (1 - p) * rho + p * PAULI_Z @ rho @ PAULI_Z
    assert close(dephase(s, p), BlochState.from_density_matrix(out))


def test_dephasing_probability():
    assert dephasing_probability(0, math.pi / 4) == 0
    # 0.5 * (1 - exp(-2 (pi/4)^2 288/127)), evaluated with mpmath at 30 digits
    assert dephasing_probability(XI_EAGLE, math.pi / 4) == pytest.approx(0.46952444273703375, abs=1e-14)
    assert dephasing_probability(1e6, 1.0) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        dephasing_probability(-1e-3, 1.0)


@given(st.floats(0, 1e3), st.floats(-5, 5))
def test_dephasing_probability_range(v, J):
    p = dephasing_probability(v, J)
    assert 0 <= p <= 0.5


@given(bloch_states(), angles, angles)
def test_rotations_preserve_norm(s, h, a):
    assert abs(rotate_x(s, h).norm() - s.norm()) < 1e-12
    assert abs(rotate_z(s, a).norm() - s.norm()) < 1e-12


@given(bloch_states(), probs, probs)
def test_dephase_composition_multiplies(s, p, q):
    out = dephase(dephase(s, p), q)
    assert out.norm() <= s.norm() + 1e-15
    assert out.x == pytest.approx(s.x * (1 - 2 * p) * (1 - 2 * q), abs=1e-12)
    assert out.y == pytest.approx(s.y * (1 - 2 * p) * (1 - 2 * q), abs=1e-12)


@given(bloch_states(), angles, probs)
def test_dephase_commutes_with_rotate_z(s, a, p):
    assert close(dephase(rotate_z(s, a), p), rotate_z(dephase(s, p), a))


@given(bloch_states(), angles, angles, probs)
def test_reconstructed_density_matrix_is_physical(s, h, a, p):
    out = dephase(rotate_z(rotate_x(s, h), a), p)
    rho = out.density_matrix()
    assert np.allclose(rho, rho.conj().T)
    assert abs(np.trace(rho) - 1) < 1e-12
    assert np.linalg.eigvalsh(rho).min() >= -1e-12


def test_bloch_state_validation():
    with pytest.raises(ValueError):
        BlochState(1, 1, 0)
    with pytest.raises(ValueError):
        BlochState(float("nan"), 0, 0)


def test_drive_params():
    p = DriveParams.from_thetas(math.pi / 2, 1.0, 5)
    assert p.J == pytest.approx(math.pi / 4) and p.h == 0.5 and p.steps == 5
    assert p.theta_j == pytest.approx(math.pi / 2)
    with pytest.raises(ValueError):
        DriveParams(0.1, 0.1, -1)
    with pytest.raises(ValueError):
        DriveParams(float("inf"), 0.1)
