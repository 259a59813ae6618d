import numpy as np
import pytest

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def kron_hamiltonian(J, D, r, K, J_zz, omega, delta):
    """Pauli-form Hamiltonian assembled term by term from Kronecker products."""
    s = {"x": SX, "y": SY, "z": SZ}
    jm = {
        ("x", "x"): (J + r) / 2,
        ("y", "y"): (J - r) / 2,
        ("x", "y"): (K - D) / 2,
        ("y", "x"): (K + D) / 2,
        ("z", "z"): J_zz,
    }
    H = (omega + delta) / 2 * np.kron(SZ, I2) + (omega - delta) / 2 * np.kron(I2, SZ)
    for (a, b), c in jm.items():
        H = H + c * np.kron(s[a], s[b])
    return H


def spin_hamiltonian(a_xx, a_yy, a_xy, a_yx, c_zz, h, dh):
    """Spin-operator (s = sigma/2) Hamiltonian assembled term by term."""
    sx, sy, sz = SX / 2, SY / 2, SZ / 2
    return (
        a_xx * np.kron(sx, sx)
        + a_yy * np.kron(sy, sy)
        + a_xy * np.kron(sx, sy)
        + a_yx * np.kron(sy, sx)
        + c_zz * np.kron(sz, sz)
        + h * (np.kron(sz, I2) + np.kron(I2, sz))
        + dh * (np.kron(sz, I2) - np.kron(I2, sz))
    )


def random_unitary(rng, n=2):
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng, n=4):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
