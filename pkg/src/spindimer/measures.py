"""Entanglement and nonlocality measures for two qubits.

``concurrence_x`` is the closed form for X-shaped states. The dense-matrix
functions (``concurrence_wootters``, ``negativity``, ``chsh_parameter``)
accept any 4x4 density matrix and serve as independent checks.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np

from .thermal import XState, check_density_matrix

__all__ = [
    "ConcurrencePair",
    "concurrence_branches",
    "concurrence_x",
    "concurrence_wootters",
    "negativity",
    "partial_transpose",
    "correlation_matrix",
    "chsh_parameter",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
]

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_YY = np.kron(SIGMA_Y, SIGMA_Y)
_PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True)
class ConcurrencePair:
    C1: float
    C2: float

    @property
    def active(self) -> str:
        """Name of the larger branch, ``"C1"`` or ``"C2"``."""
        return "C1" if self.C1 >= self.C2 else "C2"


def concurrence_branches(x: XState) -> ConcurrencePair:
    """The two candidate branches of the X-state concurrence.

    ``C1 = |rho14| - sqrt(rho22 rho33)`` and
    ``C2 = |rho23| - sqrt(rho11 rho44)``.
    """
    c1 = abs(x.rho14) - np.sqrt(max(x.rho22, 0.0) * max(x.rho33, 0.0))
    c2 = abs(x.rho23) - np.sqrt(max(x.rho11, 0.0) * max(x.rho44, 0.0))
    return ConcurrencePair(float(c1), float(c2))


def concurrence_x(x: XState) -> float:
    """Concurrence of an X state, ``2 max(C1, C2, 0)``."""
    b = concurrence_branches(x)
    return 2.0 * max(b.C1, b.C2, 0.0)


def branches_arrays(rho11, rho22, rho33, rho44, rho14, rho23):
    """Vectorized ``(C1, C2)`` from arrays of X-state entries."""
    c1 = np.abs(rho14) - np.sqrt(np.clip(rho22, 0, None) * np.clip(rho33, 0, None))
    c2 = np.abs(rho23) - np.sqrt(np.clip(rho11, 0, None) * np.clip(rho44, 0, None))
    return c1, c2


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    evals, evecs = np.linalg.eigh(rho)
    evals = np.sqrt(np.clip(evals, 0.0, None))
    return (evecs * evals) @ evecs.conj().T


def concurrence_wootters(rho: np.ndarray, dps: int | None = 40) -> float:
    """Wootters concurrence of an arbitrary two-qubit density matrix.

    ``lambda_i`` are the square roots of the eigenvalues of the Hermitian
    matrix ``sqrt(rho) rho~ sqrt(rho)``, ``rho~ = (Y x Y) rho* (Y x Y)``,
    which shares its spectrum with ``rho rho~``.

    Parameters
    ----------
    rho : (4, 4) array_like
        Density matrix in the |00>, |01>, |10>, |11> basis.
    dps : int or None
        Decimal digits for the eigen-solves (via mpmath). Square roots of
        round-off sized eigenvalues otherwise leak ~1e-8 errors into the
        result for nearly pure states. ``None`` runs in float64 instead.

    Returns
    -------
    float
        ``max(0, l1 - l2 - l3 - l4)`` with ``l`` sorted decreasingly.
    """
    rho = check_density_matrix(rho)
    if dps is None:
        root = _psd_sqrt(rho)
        R = root @ (_YY @ rho.conj() @ _YY) @ root
        R = 0.5 * (R + R.conj().T)
        mu = np.linalg.eigvalsh(R)
    else:
        mu = _wootters_spectrum_mp(rho, dps)
    lam = np.sort(np.sqrt(np.clip(mu, 0.0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def _wootters_spectrum_mp(rho: np.ndarray, dps: int) -> np.ndarray:
    with mpmath.workdps(dps):
        A = mpmath.matrix(rho.tolist())
        evals, evecs = mpmath.eighe(A)
        roots = [mpmath.sqrt(max(mpmath.re(e), 0)) for e in evals]
        root = evecs * mpmath.diag(roots) * evecs.H
        yy = mpmath.matrix(_YY.real.tolist())
        R = root * yy * A.conjugate() * yy * root
        R = (R + R.H) / 2
        mu = mpmath.eighe(R, eigvals_only=True)
        return np.array([float(mpmath.re(m)) for m in mu])


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Partial transpose over the second qubit."""
    rho = np.asarray(rho)
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def negativity(rho: np.ndarray) -> float:
    """Sum of the magnitudes of the negative eigenvalues of ``rho^{T_B}``.

    Normalized so that a Bell state gives 0.5.
    """
    rho = check_density_matrix(rho)
    evals = np.linalg.eigvalsh(partial_transpose(rho))
    return float(-evals[evals < 0].sum())


def correlation_matrix(rho: np.ndarray) -> np.ndarray:
    """Real 3x3 matrix ``T_ij = Tr[rho sigma_i x sigma_j]``."""
    rho = np.asarray(rho, dtype=complex)
    T = np.empty((3, 3))
    for i, si in enumerate(_PAULIS):
        for j, sj in enumerate(_PAULIS):
            T[i, j] = np.trace(rho @ np.kron(si, sj)).real
    return T


def chsh_parameter(rho: np.ndarray) -> float:
    """Horodecki quantity M(rho): sum of the two largest eigenvalues of T^T T.

    The CHSH inequality can be violated iff ``M > 1``; the maximal
    quantum value is ``2``.
    """
    rho = check_density_matrix(rho)
    T = correlation_matrix(rho)
    u = np.linalg.eigvalsh(T.T @ T)
    return float(u[1] + u[2])
