"""Gibbs states exp(-H/T)/Z of the dimer.

The closed form works block by block: the outer block (|00>, |11>) has
energies ``J_zz +- epsilon1`` and the inner block (|01>, |10>) has
``-J_zz +- epsilon2``. All weights are taken relative to the lowest of the
four energies, so nothing overflows as ``T -> 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidParameterError, InvalidStateError, NumericError
from .model import GeneralCouplings, derived_quantities

__all__ = [
    "XState",
    "block_energies",
    "thermal_state",
    "partition_function",
    "log_partition",
    "thermal_state_oracle",
    "check_temperature",
    "check_density_matrix",
]

_LOG_MAX = math.log(np.finfo(float).max)


def check_temperature(T: float) -> float:
    try:
        T = float(T)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"temperature must be a real number, got {T!r}") from None
    if math.isnan(T) or math.isinf(T):
        raise InvalidParameterError(f"temperature must be finite, got {T!r}")
    if T <= 0.0:
        raise DomainError(f"temperature must be positive, got {T!r}")
    return T


@dataclass(frozen=True)
class XState:
    """Independent entries of an X-shaped two-qubit density matrix.

    ``logZ_shifted`` is the log of the summed Boltzmann weights after
    subtracting ``energy_shift`` (the ground energy); the true log partition
    function is ``logZ_shifted - energy_shift / T``.
    """

    rho11: float
    rho22: float
    rho33: float
    rho44: float
    rho14: complex
    rho23: complex
    logZ_shifted: float = 0.0
    energy_shift: float = 0.0
    T: float = math.inf

    @property
    def log_partition(self) -> float:
        return self.logZ_shifted - self.energy_shift / self.T

    def matrix(self) -> np.ndarray:
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = self.rho11
        rho[1, 1] = self.rho22
        rho[2, 2] = self.rho33
        rho[3, 3] = self.rho44
        rho[0, 3] = self.rho14
        rho[3, 0] = np.conj(self.rho14)
        rho[1, 2] = self.rho23
        rho[2, 1] = np.conj(self.rho23)
        return rho

    @classmethod
    def from_matrix(cls, rho: np.ndarray) -> "XState":
        """Read the X entries of ``rho``; entries off the X pattern are ignored."""
        rho = np.asarray(rho)
        return cls(
            float(rho[0, 0].real),
            float(rho[1, 1].real),
            float(rho[2, 2].real),
            float(rho[3, 3].real),
            complex(rho[0, 3]),
            complex(rho[1, 2]),
        )


def block_energies(g: GeneralCouplings) -> tuple[float, float, float, float]:
    """Eigenvalues of ``H`` as ``(Jzz+e1, Jzz-e1, -Jzz+e2, -Jzz-e2)``."""
    d = derived_quantities(g)
    return (
        g.J_zz + d.epsilon1,
        g.J_zz - d.epsilon1,
        -g.J_zz + d.epsilon2,
        -g.J_zz - d.epsilon2,
    )


def _one_minus_plus(cos, axial, transverse, eps):
    """``(1 - cos, 1 + cos)`` with ``cos = axial / eps`` and
    ``eps = hypot(axial, transverse)``, each accurate to full relative precision."""
    tiny = transverse**2 / (eps * (eps + np.abs(axial)))
    minus = np.where(cos > 0, tiny, 1.0 - cos)
    plus = np.where(cos < 0, tiny, 1.0 + cos)
    return minus, plus


def x_state_arrays(J, D, r, K, J_zz, omega, delta, T):
    """Vectorized closed-form X-state entries.

    All arguments broadcast against each other. Returns the tuple
    ``(rho11, rho22, rho33, rho44, rho14, rho23, logZ_shifted, shift)``.
    No validation is done here.
    """
    J, D, r, K, J_zz, omega, delta, T = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (J, D, r, K, J_zz, omega, delta, T))
    )
    rk = np.hypot(r, K)
    jd = np.hypot(J, D)
    eps1 = np.hypot(omega, rk)
    eps2 = np.hypot(delta, jd)

    # direction cosines of each block; a block with zero splitting gets
    # polar angle pi/2 and phase 0
    has1 = eps1 > 0
    has2 = eps2 > 0
    safe1 = np.where(has1, eps1, 1.0)
    safe2 = np.where(has2, eps2, 1.0)
    cos1 = np.where(has1, omega / safe1, 0.0)
    cos2 = np.where(has2, delta / safe2, 0.0)
    # e^{-i phi} sin(angle)
    tilt1 = np.where(has1, (r - 1j * K) / safe1, 1.0)
    tilt2 = np.where(has2, (J - 1j * D) / safe2, 1.0)

    lo1 = J_zz - eps1
    lo2 = -J_zz - eps2
    shift = np.minimum(lo1, lo2)

    # Boltzmann weights of the lower and upper level of each block,
    # relative to e^{-shift/T}
    w1 = np.exp(-(lo1 - shift) / T)
    w2 = np.exp(-(lo2 - shift) / T)
    up1 = w1 * np.exp(-2.0 * eps1 / T)
    up2 = w2 * np.exp(-2.0 * eps2 / T)
    # e^{-Jzz/T} sinh(e1/T) times e^{shift/T}, accurate for small e1/T
    sinh1 = 0.5 * w1 * -np.expm1(-2.0 * eps1 / T)
    sinh2 = 0.5 * w2 * -np.expm1(-2.0 * eps2 / T)

    # 1 -/+ cos of each polar angle without cancellation near the poles
    minus1, plus1 = _one_minus_plus(cos1, omega, rk, safe1)
    minus2, plus2 = _one_minus_plus(cos2, delta, jd, safe2)

    total = (w1 + up1) + (w2 + up2)
    rho11 = 0.5 * (w1 * minus1 + up1 * plus1) / total
    rho44 = 0.5 * (w1 * plus1 + up1 * minus1) / total
    rho22 = 0.5 * (w2 * minus2 + up2 * plus2) / total
    rho33 = 0.5 * (w2 * plus2 + up2 * minus2) / total
    rho14 = -tilt1 * sinh1 / total
    rho23 = -tilt2 * sinh2 / total
    return rho11, rho22, rho33, rho44, rho14, rho23, np.log(total), shift


def thermal_state(g: GeneralCouplings, T: float) -> XState:
    """Closed-form Gibbs state of the general model at temperature ``T``.

    Examples
    --------
    >>> from spindimer.model import GeneralCouplings
    >>> x = thermal_state(GeneralCouplings(J=0.5, J_zz=0.25), 0.5)
    >>> round(x.rho22, 5), round(x.rho23.real, 5)
    (0.40374, -0.30749)
    """
    T = check_temperature(T)
    out = x_state_arrays(g.J, g.D, g.r, g.K, g.J_zz, g.omega, g.delta, T)
    rho11, rho22, rho33, rho44, rho14, rho23, logs, shift = (a.item() for a in out)
    return XState(
        rho11, rho22, rho33, rho44, complex(rho14), complex(rho23), logs, shift, T
    )


def log_partition(g: GeneralCouplings, T: float) -> float:
    """``log Tr exp(-H/T)``, finite for every ``T > 0``."""
    T = check_temperature(T)
    energies = np.array(block_energies(g))
    lo = energies.min()
    return float(-lo / T + np.log(np.exp(-(energies - lo) / T).sum()))


def partition_function(g: GeneralCouplings, T: float) -> float:
    """``Tr exp(-H/T)``.

    Raises :class:`NumericError` when the value is not representable as a
    float; use :func:`log_partition` in that regime.
    """
    logz = log_partition(g, T)
    if logz > _LOG_MAX:
        raise NumericError(
            f"partition function overflows (log Z = {logz:.6g}); use log_partition()"
        )
    return math.exp(logz)


def thermal_state_oracle(H: np.ndarray, T: float) -> np.ndarray:
    """Gibbs state of an arbitrary Hermitian 4x4 ``H`` by eigendecomposition.

    Independent of the closed form; used to verify it.
    """
    T = check_temperature(T)
    H = np.asarray(H, dtype=complex)
    if H.shape != (4, 4):
        raise InvalidParameterError(f"expected a 4x4 matrix, got shape {H.shape}")
    if not np.all(np.isfinite(H)):
        raise InvalidParameterError("Hamiltonian has non-finite entries")
    scale = max(1.0, float(np.abs(H).max()))
    if np.abs(H - H.conj().T).max() > 1e-12 * scale:
        raise InvalidParameterError("Hamiltonian is not Hermitian")
    try:
        evals, evecs = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc
    weights = np.exp(-(evals - evals.min()) / T)
    rho = (evecs * weights) @ evecs.conj().T
    return rho / weights.sum()


def check_density_matrix(rho: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Validate a two-qubit density matrix and return it as a complex array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidStateError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidStateError("density matrix has non-finite entries")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise InvalidStateError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise InvalidStateError(f"density matrix has trace {np.trace(rho).real!r}, not 1")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise InvalidStateError("density matrix is not positive semidefinite")
    return rho
