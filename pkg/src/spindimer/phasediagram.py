"""Entanglement transition lines and measure grids in the (B, T) plane."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .classification import log_branch_margins
from .errors import DomainError, InvalidParameterError
from .measures import branches_arrays, partial_transpose
from .model import Category, DimerSpec, compile_spec
from .thermal import check_temperature, x_state_arrays

__all__ = [
    "CriticalPoint",
    "TransitionCurve",
    "DiagramGrid",
    "MEASURES",
    "measure_grid",
    "concurrence_grid",
    "negativity_grid",
    "critical_temperatures",
    "transition_curve",
    "entangled_area",
    "heisenberg_tc",
    "default_temperature_range",
    "DEFAULT_TOL",
    "DEFAULT_SCAN_POINTS",
]

DEFAULT_TOL = 1e-10
DEFAULT_SCAN_POINTS = 256
MEASURES = ("concurrence", "negativity", "chsh")


class CriticalPoint(NamedTuple):
    B: float
    Tc: float
    branch: str  # "C1" or "C2": the branch that vanishes at Tc


@dataclass
class TransitionCurve:
    points: list[CriticalPoint] = field(default_factory=list)
    solver_tol: float = DEFAULT_TOL

    def temperatures(self) -> np.ndarray:
        return np.array([p.Tc for p in self.points])

    def fields(self) -> np.ndarray:
        return np.array([p.B for p in self.points])


@dataclass
class DiagramGrid:
    """``values[i, j]`` is the measure at ``(B_axis[i], T_axis[j])``."""

    B_axis: np.ndarray
    T_axis: np.ndarray
    values: np.ndarray
    measure: str = "concurrence"

    def __post_init__(self) -> None:
        self.B_axis = np.asarray(self.B_axis, dtype=float)
        self.T_axis = np.asarray(self.T_axis, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.B_axis.size, self.T_axis.size):
            raise InvalidParameterError(
                f"values shape {self.values.shape} does not match axes "
                f"({self.B_axis.size}, {self.T_axis.size})"
            )


def _check_axes(B_axis, T_axis) -> tuple[np.ndarray, np.ndarray]:
    B = np.atleast_1d(np.asarray(B_axis, dtype=float))
    T = np.atleast_1d(np.asarray(T_axis, dtype=float))
    if B.size == 0 or T.size == 0:
        raise InvalidParameterError("axes must be non-empty")
    if not (np.all(np.isfinite(B)) and np.all(np.isfinite(T))):
        raise InvalidParameterError("axes must be finite")
    if np.any(T <= 0):
        raise DomainError("all temperatures must be positive")
    return B, T


def _grid_entries(spec: DimerSpec, B: np.ndarray, T: np.ndarray):
    g = compile_spec(spec.with_field(0.0))
    BB, TT = np.meshgrid(B, T, indexing="ij")
    if spec.category is Category.SYMMETRIC:
        omega, delta = BB, 0.0
    else:
        omega, delta = 0.0, BB
    return x_state_arrays(g.J, g.D, g.r, g.K, g.J_zz, omega, delta, TT)[:6]


def _dense_stack(rho11, rho22, rho33, rho44, rho14, rho23) -> np.ndarray:
    rho = np.zeros(rho11.shape + (4, 4), dtype=complex)
    rho[..., 0, 0] = rho11
    rho[..., 1, 1] = rho22
    rho[..., 2, 2] = rho33
    rho[..., 3, 3] = rho44
    rho[..., 0, 3] = rho14
    rho[..., 3, 0] = np.conj(rho14)
    rho[..., 1, 2] = rho23
    rho[..., 2, 1] = np.conj(rho23)
    return rho


def _negativity_stack(rho: np.ndarray) -> np.ndarray:
    pt = rho.reshape(rho.shape[:-2] + (2, 2, 2, 2))
    pt = np.swapaxes(pt, -3, -1).reshape(rho.shape)
    evals = np.linalg.eigvalsh(pt)
    return -np.where(evals < 0, evals, 0.0).sum(axis=-1)


def _chsh_stack(rho: np.ndarray) -> np.ndarray:
    from .measures import SIGMA_X, SIGMA_Y, SIGMA_Z

    paulis = (SIGMA_X, SIGMA_Y, SIGMA_Z)
    corr = np.empty(rho.shape[:-2] + (3, 3))
    for i, si in enumerate(paulis):
        for j, sj in enumerate(paulis):
            op = np.kron(si, sj)
            corr[..., i, j] = np.einsum("...ab,ba->...", rho, op).real
    u = np.linalg.eigvalsh(np.swapaxes(corr, -1, -2) @ corr)
    return u[..., 1] + u[..., 2]


def measure_grid(
    spec: DimerSpec, B_axis: Sequence[float], T_axis: Sequence[float], measure: str = "concurrence"
) -> DiagramGrid:
    """Evaluate ``measure`` on the Gibbs state at every ``(B, T)``.

    ``spec.B`` is ignored; the field comes from ``B_axis``.
    """
    if measure not in MEASURES:
        raise InvalidParameterError(f"unknown measure {measure!r}; expected one of {MEASURES}")
    B, T = _check_axes(B_axis, T_axis)
    entries = _grid_entries(spec, B, T)
    if measure == "concurrence":
        c1, c2 = branches_arrays(*entries)
        values = 2.0 * np.maximum(np.maximum(c1, c2), 0.0)
    elif measure == "negativity":
        values = _negativity_stack(_dense_stack(*entries))
    else:
        values = _chsh_stack(_dense_stack(*entries))
    return DiagramGrid(B, T, values, measure)


def concurrence_grid(spec: DimerSpec, B_axis, T_axis) -> DiagramGrid:
    return measure_grid(spec, B_axis, T_axis, "concurrence")


def negativity_grid(spec: DimerSpec, B_axis, T_axis) -> DiagramGrid:
    return measure_grid(spec, B_axis, T_axis, "negativity")


def default_temperature_range(spec: DimerSpec, B: float) -> tuple[float, float]:
    """``[1e-3 E, 10 E]`` with ``E`` the largest Pauli-form energy scale."""
    g = compile_spec(spec.with_field(B))
    scale = max(abs(g.J), abs(g.D), abs(g.r), abs(g.K), abs(g.J_zz), abs(g.omega), abs(g.delta))
    if scale == 0.0:
        return (1e-3, 10.0)
    return (1e-3 * scale, 10.0 * scale)


def critical_temperatures(
    spec: DimerSpec,
    B: float,
    T_range: tuple[float, float] | None = None,
    tol: float = DEFAULT_TOL,
    n_scan: int = DEFAULT_SCAN_POINTS,
) -> list[CriticalPoint]:
    """All temperatures in ``T_range`` where ``max(C1, C2)`` changes sign.

    The range is scanned on ``n_scan`` log-spaced points and every bracket
    is bisected until its width is at most ``tol``. The sign test uses the
    log-ratio form of each branch (same zero set as ``C1``/``C2``, but free
    of underflow when ``T`` is far below the gap). Returns an empty list
    when there is no transition.
    """
    if not (tol > 0 and math.isfinite(tol)):
        raise InvalidParameterError(f"tol must be positive, got {tol!r}")
    if n_scan < 2:
        raise InvalidParameterError(f"n_scan must be at least 2, got {n_scan!r}")
    if T_range is None:
        T_range = default_temperature_range(spec, B)
    t_lo, t_hi = (float(t) for t in T_range)
    if not (math.isfinite(t_lo) and math.isfinite(t_hi)) or not 0 < t_lo < t_hi:
        raise InvalidParameterError(f"need 0 < Tlo < Thi, got {T_range!r}")

    at_b = spec.with_field(B)

    def margin(T: float) -> tuple[float, str]:
        m1, m2 = log_branch_margins(at_b, T)
        return (m1, "C1") if m1 >= m2 else (m2, "C2")

    temps = np.geomspace(t_lo, t_hi, n_scan)
    temps[0], temps[-1] = t_lo, t_hi
    scan = [margin(T) for T in temps]

    roots = []
    for k in range(n_scan - 1):
        (m_a, br_a), (m_b, br_b) = scan[k], scan[k + 1]
        inside_a, inside_b = m_a > 0, m_b > 0
        if inside_a == inside_b:
            continue
        lo, hi = temps[k], temps[k + 1]
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if (margin(mid)[0] > 0) == inside_a:
                lo = mid
            else:
                hi = mid
        branch = br_a if inside_a else br_b
        roots.append(CriticalPoint(float(B), float(0.5 * (lo + hi)), branch))
    return roots


def transition_curve(
    spec: DimerSpec,
    B_axis: Sequence[float],
    T_range: tuple[float, float] | None = None,
    tol: float = DEFAULT_TOL,
    n_scan: int = DEFAULT_SCAN_POINTS,
) -> TransitionCurve:
    """Critical temperatures for each field in ``B_axis``, sorted by ``B``."""
    points: list[CriticalPoint] = []
    for B in sorted(float(b) for b in B_axis):
        points.extend(critical_temperatures(spec, B, T_range, tol, n_scan))
    return TransitionCurve(points, tol)


def entangled_area(grid: DiagramGrid, threshold: float = 1e-12) -> float:
    """Fraction of grid cells whose value exceeds ``threshold``."""
    if threshold < 0:
        raise InvalidParameterError(f"threshold must be non-negative, got {threshold!r}")
    values = np.asarray(grid.values)
    if values.size == 0:
        return 0.0
    return float(np.count_nonzero(values > threshold) / values.size)


def heisenberg_tc(Gamma: float) -> float:
    """Critical temperature ``Gamma / ln 3`` of the Heisenberg classes.

    ``Gamma`` is the spin-convention exchange radius ``sqrt(J'^2 + D'^2)``.
    """
    if not Gamma > 0:
        raise DomainError(f"Gamma must be positive, got {Gamma!r}")
    return Gamma / math.log(3.0)
