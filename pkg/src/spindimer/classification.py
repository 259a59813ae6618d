"""Toric entanglement classes and the symmetric/antisymmetric duality.

A dimer's entanglement transition depends on its couplings only through
``alpha = J^2 + D^2``, ``beta = r^2 + K^2``, ``J_zz`` and the category, so
for fixed ``(alpha, beta)`` the admissible ``(J, D, r, K)`` form a 2-torus
with radii ``sqrt(alpha)`` and ``sqrt(beta)``. The dual class lives in the
opposite category with the radii swapped and ``J_zz`` negated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .model import Category, DimerSpec, compile_spec, derived_quantities
from .thermal import check_temperature

__all__ = [
    "TorusInvariants",
    "torus_invariants",
    "same_class",
    "dual_map",
    "is_dual_pair",
    "sample_class",
    "duality_residuals",
    "log_branch_margins",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-9
_LOG_MAX = math.log(np.finfo(float).max)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class TorusInvariants:
    alpha: float  # J^2 + D^2, Pauli convention
    beta: float  # r^2 + K^2, Pauli convention
    J_zz: float
    category: Category

    def __post_init__(self) -> None:
        object.__setattr__(self, "category", Category.parse(self.category))
        if not (self.alpha >= 0 and self.beta >= 0):
            raise InvalidParameterError(
                f"torus invariants must be non-negative, got alpha={self.alpha}, beta={self.beta}"
            )

    @property
    def radii(self) -> tuple[float, float]:
        return math.sqrt(self.alpha), math.sqrt(self.beta)

    def dual(self) -> "TorusInvariants":
        return TorusInvariants(self.beta, self.alpha, -self.J_zz, self.category.flipped())

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "J_zz": self.J_zz,
            "category": self.category.value,
        }


def torus_invariants(spec: DimerSpec) -> TorusInvariants:
    g = compile_spec(spec)
    return TorusInvariants(g.J**2 + g.D**2, g.r**2 + g.K**2, g.J_zz, spec.category)


def same_class(a: DimerSpec, b: DimerSpec, tol: float = DEFAULT_TOL) -> bool:
    """True if ``a`` and ``b`` share a toric class (same transition line)."""
    if not tol > 0:
        raise InvalidParameterError(f"tol must be positive, got {tol!r}")
    ia, ib = torus_invariants(a), torus_invariants(b)
    return (
        ia.category is ib.category
        and abs(ia.J_zz - ib.J_zz) <= tol
        and abs(ia.alpha - ib.alpha) <= tol
        and abs(ia.beta - ib.beta) <= tol
    )


def dual_map(spec: DimerSpec) -> DimerSpec:
    """Canonical dual: flip category, ``(J, D, r, K, Jzz) -> (r, K, J, D, -Jzz)``.

    With this representative the dual Hamiltonian is the original one
    conjugated by a bit flip on the second spin, so the two thermal states
    are locally unitarily equivalent at every ``(B, T)``.
    """
    return DimerSpec(
        spec.category.flipped(),
        J=spec.r,
        D=spec.K,
        r=spec.J,
        K=spec.D,
        J_zz=-spec.J_zz,
        B=spec.B,
        convention=spec.convention,
    )


def is_dual_pair(a: DimerSpec, b: DimerSpec, tol: float = DEFAULT_TOL) -> bool:
    if not tol > 0:
        raise InvalidParameterError(f"tol must be positive, got {tol!r}")
    ia, ib = torus_invariants(a), torus_invariants(b)
    return (
        ia.category is not ib.category
        and abs(ia.J_zz + ib.J_zz) <= tol
        and abs(ia.alpha - ib.beta) <= tol
        and abs(ia.beta - ib.alpha) <= tol
    )


def sample_class(
    inv: TorusInvariants,
    n: int,
    seed: int | None = None,
    B: float = 0.0,
) -> list[DimerSpec]:
    """Draw ``n`` Pauli-convention members of the class ``inv``.

    Points are ``(J, D) = sqrt(alpha) (cos a, sin a)`` and
    ``(r, K) = sqrt(beta) (cos b, sin b)``. Without a seed the angles lie on
    a rank-1 lattice (``a_k = 2 pi k/n``, ``b_k`` golden-ratio spaced, both
    zero for ``k = 0``); with a seed they are uniform random.
    """
    if n < 1:
        raise InvalidParameterError(f"n must be at least 1, got {n!r}")
    if inv.alpha < 0 or inv.beta < 0:
        raise InvalidParameterError("alpha and beta must be non-negative")
    rad_jd, rad_rk = inv.radii
    if seed is None:
        k = np.arange(n)
        a = 2 * np.pi * k / n
        b = 2 * np.pi * np.mod(k * _GOLDEN, 1.0)
    else:
        rng = np.random.default_rng(seed)
        a = rng.uniform(0, 2 * np.pi, n)
        b = rng.uniform(0, 2 * np.pi, n)
    return [
        DimerSpec(
            inv.category,
            J=rad_jd * math.cos(ai),
            D=rad_jd * math.sin(ai),
            r=rad_rk * math.cos(bi),
            K=rad_rk * math.sin(bi),
            J_zz=inv.J_zz,
            B=B,
        )
        for ai, bi in zip(a, b)
    ]


def _log_sinh(x: float) -> float:
    if x <= 0.0:
        return -math.inf
    return x + math.log(-math.expm1(-2.0 * x)) - math.log(2.0)


def _log_pq(spec: DimerSpec, T: float) -> tuple[float, float, float]:
    """``(log p, log q, Jzz/T)`` with ``p = sinh(e1/T) sin(vartheta)`` etc."""
    g = compile_spec(spec)
    d = derived_quantities(g)
    # sin of the polar angles taken as ratios: sin(atan2(0, -x)) is not 0
    sin1 = math.hypot(g.r, g.K) / d.epsilon1 if d.epsilon1 > 0 else 1.0
    sin2 = math.hypot(g.J, g.D) / d.epsilon2 if d.epsilon2 > 0 else 1.0
    log_p = _log_sinh(d.epsilon1 / T) + (math.log(sin1) if sin1 > 0 else -math.inf)
    log_q = _log_sinh(d.epsilon2 / T) + (math.log(sin2) if sin2 > 0 else -math.inf)
    return log_p, log_q, g.J_zz / T


def _log1p_exp2(log_x: float) -> float:
    # log(1 + x^2) given log x
    return float(np.logaddexp(0.0, 2.0 * log_x))


def _exp_diff(a: float, b: float) -> float:
    # e^a - e^b without overflow to nan
    if a == b:
        return 0.0
    top = max(a, b)
    if top > _LOG_MAX:
        return math.inf if a > b else -math.inf
    return math.exp(a) - math.exp(b)


def duality_residuals(spec: DimerSpec, T: float) -> tuple[float, float]:
    """Residuals of the two critical-line equations at ``(spec.B, T)``.

    ``resI = e^{-2Jzz/T} p^2 - e^{2Jzz/T} q^2 - e^{2Jzz/T}`` and
    ``resII = e^{2Jzz/T} q^2 - e^{-2Jzz/T} p^2 - e^{-2Jzz/T}``.
    ``resI > 0`` exactly when ``C1 > 0`` and ``resII > 0`` exactly when
    ``C2 > 0``. Values too large for a float come back as signed infinity.
    """
    T = check_temperature(T)
    log_p, log_q, z = _log_pq(spec, T)
    res_1 = _exp_diff(-2 * z + 2 * log_p, 2 * z + _log1p_exp2(log_q))
    res_2 = _exp_diff(2 * z + 2 * log_q, -2 * z + _log1p_exp2(log_p))
    return res_1, res_2


def log_branch_margins(spec: DimerSpec, T: float) -> tuple[float, float]:
    """Log-ratios whose signs equal the signs of ``C1`` and ``C2``.

    ``C1 > 0`` iff ``e^{-Jzz/T} p > e^{Jzz/T} sqrt(1 + q^2)``; this returns
    the log of the left side minus the log of the right side (and the same
    for ``C2``). Unlike the normalized branches these never underflow.
    """
    T = check_temperature(T)
    log_p, log_q, z = _log_pq(spec, T)
    m1 = (-z + log_p) - (z + 0.5 * _log1p_exp2(log_q))
    m2 = (z + log_q) - (-z + 0.5 * _log1p_exp2(log_p))
    return m1, m2
