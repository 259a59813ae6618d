"""Coupling parameters and the 4x4 Hamiltonian of a two-spin-1/2 dimer.

The general model is written with Pauli matrices,

    H = (w+/2) sz1 + (w-/2) sz2 + sigma1 . Jmat . sigma2,

with ``Jmat = [[Jxx, Jxy, 0], [Jyx, Jyy, 0], [0, 0, Jzz]]`` and

    Jxx = (J + r)/2,  Jyy = (J - r)/2,  Jxy = (K - D)/2,  Jyx = (K + D)/2,
    w+- = omega +- delta.

Energies and temperatures share one arbitrary unit (hbar = k_B = 1).
Matrices are in the ordered product basis |00>, |01>, |10>, |11>, where
|0> is the +1 eigenstate of sigma_z.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from enum import Enum

import numpy as np

from .errors import InvalidParameterError

__all__ = [
    "Category",
    "Convention",
    "GeneralCouplings",
    "DimerSpec",
    "DerivedAngles",
    "couplings_from_spin_convention",
    "compile_spec",
    "derived_quantities",
    "hamiltonian_matrix",
    "heisenberg",
    "xy",
]


class Category(str, Enum):
    """How the two magnetic moments couple to the field."""

    SYMMETRIC = "symmetric"  # parallel moments: w+ = w- = B
    ANTISYMMETRIC = "antisymmetric"  # antiparallel moments: w+ = -w- = B

    @classmethod
    def parse(cls, value: "Category | str") -> "Category":
        try:
            return cls(value)
        except ValueError:
            raise InvalidParameterError(
                f"unknown category {value!r}; expected 'symmetric' or 'antisymmetric'"
            ) from None

    def flipped(self) -> "Category":
        if self is Category.SYMMETRIC:
            return Category.ANTISYMMETRIC
        return Category.SYMMETRIC


class Convention(str, Enum):
    """Operator convention the bilinear couplings are quoted in."""

    PAULI = "pauli"  # coefficients of sigma_a sigma_b products
    SPIN = "spin"  # coefficients of s_a s_b products, s = sigma/2

    @classmethod
    def parse(cls, value: "Convention | str") -> "Convention":
        try:
            return cls(value)
        except ValueError:
            raise InvalidParameterError(
                f"unknown convention {value!r}; expected 'pauli' or 'spin'"
            ) from None


def _check_finite(**values: float) -> None:
    for name, v in values.items():
        try:
            ok = math.isfinite(v)
        except TypeError:
            raise InvalidParameterError(f"{name} must be a real number, got {v!r}") from None
        if not ok:
            raise InvalidParameterError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class GeneralCouplings:
    """The seven real parameters of the general traceless model (Pauli form)."""

    J: float = 0.0
    D: float = 0.0
    r: float = 0.0
    K: float = 0.0
    J_zz: float = 0.0
    omega: float = 0.0
    delta: float = 0.0

    def __post_init__(self) -> None:
        for f in fields(self):
            v = getattr(self, f.name)
            _check_finite(**{f.name: v})
            object.__setattr__(self, f.name, float(v))

    @property
    def J_xx(self) -> float:
        return (self.J + self.r) / 2

    @property
    def J_yy(self) -> float:
        return (self.J - self.r) / 2

    @property
    def J_xy(self) -> float:
        return (self.K - self.D) / 2

    @property
    def J_yx(self) -> float:
        return (self.K + self.D) / 2

    @property
    def omega_plus(self) -> float:
        return self.omega + self.delta

    @property
    def omega_minus(self) -> float:
        return self.omega - self.delta

    def coupling_matrix(self) -> np.ndarray:
        """The real 3x3 exchange matrix contracting sigma1 and sigma2."""
        return np.array(
            [
                [self.J_xx, self.J_xy, 0.0],
                [self.J_yx, self.J_yy, 0.0],
                [0.0, 0.0, self.J_zz],
            ]
        )


@dataclass(frozen=True)
class DimerSpec:
    """A symmetric or antisymmetric dimer in a field of strength ``B``.

    ``J, D, r, K, J_zz`` are read in ``convention``. In the Pauli convention
    they are the parameters of :class:`GeneralCouplings`. In the spin
    convention they are the coefficients of

        J (sx sx + sy sy) - D (sx sy - sy sx) + r (sx sx - sy sy)
        + K (sx sy + sy sx) + J_zz sz sz

    with ``s = sigma/2``, and the field term is ``B (sz1 +- sz2)``.
    """

    category: Category
    J: float = 0.0
    D: float = 0.0
    r: float = 0.0
    K: float = 0.0
    J_zz: float = 0.0
    B: float = 0.0
    convention: Convention = Convention.PAULI

    def __post_init__(self) -> None:
        object.__setattr__(self, "category", Category.parse(self.category))
        object.__setattr__(self, "convention", Convention.parse(self.convention))
        for name in ("J", "D", "r", "K", "J_zz", "B"):
            v = getattr(self, name)
            _check_finite(**{name: v})
            object.__setattr__(self, name, float(v))

    @property
    def couplings(self) -> tuple[float, float, float, float, float]:
        return (self.J, self.D, self.r, self.K, self.J_zz)

    def with_field(self, B: float) -> "DimerSpec":
        return DimerSpec(self.category, *self.couplings, B=B, convention=self.convention)

    def to_pauli(self) -> "DimerSpec":
        """Same dimer with its couplings re-expressed in the Pauli convention."""
        if self.convention is Convention.PAULI:
            return self
        g = compile_spec(self)
        return DimerSpec(self.category, g.J, g.D, g.r, g.K, g.J_zz, B=self.B)

    def as_dict(self) -> dict:
        return {
            "category": self.category.value,
            "convention": self.convention.value,
            "J": self.J,
            "D": self.D,
            "r": self.r,
            "K": self.K,
            "J_zz": self.J_zz,
            "B": self.B,
        }


@dataclass(frozen=True)
class DerivedAngles:
    epsilon1: float
    epsilon2: float
    vartheta: float
    theta: float
    phi1: float
    phi2: float


def couplings_from_spin_convention(
    a_xx: float,
    a_yy: float,
    a_xy: float,
    a_yx: float,
    c_zz: float,
    h: float = 0.0,
    dh: float = 0.0,
) -> GeneralCouplings:
    """Convert a spin-operator Hamiltonian to Pauli-form couplings.

    The input Hamiltonian is

        a_xx sx sx + a_yy sy sy + a_xy sx sy + a_yx sy sx + c_zz sz sz
        + h (sz1 + sz2) + dh (sz1 - sz2)

    with ``s = sigma/2``. Bilinear terms pick up a factor 1/4; the field
    terms map one-to-one because ``h sz = (h/2) sigma_z``.
    """
    _check_finite(a_xx=a_xx, a_yy=a_yy, a_xy=a_xy, a_yx=a_yx, c_zz=c_zz, h=h, dh=dh)
    return GeneralCouplings(
        J=(a_xx + a_yy) / 4,
        D=(a_yx - a_xy) / 4,
        r=(a_xx - a_yy) / 4,
        K=(a_xy + a_yx) / 4,
        J_zz=c_zz / 4,
        omega=h,
        delta=dh,
    )


def compile_spec(spec: DimerSpec) -> GeneralCouplings:
    """Lower a :class:`DimerSpec` to the seven general couplings."""
    category = Category.parse(spec.category)
    if category is Category.SYMMETRIC:
        omega, delta = spec.B, 0.0
    else:
        omega, delta = 0.0, spec.B

    if Convention.parse(spec.convention) is Convention.PAULI:
        return GeneralCouplings(spec.J, spec.D, spec.r, spec.K, spec.J_zz, omega, delta)
    return couplings_from_spin_convention(
        a_xx=spec.J + spec.r,
        a_yy=spec.J - spec.r,
        a_xy=spec.K - spec.D,
        a_yx=spec.K + spec.D,
        c_zz=spec.J_zz,
        h=omega,
        dh=delta,
    )


def derived_quantities(g: GeneralCouplings) -> DerivedAngles:
    """Block energies and mixing angles of the two 2x2 blocks of ``H``.

    The outer block (|00>, |11>) has splitting ``epsilon1`` and polar angle
    ``vartheta`` (``cos = omega/epsilon1``); the inner block (|01>, |10>)
    has ``epsilon2`` and ``theta`` (``cos = delta/epsilon2``). ``phi1`` and
    ``phi2`` are the azimuthal phases of ``r + iK`` and ``J + iD``. A block
    with zero splitting gets polar angle pi/2 and phase 0.
    """
    rk = math.hypot(g.r, g.K)
    jd = math.hypot(g.J, g.D)
    eps1 = math.hypot(g.omega, rk)
    eps2 = math.hypot(g.delta, jd)

    if eps1 > 0.0:
        vartheta = math.atan2(rk, g.omega)
        phi1 = math.atan2(g.K, g.r)
    else:
        vartheta, phi1 = math.pi / 2, 0.0
    if eps2 > 0.0:
        theta = math.atan2(jd, g.delta)
        phi2 = math.atan2(g.D, g.J)
    else:
        theta, phi2 = math.pi / 2, 0.0
    return DerivedAngles(eps1, eps2, vartheta, theta, phi1, phi2)


def hamiltonian_matrix(g: GeneralCouplings) -> np.ndarray:
    """Dense 4x4 Hamiltonian; Hermitian, traceless and X-shaped."""
    H = np.zeros((4, 4), dtype=complex)
    H[0, 0] = g.omega + g.J_zz
    H[1, 1] = g.delta - g.J_zz
    H[2, 2] = -g.delta - g.J_zz
    H[3, 3] = -g.omega + g.J_zz
    H[0, 3] = complex(g.r, -g.K)
    H[3, 0] = complex(g.r, g.K)
    H[1, 2] = complex(g.J, -g.D)
    H[2, 1] = complex(g.J, g.D)
    return H


def heisenberg(
    J: float = 1.0,
    category: Category | str = Category.SYMMETRIC,
    B: float = 0.0,
) -> DimerSpec:
    """Isotropic Heisenberg dimer ``J s1.s2 + B (sz1 + sz2)``, spin convention.

    The antisymmetric variant is its dual representative
    ``-J sz sz + J (sx sx - sy sy) + B (sz1 - sz2)``.
    """
    category = Category.parse(category)
    if category is Category.SYMMETRIC:
        return DimerSpec(category, J=J, J_zz=J, B=B, convention=Convention.SPIN)
    return DimerSpec(category, r=J, J_zz=-J, B=B, convention=Convention.SPIN)


def xy(
    gamma: float,
    category: Category | str = Category.SYMMETRIC,
    B: float = 0.0,
) -> DimerSpec:
    """Anisotropic XY dimer ``(1+g) sx sx + (1-g) sy sy + B (sz1 +- sz2)``."""
    return DimerSpec(category, J=1.0, r=gamma, B=B, convention=Convention.SPIN)
