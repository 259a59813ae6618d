"""Seeded self-checks comparing the closed forms against independent routes.

Used by ``spindimer --command verify`` and by the acceptance tests.
"""
from __future__ import annotations

import numpy as np

from .classification import dual_map, sample_class, torus_invariants
from .measures import chsh_parameter, concurrence_wootters, concurrence_x, negativity
from .model import Category, DimerSpec, GeneralCouplings, compile_spec, hamiltonian_matrix
from .thermal import thermal_state, thermal_state_oracle

__all__ = [
    "DEFAULT_SAMPLES",
    "TOLERANCES",
    "BIT_FLIP_2",
    "random_couplings",
    "random_spec",
    "random_temperature",
    "oracle_equivalence",
    "duality_equivalence",
    "class_invariance",
    "run_all",
]

DEFAULT_SAMPLES = 1000

TOLERANCES = {
    "state_vs_oracle": 1e-12,
    "concurrence_vs_wootters": 1e-10,
    "dual_state": 1e-12,
    "dual_measures": 1e-10,
    "class_concurrence": 1e-12,
}

# I x sigma_x: flips the second spin
BIT_FLIP_2 = np.kron(np.eye(2), np.array([[0.0, 1.0], [1.0, 0.0]]))


def random_couplings(rng: np.random.Generator, scale: float = 2.0) -> GeneralCouplings:
    return GeneralCouplings(*rng.uniform(-scale, scale, 7))


def random_spec(rng: np.random.Generator, scale: float = 2.0) -> DimerSpec:
    category = Category.SYMMETRIC if rng.random() < 0.5 else Category.ANTISYMMETRIC
    J, D, r, K, J_zz, B = rng.uniform(-scale, scale, 6)
    return DimerSpec(category, J, D, r, K, J_zz, B)


def random_temperature(rng: np.random.Generator, lo: float = 1e-3, hi: float = 1e3) -> float:
    return float(10 ** rng.uniform(np.log10(lo), np.log10(hi)))


def oracle_equivalence(seed: int, n: int = DEFAULT_SAMPLES) -> dict:
    """Closed-form state and concurrence against eigendecomposition and Wootters."""
    rng = np.random.default_rng(seed)
    state_dev = 0.0
    conc_dev = 0.0
    for _ in range(n):
        g = random_couplings(rng)
        T = random_temperature(rng)
        x = thermal_state(g, T)
        rho = thermal_state_oracle(hamiltonian_matrix(g), T)
        state_dev = max(state_dev, float(np.abs(x.matrix() - rho).max()))
        conc_dev = max(conc_dev, abs(concurrence_x(x) - concurrence_wootters(rho)))
    return {"state_vs_oracle": state_dev, "concurrence_vs_wootters": conc_dev}


def duality_equivalence(seed: int, n: int = DEFAULT_SAMPLES) -> dict:
    """Dual thermal state against the bit-flip conjugated original."""
    rng = np.random.default_rng(seed)
    state_dev = 0.0
    meas_dev = 0.0
    for _ in range(n):
        spec = random_spec(rng)
        T = random_temperature(rng, 1e-2, 1e2)
        rho = thermal_state(compile_spec(spec), T).matrix()
        rho_dual = thermal_state(compile_spec(dual_map(spec)), T).matrix()
        flipped = BIT_FLIP_2 @ rho @ BIT_FLIP_2
        state_dev = max(state_dev, float(np.abs(rho_dual - flipped).max()))
        for measure in (concurrence_wootters, negativity, chsh_parameter):
            meas_dev = max(meas_dev, abs(measure(rho) - measure(rho_dual)))
    return {"dual_state": state_dev, "dual_measures": meas_dev}


def class_invariance(seed: int, n_classes: int = 10, members: int = 8, n_points: int = 50) -> dict:
    """Concurrence of class members on a shared set of (B, T) points."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_classes):
        inv = torus_invariants(random_spec(rng))
        specs = sample_class(inv, members, seed=int(rng.integers(2**31)))
        Bs = rng.uniform(-3, 3, n_points)
        Ts = 10 ** rng.uniform(-2, 1, n_points)
        for B, T in zip(Bs, Ts):
            values = [concurrence_x(thermal_state(compile_spec(s.with_field(B)), T)) for s in specs]
            worst = max(worst, max(values) - min(values))
    return {"class_concurrence": worst}


def run_all(seed: int = 0, n: int = DEFAULT_SAMPLES) -> dict:
    deviations = {}
    deviations.update(oracle_equivalence(seed, n))
    deviations.update(duality_equivalence(seed + 1, n))
    deviations.update(class_invariance(seed + 2))
    checks = {
        name: {"max_deviation": dev, "tolerance": TOLERANCES[name], "passed": dev <= TOLERANCES[name]}
        for name, dev in deviations.items()
    }
    return {
        "seed": seed,
        "samples": n,
        "checks": checks,
        "passed": all(c["passed"] for c in checks.values()),
    }
