import math

import numpy as np
import pytest

from spindimer.errors import DomainError, InvalidParameterError, NumericError
from spindimer.model import GeneralCouplings, hamiltonian_matrix
from spindimer.thermal import (
    XState,
    block_energies,
    log_partition,
    partition_function,
    thermal_state,
    thermal_state_oracle,
)
from spindimer.verification import random_couplings, random_temperature

HEIS = GeneralCouplings(J=0.5, J_zz=0.25)

# Heisenberg J_H = 1, B = 0, T = 0.5 from the singlet/triplet spectrum:
# triplet energy 1/4 (x3), singlet -3/4.
_T = 0.5
_wt, _ws = math.exp(-0.25 / _T), math.exp(0.75 / _T)
Z_HEIS = 3 * _wt + _ws  # 6.301281...
RHO11_HEIS = _wt / Z_HEIS
RHO22_HEIS = (_wt + _ws) / (2 * Z_HEIS)
RHO23_HEIS = (_wt - _ws) / (2 * Z_HEIS)


def test_block_energies():
    assert block_energies(HEIS) == (0.25, 0.25, 0.25, -0.75)
    assert block_energies(GeneralCouplings()) == (0.0, 0.0, 0.0, 0.0)
    assert block_energies(GeneralCouplings(J=0.5, omega=1.0)) == (1.0, -1.0, 0.5, -0.5)


class TestThermalState:
    def test_heisenberg_point(self):
        x = thermal_state(HEIS, _T)
        assert x.rho11 == pytest.approx(RHO11_HEIS, abs=1e-15)
        assert x.rho44 == pytest.approx(RHO11_HEIS, abs=1e-15)
        assert x.rho22 == pytest.approx(RHO22_HEIS, abs=1e-15)
        assert x.rho33 == pytest.approx(RHO22_HEIS, abs=1e-15)
        assert x.rho23 == pytest.approx(RHO23_HEIS, abs=1e-15)
        assert x.rho14 == 0
        # printed 5-digit values (truncated, hence the loose bound)
        assert x.rho11 == pytest.approx(0.09625, abs=2e-5)
        assert x.rho22 == pytest.approx(0.40375, abs=2e-5)
        assert x.rho23.real == pytest.approx(-0.30750, abs=2e-5)
        assert x.log_partition == pytest.approx(math.log(Z_HEIS), abs=1e-14)

    def test_infinite_temperature_limit(self, rng):
        for _ in range(20):
            x = thermal_state(random_couplings(rng), 1e8)
            for d in (x.rho11, x.rho22, x.rho33, x.rho44):
                assert d == pytest.approx(0.25, abs=1e-7)
            assert abs(x.rho14) <= 1e-7 and abs(x.rho23) <= 1e-7

    def test_ground_state_limit_is_singlet(self):
        x = thermal_state(HEIS, 1e-3)
        assert x.rho22 == pytest.approx(0.5, abs=1e-9)
        assert x.rho33 == pytest.approx(0.5, abs=1e-9)
        assert x.rho23 == pytest.approx(-0.5, abs=1e-9)

    @pytest.mark.parametrize("T", [0.0, -1.0])
    def test_nonpositive_temperature(self, T):
        with pytest.raises(DomainError):
            thermal_state(HEIS, T)

    @pytest.mark.parametrize("T", [math.nan, math.inf])
    def test_non_finite_temperature(self, T):
        with pytest.raises(InvalidParameterError):
            thermal_state(HEIS, T)

    def test_state_invariants(self, rng):
        for _ in range(500):
            x = thermal_state(random_couplings(rng), random_temperature(rng))
            diag = [x.rho11, x.rho22, x.rho33, x.rho44]
            assert min(diag) >= 0
            assert sum(diag) == pytest.approx(1.0, abs=1e-12)
            assert abs(x.rho14) <= math.sqrt(x.rho11 * x.rho44) + 1e-12
            assert abs(x.rho23) <= math.sqrt(x.rho22 * x.rho33) + 1e-12

    def test_stable_at_tiny_temperature(self, rng):
        for _ in range(500):
            g = random_couplings(rng, scale=10.0)
            x = thermal_state(g, 1e-6)
            values = [x.rho11, x.rho22, x.rho33, x.rho44, x.rho14, x.rho23, x.logZ_shifted]
            assert np.all(np.isfinite(values))
            assert np.isfinite(x.log_partition)

    def test_matrix_roundtrip(self):
        x = thermal_state(GeneralCouplings(J=0.3, D=-0.2, r=0.1, K=0.4, J_zz=0.2, omega=0.5, delta=-0.3), 0.7)
        y = XState.from_matrix(x.matrix())
        np.testing.assert_array_equal(x.matrix(), y.matrix())


class TestPartitionFunction:
    def test_zero_hamiltonian(self):
        for T in (1e-3, 1.0, 1e3):
            assert partition_function(GeneralCouplings(), T) == pytest.approx(4.0, rel=1e-15)

    def test_heisenberg(self):
        assert partition_function(HEIS, _T) == pytest.approx(Z_HEIS, rel=1e-14)
        assert partition_function(HEIS, _T) == pytest.approx(6.301281, abs=1e-6)
        # reference normalisation with the energy zero moved: Z' = e^{1/(4T)} Z
        assert math.exp(0.25 / _T) * partition_function(HEIS, _T) == pytest.approx(
            10.38906, abs=1e-5
        )

    def test_high_temperature_asymptote(self, rng):
        for _ in range(10):
            assert partition_function(random_couplings(rng), 1e9) == pytest.approx(4.0, rel=1e-8)

    def test_matches_boltzmann_sum(self, rng):
        for _ in range(200):
            g = random_couplings(rng)
            T = random_temperature(rng, 0.1, 100)
            direct = sum(math.exp(-E / T) for E in block_energies(g))
            assert partition_function(g, T) == pytest.approx(direct, rel=1e-12)

    def test_overflow_points_to_log_form(self):
        g = GeneralCouplings(J=5.0)
        with pytest.raises(NumericError, match="log_partition"):
            partition_function(g, 1e-3)
        assert log_partition(g, 1e-3) == pytest.approx(5000.0 + math.log(1 + math.exp(-10000.0)), rel=1e-14)

    def test_domain(self):
        with pytest.raises(DomainError):
            partition_function(HEIS, 0.0)


class TestOracle:
    def test_zero_hamiltonian(self):
        np.testing.assert_allclose(thermal_state_oracle(np.zeros((4, 4)), 1.0), np.eye(4) / 4, atol=1e-16)

    def test_heisenberg(self):
        rho = thermal_state_oracle(hamiltonian_matrix(HEIS), _T)
        assert np.abs(rho - thermal_state(HEIS, _T).matrix()).max() <= 1e-12

    def test_field_aligned(self):
        rho = thermal_state_oracle(hamiltonian_matrix(GeneralCouplings(J=0.5, J_zz=0.25, omega=3.0)), 0.2)
        assert np.argmax(np.diag(rho).real) == 3
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-14)
        assert np.linalg.eigvalsh(rho).min() >= -1e-14

    def test_rejects_non_hermitian(self):
        H = np.zeros((4, 4), dtype=complex)
        H[0, 1] = 1.0
        with pytest.raises(InvalidParameterError):
            thermal_state_oracle(H, 1.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            thermal_state_oracle(np.zeros((4, 4)), -0.1)

    def test_equivalence_and_x_sparsity(self):
        rng = np.random.default_rng(7)
        worst, off_x = 0.0, 0.0
        mask = np.ones((4, 4), dtype=bool)
        for i, j in [(0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)]:
            mask[i, j] = False
        for _ in range(1000):
            g = random_couplings(rng)
            T = random_temperature(rng)
            rho = thermal_state_oracle(hamiltonian_matrix(g), T)
            worst = max(worst, np.abs(thermal_state(g, T).matrix() - rho).max())
            off_x = max(off_x, np.abs(rho[mask]).max())
        assert worst <= 1e-12
        assert off_x <= 1e-13
