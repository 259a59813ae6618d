"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line with its measured deviation; the lines
are printed together when the module finishes.
"""
import math
import time

import numpy as np
import pytest

from spindimer.classification import (
    dual_map,
    duality_residuals,
    sample_class,
    torus_invariants,
)
from spindimer.measures import concurrence_branches
from spindimer.model import DimerSpec, compile_spec, heisenberg, xy
from spindimer.phasediagram import (
    DEFAULT_TOL,
    concurrence_grid,
    critical_temperatures,
    entangled_area,
    negativity_grid,
    transition_curve,
)
from spindimer.thermal import thermal_state
from spindimer.verification import (
    duality_equivalence,
    oracle_equivalence,
    random_spec,
    random_temperature,
)

TC_HEIS = 1 / math.log(3)
TC_XY0 = 1 / (2 * math.log(1 + math.sqrt(2)))
B_STEPS = np.arange(0, 5.01, 0.5)
GRID_B = np.linspace(0, 3, 200)
GRID_T = np.linspace(3 / 200, 3, 200)  # (0, 3]
GAMMAS = (0.0, 0.25, 0.5, 0.75, 1.0)

_lines: list[str] = []


@pytest.fixture(scope="module", autouse=True)
def report(request):
    yield
    tr = request.config.pluginmanager.get_plugin("terminalreporter")
    write = tr.write_line if tr is not None else print
    write("")
    write("acceptance summary")
    for line in sorted(_lines, key=lambda s: int(s.split()[0])):
        write(line)


def record(number: int, ok: bool, detail: str) -> None:
    line = f"{number:2d} {'PASS' if ok else 'FAIL'}  {detail}"
    _lines.append(line)
    print(line)
    assert ok, line


def test_1_heisenberg_critical_temperature():
    start = time.perf_counter()
    curve = transition_curve(heisenberg(1.0), B_STEPS)
    elapsed = time.perf_counter() - start
    err = float(np.abs(curve.temperatures() - TC_HEIS).max())
    ok = len(curve.points) == len(B_STEPS) and err <= 1e-8 and elapsed < 1.0
    record(1, ok, f"Heisenberg Tc max |error| {err:.2e} (<= 1e-8), {len(curve.points)} roots, {elapsed:.3f} s (< 1 s)")


def test_2_heisenberg_class_invariance():
    reference = transition_curve(heisenberg(1.0), B_STEPS).temperatures()
    members = sample_class(torus_invariants(heisenberg(1.0)), 16)
    worst, counts_ok = 0.0, True
    for member in members:
        tc = transition_curve(member, B_STEPS).temperatures()
        if tc.shape != reference.shape:
            counts_ok = False
            continue
        worst = max(worst, float(np.abs(tc - reference).max()))
    ok = counts_ok and worst <= 2 * DEFAULT_TOL
    record(2, ok, f"16 class members, max curve deviation {worst:.2e} (<= {2 * DEFAULT_TOL:.0e})")


def test_3_dual_heisenberg():
    dual = heisenberg(1.0, "antisymmetric")
    assert dual == dual_map(heisenberg(1.0))
    curve = transition_curve(dual, B_STEPS)
    err = float(np.abs(curve.temperatures() - TC_HEIS).max())
    ok = len(curve.points) == len(B_STEPS) and err <= 1e-8
    record(3, ok, f"antisymmetric dual Tc max |error| {err:.2e} (<= 1e-8)")


def test_4_exact_duality():
    dev = duality_equivalence(seed=4, n=1000)
    ok = dev["dual_state"] <= 1e-12 and dev["dual_measures"] <= 1e-10
    record(4, ok, f"1000 dual pairs: state {dev['dual_state']:.2e} (<= 1e-12), "
                  f"measures {dev['dual_measures']:.2e} (<= 1e-10)")


def test_5_oracle_equivalence():
    dev = oracle_equivalence(seed=5, n=1000)
    ok = dev["state_vs_oracle"] <= 1e-12 and dev["concurrence_vs_wootters"] <= 1e-10
    record(5, ok, f"1000 samples: state {dev['state_vs_oracle']:.2e} (<= 1e-12), "
                  f"Wootters {dev['concurrence_vs_wootters']:.2e} (<= 1e-10)")


def test_6_point_value():
    expected = (math.e**2 - 3) / (2 * math.e * math.cosh(1.0) + 2)
    # 2e cosh 1 = e^2 + 1, so this is (e^2 - 3) / (e^2 + 3) = 0.42246919
    assert expected == pytest.approx((math.e**2 - 3) / (math.e**2 + 3), abs=1e-15)
    value = concurrence_grid(heisenberg(1.0), [0.0], [0.5]).values[0, 0]
    err = abs(value - expected)
    ok = err <= 1e-12 and abs(expected - 0.4224696) < 1e-6
    record(6, ok, f"C(B=0, T=0.5) = {value:.10f}, |error| {err:.2e} (<= 1e-12)")


def test_7_ferromagnet_never_entangled():
    grid = concurrence_grid(heisenberg(-1.0), GRID_B, GRID_T)
    nonzero = int(np.count_nonzero(grid.values))
    record(7, nonzero == 0, f"ferromagnet 200x200 grid: {nonzero} nonzero cells (== 0)")


def test_8_xy_family():
    flat = transition_curve(xy(0.0), np.linspace(0, 3, 31)).temperatures()
    err = float(np.abs(flat - TC_XY0).max())
    areas = [entangled_area(concurrence_grid(xy(g), GRID_B, GRID_T)) for g in GAMMAS]
    increasing = all(a < b for a, b in zip(areas, areas[1:]))
    spreads = []
    for g in GAMMAS[1:]:
        spec = xy(g)
        # fields with no entangled temperature (the zero-field Ising point) have no Tc
        roots = [critical_temperatures(spec, B, (0.01, 5.0)) for B in np.linspace(0, 3, 31)]
        highest = [max(p.Tc for p in r) for r in roots if r]
        spreads.append(max(highest) - min(highest))
    ok = err <= 1e-8 and increasing and min(spreads) > 1e-3
    record(8, ok, f"XY gamma=0 Tc |error| {err:.2e} (<= 1e-8); areas {[round(a, 4) for a in areas]} "
                  f"strictly increasing: {increasing}; min Tc spread for gamma != 0 {min(spreads):.3f} (> 1e-3)")


def test_9_duality_residual_bridge():
    rng = np.random.default_rng(9)
    mismatches = 0
    for _ in range(1000):
        spec = random_spec(rng)
        T = random_temperature(rng, 1e-2, 1e2)
        b = concurrence_branches(thermal_state(compile_spec(spec), T))
        res_1, res_2 = duality_residuals(spec, T)
        for c, res in ((b.C1, res_1), (b.C2, res_2)):
            if (res > 0) != (c > 0) and abs(c) >= 1e-10:
                mismatches += 1
    record(9, mismatches == 0, f"1000 points: {mismatches} sign disagreements outside |C| < 1e-10 (== 0)")


def _boundary_only(a: np.ndarray, b: np.ndarray) -> int:
    """Number of cells where the masks differ and ``a`` is constant over
    the 3x3 neighbourhood (i.e. disagreements farther than one cell from
    the boundary of ``a``)."""
    bad = 0
    for i, j in np.argwhere(a != b):
        window = a[max(i - 1, 0) : i + 2, max(j - 1, 0) : j + 2]
        if window.all() or not window.any():
            bad += 1
    return bad


def test_10_negativity_boundary():
    rng = np.random.default_rng(10)
    bad, differing = 0, 0
    for _ in range(10):
        spec = random_spec(rng, 1.0)
        c = concurrence_grid(spec, GRID_B, GRID_T).values > 1e-12
        n = negativity_grid(spec, GRID_B, GRID_T).values > 1e-12
        differing += int(np.count_nonzero(c != n))
        bad += _boundary_only(c, n)
    record(10, bad == 0, f"10 specs: {differing} differing cells, {bad} farther than one cell from the boundary (== 0)")
