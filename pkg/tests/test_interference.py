import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tritter.coupler import DeviceParams, transfer_matrix
from tritter.fock import enumerate_basis, support
from tritter.interference import (
    ContourPoint,
    c111,
    c111_grid,
    coincidence_landscape,
    contour_analytic,
    contour_numeric,
    contour_thetas,
    contour_to_csv,
    evolve,
    evolve_oracle,
    fmt,
    merge_contours,
    two_photon_reduction_check,
)
from tritter.tables import G_17_PLUS

from conftest import devices, random_device

INPUTS = [(1, 1, 1), (2, 1, 0), (3, 0, 0), (2, 0, 1)]
ARCCOT_SQRT2 = math.atan(1 / math.sqrt(2))


@pytest.mark.parametrize("inp", INPUTS)
def test_evolve_matches_oracle(inp, rng):
    for _ in range(20):
        d = random_device(rng)
        a, b = evolve(d, inp), evolve_oracle(d, inp)
        assert np.max(np.abs(a.amplitudes - b.amplitudes)) <= 1e-12
        assert abs(a.norm_squared() - 1) <= 1e-12


@given(devices, st.sampled_from([(1, 0, 0), (0, 2, 2), (1, 2, 3), (0, 0, 5), (2, 2, 2)]))
@settings(max_examples=40)
def test_evolution_preserves_photons_and_norm(d, inp):
    state = evolve(d, inp)
    assert all(occ.total() == sum(inp) for occ in state.basis)
    assert abs(state.norm_squared() - 1) <= 1e-12
    ref = evolve_oracle(d, inp)
    assert np.max(np.abs(state.amplitudes - ref.amplitudes)) <= 1e-12


def test_single_photon_is_row_of_V(rng):
    d = random_device(rng)
    state = evolve_oracle(d, (1, 0, 0))
    np.testing.assert_allclose([state[o] for o in enumerate_basis(1)], transfer_matrix(d)[0], atol=1e-15)


def test_evolve_examples():
    state = evolve(DeviceParams(0.0, 0.4))
    assert state[(1, 1, 1)] == 1 and support(state) == {(1, 1, 1)}
    state = evolve(DeviceParams(math.pi, math.pi / 8))
    assert support(state) == {(2, 1, 0), (0, 1, 2)}
    assert abs(state[(2, 1, 0)] + 1 / math.sqrt(2)) <= 1e-12
    assert abs(state[(0, 1, 2)] - 1 / math.sqrt(2)) <= 1e-12
    state = evolve(DeviceParams(math.pi / 4, 0.0))
    assert support(state) == {(2, 0, 1), (0, 2, 1)}
    assert abs(abs(state[(2, 0, 1)]) - 1 / math.sqrt(2)) <= 1e-12
    assert abs(state[(1, 1, 1)]) <= 1e-12


def test_size_guards():
    with pytest.raises(ValueError):
        evolve(DeviceParams(1, 1), (13, 0, 0))
    with pytest.raises(ValueError):
        evolve_oracle(DeviceParams(1, 1), (7, 0, 0))


def test_c111_examples():
    assert c111(DeviceParams(0.0, 1.0)) == 1
    assert abs(c111(DeviceParams(math.pi, math.pi / 8))) <= 1e-14
    d = DeviceParams(math.pi / 2, math.pi / 4)
    assert abs(c111(d) - evolve_oracle(d)[(1, 1, 1)]) <= 1e-14


def test_c111_grid_matches_scalar(rng):
    G, theta = rng.uniform(0, 10, 5), rng.uniform(-2, 2, 5)
    grid = c111_grid(G, theta, 0.3, -0.4)
    for g, t, z in zip(G, theta, grid):
        assert abs(c111(DeviceParams(g, t, 0.3, -0.4)) - z) <= 1e-15


@given(devices)
def test_coincidence_probability_phase_free_and_periodic(d):
    p = abs(c111(d)) ** 2
    assert abs(abs(c111(DeviceParams(d.G, d.theta))) ** 2 - p) <= 1e-12
    assert abs(abs(c111(DeviceParams(d.G + 2 * math.pi, d.theta, d.psi, d.phi))) ** 2 - p) <= 1e-12
    assert abs(abs(c111(DeviceParams(d.G, d.theta + math.pi, d.psi, d.phi))) ** 2 - p) <= 1e-12


def test_analytic_contour_examples():
    thetas = [p.theta for p in contour_analytic(math.pi)]
    for target in (math.pi / 8, 3 * math.pi / 8):
        assert min(abs(t - target) for t in thetas) <= 1e-9
    assert contour_analytic(2 * math.pi) == []
    assert contour_analytic(0.0) == []
    thetas = [p.theta for p in contour_analytic(2 * math.pi / 3)]
    assert min(abs(t - ARCCOT_SQRT2) for t in thetas) <= 1e-9


def test_analytic_points_are_certified_and_labelled():
    for G in np.linspace(0.05, 4 * math.pi, 97):
        for p in contour_analytic(float(G)):
            assert p.c111_abs <= 1e-9
            assert p.branch.startswith("outer=") and ";inner=" in p.branch


def test_complex_branches_yield_nothing():
    assert contour_thetas(0.1) == []
    assert contour_thetas(2 * math.pi) == []


def test_certificate_gate_drops_false_candidates(monkeypatch):
    import tritter.interference as mod

    real = mod.contour_thetas(math.pi)
    monkeypatch.setattr(mod, "contour_thetas", lambda G: real + [(0.3, 1, 1, 0)])
    thetas = [p.theta for p in mod.contour_analytic(math.pi)]
    assert 0.3 not in thetas and len(thetas) > 0


def test_contour_is_periodic(rng):
    for G in rng.uniform(0.1, 2 * math.pi, 30):
        for p in contour_analytic(float(G)):
            for g, t in ((G + 2 * math.pi, p.theta), (G, p.theta + math.pi)):
                assert abs(c111(DeviceParams(g, t))) <= 1e-9


def test_numeric_examples():
    pts = contour_numeric([math.pi], (0, math.pi))
    thetas = [p.theta for p in pts]
    for target in (math.pi / 8, 3 * math.pi / 8):
        assert min(abs(t - target) for t in thetas) <= 1e-8
    assert all(p.branch == "numeric" for p in pts)
    assert contour_numeric([0.1], (0, math.pi)) == []
    thetas = [p.theta for p in contour_numeric([G_17_PLUS], (0, math.pi))]
    target = math.atan((1 - math.sqrt(3)) / 2) + math.pi
    assert min(abs(t - target) for t in thetas) <= 1e-8
    assert min(abs(t - (math.pi / 2 - target + math.pi)) for t in thetas) <= 1e-8


def test_numeric_recovers_analytic(rng):
    G_grid = rng.uniform(0, 4 * math.pi, 40)
    numeric = contour_numeric(G_grid, (0, math.pi))
    for G in G_grid:
        found = [p.theta for p in numeric if p.G == G]
        for p in contour_analytic(float(G)):
            if 0 <= p.theta <= math.pi:
                assert min(abs(p.theta - t) for t in found) <= 1e-8


def test_numeric_rejects_bad_input():
    with pytest.raises(ValueError):
        contour_numeric([], (0, 1))
    with pytest.raises(ValueError):
        contour_numeric([1.0], (1, 0))


def test_contour_point_certificate():
    with pytest.raises(ValueError):
        ContourPoint(1.0, 1.0, 1e-6, "numeric")


def test_merge_and_csv():
    a = [ContourPoint(1.0, 0.5, 1e-12, "outer=+;inner=+;n=0")]
    b = [ContourPoint(1.0, 0.5 + 1e-9, 1e-13, "numeric"), ContourPoint(1.0, 0.2, 0.0, "numeric")]
    merged = merge_contours(a, b)
    assert [p.theta for p in merged] == [0.2, 0.5]
    assert merged[1].branch.startswith("outer")
    rows = list(csv.reader(io.StringIO(contour_to_csv(merged))))
    assert rows[0] == ["G", "theta", "c111_abs", "branch"]
    assert rows[1][:2] == ["1", "0.2"]


def test_fmt():
    assert fmt(-0.0) == "0"
    assert fmt(math.pi) == "3.14159265358979"
    assert fmt(1e-20) == "1e-20"


def test_landscape_examples():
    land = coincidence_landscape((0, 2 * math.pi), (0, math.pi / 2), (2, 2))
    assert np.max(np.abs(land.values - 1)) <= 1e-14
    land = coincidence_landscape((0, 2 * math.pi), (0, math.pi / 4), (3, 3))
    assert land.values[1, 1] <= 1e-14  # (pi, pi/8)
    assert land.values.shape == (3, 3)


def test_landscape_bounds_and_layout():
    land = coincidence_landscape((0, 4 * math.pi), (-math.pi / 2, math.pi), (41, 37))
    assert land.values.min() >= 0 and land.values.max() <= 1
    assert land.values[5, 7] == pytest.approx(abs(c111(DeviceParams(land.G[5], land.theta[7]))) ** 2, abs=1e-15)
    rows = list(csv.reader(io.StringIO(land.to_csv())))
    assert len(rows) == 42 and len(rows[0]) == 38
    assert rows[0][0] == "G\\theta" and rows[1][0] == "0"
    with pytest.raises(ValueError):
        coincidence_landscape((0, 1), (0, 1), (1, 5))


def test_two_photon_reduction_examples():
    assert two_photon_reduction_check(DeviceParams(math.pi, math.pi / 8), 1, 3) <= 1e-12
    d = DeviceParams(math.pi / 4, 0.0)
    assert two_photon_reduction_check(d, 1, 2) <= 1e-12
    assert abs(abs(transfer_matrix(d)[2, 2]) - 1) <= 1e-12
    for j, k in [(1, 2), (1, 3), (2, 3)]:
        assert two_photon_reduction_check(DeviceParams(0.0, 0.7), j, k) == 1


@pytest.mark.parametrize("j,k", [(1, 1), (0, 2), (1, 4)])
def test_two_photon_reduction_rejects_bad_modes(j, k):
    with pytest.raises(ValueError):
        two_photon_reduction_check(DeviceParams(1.0, 1.0), j, k)


def test_numeric_separates_close_pairs():
    # Two zeros about 0.005 apart, closer than two sample spacings.
    G = 10.99552507397858
    thetas = [p.theta for p in contour_numeric([G], (0, math.pi))]
    for p in contour_analytic(G):
        if 0 <= p.theta <= math.pi:
            assert min(abs(p.theta - t) for t in thetas) <= 1e-8


def test_numeric_finds_touching_zeros():
    # At G = 5 pi / 4, c111 touches zero at theta = 0 without changing sign.
    G = 5 * math.pi / 4
    c = [c111(DeviceParams(G, t)).real for t in (-1e-3, 0.0, 1e-3)]
    assert c[0] * c[2] > 0 and abs(c[1]) < 1e-15
    thetas = [p.theta for p in contour_numeric([G], (-0.5, 0.5))]
    assert thetas and min(abs(t) for t in thetas) <= 1e-6
