import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tritter.coupler import DeviceParams, transfer_matrix
from tritter.fock import enumerate_basis
from tritter.permanent import (
    MAX_ENUMERATE,
    MAX_RYSER,
    amplitude,
    expand_matrix,
    permanent_enumerate,
    permanent_ryser,
)

from conftest import devices, random_device


def random_matrix(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def six_paths(V):
    """The six permutation terms of a 3x3 permanent, written out."""
    return (
        V[0, 0] * V[1, 1] * V[2, 2] + V[0, 1] * V[1, 2] * V[2, 0] + V[0, 2] * V[1, 0] * V[2, 1]
        + V[0, 0] * V[1, 2] * V[2, 1] + V[0, 1] * V[1, 0] * V[2, 2] + V[0, 2] * V[1, 1] * V[2, 0]
    )


def test_small_examples():
    assert permanent_enumerate(np.eye(3)) == 1
    assert permanent_enumerate(np.ones((3, 3))) == 6
    assert permanent_ryser(np.ones((3, 3))) == pytest.approx(6)
    assert permanent_ryser([[2.5 - 1j]]) == 2.5 - 1j
    assert permanent_ryser(np.zeros((0, 0))) == 1
    A = np.array([[1, 2], [3, 4]])
    assert permanent_ryser(A) == pytest.approx(10)


@pytest.mark.parametrize("n", range(1, 8))
def test_ryser_matches_enumeration(n, rng):
    for _ in range(10):
        A = random_matrix(rng, n)
        ref = permanent_enumerate(A)
        assert abs(permanent_ryser(A) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_ryser_unit_disk_4x4(rng):
    r = np.sqrt(rng.uniform(size=(4, 4)))
    A = r * np.exp(2j * np.pi * rng.uniform(size=(4, 4)))
    ref = permanent_enumerate(A)
    assert abs(permanent_ryser(A) - ref) <= 1e-12 * abs(ref)


def test_ryser_batched(rng):
    A = random_matrix(rng, 4)[None].repeat(6, axis=0) * np.arange(1, 7)[:, None, None]
    out = permanent_ryser(A)
    assert out.shape == (6,)
    ref = permanent_enumerate(A[0])
    np.testing.assert_allclose(out, ref * np.arange(1, 7) ** 4, rtol=1e-12)


@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_permanent_invariant_under_row_and_column_permutations(seed, n):
    rng = np.random.default_rng(seed)
    A = random_matrix(rng, n)
    B = A[rng.permutation(n)][:, rng.permutation(n)]
    ref = permanent_ryser(A)
    assert abs(permanent_ryser(B) - ref) <= 1e-11 * max(1.0, abs(ref))


def test_size_guards():
    with pytest.raises(ValueError):
        permanent_enumerate(np.eye(MAX_ENUMERATE + 1))
    with pytest.raises(ValueError):
        permanent_ryser(np.eye(MAX_RYSER + 1))
    with pytest.raises(ValueError):
        permanent_ryser(np.ones((2, 3)))
    with pytest.raises(ValueError):
        permanent_enumerate(np.ones((2, 3)))


def test_expand_examples(rng):
    V = transfer_matrix(random_device(rng))
    np.testing.assert_array_equal(expand_matrix(V, (1, 1, 1), (3, 0, 0)), V[:, [0, 0, 0]])
    np.testing.assert_array_equal(expand_matrix(V, (1, 1, 1), (1, 1, 1)), V)
    np.testing.assert_array_equal(expand_matrix(V, (2, 0, 1), (0, 3, 0)), V[np.ix_([0, 0, 2], [1, 1, 1])])


def test_expand_rejects_mismatch():
    with pytest.raises(ValueError):
        expand_matrix(np.eye(3), (1, 1, 1), (1, 1, 0))
    with pytest.raises(ValueError):
        amplitude(np.eye(3), (1, 1), (1, 1))
    with pytest.raises(ValueError):
        amplitude(np.eye(3), (1, -1, 0), (0, 0, 0))


def test_worked_permanents(rng):
    for _ in range(100):
        V = transfer_matrix(random_device(rng))
        p300 = permanent_ryser(expand_matrix(V, (1, 1, 1), (3, 0, 0)))
        assert abs(p300 - 6 * V[0, 0] * V[1, 0] * V[2, 0]) <= 1e-12
        p021 = permanent_ryser(expand_matrix(V, (1, 1, 1), (0, 2, 1)))
        ref = 2 * (V[0, 1] * V[1, 1] * V[2, 2] + V[0, 1] * V[1, 2] * V[2, 1] + V[0, 2] * V[1, 1] * V[2, 1])
        assert abs(p021 - ref) <= 1e-12


def test_identity_amplitudes():
    for out in enumerate_basis(3):
        expected = 1.0 if out == (1, 1, 1) else 0.0
        assert amplitude(np.eye(3), (1, 1, 1), out) == expected


def test_bipartite_amplitudes():
    V = transfer_matrix(DeviceParams(math.pi, math.pi / 8))
    r = 1 / math.sqrt(2)
    for out in enumerate_basis(3):
        expected = {(2, 1, 0): -r, (0, 1, 2): r}.get(out, 0.0)
        assert abs(amplitude(V, (1, 1, 1), out) - expected) <= 1e-12


def test_tripartite_magnitudes():
    V = transfer_matrix(DeviceParams(2 * math.pi / 3, math.atan(1 / math.sqrt(2))))
    expected = {
        (0, 3, 0): math.sqrt(3) / 4, (0, 0, 3): math.sqrt(3) / 4,
        (2, 1, 0): 0.5, (2, 0, 1): 0.5, (0, 2, 1): 0.25, (0, 1, 2): 0.25,
    }
    for out in enumerate_basis(3):
        assert abs(abs(amplitude(V, (1, 1, 1), out)) - expected.get(out, 0.0)) <= 1e-12


@given(devices)
def test_coincidence_is_six_path_sum(d):
    V = transfer_matrix(d)
    assert abs(amplitude(V, (1, 1, 1), (1, 1, 1)) - six_paths(V)) <= 1e-13


@given(devices, st.floats(-math.pi, math.pi), st.floats(-math.pi, math.pi))
def test_moduli_do_not_depend_on_phases(d, psi, phi):
    V = transfer_matrix(d)
    W = transfer_matrix(DeviceParams(d.G, d.theta, psi, phi))
    for out in enumerate_basis(3):
        assert abs(abs(amplitude(V, (1, 1, 1), out)) - abs(amplitude(W, (1, 1, 1), out))) <= 1e-12
