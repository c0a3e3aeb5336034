import numpy as np
import pytest

from lattice_dirac.exact import exact_equal
from lattice_dirac.fields import LatticeField, sym_diff
from lattice_dirac.lattice import LatticeError, TorusLattice, enumerate_corners, degree
from lattice_dirac.staggered import (
    BlockField,
    apply_block_ks,
    apply_bold_d,
    apply_bold_d_adjoint,
    apply_scalar_ks,
    split,
    unsplit,
)

FINE = [(1, 4), (1, 6), (2, 4), (2, 6), (3, 4), (3, 6)]


def test_scalar_ks_zero_and_d1(rng):
    lat = TorusLattice(1, 8, 0.5)
    assert np.all(apply_scalar_ks(LatticeField.zeros(lat)).values == 0)
    u = LatticeField.random(lat, rng)
    assert np.array_equal(apply_scalar_ks(u).values, sym_diff(u, 1).values)


@pytest.mark.parametrize("d,N", FINE)
def test_scalar_ks_norm_bound(d, N, rng):
    h = 0.5
    lat = TorusLattice(d, N, h)
    for _ in range(5):
        u = LatticeField.random(lat, rng)
        assert apply_scalar_ks(u).norm() <= d / h * u.norm() * (1 + 1e-12)


def test_scalar_ks_requires_even_fine_torus(rng):
    with pytest.raises(LatticeError):
        apply_scalar_ks(LatticeField.zeros(TorusLattice(1, 5, 1.0)))
    with pytest.raises(LatticeError):
        split(LatticeField.zeros(TorusLattice(2, 2, 1.0)))


def test_split_d1_unrolled():
    lat = TorusLattice(1, 4, 1.0)
    u = LatticeField(lat, np.array([1.0, 2.0, 3.0, 4.0]))
    v = split(u)
    r = 2**-0.5
    assert np.allclose(v.values[0], r * np.array([1.0, 3.0]))
    assert np.allclose(v.values[1], r * np.array([2.0, 4.0]))
    assert v.lattice == TorusLattice(1, 2, 2.0)


@pytest.mark.parametrize("d,N", FINE)
def test_split_is_unitary(d, N, rng):
    lat = TorusLattice(d, N, 0.5)
    u, w = LatticeField.random(lat, rng), LatticeField.random(lat, rng)
    assert abs(split(u).norm() - u.norm()) <= 1e-13 * u.norm()
    assert abs(split(u).inner(split(w)) - u.inner(w)) <= 1e-12 * u.norm() * w.norm()
    back = unsplit(split(u)).values
    if d % 2 == 0:
        assert np.array_equal(back, u.values)
    else:
        assert np.allclose(back, u.values, rtol=4e-16, atol=0)


@pytest.mark.parametrize("d,N", FINE)
def test_split_round_trip_exact(d, N, rng):
    u = LatticeField.random_exact(TorusLattice(d, N, 0.5), rng)
    v = split(u)
    assert v.values.e == d  # carries 2^{-d/2} symbolically
    assert exact_equal(unsplit(v).values, u.values)


def test_block_ks_d1_is_offdiagonal_one_sided():
    # M = 2, mesh 2h = 2: D^+ = (-i/2)(S - 1), D^- = (i/2)(S^-1 - 1), S = swap
    lat = TorusLattice(1, 2, 2.0)
    s = np.array([[0, 1], [1, 0]])
    dp = -0.5j * (s - np.eye(2))
    dm = 0.5j * (s - np.eye(2))
    expected = np.block([[np.zeros((2, 2)), dm], [dp, np.zeros((2, 2))]])
    cols = []
    for k in range(4):
        e = np.zeros(4)
        e[k] = 1
        cols.append(apply_block_ks(BlockField(lat, e.reshape(2, 2))).ravel())
    assert np.allclose(np.array(cols).T, expected, atol=1e-15)


@pytest.mark.parametrize("d,M", [(1, 3), (2, 2), (3, 3)])
def test_block_ks_annihilates_constants(d, M):
    lat = TorusLattice(d, M, 1.0)
    v = BlockField(lat, np.ones((2**d,) + lat.shape) * (1 + 1j))
    assert np.allclose(apply_block_ks(v).values, 0, atol=1e-15)


@pytest.mark.parametrize("d,N", FINE + [(2, 8), (3, 8)])
def test_block_form_is_conjugated_scalar_form(d, N, rng):
    coarse = TorusLattice(d, N // 2, 1.0)
    for _ in range(10):
        v = BlockField.random(coarse, rng)
        conj = split(apply_scalar_ks(unsplit(v)))
        assert np.max(np.abs(apply_block_ks(v).values - conj.values)) <= 1e-13
    ve = BlockField.random_exact(coarse, rng)
    assert exact_equal(apply_block_ks(ve).values, split(apply_scalar_ks(unsplit(ve))).values)


@pytest.mark.parametrize("d,M", [(1, 2), (2, 3), (3, 2)])
def test_bold_d_structure(d, M, rng):
    lat = TorusLattice(d, M, 1.0)
    top = BlockField.zeros(lat)
    top.values[-1] = rng.standard_normal(lat.shape)
    assert np.all(apply_bold_d(top).values == 0)

    v = BlockField.random(lat, rng)
    assert np.max(np.abs(apply_bold_d(apply_bold_d(v)).values)) <= 1e-13
    assert np.max(np.abs(apply_bold_d_adjoint(apply_bold_d_adjoint(v)).values)) <= 1e-13
    combo = -1j * (apply_bold_d(v).values - apply_bold_d_adjoint(v).values)
    assert np.max(np.abs(combo - apply_block_ks(v).values)) <= 1e-13

    ve = BlockField.random_exact(lat, rng)
    assert apply_bold_d(apply_bold_d(ve)).values.is_zero()
    assert exact_equal(-1j * (apply_bold_d(ve).values - apply_bold_d_adjoint(ve).values), apply_block_ks(ve).values)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_bold_d_grading(d, rng):
    lat = TorusLattice(d, 3, 1.0)
    for k in range(d + 1):
        v = BlockField.random(lat, rng).project_degree(k)
        up = apply_bold_d(v).degrees()
        down = apply_bold_d_adjoint(v).degrees()
        assert set(up) <= {k + 1}
        assert set(down) <= {k - 1}
        if k < d:
            assert up == [k + 1]


def test_threads_give_identical_output(rng):
    lat = TorusLattice(3, 6, 1.0)
    v = BlockField.random(lat, rng)
    assert np.array_equal(apply_block_ks(v).values, apply_block_ks(v, threads=4).values)


def test_block_field_norm_weight():
    lat = TorusLattice(2, 2, 3.0)
    v = BlockField(lat, np.ones((4, 2, 2)))
    assert np.isclose(v.norm() ** 2, 9.0 * 16)
    assert [degree(a) for a in enumerate_corners(2)] == [0, 1, 1, 2]
    with pytest.raises(LatticeError):
        BlockField(lat, np.ones((3, 2, 2)))
