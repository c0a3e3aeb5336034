import numpy as np
import pytest

from lattice_dirac.exact import ExactnessError, GaussianArray, exact_equal, stack


def ga(values):
    return GaussianArray.from_complex(np.asarray(values))


def test_unit_multiplication_is_exact():
    x = ga([1 + 2j, -3])
    assert exact_equal(1j * x, ga([-2 + 1j, -3j]))
    assert exact_equal(x * -1, ga([-1 - 2j, 3]))


def test_non_gaussian_scalars_rejected():
    with pytest.raises(ExactnessError):
        ga([1]) * 0.5
    with pytest.raises(ExactnessError):
        GaussianArray.from_complex([0.5])
    with pytest.raises(ExactnessError):
        ga([1]) * np.array([0.5])


def test_scale_tracking():
    x = ga([2, 4]) / 3.0
    assert x.p == 1 and x.length == 3.0
    assert np.allclose(x.to_complex(), [2 / 3, 4 / 3])
    y = x / 3.0
    assert y.p == 2
    with pytest.raises(ExactnessError):
        x / 2.0
    with pytest.raises(ExactnessError):
        x + ga([1, 1])
    # zero adopts any scale
    assert exact_equal(x + ga([0, 0]), x)


def test_root2_powers_align():
    x = ga([3]).mul_root2_power(-2)  # 3/2
    y = ga([1]).mul_root2_power(-4)  # 1/4
    s = x + y
    assert np.isclose(s.to_complex()[0], 1.75)
    assert exact_equal(ga([1]).mul_root2_power(-1).mul_root2_power(1), ga([1]))
    with pytest.raises(ExactnessError):
        ga([1]).mul_root2_power(-1) + ga([1])


def test_symbolic_equality_distinguishes_powers():
    # length 1 makes the values coincide but the expressions differ
    assert not exact_equal(ga([1]) / 1.0, ga([1]))


def test_matmul_and_conj():
    a = ga([[1, 1j], [0, 2]])
    b = ga([[1j, 0], [1, -1]])
    assert np.array_equal((a @ b).to_complex(), a.to_complex() @ b.to_complex())
    assert np.array_equal(a.conj().T.to_complex(), a.to_complex().conj().T)


def test_stack_and_setitem():
    x = ga([1, 2]) / 2.0
    z = GaussianArray(np.zeros(2, dtype=np.int64))
    s = stack([z, x])
    assert s.p == 1 and np.allclose(s.to_complex(), [[0, 0], [0.5, 1]])
    t = GaussianArray(np.zeros((2, 2), dtype=np.int64))
    t[1] = x
    assert exact_equal(t, s)
