import numpy as np
import pytest

from lattice_dirac.lattice import TorusLattice
from lattice_dirac.spectral import (
    analytic_kernel_dimension,
    analytic_spectrum,
    branch_value,
    check_dispersion,
    compute_spectrum,
    continuum_consistency,
    kernel_dimension,
    momentum_symbols,
    representing_torus,
    symmetry_defect,
)
from lattice_dirac.verify import DimensionCapError, assemble_dense


def lat(d, M, h=1.0):
    return TorusLattice(d, M, 2 * h)


def test_d1_m2_h1_dense_oracle():
    # the dense eigensolve at this size, frozen: kappa in {0, pi/2} -> {0, 0} and {-1, +1}
    eigs = np.linalg.eigvalsh(assemble_dense("block_ks", lat(1, 2), "float").to_complex())
    assert np.allclose(np.sort(eigs), [-1, 0, 0, 1], atol=1e-14)
    assert np.allclose(analytic_spectrum("block_ks", lat(1, 2)), [-1, 0, 0, 1], atol=1e-15)


@pytest.mark.parametrize("d,M", [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)])
@pytest.mark.parametrize("h", [1.0, 0.5])
def test_dispersion_and_method_agreement(d, M, h):
    L = lat(d, M, h)
    dense = compute_spectrum("block_ks", L, "dense")
    mom = compute_spectrum("block_ks", L, "momentum")
    assert dense.eigenvalues.size == 2**d * M**d
    assert dense.max_deviation <= 1e-10
    assert mom.max_deviation <= 1e-10
    assert np.max(np.abs(dense.eigenvalues - mom.eigenvalues)) <= 1e-10
    assert symmetry_defect(dense.eigenvalues) <= 1e-10
    assert kernel_dimension(dense.eigenvalues) == analytic_kernel_dimension(L) == 2**d


def test_dispersion_2_4_half():
    assert check_dispersion(lat(2, 4, 0.5)) <= 1e-10


@pytest.mark.parametrize("op", ["hodge_dirac", "standard_hodge_dirac", "coarse_laplacian", "hodge_laplacian"])
def test_other_operators(op):
    L = lat(2, 3, 0.5)
    dense = compute_spectrum(op, L, "dense")
    mom = compute_spectrum(op, L, "momentum")
    ks = compute_spectrum("block_ks", L, "dense")
    assert dense.max_deviation <= 1e-10
    assert np.max(np.abs(dense.eigenvalues - mom.eigenvalues)) <= 1e-10
    if op == "hodge_dirac":
        assert np.array_equal(dense.eigenvalues, ks.eigenvalues)


def test_symbols_match_dense_blocks():
    # symbol at momentum m equals the dense operator restricted to plane waves
    L = lat(2, 3)
    dense = assemble_dense("block_ks", L, "float").to_complex()
    sym = momentum_symbols("block_ks", L)
    n = L.size
    coords = L.coords().reshape(2, -1)
    for m in [(0, 0), (1, 2), (2, 1)]:
        phase = np.exp(2j * np.pi * (m[0] * coords[0] + m[1] * coords[1]) / 3)
        for b in range(4):
            v = np.zeros((4, n), dtype=complex)
            v[b] = phase
            out = (dense @ v.ravel()).reshape(4, n)
            assert np.allclose(out, sym[m[1], m[0]][:, b][:, None] * phase[None, :], atol=1e-13)


def test_non_hermitian_and_cap_rejected():
    with pytest.raises(ValueError):
        compute_spectrum("bold_d", lat(1, 2))
    with pytest.raises(KeyError):
        compute_spectrum("nope", lat(1, 2))
    with pytest.raises(DimensionCapError):
        compute_spectrum("block_ks", lat(3, 4), "dense", cap=64)
    with pytest.raises(ValueError):
        compute_spectrum("block_ks", lat(1, 2), "lanczos")


def test_continuum_zero_momentum():
    rows = continuum_consistency([0.0, 0.0], [0.2, 0.1])
    assert all(r["error"] == 0 for r in rows)


def test_continuum_order_d1():
    rows = continuum_consistency(1.0, [0.2, 0.1, 0.05])
    for r in rows:
        # Taylor: sin(h)/h - 1 = -h^2/6 + h^4/120 - ...
        assert abs(r["error"] - r["h"] ** 2 / 6) <= r["h"] ** 4 / 100
    assert all(abs(r["order"] - 2) <= 0.3 for r in rows[1:])
    assert rows[0]["error"] / rows[1]["error"] == pytest.approx(4, rel=0.02)


def test_continuum_on_torus():
    k = np.pi / 4
    rows = continuum_consistency(k, [0.5, 0.25, 0.125], on_torus=True)
    assert [r["M"] for r in rows] == [8, 16, 32]
    for r in rows:
        assert abs(r["torus_eigenvalue"] - r["branch"]) <= 1e-12
    assert branch_value(k, 0.5) == pytest.approx(np.sin(np.pi / 8) / 0.5)


def test_unrepresentable_momentum():
    with pytest.raises(ValueError):
        representing_torus(1.0, 0.1, max_sites=500)
    with pytest.raises(ValueError):
        continuum_consistency(1.0, [0.1], on_torus=True, max_sites=100)
