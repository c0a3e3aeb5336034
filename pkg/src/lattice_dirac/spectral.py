"""Spectra of the coarse-torus operators and the dispersion relation.

Two routes to the same eigenvalues:

``dense``
    eigensolve of the assembled Hermitian matrix.
``momentum``
    the operators commute with coarse translations, so the response to a
    unit impulse at the origin determines them.  Its discrete Fourier
    transform gives one ``2^d x 2^d`` Hermitian symbol per momentum
    ``kappa_j = pi m_j / (M h)``, diagonalized independently.

The analytic reference is ``+-sqrt(sum_j sin^2(h kappa_j)) / h`` with
``2^(d-1)`` copies of each sign per momentum, which follows from
``H^2 = L ⊗ I``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .lattice import TorusLattice
from .verify import DEFAULT_CAP, OPERATORS, assemble_dense

DIRAC_OPERATORS = ("block_ks", "hodge_dirac", "standard_hodge_dirac")
LAPLACE_OPERATORS = ("coarse_laplacian", "hodge_laplacian")
HERMITIAN_OPERATORS = DIRAC_OPERATORS + LAPLACE_OPERATORS
METHODS = ("dense", "momentum")

ZERO_THRESHOLD = 1e-8
DISPERSION_TOL = 1e-10


@dataclass
class SpectrumResult:
    d: int
    M: int
    h: float
    op: str
    method: str
    eigenvalues: np.ndarray
    analytic_eigenvalues: np.ndarray

    @property
    def max_deviation(self) -> float:
        return max_sorted_deviation(self.eigenvalues, self.analytic_eigenvalues)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "d": self.d,
            "M": self.M,
            "h": self.h,
            "op": self.op,
            "method": self.method,
            "count": int(self.eigenvalues.size),
            "max_deviation": self.max_deviation,
            "symmetric": bool(self.op in DIRAC_OPERATORS and symmetry_defect(self.eigenvalues) <= DISPERSION_TOL),
            "kernel_dimension": kernel_dimension(self.eigenvalues),
        }


def _check_op(op: str) -> None:
    if op not in HERMITIAN_OPERATORS:
        if op in OPERATORS:
            raise ValueError(f"operator {op!r} is not Hermitian; no real spectrum")
        raise KeyError(f"unknown operator tag {op!r}")


def momentum_grid(lattice: TorusLattice) -> np.ndarray:
    """All momentum indices ``m in {0..M-1}^d``, shape ``(M^d, d)``, axis 1 fastest."""
    m = lattice.n_sites
    return np.array([idx[::-1] for idx in itertools.product(range(m), repeat=lattice.d)])


def momentum_symbols(op: str, lattice: TorusLattice) -> np.ndarray:
    """Per-momentum ``2^d x 2^d`` symbols, shape ``(M,)*d + (2^d, 2^d)``.

    Entry ``[m_d, ..., m_1, a, b]`` is ``sum_r K_{a,b}(r) exp(-2 pi i m.r / M)``
    where ``K_{.,b}`` is the operator applied to a unit impulse in component
    ``b`` at the origin.
    """
    d, k = lattice.d, lattice.n_corners
    impulses = np.zeros((k, k) + lattice.shape, dtype=complex)
    for b in range(k):
        impulses[(b, b) + (0,) * d] = 1.0
    response = OPERATORS[op](impulses, d, lattice.mesh)  # [b, a, sites]
    spatial = tuple(range(2, 2 + d))
    symbols = np.fft.fftn(response, axes=spatial)
    # -> [sites..., a, b]
    return np.moveaxis(symbols, (0, 1), (-1, -2))


def compute_spectrum(
    op: str, lattice: TorusLattice, method: str = "dense", cap: int = DEFAULT_CAP
) -> SpectrumResult:
    """Sorted eigenvalues of a Hermitian coarse-torus operator."""
    _check_op(op)
    if method == "dense":
        matrix = assemble_dense(op, lattice, "float", cap).to_complex()
        eigs = scipy.linalg.eigvalsh(matrix)
    elif method == "momentum":
        symbols = momentum_symbols(op, lattice)
        eigs = np.linalg.eigvalsh(symbols).ravel()
    else:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    return SpectrumResult(
        d=lattice.d,
        M=lattice.n_sites,
        h=lattice.mesh / 2,
        op=op,
        method=method,
        eigenvalues=np.sort(eigs),
        analytic_eigenvalues=analytic_spectrum(op, lattice),
    )


def dispersion(modes, M: int, h: float) -> float:
    """``sqrt(sum_j sin^2(h kappa_j)) / h`` at ``kappa_j = pi m_j / (M h)``."""
    s = sum(np.sin(np.pi * m / M) ** 2 for m in modes)
    return float(np.sqrt(s) / h)


def analytic_spectrum(op: str, lattice: TorusLattice) -> np.ndarray:
    _check_op(op)
    d, M, h = lattice.d, lattice.n_sites, lattice.mesh / 2
    out = []
    for modes in momentum_grid(lattice):
        lam = dispersion(modes, M, h)
        if op in DIRAC_OPERATORS:
            out += [lam] * 2 ** (d - 1) + [-lam] * 2 ** (d - 1)
        else:
            out += [lam**2] * 2**d
    return np.sort(np.array(out))


def max_sorted_deviation(a, b) -> float:
    a, b = np.sort(np.asarray(a)), np.sort(np.asarray(b))
    if a.shape != b.shape:
        return float("inf")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def symmetry_defect(eigs) -> float:
    """``max |s_i + s_{n-1-i}|`` for the sorted list: zero iff the multiset equals its negation."""
    s = np.sort(np.asarray(eigs))
    return float(np.max(np.abs(s + s[::-1])))


def kernel_dimension(eigs, threshold: float = ZERO_THRESHOLD) -> int:
    return int(np.sum(np.abs(np.asarray(eigs)) < threshold))


def analytic_kernel_dimension(lattice: TorusLattice) -> int:
    """``2^d`` times the number of momenta with every ``sin(h kappa_j) = 0``.

    ``h kappa_j = pi m_j / M`` with ``0 <= m_j < M`` vanishes only at
    ``m_j = 0``; the edge momentum ``pi / h`` of the fine lattice is not a
    coarse momentum, so there are no doublers.
    """
    zero_modes = sum(1 for modes in momentum_grid(lattice) if all(m == 0 for m in modes))
    return lattice.n_corners * zero_modes


def check_dispersion(lattice: TorusLattice, method: str = "dense", cap: int = DEFAULT_CAP) -> float:
    """Max deviation of the computed block_ks spectrum from the analytic list."""
    return compute_spectrum("block_ks", lattice, method, cap).max_deviation


# -- continuum consistency ----------------------------------------------------


def branch_value(k, h: float) -> float:
    """Positive branch ``sqrt(sum_j sin^2(h k_j)) / h``."""
    k = np.atleast_1d(np.asarray(k, dtype=float))
    return float(np.sqrt(np.sum(np.sin(h * k) ** 2)) / h)


def representing_torus(k, h: float, max_sites: int = 4096, tol: float = 1e-9):
    """Smallest ``M`` with every ``k_j`` an allowed momentum ``pi m_j / (M h)``.

    Returns ``(M, modes)``; raises ValueError if no ``M <= max_sites`` works.
    """
    k = np.atleast_1d(np.asarray(k, dtype=float))
    for M in range(2, max_sites + 1):
        m = k * M * h / np.pi
        if np.all(np.abs(m - np.round(m)) <= tol):
            return M, np.mod(np.round(m).astype(int), M)
    raise ValueError(f"momentum {k.tolist()} is not representable on a torus with mesh {h}")


def continuum_consistency(k, h_list, on_torus: bool = False, max_sites: int = 4096) -> list[dict]:
    """Error of the positive branch against ``|k|`` for each mesh in ``h_list``.

    With ``on_torus`` the branch value is also read off the momentum symbol of
    the block Hamiltonian on a torus that represents ``k`` exactly.
    """
    k = np.atleast_1d(np.asarray(k, dtype=float))
    target = float(np.linalg.norm(k))
    rows = []
    for i, h in enumerate(h_list):
        value = branch_value(k, h)
        row = {"h": float(h), "branch": value, "error": abs(value - target), "order": None}
        if i and rows[-1]["error"] > 0 and row["error"] > 0:
            prev = rows[-1]
            row["order"] = float(np.log(prev["error"] / row["error"]) / np.log(prev["h"] / h))
        if on_torus:
            M, modes = representing_torus(k, h, max_sites)
            lattice = TorusLattice(len(k), M, 2 * h)
            symbol = momentum_symbols("block_ks", lattice)[tuple(modes[::-1])]
            row["M"] = M
            row["torus_eigenvalue"] = float(np.linalg.eigvalsh(symbol).max())
        rows.append(row)
    return rows
