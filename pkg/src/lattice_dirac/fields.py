"""Scalar fields on a torus and the symmetric, forward and backward differences.

The raw kernels (``sym_diff_array`` etc.) act on bare arrays whose trailing
``d`` axes are the lattice, so they batch over leading axes and accept both
complex ndarrays and :class:`~lattice_dirac.exact.GaussianArray`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import GaussianArray, roll, to_complex
from .lattice import LatticeError, TorusLattice, check_axis, site_axis


@dataclass
class LatticeField:
    """Complex function on the sites of ``lattice`` with the mesh^d weighted norm."""

    lattice: TorusLattice
    values: np.ndarray | GaussianArray

    def __post_init__(self):
        if not isinstance(self.values, GaussianArray):
            self.values = np.asarray(self.values, dtype=complex)
        if tuple(self.values.shape) != self.lattice.shape:
            raise LatticeError(
                f"field shape {tuple(self.values.shape)} does not match lattice {self.lattice.shape}"
            )

    @property
    def exact(self) -> bool:
        return isinstance(self.values, GaussianArray)

    def at(self, coords) -> complex:
        """Value at site ``(n_1, ..., n_d)``."""
        idx = tuple(int(c) % self.lattice.n_sites for c in reversed(tuple(coords)))
        return complex(to_complex(self.values[idx]))

    def ravel(self) -> np.ndarray:
        """Values in canonical site order as a complex vector."""
        return to_complex(self.values).reshape(-1)

    def inner(self, other: "LatticeField") -> complex:
        """``<self, other>`` = mesh^d * sum conj(self) * other."""
        if other.lattice != self.lattice:
            raise LatticeError("inner product of fields on different lattices")
        w = self.lattice.mesh**self.lattice.d
        return complex(w * np.vdot(self.ravel(), other.ravel()))

    def norm(self) -> float:
        return float(np.sqrt(self.inner(self).real))

    @classmethod
    def zeros(cls, lattice: TorusLattice) -> "LatticeField":
        return cls(lattice, np.zeros(lattice.shape, dtype=complex))

    @classmethod
    def random(cls, lattice: TorusLattice, rng: np.random.Generator) -> "LatticeField":
        shape = lattice.shape
        return cls(lattice, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))

    @classmethod
    def random_exact(cls, lattice: TorusLattice, rng: np.random.Generator, bound: int = 5):
        shape = lattice.shape
        re = rng.integers(-bound, bound + 1, size=shape)
        im = rng.integers(-bound, bound + 1, size=shape)
        return cls(lattice, GaussianArray(re, im))

    @classmethod
    def plane_wave(cls, lattice: TorusLattice, modes) -> "LatticeField":
        """``exp(i k.z)`` with ``k_j = 2 pi modes_j / (N h)``."""
        n = lattice.coords()
        phase = sum(2 * np.pi * m * n[j] / lattice.n_sites for j, m in enumerate(modes))
        return cls(lattice, np.exp(1j * phase))


# -- raw kernels --------------------------------------------------------------


def shift_array(x, j: int, steps: int = 1):
    """``(S_j^steps x)(z) = x(z + steps * mesh * e_j)``."""
    return roll(x, -steps, site_axis(j))


def sym_diff_array(x, j: int, mesh: float):
    """``(x(z+h e_j) - x(z-h e_j)) / (2 i h)``."""
    return (-1j) * (shift_array(x, j, 1) - shift_array(x, j, -1)) / (2 * mesh)


def fwd_diff_array(x, j: int, mesh: float):
    """``(x(z+h e_j) - x(z)) / (i h)``."""
    return (-1j) * (shift_array(x, j, 1) - x) / mesh


def bwd_diff_array(x, j: int, mesh: float):
    """``-(x(z-h e_j) - x(z)) / (i h)``."""
    return 1j * (shift_array(x, j, -1) - x) / mesh


def laplacian_array(x, d: int, mesh: float):
    """Positive Laplacian ``sum_j (2 x - S_j x - S_j^-1 x) / mesh^2``."""
    out = None
    for j in range(1, d + 1):
        term = 2 * x - shift_array(x, j, 1) - shift_array(x, j, -1)
        out = term if out is None else out + term
    return out / mesh / mesh


# -- field-level operators ----------------------------------------------------


def _apply(kernel, u: LatticeField, j: int, mesh: float | None) -> LatticeField:
    check_axis(j, u.lattice.d)
    if mesh is not None and mesh != u.lattice.mesh:
        raise LatticeError(f"mesh {mesh} does not match the field's lattice spacing {u.lattice.mesh}")
    return LatticeField(u.lattice, kernel(u.values, j, u.lattice.mesh))


def sym_diff(u: LatticeField, j: int, mesh: float | None = None) -> LatticeField:
    """Symmetric difference ``D^S_{h;j}`` along axis ``j`` (1-based)."""
    return _apply(sym_diff_array, u, j, mesh)


def fwd_diff(u: LatticeField, j: int, mesh: float | None = None) -> LatticeField:
    """Forward difference ``D^+_{h;j}``."""
    return _apply(fwd_diff_array, u, j, mesh)


def bwd_diff(u: LatticeField, j: int, mesh: float | None = None) -> LatticeField:
    """Backward difference ``D^-_{h;j}``."""
    return _apply(bwd_diff_array, u, j, mesh)


def laplacian(u: LatticeField) -> LatticeField:
    return LatticeField(u.lattice, laplacian_array(u.values, u.lattice.d, u.lattice.mesh))


def dense_scalar_operator(kernel, lattice: TorusLattice, *args) -> np.ndarray:
    """Matrix of a scalar kernel in canonical site order (columns = images of unit vectors)."""
    n = lattice.size
    basis = np.eye(n, dtype=complex).reshape((n,) + lattice.shape)
    cols = to_complex(kernel(basis, *args)).reshape(n, n)
    return cols.T
