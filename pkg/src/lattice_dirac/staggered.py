"""Massless staggered (Kogut-Susskind) fermion on the torus.

Two forms of the Hamiltonian live here:

* the scalar form on the fine torus (spacing h), a sum of symmetric
  differences weighted by the staggered phases ``(-1)^{s_{j-1}(z/h)}``;
* the block form on the coarse torus (spacing 2h), acting on ``2^d``
  components indexed by corners ``a in {0,1}^d``, built directly from its
  matrix elements (one-sided differences between neighbouring corners).

``split``/``unsplit`` carry fields between the two pictures and the operator
``bold_d`` is the degree-raising half of the block form,
``H_KS = -i (bold_d - bold_d^*)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exact import GaussianArray, mul_root2_power, stack, to_complex, zeros_like
from .fields import LatticeField, bwd_diff_array, fwd_diff_array, sym_diff_array
from .lattice import (
    LatticeError,
    TorusLattice,
    corner_add,
    corner_code,
    corner_sub,
    degree,
    enumerate_corners,
    staggered_sign_field,
    staircase_parity,
)


@dataclass
class BlockField:
    """``2^d`` component field on the coarse torus.

    ``values`` has shape ``(2^d,) + lattice.shape``; component ``code(a)``
    is the one indexed by corner ``a``.  The same storage represents cochains,
    with component ``a`` the coefficient of ``dx^a``.
    """

    lattice: TorusLattice
    values: np.ndarray | GaussianArray

    def __post_init__(self):
        if not isinstance(self.values, GaussianArray):
            self.values = np.asarray(self.values, dtype=complex)
        expected = (self.lattice.n_corners,) + self.lattice.shape
        if tuple(self.values.shape) != expected:
            raise LatticeError(f"block field shape {tuple(self.values.shape)} != {expected}")

    @property
    def d(self) -> int:
        return self.lattice.d

    @property
    def exact(self) -> bool:
        return isinstance(self.values, GaussianArray)

    def component(self, a) -> LatticeField:
        code = a if isinstance(a, (int, np.integer)) else corner_code(a)
        return LatticeField(self.lattice, self.values[code])

    def ravel(self) -> np.ndarray:
        return to_complex(self.values).reshape(-1)

    def inner(self, other: "BlockField") -> complex:
        if other.lattice != self.lattice:
            raise LatticeError("inner product of block fields on different lattices")
        w = self.lattice.mesh**self.d
        return complex(w * np.vdot(self.ravel(), other.ravel()))

    def norm(self) -> float:
        return float(np.sqrt(self.inner(self).real))

    def degrees(self) -> list[int]:
        """Degrees ``|a|`` of the components carrying nonzero data."""
        vals = to_complex(self.values)
        return sorted(
            {degree(a) for c, a in enumerate(enumerate_corners(self.d)) if np.any(vals[c] != 0)}
        )

    def project_degree(self, k: int) -> "BlockField":
        vals = self.values.copy()
        for c, a in enumerate(enumerate_corners(self.d)):
            if degree(a) != k:
                vals[c] = 0
        return BlockField(self.lattice, vals)

    @classmethod
    def zeros(cls, lattice: TorusLattice) -> "BlockField":
        return cls(lattice, np.zeros((lattice.n_corners,) + lattice.shape, dtype=complex))

    @classmethod
    def random(cls, lattice: TorusLattice, rng: np.random.Generator) -> "BlockField":
        shape = (lattice.n_corners,) + lattice.shape
        return cls(lattice, rng.standard_normal(shape) + 1j * rng.standard_normal(shape))

    @classmethod
    def random_exact(cls, lattice: TorusLattice, rng: np.random.Generator, bound: int = 5):
        shape = (lattice.n_corners,) + lattice.shape
        re = rng.integers(-bound, bound + 1, size=shape)
        im = rng.integers(-bound, bound + 1, size=shape)
        return cls(lattice, GaussianArray(re, im))


def component_array(x, code: int, d: int):
    """Component ``code`` of a (possibly batched) block array."""
    return x[(Ellipsis, code) + (slice(None),) * d]


def _sublattice(a) -> tuple:
    """Trailing-axis slices picking the fine sites ``w + h a``."""
    return tuple(slice(a[j - 1], None, 2) for j in range(len(a), 0, -1))


def _by_corner(fn, d: int, threads: int | None):
    corners = enumerate_corners(d)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, corners))
    return [fn(a) for a in corners]


# -- raw kernels --------------------------------------------------------------


def scalar_ks_array(u, d: int, lattice: TorusLattice):
    out = None
    for j in range(1, d + 1):
        term = staggered_sign_field(lattice, j) * sym_diff_array(u, j, lattice.mesh)
        out = term if out is None else out + term
    return out


def block_ks_array(v, d: int, mesh: float, threads: int | None = None):
    def row(a):
        out = None
        for j in range(1, d + 1):
            sign = staircase_parity(a, j - 1)
            b = corner_sub(a, j)
            if b is not None:
                term = fwd_diff_array(component_array(v, corner_code(b), d), j, mesh)
            else:
                b = corner_add(a, j)
                term = bwd_diff_array(component_array(v, corner_code(b), d), j, mesh)
            out = sign * term if out is None else out + sign * term
        return out

    return stack(_by_corner(row, d, threads), axis=-(d + 1))


def bold_d_array(v, d: int, mesh: float):
    def row(a):
        out = zeros_like(component_array(v, 0, d))
        for j in range(1, d + 1):
            b = corner_sub(a, j)
            if b is not None:
                sign = staircase_parity(a, j - 1)
                out = out + sign * 1j * fwd_diff_array(component_array(v, corner_code(b), d), j, mesh)
        return out

    return stack(_by_corner(row, d, None), axis=-(d + 1))


def bold_d_adjoint_array(v, d: int, mesh: float):
    def row(b):
        out = zeros_like(component_array(v, 0, d))
        for j in range(1, d + 1):
            a = corner_add(b, j)
            if a is not None:
                sign = staircase_parity(a, j - 1)
                out = out + sign * (-1j) * bwd_diff_array(component_array(v, corner_code(a), d), j, mesh)
        return out

    return stack(_by_corner(row, d, None), axis=-(d + 1))


def split_array(u, d: int):
    comps = [mul_root2_power(u[(Ellipsis,) + _sublattice(a)], -d) for a in enumerate_corners(d)]
    return stack(comps, axis=-(d + 1))


def unsplit_array(v, d: int, n_coarse: int):
    lead = tuple(v.shape[: v.ndim - d - 1])
    if isinstance(v, GaussianArray):
        out = GaussianArray(np.zeros(lead + (2 * n_coarse,) * d, dtype=np.int64))
    else:
        out = np.zeros(lead + (2 * n_coarse,) * d, dtype=complex)
    for c, a in enumerate(enumerate_corners(d)):
        out[(Ellipsis,) + _sublattice(a)] = mul_root2_power(component_array(v, c, d), d)
    return out


# -- field-level API ----------------------------------------------------------


def _check_block(v: BlockField) -> None:
    if v.lattice.n_sites < 2:
        raise LatticeError("coarse torus needs M >= 2")


def apply_scalar_ks(u: LatticeField) -> LatticeField:
    """Scalar staggered Hamiltonian on the fine torus."""
    u.lattice.require_splittable()
    return LatticeField(u.lattice, scalar_ks_array(u.values, u.lattice.d, u.lattice))


def split(u: LatticeField) -> BlockField:
    """``(U_h u)_a(w) = 2^{-d/2} u(w + h a)`` onto the coarse torus."""
    u.lattice.require_splittable()
    return BlockField(u.lattice.coarse(), split_array(u.values, u.lattice.d))


def unsplit(v: BlockField) -> LatticeField:
    """Inverse of :func:`split`."""
    return LatticeField(v.lattice.fine(), unsplit_array(v.values, v.d, v.lattice.n_sites))


def apply_block_ks(v: BlockField, threads: int | None = None) -> BlockField:
    """Block staggered Hamiltonian from its corner-to-corner matrix elements."""
    _check_block(v)
    return BlockField(v.lattice, block_ks_array(v.values, v.d, v.lattice.mesh, threads))


def apply_bold_d(v: BlockField) -> BlockField:
    _check_block(v)
    return BlockField(v.lattice, bold_d_array(v.values, v.d, v.lattice.mesh))


def apply_bold_d_adjoint(v: BlockField) -> BlockField:
    _check_block(v)
    return BlockField(v.lattice, bold_d_adjoint_array(v.values, v.d, v.lattice.mesh))
