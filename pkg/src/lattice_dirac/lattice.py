"""Periodic square lattices, corner indices and staircase signs.

Array layout used throughout the package: a field on a torus with ``n`` sites
per axis is an array of shape ``(..., n, ..., n)`` where coordinate ``n_j``
lives on array axis ``-j``.  A C-order ravel of the trailing ``d`` axes is then
the canonical site order (axis 1 fastest).  Block fields put the corner
component on axis ``-(d + 1)``.  Leading axes are free for batching.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class LatticeError(ValueError):
    """Invalid lattice parameters or mismatched lattice data."""


@dataclass(frozen=True)
class TorusLattice:
    """Periodic truncation of ``mesh * Z^d`` with ``n_sites`` sites per axis.

    The same type describes the fine torus (spacing h, N sites per axis) and
    the coarse torus (spacing 2h, M = N/2 sites per axis).  Use
    :meth:`require_splittable` before splitting a fine torus.
    """

    d: int
    n_sites: int
    mesh: float = 1.0

    def __post_init__(self):
        if not isinstance(self.d, (int, np.integer)) or self.d < 1:
            raise LatticeError(f"dimension d must be a positive integer, got {self.d!r}")
        if not isinstance(self.n_sites, (int, np.integer)) or self.n_sites < 2:
            raise LatticeError(f"need at least 2 sites per axis, got {self.n_sites!r}")
        if not np.isfinite(self.mesh) or self.mesh <= 0:
            raise LatticeError(f"mesh must be positive, got {self.mesh!r}")

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n_sites,) * self.d

    @property
    def size(self) -> int:
        return self.n_sites**self.d

    @property
    def n_corners(self) -> int:
        return 2**self.d

    def require_splittable(self) -> None:
        if self.n_sites % 2:
            raise LatticeError(f"fine torus needs an even site count, got N={self.n_sites}")
        if self.n_sites // 2 < 2:
            raise LatticeError(f"coarse torus needs M = N/2 >= 2, got N={self.n_sites}")

    def coarse(self) -> "TorusLattice":
        """The torus of spacing 2h carrying the 2^d split components."""
        self.require_splittable()
        return TorusLattice(self.d, self.n_sites // 2, 2 * self.mesh)

    def fine(self) -> "TorusLattice":
        """The torus of spacing h whose split yields this (coarse) torus."""
        return TorusLattice(self.d, 2 * self.n_sites, self.mesh / 2)

    def coords(self) -> np.ndarray:
        """Integer coordinates of every site, shape ``(d,) + self.shape``.

        ``coords()[j - 1]`` holds ``n_j`` at each site.
        """
        grids = np.indices(self.shape)
        # array axis k carries coordinate n_{d-k}
        return grids[::-1].copy()

    def site_index(self, coords) -> int:
        """Canonical linear index of a site (axis 1 fastest)."""
        c = [int(x) % self.n_sites for x in coords]
        if len(c) != self.d:
            raise LatticeError(f"expected {self.d} coordinates, got {len(c)}")
        return sum(x * self.n_sites**k for k, x in enumerate(c))


def site_axis(j: int) -> int:
    """Array axis carrying coordinate ``n_j`` (1-based j)."""
    return -j


def check_axis(j: int, d: int) -> None:
    if not 1 <= j <= d:
        raise LatticeError(f"axis must be in 1..{d}, got {j}")


def shift_site(site, axis: int, steps: int, axis_len: int) -> tuple[int, ...]:
    """Move ``site`` by ``steps`` along ``axis`` (1-based) with periodic wrap."""
    site = tuple(int(x) for x in site)
    check_axis(axis, len(site))
    out = list(site)
    out[axis - 1] = (out[axis - 1] + steps) % axis_len
    return tuple(out)


# -- corner indices -----------------------------------------------------------


def corner_code(a) -> int:
    """``code(a) = sum_j a_j 2^(j-1)``; a_1 is the least significant bit."""
    code = 0
    for k, bit in enumerate(a):
        if bit not in (0, 1):
            raise LatticeError(f"corner entries must be 0 or 1, got {tuple(a)}")
        code |= int(bit) << k
    return code


def corner_from_code(code: int, d: int) -> tuple[int, ...]:
    if not 0 <= code < 2**d:
        raise LatticeError(f"corner code {code} out of range for d={d}")
    return tuple((code >> k) & 1 for k in range(d))


@lru_cache(maxsize=None)
def enumerate_corners(d: int) -> tuple[tuple[int, ...], ...]:
    """All of {0,1}^d in ascending code order."""
    if d < 1:
        raise LatticeError(f"dimension d must be >= 1, got {d}")
    return tuple(corner_from_code(c, d) for c in range(2**d))


def degree(a) -> int:
    return int(sum(a))


def corners_of_degree(d: int, k: int) -> list[tuple[int, ...]]:
    return [a for a in enumerate_corners(d) if degree(a) == k]


def degree_parity(d: int) -> np.ndarray:
    """The diagonal of ``(-1)^{|a|}`` over corners in code order."""
    return np.array([(-1) ** degree(a) for a in enumerate_corners(d)], dtype=np.int64)


def unit_corner(j: int, d: int) -> tuple[int, ...]:
    check_axis(j, d)
    return tuple(int(k == j - 1) for k in range(d))


def corner_add(a, j: int) -> tuple[int, ...] | None:
    """``a + e_j`` if it stays in {0,1}^d, else None."""
    if a[j - 1]:
        return None
    return tuple(x + (k == j - 1) for k, x in enumerate(a))


def corner_sub(a, j: int) -> tuple[int, ...] | None:
    """``a - e_j`` if it stays in {0,1}^d, else None."""
    if not a[j - 1]:
        return None
    return tuple(x - (k == j - 1) for k, x in enumerate(a))


# -- staircase sums -----------------------------------------------------------


def staircase_sum(n, j: int) -> int:
    """``s_j(n) = n_1 + ... + n_j``; ``s_0 = 0``."""
    n = tuple(int(x) for x in n)
    if not 0 <= j <= len(n):
        raise LatticeError(f"staircase index must be in 0..{len(n)}, got {j}")
    return sum(n[:j])


def staircase_parity(a, j: int) -> int:
    """``(-1)^{s_j(a)}``."""
    return -1 if staircase_sum(a, j) % 2 else 1


def staggered_sign_field(lattice: TorusLattice, j: int) -> np.ndarray:
    """``(-1)^{s_{j-1}(z/h)}`` at every site of ``lattice`` as an int array."""
    check_axis(j, lattice.d)
    if j == 1:
        return np.ones(lattice.shape, dtype=np.int64)
    partial = lattice.coords()[: j - 1].sum(axis=0)
    return np.where(partial % 2 == 0, 1, -1).astype(np.int64)

