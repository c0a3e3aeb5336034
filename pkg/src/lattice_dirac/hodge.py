"""Cochains on the coarse torus and the discrete Hodge-Dirac operator.

A cochain is a :class:`~lattice_dirac.staggered.BlockField` whose component
``a`` is the coefficient of the basis form ``dx^a`` dual to the positively
oriented cube ``prod_j [w_j, w_j + 2h a_j]``.  The exterior derivative is
built from the wedge rule ``dx^j ^ dx^b``; the codifferential is its adjoint
for the uniform ``(2h)^d`` weighted inner product.
"""

from __future__ import annotations

from .exact import stack, zeros_like
from .fields import shift_array
from .lattice import check_axis, corner_add, corner_code, enumerate_corners, staircase_parity
from .staggered import BlockField, _check_block, component_array

ZERO = None


def wedge_with_generator(j: int, b) -> tuple[int, tuple[int, ...]] | None:
    """``dx^j ^ dx^b`` as ``(sign, a)`` with ``dx^j ^ dx^b = sign * dx^a``.

    Returns ``ZERO`` (None) when ``dx^j`` already occurs in ``dx^b``.  The sign
    counts the generators of ``b`` that ``dx^j`` has to move past.
    """
    b = tuple(b)
    check_axis(j, len(b))
    a = corner_add(b, j)
    if a is None:
        return ZERO
    return staircase_parity(b, j - 1), a


def _wedge_table(d: int):
    """All nonvanishing ``(b, j, sign, a)`` with ``dx^j ^ dx^b = sign dx^a``."""
    table = []
    for b in enumerate_corners(d):
        for j in range(1, d + 1):
            w = wedge_with_generator(j, b)
            if w is not ZERO:
                table.append((b, j, w[0], w[1]))
    return table


def exterior_derivative_array(f, d: int, mesh: float):
    # d(f^b dx^b) = sum_j (f^b(z + 2h e_j) - f^b(z)) / 2h  dx^j ^ dx^b
    comps = [zeros_like(component_array(f, 0, d)) for _ in range(2**d)]
    for b, j, sign, a in _wedge_table(d):
        fb = component_array(f, corner_code(b), d)
        comps[corner_code(a)] = comps[corner_code(a)] + sign * (shift_array(fb, j, 1) - fb) / mesh
    return stack(comps, axis=-(d + 1))


def codifferential_array(f, d: int, mesh: float):
    # transpose of the table above; the adjoint of (S_j - 1) is (S_j^-1 - 1)
    comps = [zeros_like(component_array(f, 0, d)) for _ in range(2**d)]
    for b, j, sign, a in _wedge_table(d):
        fa = component_array(f, corner_code(a), d)
        comps[corner_code(b)] = comps[corner_code(b)] + sign * (shift_array(fa, j, -1) - fa) / mesh
    return stack(comps, axis=-(d + 1))


def hodge_dirac_array(f, d: int, mesh: float):
    return (-1j) * (exterior_derivative_array(f, d, mesh) - codifferential_array(f, d, mesh))


def standard_hodge_dirac_array(f, d: int, mesh: float):
    return exterior_derivative_array(f, d, mesh) + codifferential_array(f, d, mesh)


def hodge_laplacian_array(f, d: int, mesh: float):
    df = exterior_derivative_array(f, d, mesh)
    sf = codifferential_array(f, d, mesh)
    return codifferential_array(df, d, mesh) + exterior_derivative_array(sf, d, mesh)


def exterior_derivative(f: BlockField) -> BlockField:
    _check_block(f)
    return BlockField(f.lattice, exterior_derivative_array(f.values, f.d, f.lattice.mesh))


def codifferential(f: BlockField) -> BlockField:
    _check_block(f)
    return BlockField(f.lattice, codifferential_array(f.values, f.d, f.lattice.mesh))


def apply_hodge_dirac(f: BlockField) -> BlockField:
    """``-i (d - d^*)``."""
    _check_block(f)
    return BlockField(f.lattice, hodge_dirac_array(f.values, f.d, f.lattice.mesh))


def apply_standard_hodge_dirac(f: BlockField) -> BlockField:
    """``d + d^*``."""
    _check_block(f)
    return BlockField(f.lattice, standard_hodge_dirac_array(f.values, f.d, f.lattice.mesh))


def apply_hodge_laplacian(f: BlockField) -> BlockField:
    """``d d^* + d^* d``."""
    _check_block(f)
    return BlockField(f.lattice, hodge_laplacian_array(f.values, f.d, f.lattice.mesh))
