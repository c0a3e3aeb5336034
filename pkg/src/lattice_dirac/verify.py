"""Dense operator assembly and the finite-volume equivalence certificate.

Every coarse-torus operator is assembled column by column by applying its
matrix-free kernel to the canonical basis block fields (component-major,
then sites with axis 1 fastest).  In exact mode the matrices are
:class:`~lattice_dirac.exact.GaussianArray` objects, so the identities
below are decided by integer comparison.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import exact
from .exact import GaussianArray, exact_equal, to_complex
from .fields import laplacian_array
from .hodge import (
    codifferential,
    codifferential_array,
    exterior_derivative,
    exterior_derivative_array,
    hodge_dirac_array,
    hodge_laplacian_array,
    standard_hodge_dirac_array,
)
from .lattice import LatticeError, TorusLattice, degree_parity
from .staggered import (
    BlockField,
    apply_bold_d,
    apply_bold_d_adjoint,
    block_ks_array,
    bold_d_adjoint_array,
    bold_d_array,
)

DEFAULT_CAP = 4096
MODES = ("exact", "float")


class DimensionCapError(LatticeError):
    """Dense assembly would exceed the configured dimension cap."""


def _laplacian_block(v, d, mesh):
    return laplacian_array(v, d, mesh)


OPERATORS = {
    "block_ks": block_ks_array,
    "hodge_dirac": hodge_dirac_array,
    "standard_hodge_dirac": standard_hodge_dirac_array,
    "bold_d": bold_d_array,
    "bold_d_adjoint": bold_d_adjoint_array,
    "exterior_derivative": exterior_derivative_array,
    "codifferential": codifferential_array,
    "hodge_laplacian": hodge_laplacian_array,
    "coarse_laplacian": _laplacian_block,
}


@dataclass
class DenseOperator:
    """Explicit matrix of a coarse-torus operator in canonical basis order."""

    lattice: TorusLattice
    tag: str
    mode: str
    matrix: np.ndarray | GaussianArray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def to_complex(self) -> np.ndarray:
        return to_complex(self.matrix)

    def adjoint(self) -> "DenseOperator":
        return DenseOperator(self.lattice, f"{self.tag}^*", self.mode, self.matrix.conj().T)

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        return DenseOperator(self.lattice, f"{self.tag}*{other.tag}", self.mode, self.matrix @ other.matrix)

    def is_hermitian(self, tol: float = 1e-13) -> bool:
        return residual(self.matrix, self.matrix.conj().T) <= tol


def check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def assemble_dense(
    op: str,
    lattice: TorusLattice,
    mode: str = "exact",
    cap: int = DEFAULT_CAP,
    threads: int | None = None,
    chunk: int = 256,
) -> DenseOperator:
    """Assemble the matrix of operator ``op`` on the coarse torus ``lattice``.

    ``op`` is a tag from :data:`OPERATORS` or a kernel ``f(values, d, mesh)``.
    """
    if callable(op):
        kernel, op = op, getattr(op, "__name__", "custom")
    elif op in OPERATORS:
        kernel = OPERATORS[op]
    else:
        raise KeyError(f"unknown operator tag {op!r}; known: {sorted(OPERATORS)}")
    check_mode(mode)
    d = lattice.d
    dim = lattice.n_corners * lattice.size
    if dim > cap:
        raise DimensionCapError(f"dense dimension {dim} exceeds cap {cap}")

    def columns(start):
        stop = min(start + chunk, dim)
        eye = np.zeros((stop - start, dim), dtype=np.int64)
        eye[np.arange(stop - start), np.arange(start, stop)] = 1
        eye = eye.reshape((stop - start, lattice.n_corners) + lattice.shape)
        basis = GaussianArray(eye) if mode == "exact" else eye.astype(complex)
        return kernel(basis, d, lattice.mesh).reshape(stop - start, dim)

    starts = range(0, dim, chunk)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(columns, starts))
    else:
        parts = [columns(s) for s in starts]
    return DenseOperator(lattice, op, mode, exact.concatenate(parts, axis=0).T)


def residual(a, b) -> float:
    """``max |a - b|`` entrywise; exactly 0.0 for symbolically equal exact arrays."""
    if isinstance(a, GaussianArray) or isinstance(b, GaussianArray):
        if exact_equal(a, b):
            return 0.0
        return float(np.max(np.abs(to_complex(a) - to_complex(b))))
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) if np.size(a) else 0.0


def is_zero(a, tol: float = 0.0) -> bool:
    if isinstance(a, GaussianArray):
        return a.is_zero()
    return float(np.max(np.abs(a))) <= tol


# -- basis identification -----------------------------------------------------


def theorem_unitary(d: int) -> np.ndarray:
    """Component map ``dx^a -> a`` under canonical orderings of both sides.

    Returned as a permutation ``perm`` with ``(U f)_i = f_{perm[i]}``; for the
    canonical code ordering it is the identity.
    """
    if d < 1:
        raise LatticeError(f"dimension d must be >= 1, got {d}")
    return np.arange(2**d)


def check_permutation(perm, d: int) -> np.ndarray:
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (2**d,) or sorted(perm.tolist()) != list(range(2**d)):
        raise ValueError(f"not a permutation of 0..{2**d - 1}: {perm.tolist()}")
    return perm


def conjugate_by_permutation(matrix, perm, lattice: TorusLattice):
    """``U M U^*`` for the component permutation ``perm``."""
    perm = check_permutation(perm, lattice.d)
    n = lattice.size
    idx = (perm[:, None] * n + np.arange(n)[None, :]).ravel()
    return matrix[np.ix_(idx, idx)]


def block_residuals(a, b, lattice: TorusLattice) -> np.ndarray:
    """``(2^d, 2^d)`` table of ``max |a - b|`` over each corner block."""
    if isinstance(a, GaussianArray) and isinstance(b, GaussianArray):
        diff = np.abs(to_complex(a - b))
    else:
        diff = np.abs(to_complex(a) - to_complex(b))
    k, n = lattice.n_corners, lattice.size
    return diff.reshape(k, n, k, n).max(axis=(1, 3))


@dataclass
class EquivalenceReport:
    d: int
    M: int
    h: float
    mode: str
    max_abs_residual: float
    exact_equal: bool | None
    block_residuals: np.ndarray = field(repr=False)
    perm: list[int] = field(default_factory=list)

    @property
    def worst_block(self) -> list[int] | None:
        if self.max_abs_residual == 0:
            return None
        a, b = np.unravel_index(np.argmax(self.block_residuals), self.block_residuals.shape)
        return [int(a), int(b)]

    def passed(self, tol: float = 1e-13) -> bool:
        if self.mode == "exact":
            return bool(self.exact_equal)
        return self.max_abs_residual <= tol

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "d": self.d,
            "M": self.M,
            "h": self.h,
            "mode": self.mode,
            "exact_equal": self.exact_equal,
            "max_abs_residual": self.max_abs_residual,
            "worst_block": self.worst_block,
        }


def verify_equivalence(
    lattice: TorusLattice,
    mode: str = "exact",
    perm=None,
    cap: int = DEFAULT_CAP,
    threads: int | None = None,
) -> EquivalenceReport:
    """Compare the block staggered Hamiltonian with ``U H_HD U^*`` entrywise.

    ``lattice`` is the coarse torus (spacing 2h).  ``perm`` overrides the
    basis identification, which is how a deliberately wrong ordering is
    tested.
    """
    ks = assemble_dense("block_ks", lattice, mode, cap, threads)
    hd = assemble_dense("hodge_dirac", lattice, mode, cap, threads)
    perm = theorem_unitary(lattice.d) if perm is None else check_permutation(perm, lattice.d)
    conj = conjugate_by_permutation(hd.matrix, perm, lattice)
    table = block_residuals(ks.matrix, conj, lattice)
    return EquivalenceReport(
        d=lattice.d,
        M=lattice.n_sites,
        h=lattice.mesh / 2,
        mode=mode,
        max_abs_residual=float(table.max()),
        exact_equal=exact_equal(ks.matrix, conj) if mode == "exact" else None,
        block_residuals=table,
        perm=perm.tolist(),
    )


def laplacian_tensor_identity(lattice: TorusLattice, mode: str = "exact", cap: int = DEFAULT_CAP):
    """Dense ``L ⊗ I_{2^d}`` with ``L`` the positive scalar Laplacian on the coarse torus."""
    check_mode(mode)
    n = lattice.size
    if n * lattice.n_corners > cap:
        raise DimensionCapError(f"dense dimension {n * lattice.n_corners} exceeds cap {cap}")
    eye = np.eye(n, dtype=np.int64).reshape((n,) + lattice.shape)
    basis = GaussianArray(eye) if mode == "exact" else eye.astype(complex)
    scalar = laplacian_array(basis, lattice.d, lattice.mesh).reshape(n, n).T
    return exact.kron(np.eye(lattice.n_corners, dtype=np.int64), scalar)


def verify_square_is_laplacian(
    lattice: TorusLattice, mode: str = "exact", cap: int = DEFAULT_CAP, op: str = "block_ks"
) -> float:
    """``max |H^2 - L ⊗ I|``; exactly 0.0 when the identity holds in exact mode."""
    h = assemble_dense(op, lattice, mode, cap)
    return residual(h.matrix @ h.matrix, laplacian_tensor_identity(lattice, mode, cap))


def verify_d_squared(lattice: TorusLattice, mode: str = "exact", cap: int = DEFAULT_CAP) -> float:
    """``max |D D|`` over the exterior derivative and bold_d."""
    worst = 0.0
    for op in ("exterior_derivative", "bold_d"):
        m = assemble_dense(op, lattice, mode, cap).matrix
        sq = m @ m
        worst = max(worst, 0.0 if is_zero(sq) else float(np.max(np.abs(to_complex(sq)))))
    return worst


def verify_chiral(lattice: TorusLattice, mode: str = "exact", cap: int = DEFAULT_CAP) -> float:
    """``max |P H P + H|`` with ``P = (-1)^{|a|}``, over block_ks and hodge_dirac."""
    parity = np.repeat(degree_parity(lattice.d), lattice.size)
    worst = 0.0
    for op in ("block_ks", "hodge_dirac"):
        m = assemble_dense(op, lattice, mode, cap).matrix
        pmp = m * np.outer(parity, parity)
        worst = max(worst, residual(pmp, -m))
    return worst


def verify_hermitian(lattice: TorusLattice, mode: str = "exact", cap: int = DEFAULT_CAP) -> float:
    worst = 0.0
    for op in ("block_ks", "hodge_dirac", "standard_hodge_dirac"):
        m = assemble_dense(op, lattice, mode, cap).matrix
        worst = max(worst, residual(m, m.conj().T))
    return worst


def verify_adjointness(lattice: TorusLattice, n_pairs: int = 100, seed: int = 0) -> float:
    """Worst ``|<D f, g> - <f, D^* g>|`` over random unit-norm pairs.

    Checks both the exterior derivative against the codifferential and
    bold_d against its adjoint, using the matrix-free kernels.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    pairs = ((exterior_derivative, codifferential), (apply_bold_d, apply_bold_d_adjoint))
    for _ in range(n_pairs):
        f = BlockField.random(lattice, rng)
        g = BlockField.random(lattice, rng)
        f = BlockField(lattice, f.values / f.norm())
        g = BlockField(lattice, g.values / g.norm())
        for fwd, adj in pairs:
            worst = max(worst, abs(fwd(f).inner(g) - f.inner(adj(g))))
    return worst
