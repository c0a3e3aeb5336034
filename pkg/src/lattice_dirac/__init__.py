"""Staggered fermions and the discrete Hodge-Dirac operator on periodic lattices.

The block form of the massless staggered Hamiltonian on ``(2h Z)^d`` and the
operator ``-i(d - d^*)`` on cochains of the same lattice are the same
``2^d x 2^d`` matrix of difference operators once the component ``a`` is
matched with the form ``dx^a``.  This package builds both on finite tori,
matrix-free and as dense (optionally exact) matrices, and checks the
identity together with its spectral consequences.
"""

from .exact import ExactnessError, GaussianArray, exact_equal
from .fields import LatticeField, bwd_diff, fwd_diff, laplacian, sym_diff
from .hodge import (
    apply_hodge_dirac,
    apply_hodge_laplacian,
    apply_standard_hodge_dirac,
    codifferential,
    exterior_derivative,
    wedge_with_generator,
)
from .lattice import (
    LatticeError,
    TorusLattice,
    corner_code,
    corner_from_code,
    corners_of_degree,
    degree,
    enumerate_corners,
    shift_site,
    staircase_parity,
    staircase_sum,
)
from .spectral import (
    SpectrumResult,
    analytic_spectrum,
    check_dispersion,
    compute_spectrum,
    continuum_consistency,
)
from .staggered import (
    BlockField,
    apply_block_ks,
    apply_bold_d,
    apply_bold_d_adjoint,
    apply_scalar_ks,
    split,
    unsplit,
)
from .verify import (
    DenseOperator,
    DimensionCapError,
    EquivalenceReport,
    assemble_dense,
    theorem_unitary,
    verify_equivalence,
    verify_square_is_laplacian,
)

__version__ = "0.1.0"

__all__ = [
    "BlockField",
    "DenseOperator",
    "DimensionCapError",
    "EquivalenceReport",
    "ExactnessError",
    "GaussianArray",
    "LatticeError",
    "LatticeField",
    "SpectrumResult",
    "TorusLattice",
    "analytic_spectrum",
    "apply_block_ks",
    "apply_bold_d",
    "apply_bold_d_adjoint",
    "apply_hodge_dirac",
    "apply_hodge_laplacian",
    "apply_scalar_ks",
    "apply_standard_hodge_dirac",
    "assemble_dense",
    "bwd_diff",
    "check_dispersion",
    "codifferential",
    "compute_spectrum",
    "continuum_consistency",
    "corner_code",
    "corner_from_code",
    "corners_of_degree",
    "degree",
    "enumerate_corners",
    "exact_equal",
    "exterior_derivative",
    "fwd_diff",
    "laplacian",
    "shift_site",
    "split",
    "staircase_parity",
    "staircase_sum",
    "sym_diff",
    "theorem_unitary",
    "unsplit",
    "verify_equivalence",
    "verify_square_is_laplacian",
    "wedge_with_generator",
]
