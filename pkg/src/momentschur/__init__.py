"""Subspace Schur complements and truncated matricial moment sequences.

The package has three mathematical layers on top of a tolerance-aware linear
algebra kernel:

- ``linalg``: Hermitian eigendecomposition, PSD square root, Moore-Penrose
  inverse, subspaces, projectors and the shared tolerance policy;
- ``schur``: the Schur complement S(A, V) of a PSD matrix relative to a
  subspace, its block-formula twin, the variational identity and the unique
  splitting A = S + (A - S);
- ``hamburger`` / ``stieltjes``: classification of finite moment sequences on
  the line and on a half line [alpha, oo): nonnegative definiteness,
  extendability, the admissible interval for the last block, and canonical
  class representatives.

A JSON command line front end lives in ``cli`` (entry point ``momentschur``).
"""

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    MomentSchurError,
    NoConvergence,
    NotHermitian,
    NotHNND,
    NotKNND,
    NotPSD,
    OddOrderUnsupported,
    ParseError,
    ShapeMismatch,
    SplitInvalid,
    TooShort,
)
from .linalg import (
    Subspace,
    Tolerance,
    fiber_projector,
    hermitian_eig,
    is_psd,
    loewner_leq,
    numerical_rank,
    pinv,
    psd_sqrt,
    range_included,
    range_projector,
    ranges_intersect_trivially,
    subspace_from_columns,
)
from .schur import (
    SchurResult,
    decompose,
    in_lcr,
    is_unique_split,
    schur_complement,
    schur_complement_via_basis,
    variational_value,
)
from .hamburger import (
    HamburgerReport,
    MomentSequence,
    block_hankel,
    canonical_rep,
    classify_hamburger,
    in_extension_interval,
    is_hnnd,
    is_hnnde,
    l_matrix,
    r_upper,
    same_class,
    theta,
    y_block,
    z_block,
)
from .stieltjes import (
    StieltjesContext,
    StieltjesReport,
    alpha_shift,
    canonical_rep_stieltjes,
    classify_stieltjes,
    in_extension_interval_stieltjes,
    is_knnd,
    is_knnde,
    kappa,
    r_upper_stieltjes,
    same_class_stieltjes,
    u_lower,
)

__version__ = "0.1.0"

__all__ = [
    "DimensionMismatch",
    "HamburgerReport",
    "IndexOutOfRange",
    "MomentSchurError",
    "MomentSequence",
    "NoConvergence",
    "NotHNND",
    "NotHermitian",
    "NotKNND",
    "NotPSD",
    "OddOrderUnsupported",
    "ParseError",
    "SchurResult",
    "ShapeMismatch",
    "SplitInvalid",
    "StieltjesContext",
    "StieltjesReport",
    "Subspace",
    "Tolerance",
    "TooShort",
    "alpha_shift",
    "block_hankel",
    "canonical_rep",
    "canonical_rep_stieltjes",
    "classify_hamburger",
    "classify_stieltjes",
    "decompose",
    "fiber_projector",
    "hermitian_eig",
    "in_extension_interval",
    "in_extension_interval_stieltjes",
    "in_lcr",
    "is_hnnd",
    "is_hnnde",
    "is_knnd",
    "is_knnde",
    "is_psd",
    "is_unique_split",
    "kappa",
    "l_matrix",
    "loewner_leq",
    "numerical_rank",
    "pinv",
    "psd_sqrt",
    "r_upper",
    "r_upper_stieltjes",
    "range_included",
    "range_projector",
    "ranges_intersect_trivially",
    "same_class",
    "same_class_stieltjes",
    "schur_complement",
    "schur_complement_via_basis",
    "subspace_from_columns",
    "theta",
    "u_lower",
    "variational_value",
    "y_block",
    "z_block",
]
