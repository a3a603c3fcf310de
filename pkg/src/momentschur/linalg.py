"""Tolerance-aware complex linear algebra kernel.

Every rank, PSD and range decision made elsewhere in the package goes through
the helpers in this module, so that all predicates share a single tolerance
policy: a quantity living at spectral scale ``s`` counts as zero when its
magnitude is at most ``eps_rel * max(1, s)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian, NotPSD

Array = np.ndarray

DEFAULT_EPS_REL = 1e-10


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerance policy shared by every numerical predicate."""

    eps_rel: float = DEFAULT_EPS_REL

    def __post_init__(self):
        if not self.eps_rel > 0:
            raise ValueError("eps_rel must be positive")

    def threshold(self, scale: float) -> float:
        """Absolute cutoff for magnitudes at the given spectral scale."""
        return self.eps_rel * max(1.0, abs(float(scale)))


def as_tolerance(tol) -> Tolerance:
    """Coerce None, a bare eps_rel float, or a Tolerance to a Tolerance."""
    if tol is None:
        return Tolerance()
    if isinstance(tol, Tolerance):
        return tol
    return Tolerance(eps_rel=float(tol))


def as_matrix(A) -> Array:
    """View ``A`` as a 2-d complex array; scalars become 1x1, vectors columns."""
    M = np.asarray(A, dtype=complex)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    elif M.ndim == 1:
        M = M.reshape(-1, 1)
    elif M.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got an array of ndim {M.ndim}")
    return M


def _square(A) -> Array:
    M = as_matrix(A)
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {M.shape}")
    return M


def herm_part(A: Array) -> Array:
    return 0.5 * (A + A.conj().T)


def frobenius(A) -> float:
    return float(np.linalg.norm(A))


def is_hermitian(A, tol=None) -> bool:
    t = as_tolerance(tol)
    M = as_matrix(A)
    if M.shape[0] != M.shape[1]:
        return False
    return frobenius(M - M.conj().T) <= t.threshold(frobenius(M))


def hermitian_eig(A, tol=None) -> tuple[Array, Array]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, U)`` with ``w`` the real eigenvalues in ascending order and
    ``U`` unitary, so that ``A = U diag(w) U^H``.  The input is symmetrized
    before factorization to strip representation noise.
    """
    t = as_tolerance(tol)
    M = _square(A)
    if not is_hermitian(M, t):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    try:
        w, U = np.linalg.eigh(herm_part(M))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(f"eigensolver did not converge: {exc}") from exc
    return w, U


def psd_sqrt(A, tol=None) -> Array:
    """The unique PSD square root of a PSD matrix.

    Eigenvalues within the tolerance band around zero are flattened to exact
    zero before taking roots -- on both sides: a positive noise eigenvalue eps
    would otherwise surface as sqrt(eps), far above noise level, and give the
    root a larger numerical rank than the input.  Anything below the band
    raises NotPSD.
    """
    t = as_tolerance(tol)
    w, U = hermitian_eig(A, t)
    thr = t.threshold(np.abs(w).max())
    if w[0] < -thr:
        raise NotPSD(f"eigenvalue {w[0]:.6e} below the PSD tolerance -{thr:.3e}")
    w = np.where(np.abs(w) <= thr, 0.0, w)
    root = np.sqrt(np.clip(w, 0.0, None))
    return herm_part((U * root) @ U.conj().T)


def psd_clip(A, scale, tol=None) -> Array:
    """Snap eigenvalue noise of a computed-PSD matrix to zero.

    ``scale`` is the working scale of the computation that produced ``A``:
    a residual obtained as a difference of quantities of size ``scale``
    carries rounding noise proportional to that size, not to its own norm.
    The Hermiticity check and the eigenvalue band both use that scale;
    eigenvalues inside the band are flattened to exact zero, anything below
    it raises NotPSD.
    """
    t = as_tolerance(tol)
    M = _square(A)
    thr = t.threshold(max(float(scale), frobenius(M)))
    if frobenius(M - M.conj().T) > thr:
        raise NotHermitian("matrix is not Hermitian within the working-scale tolerance")
    w, U = np.linalg.eigh(herm_part(M))
    if w[0] < -thr:
        raise NotPSD(f"eigenvalue {w[0]:.6e} below the PSD tolerance -{thr:.3e}")
    w = np.where(np.abs(w) <= thr, 0.0, np.clip(w, 0.0, None))
    return herm_part((U * w) @ U.conj().T)


def pinv(A, tol=None) -> Array:
    """Moore-Penrose inverse with tolerance-based rank truncation.

    Hermitian input goes through the eigendecomposition, anything else through
    the SVD.  Only spectral values above ``threshold(sigma_max)`` are inverted,
    so the rank seen here is the same rank the range predicates use.
    """
    t = as_tolerance(tol)
    M = as_matrix(A)
    if M.size == 0:
        return np.zeros((M.shape[1], M.shape[0]), dtype=complex)
    if M.shape[0] == M.shape[1] and is_hermitian(M, t):
        w, U = np.linalg.eigh(herm_part(M))
        cut = t.threshold(np.abs(w).max())
        inv = np.zeros_like(w)
        keep = np.abs(w) > cut
        inv[keep] = 1.0 / w[keep]
        return (U * inv) @ U.conj().T
    U, s, Vh = np.linalg.svd(M, full_matrices=False)
    cut = t.threshold(s[0])
    inv = np.zeros_like(s)
    keep = s > cut
    inv[keep] = 1.0 / s[keep]
    return (Vh.conj().T * inv) @ U.conj().T


def numerical_rank(M, tol=None) -> int:
    t = as_tolerance(tol)
    A = as_matrix(M)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.count_nonzero(s > t.threshold(s[0])))


def orthonormal_columns(M, tol=None) -> Array:
    """Orthonormal basis of ran M; the rank is revealed by the SVD."""
    t = as_tolerance(tol)
    A = as_matrix(M)
    if A.size == 0:
        return np.zeros((A.shape[0], 0), dtype=complex)
    U, s, _ = np.linalg.svd(A, full_matrices=False)
    r = int(np.count_nonzero(s > t.threshold(s[0])))
    return U[:, :r].copy()


def range_projector(M, tol=None) -> Array:
    """Orthogonal projector onto ran M, formed as M M^+."""
    t = as_tolerance(tol)
    A = as_matrix(M)
    return herm_part(A @ pinv(A, t))


class Subspace:
    """A linear subspace of C^q stored as a q x d orthonormal basis.

    d = 0 is allowed and represents the zero subspace (q x 0 basis).
    """

    __slots__ = ("basis",)

    def __init__(self, basis):
        B = np.asarray(basis, dtype=complex)
        if B.ndim != 2:
            raise DimensionMismatch("a subspace basis must be a 2-d array")
        q, d = B.shape
        if q < 1 or d > q:
            raise DimensionMismatch(f"cannot have {d} independent vectors in C^{q}")
        if d > 0:
            gram = B.conj().T @ B
            if frobenius(gram - np.eye(d)) > 1e-8 * max(1.0, frobenius(gram)):
                raise ValueError("basis columns are not orthonormal")
        B = B.copy()
        B.flags.writeable = False
        self.basis = B

    @classmethod
    def zero(cls, q: int) -> "Subspace":
        return cls(np.zeros((q, 0), dtype=complex))

    @classmethod
    def full(cls, q: int) -> "Subspace":
        return cls(np.eye(q, dtype=complex))

    @classmethod
    def from_columns(cls, M, tol=None) -> "Subspace":
        M = as_matrix(M)
        return cls(orthonormal_columns(M, tol))

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> Array:
        return self.basis @ self.basis.conj().T

    def complement(self, tol=None) -> "Subspace":
        """The orthogonal complement, via a rank-revealing factorization of I - P."""
        q = self.ambient_dim
        return Subspace(orthonormal_columns(np.eye(q) - self.projector(), tol))

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def subspace_from_columns(M, tol=None) -> Subspace:
    """Subspace spanned by the columns of M (dim = numerical rank)."""
    return Subspace.from_columns(M, tol)


def fiber_projector(M, V: Subspace, tol=None) -> Array:
    """Orthogonal projector onto the fiber {x : M x in V}.

    Computed as I - N^+ N with N = (I - P_V) M: the fiber is exactly the null
    space of N.
    """
    t = as_tolerance(tol)
    A = as_matrix(M)
    if V.ambient_dim != A.shape[0]:
        raise DimensionMismatch(
            f"subspace lives in C^{V.ambient_dim} but the matrix has {A.shape[0]} rows"
        )
    N = A - V.projector() @ A
    p = A.shape[1]
    return herm_part(np.eye(p) - pinv(N, t) @ N)


def is_psd(A, tol=None) -> bool:
    """All eigenvalues >= -tol.  Raises NotHermitian for non-Hermitian input."""
    t = as_tolerance(tol)
    M = _square(A)
    if not is_hermitian(M, t):
        raise NotHermitian("is_psd requires a Hermitian matrix")
    w = np.linalg.eigvalsh(herm_part(M))
    return bool(w[0] >= -t.threshold(np.abs(w).max()))


def psd_verdict(A, tol=None) -> bool:
    """Like is_psd, but never raises: non-Hermitian input is simply not PSD."""
    t = as_tolerance(tol)
    M = as_matrix(A)
    if M.shape[0] != M.shape[1] or not is_hermitian(M, t):
        return False
    w = np.linalg.eigvalsh(herm_part(M))
    return bool(w[0] >= -t.threshold(np.abs(w).max()))


def loewner_leq(A, B, tol=None) -> bool:
    """A <= B in the Loewner order: B - A is PSD within tolerance.

    The PSD floor is scaled by the operands, not by the difference alone:
    when A and B are large and nearly equal, the difference is pure
    cancellation noise proportional to the operand scale, and flooring by
    the (tiny) difference would reject equalities that hold exactly.
    """
    t = as_tolerance(tol)
    MA = _square(A)
    MB = _square(B)
    if MA.shape != MB.shape:
        raise DimensionMismatch(f"cannot compare shapes {MA.shape} and {MB.shape}")
    for M in (MA, MB):
        if not is_hermitian(M, t):
            raise NotHermitian("Loewner comparison requires Hermitian matrices")
    D = herm_part(MB) - herm_part(MA)
    w = np.linalg.eigvalsh(herm_part(D))
    scale = max(np.abs(w).max(initial=0.0), frobenius(MA), frobenius(MB))
    return bool(w[0] >= -t.threshold(scale))


def range_included(B, A, tol=None) -> bool:
    """ran B inside ran A, decided by the projector residual ||(I - P_A) B||."""
    t = as_tolerance(tol)
    MB = as_matrix(B)
    MA = as_matrix(A)
    if MA.shape[0] != MB.shape[0]:
        raise DimensionMismatch("row counts differ")
    P = range_projector(MA, t)
    return frobenius(MB - P @ MB) <= t.threshold(frobenius(MB))


def ranges_intersect_trivially(A, B, tol=None) -> bool:
    """ran A and ran B meet only in 0, decided by the rank-sum criterion."""
    t = as_tolerance(tol)
    MA = as_matrix(A)
    MB = as_matrix(B)
    if MA.shape[0] != MB.shape[0]:
        raise DimensionMismatch("row counts differ")
    stacked = np.hstack([MA, MB])
    return numerical_rank(stacked, t) == numerical_rank(MA, t) + numerical_rank(MB, t)
