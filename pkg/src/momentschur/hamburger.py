"""Block-Hankel classification of finite matricial moment sequences.

A sequence (s_0, ..., s_{2n}) of q x q blocks is *nonnegative definite* when
the block Hankel matrix H_n = [s_{j+k}]_{j,k=0..n} is PSD, and *extendably*
so when some longer nonnegative definite sequence begins with it.  The lowest
admissible last block is Theta_n = z H_{n-1}^+ y (built from the strip
s_n .. s_{2n-1}); the slack L_n = s_{2n} - Theta_n and the Schur complement of
L_n relative to ran L_{n-1} give the tight upper bound
R_n = Theta_n + S(L_n, ran L_{n-1}).  Candidates t for the last block then
form the matricial interval [Theta_n, s_{2n}] (nonnegative definite) or
[Theta_n, R_n] (extendable), and replacing s_{2n} by R_n yields the canonical
representative of the class of sequences sharing every extension behaviour.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotHermitian,
    NotHNND,
    NotPSD,
    OddOrderUnsupported,
    ShapeMismatch,
    TooShort,
)
from .linalg import (
    Array,
    as_matrix,
    as_tolerance,
    frobenius,
    herm_part,
    is_hermitian,
    loewner_leq,
    pinv,
    psd_clip,
    psd_verdict,
    range_included,
    ranges_intersect_trivially,
    subspace_from_columns,
)
from .schur import schur_complement


class MomentSequence:
    """A finite sequence (s_0, ..., s_kappa) of equal-size square blocks.

    Blocks are stored as read-only complex arrays; scalar entries are accepted
    and become 1x1 blocks, so ``MomentSequence([1, 0, 1])`` works as expected.
    """

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        mats = []
        for b in blocks:
            M = as_matrix(b)
            if M.shape[0] != M.shape[1]:
                raise ShapeMismatch(f"blocks must be square, got shape {M.shape}")
            M = M.copy()
            M.flags.writeable = False
            mats.append(M)
        if not mats:
            raise TooShort("a moment sequence needs at least one block")
        q = mats[0].shape[0]
        for M in mats:
            if M.shape[0] != q:
                raise ShapeMismatch("all blocks must have the same size")
        self.blocks = tuple(mats)

    @classmethod
    def coerce(cls, s) -> "MomentSequence":
        return s if isinstance(s, cls) else cls(s)

    @property
    def q(self) -> int:
        return self.blocks[0].shape[0]

    @property
    def kappa(self) -> int:
        """Largest block index (length - 1)."""
        return len(self.blocks) - 1

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __getitem__(self, j: int) -> Array:
        if not 0 <= j <= self.kappa:
            raise IndexOutOfRange(f"block index {j} outside 0..{self.kappa}")
        return self.blocks[j]

    def prefix(self, length: int) -> "MomentSequence":
        if not 1 <= length <= len(self):
            raise IndexOutOfRange(f"prefix length {length} outside 1..{len(self)}")
        return MomentSequence(self.blocks[:length])

    def with_last(self, block) -> "MomentSequence":
        return MomentSequence(self.blocks[:-1] + (block,))

    def appended(self, block) -> "MomentSequence":
        return MomentSequence(self.blocks + (block,))

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"MomentSequence(q={self.q}, length={len(self)})"


@dataclass(frozen=True)
class HamburgerReport:
    """Everything the classify command reports for the Hamburger path.

    ``L_prev`` is None at n = 0; ``R`` and ``canonical`` are None when the
    sequence is not nonnegative definite (the upper bound is undefined then).
    """

    q: int
    n: int
    is_hnnd: bool
    is_hnnde: bool
    theta: Array
    L: Array
    L_prev: Array | None
    R: Array | None
    canonical: MomentSequence | None


def block_hankel(s, n: int) -> Array:
    """The (n+1)q x (n+1)q block Hankel matrix [s_{j+k}]_{j,k=0..n}."""
    s = MomentSequence.coerce(s)
    if 2 * n > s.kappa:
        raise IndexOutOfRange(f"block Hankel of order {n} needs blocks up to 2n={2 * n}")
    rows = [np.hstack([s[j + k] for k in range(n + 1)]) for j in range(n + 1)]
    return np.vstack(rows)


def y_block(s, l: int, m: int) -> Array:
    """The block column col(s_l, ..., s_m)."""
    s = MomentSequence.coerce(s)
    if not 0 <= l <= m <= s.kappa:
        raise IndexOutOfRange(f"block range {l}..{m} outside 0..{s.kappa}")
    return np.vstack([s[j] for j in range(l, m + 1)])


def z_block(s, l: int, m: int) -> Array:
    """The block row row(s_l, ..., s_m)."""
    s = MomentSequence.coerce(s)
    if not 0 <= l <= m <= s.kappa:
        raise IndexOutOfRange(f"block range {l}..{m} outside 0..{s.kappa}")
    return np.hstack([s[j] for j in range(l, m + 1)])


def theta(s, n: int, tol=None) -> Array:
    """Theta_n = z_{n,2n-1} H_{n-1}^+ y_{n,2n-1}, the minimal admissible s_{2n}.

    Theta_0 is the zero block.  The formula is total: it does not require the
    sequence to be nonnegative definite.
    """
    s = MomentSequence.coerce(s)
    t = as_tolerance(tol)
    if n == 0:
        return np.zeros((s.q, s.q), dtype=complex)
    if 2 * n - 1 > s.kappa:
        raise IndexOutOfRange(f"theta({n}) needs blocks up to {2 * n - 1}")
    H = block_hankel(s, n - 1)
    y = y_block(s, n, 2 * n - 1)
    z = z_block(s, n, 2 * n - 1)
    raw = z @ pinv(H, t) @ y
    if all(is_hermitian(s[j], t) for j in range(2 * n)):
        # z = y^H and H^+ is Hermitian, so the exact value is Hermitian;
        # symmetrizing strips rounding noise that would otherwise dominate
        # the near-zero residuals s_{2n} - Theta_n
        raw = herm_part(raw)
    return raw


def l_matrix(s, n: int, tol=None) -> Array:
    """L_n = s_{2n} - Theta_n; PSD whenever the sequence is nonnegative definite."""
    s = MomentSequence.coerce(s)
    if 2 * n > s.kappa:
        raise IndexOutOfRange(f"l_matrix({n}) needs blocks up to {2 * n}")
    return s[2 * n] - theta(s, n, tol)


def _require_odd_length(s):
    if len(s) % 2 == 0:
        raise OddOrderUnsupported(
            "Hankel nonnegative definiteness is defined for odd-length sequences "
            "(s_0..s_2n); use the Stieltjes path or truncate the last block"
        )


def is_hnnd(s, tol=None) -> bool:
    """Is H_n PSD?  Only defined for odd-length sequences (kappa = 2n)."""
    s = MomentSequence.coerce(s)
    _require_odd_length(s)
    return psd_verdict(block_hankel(s, s.kappa // 2), tol)


def is_hnnde(s, tol=None) -> bool:
    """Is the sequence a section of a longer nonnegative definite sequence?

    Recursive test, both parities accepted.  Odd length (kappa = 2n): the
    even-length prefix must be extendable and L_n must be PSD with
    ran L_n inside ran L_{n-1}.  Even length: append the candidate
    s_{2n} := Theta_n (the minimal completion, forcing L_n = 0) and test the
    completed Hankel matrix.
    """
    s = MomentSequence.coerce(s)
    t = as_tolerance(tol)
    length = len(s)
    if length == 1:
        return psd_verdict(s[0], t)
    if length % 2 == 1:
        n = s.kappa // 2
        if not is_hnnde(s.prefix(length - 1), t):
            return False
        # the residuals carry rounding noise at the scale of the blocks
        # they were subtracted from; clip before PSD and range verdicts
        scale = max(frobenius(b) for b in s)
        try:
            L_n = psd_clip(l_matrix(s, n, t), scale, t)
            L_prev = psd_clip(l_matrix(s, n - 1, t), scale, t)
        except (NotPSD, NotHermitian):
            return False
        return range_included(L_n, L_prev, t)
    n = length // 2
    return is_hnnd(s.appended(theta(s, n, t)), t)


def r_upper(s, n: int, tol=None) -> Array:
    """R_n = Theta_n + S(L_n, ran L_{n-1}), the tight upper bound for s_{2n}.

    Requires (s_0, ..., s_2n) to be nonnegative definite; R_0 = s_0.
    """
    s = MomentSequence.coerce(s)
    t = as_tolerance(tol)
    if 2 * n > s.kappa:
        raise IndexOutOfRange(f"r_upper({n}) needs blocks up to {2 * n}")
    if not is_hnnd(s.prefix(2 * n + 1), t):
        raise NotHNND("the sequence s_0..s_2n is not Hankel nonnegative definite")
    if n == 0:
        return s[0]
    # the residuals are differences of Hankel-sized quantities, so their
    # noise floor sits at the Hankel scale, not at their own (possibly
    # tiny) norm; clip before ranks and Schur complements are taken
    scale = max(frobenius(s[j]) for j in range(2 * n + 1))
    L_n = psd_clip(l_matrix(s, n, t), scale, t)
    L_prev = psd_clip(l_matrix(s, n - 1, t), scale, t)
    V = subspace_from_columns(L_prev, t)
    return theta(s, n, t) + schur_complement(L_n, V, t).S


def canonical_rep(s, tol=None) -> MomentSequence:
    """The sequence with its last block replaced by R_n.

    The result is extendable, lies in the same class as the input, and is the
    unique extendable member of that class.
    """
    s = MomentSequence.coerce(s)
    _require_odd_length(s)
    return s.with_last(r_upper(s, s.kappa // 2, tol))


def in_extension_interval(s, t_last, bound: str = "given_s2n", tol=None) -> bool:
    """Is t_last an admissible last block, relative to the chosen upper bound?

    bound="given_s2n" tests Theta_n <= t <= s_{2n} (membership in the set of
    last blocks of nonnegative definite sequences below the given one);
    bound="r_upper" tests Theta_n <= t <= R_n (the extendable analogue).
    """
    s = MomentSequence.coerce(s)
    t = as_tolerance(tol)
    _require_odd_length(s)
    n = s.kappa // 2
    if not is_hnnd(s, t):
        raise NotHNND("the reference sequence is not Hankel nonnegative definite")
    T = as_matrix(t_last)
    if T.shape != (s.q, s.q):
        raise DimensionMismatch(f"candidate block has shape {T.shape}, expected {(s.q, s.q)}")
    if not is_hermitian(T, t):
        raise NotHermitian("candidate last block must be Hermitian")
    lower = theta(s, n, t)
    if bound == "given_s2n":
        upper = s[2 * n]
    elif bound == "r_upper":
        upper = r_upper(s, n, t)
    else:
        raise ValueError("bound must be 'given_s2n' or 'r_upper'")
    return loewner_leq(lower, T, t) and loewner_leq(T, upper, t)


def _class_conditions(s, r, t) -> tuple[bool, bool, bool]:
    """The three conditions of the class test, individually."""
    n = s.kappa // 2
    R = r_upper(s, n, t)
    prefix_equal = all(
        frobenius(r[j] - s[j]) <= t.threshold(frobenius(s[j])) for j in range(2 * n)
    )
    # both differences live at the scale of the blocks; clipping keeps
    # cancellation noise out of the PSD and rank verdicts below
    scale = max(max(frobenius(b) for b in s), frobenius(r[2 * n]))
    D = r[2 * n] - R
    try:
        D = psd_clip(D, scale, t)
        difference_psd = True
    except (NotPSD, NotHermitian):
        difference_psd = False
    L_prev = psd_clip(l_matrix(s, n - 1, t), scale, t)
    return (
        prefix_equal,
        difference_psd,
        ranges_intersect_trivially(D, L_prev, t),
    )


def same_class(s, r, tol=None) -> bool:
    """Do s and r share the same class of nonnegative definite extensions?

    True iff r agrees with s below the last block, r_{2n} - R_n is PSD, and
    ran(r_{2n} - R_n) meets ran L_{n-1} only in 0.
    """
    s = MomentSequence.coerce(s)
    r = MomentSequence.coerce(r)
    if len(s) != len(r) or s.q != r.q:
        raise ShapeMismatch(
            f"sequences differ in shape: ({len(s)} blocks of size {s.q}) vs "
            f"({len(r)} blocks of size {r.q})"
        )
    _require_odd_length(s)
    if s.kappa < 2:
        raise TooShort("the class test needs kappa = 2n with n >= 1")
    t = as_tolerance(tol)
    return all(_class_conditions(s, r, t))


def classify_hamburger(s, tol=None) -> HamburgerReport:
    """Gather the full Hamburger-side report for one sequence."""
    s = MomentSequence.coerce(s)
    t = as_tolerance(tol)
    _require_odd_length(s)
    n = s.kappa // 2
    hnnd = is_hnnd(s, t)
    R = r_upper(s, n, t) if hnnd else None
    return HamburgerReport(
        q=s.q,
        n=n,
        is_hnnd=hnnd,
        is_hnnde=is_hnnde(s, t),
        theta=theta(s, n, t),
        L=l_matrix(s, n, t),
        L_prev=l_matrix(s, n - 1, t) if n >= 1 else None,
        R=R,
        canonical=s.with_last(R) if R is not None else None,
    )
