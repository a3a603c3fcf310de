"""Exception types shared across the package."""


class MomentSchurError(Exception):
    """Base class for every error raised by this package."""


class ParseError(MomentSchurError):
    """Input JSON did not match the expected schema."""


class NotHermitian(MomentSchurError):
    """A matrix required to be Hermitian (within tolerance) is not."""


class NotPSD(MomentSchurError):
    """A matrix required to be positive semidefinite is not."""


class NotHNND(NotPSD):
    """A sequence required to be Hankel nonnegative definite is not.

    Subclasses NotPSD because the condition is precisely that a block Hankel
    matrix fails to be PSD.
    """


class NotKNND(NotPSD):
    """A sequence required to be Stieltjes nonnegative definite is not."""


class NoConvergence(MomentSchurError):
    """The underlying eigenvalue / singular value iteration failed."""


class DimensionMismatch(MomentSchurError):
    """Operands have incompatible dimensions."""


class IndexOutOfRange(MomentSchurError):
    """A block index lies outside the range held by the sequence."""


class OddOrderUnsupported(MomentSchurError):
    """Raised on the Hamburger path for even-length sequences.

    Hankel nonnegative definiteness is only defined for sequences
    (s_0, ..., s_{2n}); even-length data should go through the Stieltjes path
    or be truncated.
    """


class ShapeMismatch(MomentSchurError):
    """Two sequences required to share length and block size do not."""


class SplitInvalid(MomentSchurError):
    """A candidate split X + Y does not reconstruct A within tolerance."""


class TooShort(MomentSchurError):
    """The sequence has too few blocks for the requested operation."""
