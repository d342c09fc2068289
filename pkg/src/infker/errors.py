"""Exception types shared across the package."""

from __future__ import annotations


class InfkerError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatchError(InfkerError, ValueError):
    """Operands live over different primes or different ambient spaces."""


class DimensionMismatchError(InfkerError, ValueError):
    """A vector or matrix has the wrong shape for the requested operation."""


class NotPrimeError(InfkerError, ValueError):
    """The requested modulus is not a prime number."""


class HomogeneityError(InfkerError, ValueError):
    """An operation that needs a homogeneous input received a mixed one."""


class PrimitivityError(InfkerError, ValueError):
    """A ladder seed is not annihilated by the raising operator."""


class ParseError(InfkerError, ValueError):
    """Malformed multivector text.  ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CatalogTooLargeError(InfkerError):
    """An isotropic catalog would exceed the enumeration budget."""

    def __init__(self, count: int, limit: int):
        super().__init__(
            f"catalog holds {count} subspaces, more than the supported {limit}"
        )
        self.count = count
        self.limit = limit


class DecompositionDefectError(InfkerError):
    """Primitive-plus-image decomposition failed to be direct or to span.

    Carries the dimension of the overlap between the primitive subspace and
    the image of the lowering operator, and the codimension of their sum.
    """

    def __init__(self, overlap_dim: int, missing_dim: int):
        super().__init__(
            "decomposition is not direct: overlap dimension "
            f"{overlap_dim}, uncovered dimension {missing_dim}"
        )
        self.overlap_dim = overlap_dim
        self.missing_dim = missing_dim


class InvariantError(InfkerError):
    """A mathematical postcondition that must hold was violated."""
