"""Exception hierarchy.

Domain errors derive from :class:`InvspaceError` (a ``ValueError``) so the
CLI can map them to exit status 1; :class:`ParseError` maps to status 2.
"""
from __future__ import annotations


class InvspaceError(ValueError):
    """Base class for domain errors raised by this package."""

    hint = ""


class NotCoprimeError(InvspaceError):
    hint = "the polynomials share a root; pass pairwise coprime factors"


class DuplicateRootError(InvspaceError):
    hint = "merge repeated roots into a single (root, multiplicity) pair"


class ZeroLeadError(InvspaceError):
    hint = "the leading coefficient must be nonzero"


class DimensionMismatchError(InvspaceError):
    pass


class ShiftZeroLambdaError(InvspaceError):
    hint = "exponential base 0 is not allowed for sequences (shift operator)"


class NotInvariantError(InvspaceError):
    hint = "use `closure` to obtain the smallest invariant subspace"


class ZeroSpaceError(InvspaceError):
    pass


class MembershipError(InvspaceError):
    pass


class InvalidMinPolyError(InvspaceError):
    hint = "the supplied factored polynomial does not annihilate the matrix"


class UnfactoredOperatorError(InvspaceError):
    hint = "supply the factored operator with --roots, e.g. --roots '2^1,3^1'"


class UnsolvableSystemError(InvspaceError):
    """Raised when an undetermined-coefficient system has no solution.

    For valid inputs this never happens; seeing it indicates a bug.
    """


class SingularSystemError(InvspaceError):
    pass


class WrongCountError(InvspaceError):
    pass


class RootsMismatchError(InvspaceError):
    hint = "the roots must reproduce the operator coefficients exactly"


class ParseError(ValueError):
    """Syntax or mode error with a byte offset into the source text."""

    def __init__(self, message: str, source: str = "", offset: int = 0, hint: str = ""):
        self.message = message
        self.source = source
        self.offset = offset
        self.hint = hint
        super().__init__(self.describe())

    def describe(self) -> str:
        text = f"{self.message} at byte {self.offset}"
        if self.hint:
            text += f" (hint: {self.hint})"
        return text
