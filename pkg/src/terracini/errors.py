"""Exception hierarchy shared across the package.

Two top-level families matter to callers: ``MathError`` for violated
mathematical preconditions (inadmissible rank, singular point, bad field
element) and ``InputError`` for unreadable or malformed input artifacts.
The command line maps them to exit codes 1 and 2 respectively.
"""


class TerraciniError(Exception):
    """Base class for every error raised by this package."""


class MathError(TerraciniError):
    """A mathematical precondition was violated."""


class InputError(TerraciniError):
    """An input file or text artifact could not be parsed or validated."""


class ZeroDenominatorError(MathError):
    """Rational number with denominator zero."""


class NonInvertibleError(MathError):
    """Attempt to invert a noninvertible field element."""


class NotPrimeError(MathError):
    """Prime field modulus failed the primality check."""


class FieldMismatchError(MathError):
    """Operands belong to different fields."""


class RingMismatchError(MathError):
    """Operands belong to different polynomial rings."""


class LayoutError(MathError):
    """Unknown variable or block, or an inconsistent variable layout."""


class ExponentOverflowError(MathError):
    """A monomial operation exceeded the supported exponent range."""


class InadmissibleRankError(MathError):
    """Requested number of points lies outside the admissible range."""


class SingularPointError(MathError):
    """A configuration point is singular for the variety at hand."""


class PointNotOnVarietyError(MathError):
    """A configuration point does not satisfy the defining ideal."""


class DuplicatePointError(MathError):
    """Two configuration points coincide."""


class DegenerateVarietyError(MathError):
    """The variety is degenerate or otherwise outside the contract."""


class DefectiveCaseError(MathError):
    """The requested family falls into an excluded defective case."""
