"""Exception types shared across the package.

Everything raised deliberately by this library derives from Z2NormError,
so callers can catch one class at the CLI boundary and map it to a
diagnostic plus a nonzero exit status.
"""

from __future__ import annotations


class Z2NormError(Exception):
    """Base class for all errors raised by this package."""


class TriFormatError(Z2NormError):
    """A triangulation file failed to parse.

    line is the 1-based line number the problem was detected on, or None
    when the problem is not attributable to a single line.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BadGluingError(Z2NormError):
    """Face gluings are structurally inconsistent (not an involution,
    a face glued to itself, or an index out of range)."""


class InvalidEdgeError(Z2NormError):
    """An edge is identified with itself in reverse, so the edge link
    is not a disc and the complex is not a triangulation of a manifold."""


class NotClosedError(Z2NormError):
    """The triangulation has boundary faces or a non-sphere vertex link."""


class NonOrientableError(Z2NormError):
    """No consistent orientation exists.

    witness is a list of (tet, face) hops forming a closed path along
    which orientation signs fail to match up.
    """

    def __init__(self, message: str, witness: list[tuple[int, int]] | None = None):
        self.witness = witness or []
        super().__init__(message)


class RankTooLowError(Z2NormError):
    """The GF(2) cohomology rank is below what the operation needs."""


class NotOneVertexError(Z2NormError):
    """The operation requires a one-vertex triangulation."""


class MixedTypesError(Z2NormError):
    """Tetrahedra inside one sub-complex carry inconsistent colouring types."""


class ZeroClassError(Z2NormError):
    """A cohomology class required to be nonzero was zero."""


class InvalidSiteError(Z2NormError):
    """The requested edge does not admit the requested move."""


class StepLimitExceededError(Z2NormError):
    """An iterative procedure hit its step budget before finishing.

    trace records the per-step state observed before giving up.
    """

    def __init__(self, message: str, trace: list | None = None):
        self.trace = trace or []
        super().__init__(message)


class BadParameterError(Z2NormError):
    """A generator or CLI parameter is outside its accepted range."""
