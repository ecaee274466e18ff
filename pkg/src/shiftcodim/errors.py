"""Exception hierarchy.

Domain errors (``MatroidError`` subclasses) mean the mathematical input is
inconsistent; the CLI maps them to exit code 1.  ``ParseError`` maps to 2.
"""


class MatroidError(Exception):
    """Base class for domain errors."""


class NotAMatroid(MatroidError):
    """A rank table or basis family violates the matroid axioms.

    ``witness`` is ``(F, x, y)`` for a failure of the local submodular axiom
    (``F`` a subset mask, ``x``/``y`` 1-based elements), ``(F, x, None)`` for
    a failed unit step, or ``(B, B2, x)`` masks/element for a failed basis
    exchange.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class EmptyBasisSet(MatroidError):
    pass


class GroundSetOverflow(MatroidError):
    pass


class LoopParallel(MatroidError):
    pass


class DisconnectedInput(MatroidError):
    pass


class NotInFamily(MatroidError, KeyError):
    pass


class NotAPositroid(MatroidError):
    pass


class MalformedMatrix(MatroidError):
    pass


class InconsistentPermutation(MatroidError):
    pass


class InvalidBounds(MatroidError):
    pass


class PendingMatrix(MatroidError):
    pass


class AmbiguousShift(MatroidError):
    pass


class NoValidResolution(MatroidError):
    pass


class NotSchubert(MatroidError):
    pass


class EmptyIntersection(MatroidError):
    pass


class NonTermination(MatroidError):
    pass


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagreed."""


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
