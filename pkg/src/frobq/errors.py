"""Exception hierarchy shared across the package.

The CLI maps these onto its exit codes, so new error conditions should
reuse one of the classes below instead of raising bare ValueErrors.
"""


class FrobqError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(FrobqError):
    """Lexical or syntax error in a quiver document, with location."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column or 1}: {message}"
        super().__init__(message)


class ValidationError(FrobqError):
    """Semantic error: malformed quiver, ideal, or coproduct data."""


class UnsupportedIdealRegimeError(FrobqError):
    """The engine cannot certify a finite quotient for this ideal.

    Raised for cyclic quivers whose monomial generators alone do not cut
    every cycle; the non-monomial part might still make the quotient
    finite, but this engine does not attempt to prove that.
    """


class InfiniteDimensionalError(FrobqError):
    """The quotient is provably infinite dimensional.

    Only raised for purely monomial ideals, where surviving paths form a
    basis of the quotient and a live cycle in the avoidance automaton
    pumps arbitrarily long survivors.
    """


class SupportViolationError(ValidationError):
    """A coproduct candidate has a term outside its forced support block."""


class InternalFaultError(FrobqError):
    """An internal consistency check failed; indicates a bug, not bad input."""
