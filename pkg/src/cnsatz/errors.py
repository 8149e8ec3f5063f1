"""Exception types shared across the package."""


class CnsatzError(Exception):
    """Base class for all library errors."""


class RingMismatchError(CnsatzError):
    """Operands belong to different rings."""


class NotAUnitError(CnsatzError):
    """Inverse requested for a non-unit element."""


class NotEnumerableError(CnsatzError):
    """Enumeration requested for an infinite ring."""


class NonMonicDivisorError(CnsatzError):
    """Division requested by a polynomial that is not monic in the dividing variable."""


class FieldRequiredError(CnsatzError):
    """The operation is only defined over a field."""


class CapExceededError(CnsatzError):
    """An enumeration exceeded its configured cap."""


class HypothesisError(CnsatzError):
    """A mathematical hypothesis of an operation is violated by the input."""


class DegenerateGridError(HypothesisError):
    """The grid fails the difference condition required by the operation."""


class ParseError(CnsatzError):
    """Malformed input text.

    Carries the 0-based offset of the offending character in ``pos``.
    """

    def __init__(self, message: str, pos: int | None = None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos
