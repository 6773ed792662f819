"""Exception hierarchy for qftlab.

Every domain error derives from :class:`QftLabError`, itself a ``ValueError``, so callers
that only care about bad input can keep catching ``ValueError``.
"""


class QftLabError(ValueError):
    """Base class for all qftlab domain errors."""


class InvalidBasisState(QftLabError):
    """A basis digit string does not fit the wire radices."""


class InvalidWire(QftLabError):
    """A wire index is out of range."""


class RadixMismatch(QftLabError):
    """A gate or control level is illegal on the radix of the wire it touches."""


class DimensionLimit(QftLabError):
    """The requested dense object exceeds the configured dimension limit."""


class ShapeError(QftLabError):
    """Two arrays that must agree in shape do not."""


class InvalidState(QftLabError):
    """A state or amplitude pair is not normalized."""


class ParseError(QftLabError):
    """Malformed circuit text."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ValidationError(QftLabError):
    """Well-formed circuit text that violates the circuit schema or invariants."""


class CodeConstructionError(QftLabError):
    """A stabilizer code or one of its codewords could not be built."""


class FactorizationError(QftLabError):
    """A joint state expected to be a product state is entangled."""


class AboveThreshold(QftLabError):
    """c·p is not below 1, so concatenation does not converge."""


class QutritAboveThreshold(AboveThreshold):
    """The qutrit side of a hybrid circuit is not below threshold (log δ + log c3·p2 ≥ 0)."""


class OracleOverflow(QftLabError):
    """The brute-force level search found no level up to its bound."""


class InvalidWidth(QftLabError):
    """An adder register width below 2."""


class UnknownGateType(QftLabError):
    """A census label has no entry in the cost model."""


class InvalidParameters(QftLabError):
    """Numeric parameters outside their documented domain."""
