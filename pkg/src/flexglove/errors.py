"""Exception types shared across the package."""


class GloveError(Exception):
    """Base class for every error raised by this package."""


class ArgumentError(GloveError, ValueError):
    """A caller-supplied argument is unusable (empty list, zero users, ...)."""


class DomainError(GloveError, ValueError):
    """An input falls outside an operation's physical or numeric domain."""


class BendRangeError(DomainError):
    """Bend diameter is tighter than the sensor supports."""


class ParseError(GloveError, ValueError):
    """Base for frame/session parsing failures.

    ``line`` is the 1-based line number within the stream, when known.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class MalformedFrame(ParseError):
    """A frame line does not match the wire grammar."""


class RangeViolation(ParseError):
    """A frame field parsed but its ADC value exceeds the converter range."""


class MalformedHeader(ParseError):
    """A session stream is missing or mangling its header block."""


class OrderViolation(ParseError):
    """Frame timestamps are not strictly increasing."""


class SchemaError(ParseError):
    """A session declares a schema version this build does not understand."""


class PreconditionViolation(GloveError, ValueError):
    """An analysis operation was called outside its stated preconditions."""


class DegenerateRange(GloveError, ValueError):
    """Min-max normalization saw a flat input (max == min): dead channel."""
