"""Exception types shared across the toolkit.

Each carries the CLI exit code it maps to.
"""


class SegmapError(Exception):
    exit_code = 1


class ValidationError(SegmapError, ValueError):
    exit_code = 2


class ParseError(ValidationError):
    """Malformed input text. ``line`` is 1-based, or None if not line-specific."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SymmetryViolation(SegmapError):
    exit_code = 3


class UnsupportedSize(SegmapError):
    exit_code = 4
