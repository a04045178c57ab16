"""codemend: syntax-only repair and evaluation toolkit for student Java code."""

__version__ = "0.1.0"


class CodemendError(Exception):
    """Base class for errors raised by this package."""
