"""Exception types shared across the package."""


class EdgeListParseError(ValueError):
    """Malformed edge-list input (message carries the offending line number)."""


class MatrixMarketFormatError(ValueError):
    """Unsupported or inconsistent Matrix Market input."""


class IterationCapExceeded(RuntimeError):
    """An iterative solver ran past its safety cap; indicates an engine bug."""
