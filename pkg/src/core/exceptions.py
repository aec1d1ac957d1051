"""
Custom exceptions for the ring laboratory
"""

from typing import Optional


class RingLabError(Exception):
    """Base exception for the application"""
    pass


class InvalidDescriptor(RingLabError):
    """Raised when a ring descriptor violates its construction rules"""

    def __init__(self, message: str, offset: Optional[int] = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class SizeCapExceeded(RingLabError):
    """Raised when a ring would be larger than the configured cap"""

    def __init__(self, size: Optional[int], cap: int):
        self.size = size
        self.cap = cap
        shown = "more than" if size is None else str(size)
        super().__init__(f"ring size {shown} elements exceeds the cap of {cap}")


class ParseError(RingLabError):
    """Raised when a ring expression does not match the grammar"""

    def __init__(self, offset: int, expected: str, found: str):
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(f"at offset {offset}: expected {expected}, found {found}")


class ImproperIdeal(RingLabError):
    """Raised when a predicate that needs a proper ideal receives R itself"""
    pass


class ZeroIdeal(RingLabError):
    """Raised when a predicate that needs a non-zero ideal receives <0>"""
    pass


class RingMismatch(RingLabError):
    """Raised when two ideals live in different rings"""
    pass


class NotNIntegralDomain(RingLabError):
    """Raised when an N-PID question is asked of a ring whose zero ideal is not N-prime"""
    pass


class CatalogError(RingLabError):
    """Raised when a catalog file line cannot be turned into a ring"""

    def __init__(self, line: int, cause: RingLabError):
        self.line = line
        self.cause = cause
        super().__init__(f"line {line}: {cause}")


class InvalidElement(RingLabError):
    """Raised when an element index is outside a ring"""
    pass


class InvalidExponent(RingLabError):
    """Raised when a power is requested with an exponent below 1"""
    pass
