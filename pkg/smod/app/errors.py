"""
Exception hierarchy for smod

Every error raised on purpose by the package derives from SmodError so the
CLI can map it to an exit code.
"""

from typing import Any, Optional


class SmodError(Exception):
    """Base class for all smod errors"""
    pass


# ====================
# Arithmetic
# ====================

class DivisionByZero(SmodError):
    """Division by the zero rational function"""
    pass


class BadSubstitution(SmodError):
    """A denominator vanishes at the substitution point"""

    def __init__(self, denominator: Any, where: Optional[str] = None):
        self.denominator = denominator
        self.where = where
        location = f" at {where}" if where else ""
        super().__init__(f"denominator {denominator} vanishes at alpha{location}")


class RingMismatch(SmodError):
    """Operands live in different rings"""
    pass


class OrderMismatch(SmodError):
    """A Groebner basis was computed in an order unsuitable for the request"""
    pass


# ====================
# Input
# ====================

class ParseError(SmodError):
    """Malformed expression text"""

    def __init__(self, position: int, expected: str, text: str = ""):
        self.position = position
        self.expected = expected
        self.text = text
        super().__init__(f"parse error at position {position}: expected {expected}")


class UnknownSymbol(SmodError):
    """A name that is neither a parameter nor a variable of the ring"""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown symbol: {name}")


class InputError(SmodError):
    """Invalid input file"""

    def __init__(self, message: str, file: Optional[str] = None, line: Optional[int] = None):
        self.file = file
        self.line = line
        prefix = ""
        if file is not None:
            prefix = f"{file}:{line}: " if line is not None else f"{file}: "
        super().__init__(f"{prefix}{message}")


# ====================
# Algebra
# ====================

class ImproperIdeal(SmodError):
    """Height requested for the zero or the unit ideal"""
    pass


class NotAHomomorphism(SmodError):
    """v0 does not carry relations into relations"""
    pass


class AmbientMismatch(SmodError):
    """Submodules of different ambient modules"""
    pass


class NotAComplex(SmodError):
    """A composite of consecutive maps is nonzero"""
    pass


class CapExceeded(SmodError):
    """Resolution did not terminate within the cap"""

    def __init__(self, cap: int, partial: Any = None):
        self.cap = cap
        self.partial = partial
        super().__init__(f"resolution did not terminate within {cap} maps")


class ZeroModule(SmodError):
    """Operation undefined on the zero module"""
    pass


# ====================
# Specialization
# ====================

class ExhaustedSampling(SmodError):
    """No certified substitution point found within the draw limit"""
    pass


class CompatibilityLost(SmodError):
    """A specialized map no longer commutes with the presentations"""
    pass
