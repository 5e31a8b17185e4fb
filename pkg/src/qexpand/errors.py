"""Exception types shared across the package."""


class QExpandError(Exception):
    """Base class for all package-specific errors."""


class StructureError(QExpandError):
    """Values from different symbol tables, or a malformed construction."""


class PoleError(QExpandError, ZeroDivisionError):
    """Division by zero, or evaluation at a pole."""


class NonInvertibleError(QExpandError):
    """Series inversion attempted on a series with zero constant term."""


class OrderError(QExpandError):
    """A requested index or order is out of range for the truncation."""


class SingularMatrixError(QExpandError):
    """Triangular inversion attempted on a matrix without unit diagonal."""


class DomainError(QExpandError):
    """A numeric evaluation point lies outside the region of validity."""


class ParseError(QExpandError):
    """Malformed expression text."""
