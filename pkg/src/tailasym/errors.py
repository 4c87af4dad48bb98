"""Exception taxonomy, mapped onto stable CLI exit codes by :mod:`tailasym.cli`."""


class TailAsymError(Exception):
    """Base class for all package-specific errors."""


class DomainError(TailAsymError, ValueError):
    """A parameter, option, or scale declaration is outside its allowed domain."""


class DataError(TailAsymError, ValueError):
    """Input data cannot be used: parse failures, shape mismatches, unusable counts."""


class NumericalError(TailAsymError, ArithmeticError):
    """A numerical procedure failed, e.g. root finding or a covariance factorization."""


class LimitUnknownError(TailAsymError):
    """No catalogued route determines the boundary limit for this model."""
