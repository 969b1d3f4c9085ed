class FactorCountError(Exception):
    """Base error. `exit_code` is what the CLI returns when it escapes."""

    exit_code: int = 3


class UsageError(FactorCountError):
    exit_code = 1


class DataError(FactorCountError):
    exit_code = 2


class NumericalError(FactorCountError):
    exit_code = 3


class DomainError(NumericalError, ValueError):
    """Argument outside the domain of a random-matrix function (pole, wrong branch)."""


class TableRangeError(UsageError, ValueError):
    """Probability or abscissa outside the Tracy-Widom table coverage."""


class PreconditionError(DataError, ValueError):
    """Input data too small or inconsistent for the requested operation."""
