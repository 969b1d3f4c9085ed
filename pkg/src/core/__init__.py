import logging

from core.errors import (
    DataError,
    DomainError,
    FactorCountError,
    NumericalError,
    PreconditionError,
    TableRangeError,
    UsageError,
)
from core.settings import settings

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str | None = None) -> None:
    logging.basicConfig(
        level=level or settings.EFFECTIVE_LOG_LEVEL,
        format=LOG_FORMAT,
        force=True,
    )


__all__ = [
    "settings",
    "configure_logging",
    "FactorCountError",
    "UsageError",
    "DataError",
    "NumericalError",
    "DomainError",
    "TableRangeError",
    "PreconditionError",
]
