import logging
from pathlib import Path

import numpy as np
import pandas as pd

from core.errors import DataError, PreconditionError

logger = logging.getLogger(__name__)


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def has_header(path: Path) -> bool:
    """A first line with any non-numeric cell is a header."""
    with open(path, encoding="utf-8-sig") as f:
        first = f.readline().strip()
    return bool(first) and not all(_is_number(cell.strip()) for cell in first.split(","))


def read_observations(path: str | Path) -> np.ndarray:
    """Observation matrix from CSV: one observation per row, one variable per column."""
    path = Path(path)
    try:
        header = has_header(path)
        frame = pd.read_csv(
            path,
            header=0 if header else None,
            dtype=str,
            skip_blank_lines=True,
            encoding="utf-8-sig",
        )
    except (OSError, UnicodeDecodeError, pd.errors.ParserError) as e:
        raise DataError(f"Cannot read {path}: {e}")
    except pd.errors.EmptyDataError:
        raise DataError(f"{path} contains no data")

    numeric = frame.apply(lambda col: pd.to_numeric(col.str.strip(), errors="coerce"))
    bad = numeric.isna().to_numpy()
    if bad.any():
        row, col = (int(i) for i in np.argwhere(bad)[0])
        line = row + (2 if header else 1)
        raise DataError(
            f"{path}: non-numeric cell {frame.iat[row, col]!r} at line {line}, column {col + 1}"
            f" ({int(bad.sum())} bad cells in total)"
        )
    X = numeric.to_numpy(dtype=float)
    if X.shape[0] < 2:
        raise PreconditionError(
            f"{path}: need at least n >= 2 observations (rows), got {X.shape[0]}"
        )
    logger.debug(f"Read {X.shape[0]} observations of dimension {X.shape[1]} from {path}")
    return X
