"""Tracy-Widom law of order 1 (largest eigenvalue of real white Wishart matrices).

The distribution function is tabulated on a grid of abscissae and read back through a
monotone piecewise-cubic interpolant. Knots come either from a two-column text file
("s F1(s)", '#' comments) or from the Fredholm determinant

    F1(s) = det(I - A_s) on L2(0, inf),   A_s(x, y) = Ai(x + y + s),

discretized by Gauss-Legendre quadrature.
"""

import logging
from dataclasses import dataclass
from functools import cache, cached_property
from pathlib import Path

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq
from scipy.special import airy

from core.errors import TableRangeError, UsageError
from core.settings import settings

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"
REFERENCE_PATH = DATA_DIR / "tw1_reference.txt"

S_GRID = np.round(np.linspace(-6.0, 5.0, 111), 10)
GAMMA_MAX = 0.5
# Upper truncation point of the integral operator, in units of the Airy argument.
AIRY_CUTOFF = 12.0


def tw1_fredholm_cdf(s: float, nodes: int = 80) -> float:
    """F1(s) by Nystrom discretization of the Fredholm determinant."""
    length = max(AIRY_CUTOFF - s, 6.0)
    x, w = leggauss(nodes)
    x = 0.5 * length * (x + 1.0)
    root_w = np.sqrt(0.5 * length * w)
    kernel = airy(x[:, None] + x[None, :] + s)[0]
    matrix = np.eye(nodes) - root_w[:, None] * kernel * root_w[None, :]
    return float(np.clip(np.linalg.det(matrix), 0.0, 1.0))


@dataclass(frozen=True)
class TW1Table:
    s: np.ndarray
    cdf: np.ndarray

    def __post_init__(self) -> None:
        if self.s.shape != self.cdf.shape or self.s.ndim != 1 or self.s.size < 4:
            raise ValueError("Table needs matching one-dimensional columns with >= 4 knots")
        if np.any(np.diff(self.s) <= 0) or np.any(np.diff(self.cdf) <= 0):
            raise ValueError("Table abscissae and probabilities must be strictly increasing")
        if self.cdf[0] > 0.005 or self.cdf[-1] < 0.999:
            raise ValueError(
                f"Table covers probabilities [{self.cdf[0]:.4g}, {self.cdf[-1]:.4g}],"
                " needs at least [0.005, 0.999]"
            )

    @classmethod
    def build(cls, s_grid: np.ndarray = S_GRID, nodes: int = 80) -> "TW1Table":
        values = np.array([tw1_fredholm_cdf(float(s), nodes) for s in s_grid])
        keep = np.concatenate([[True], np.diff(values) > 0])
        if not keep.all():
            logger.warning(f"Dropping {int((~keep).sum())} non-increasing TW1 knots")
        return cls(s=np.asarray(s_grid, dtype=float)[keep], cdf=values[keep])

    @classmethod
    def from_file(cls, path: str | Path) -> "TW1Table":
        data = np.loadtxt(path, comments="#", ndmin=2)
        if data.shape[1] < 2:
            raise ValueError(f"Expected two columns (s, F1(s)), got {data.shape[1]}")
        return cls(s=data[:, 0].copy(), cdf=data[:, 1].copy())

    def write(self, path: str | Path, provenance: str = "") -> None:
        header = "s F1(s)\nTracy-Widom order 1 distribution function"
        if provenance:
            header += "\n" + provenance
        np.savetxt(path, np.column_stack([self.s, self.cdf]), fmt="%.6f %.12e", header=header)

    @cached_property
    def _interp(self) -> PchipInterpolator:
        return PchipInterpolator(self.s, self.cdf, extrapolate=False)

    def cdf_at(self, s: float) -> float:
        """Interpolated F1(s), saturating at the end knots outside the table."""
        if s <= self.s[0]:
            return float(self.cdf[0])
        if s >= self.s[-1]:
            return float(self.cdf[-1])
        return float(np.clip(self._interp(s), self.cdf[0], self.cdf[-1]))

    def quantile(self, gamma: float) -> float:
        """s(gamma) with F1(s) = 1 - gamma."""
        target = 1.0 - gamma
        if not 0.0 < gamma <= GAMMA_MAX or not self.cdf[0] < target < self.cdf[-1]:
            raise TableRangeError(
                f"gamma={gamma} outside table coverage"
                f" ({1.0 - self.cdf[-1]:.3g}, {GAMMA_MAX}]"
            )
        return float(
            brentq(lambda x: float(self._interp(x)) - target, self.s[0], self.s[-1], xtol=1e-12)
        )


@cache
def get_tw1_table() -> TW1Table:
    if settings.TW_TABLE_PATH is not None:
        logger.debug(f"Loading TW1 table from {settings.TW_TABLE_PATH}")
        try:
            return TW1Table.from_file(settings.TW_TABLE_PATH)
        except (OSError, ValueError) as e:
            raise UsageError(f"TW_TABLE_PATH={settings.TW_TABLE_PATH} is not a TW1 table: {e}")
    logger.debug(f"Building TW1 table with {settings.TW_QUADRATURE_NODES} quadrature nodes")
    return TW1Table.build(nodes=settings.TW_QUADRATURE_NODES)


@cache
def tw1_quantile(gamma: float) -> float:
    return get_tw1_table().quantile(gamma)


def tw1_cdf(s: float) -> float:
    return get_tw1_table().cdf_at(s)


def load_reference_percentiles(path: str | Path = REFERENCE_PATH) -> np.ndarray:
    """Published (s, F1(s)) percentile pairs used to check the computed table."""
    return np.loadtxt(path, comments="#", ndmin=2)
