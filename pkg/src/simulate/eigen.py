from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.linalg import LinAlgError, eigh

from core.errors import DataError, NumericalError, PreconditionError
from schema import AspectRatio


@dataclass(frozen=True)
class EigenSpectrum:
    """Descending sample covariance eigenvalues of n observations in dimension p."""

    values: np.ndarray
    p: int
    n: int

    def __post_init__(self) -> None:
        if self.values.ndim != 1 or self.values.size != self.p:
            raise PreconditionError(f"Expected {self.p} eigenvalues, got {self.values.size}")
        if self.n < 1:
            raise PreconditionError("Sample size n must be positive")
        if np.any(np.diff(self.values) > 0):
            raise PreconditionError("Eigenvalues must be sorted in non-increasing order")
        if self.values.size and self.values[-1] < 0:
            raise PreconditionError("Eigenvalues must be non-negative")
        self.values.setflags(write=False)

    @classmethod
    def from_values(cls, values: np.ndarray | list[float], n: int) -> "EigenSpectrum":
        """Sort descending, clip rounding negatives to zero."""
        arr = np.sort(np.clip(np.asarray(values, dtype=float), 0.0, None))[::-1].copy()
        return cls(values=arr, p=arr.size, n=n)

    @property
    def aspect(self) -> AspectRatio:
        return AspectRatio(p=self.p, n=self.n)

    @property
    def c(self) -> float:
        return self.aspect.c

    def gaps(self) -> np.ndarray:
        """delta_j = lambda_j - lambda_{j+1}, j = 1, ..., p - 1 (index 0 holds delta_1)."""
        return self.values[:-1] - self.values[1:]

    def scaled(self, factor: float) -> "EigenSpectrum":
        return EigenSpectrum(values=self.values * factor, p=self.p, n=self.n)


def _gram_eigvalsh(gram: np.ndarray, **kwargs: Any) -> np.ndarray:
    try:
        return eigh(gram, eigvals_only=True, check_finite=False, **kwargs)
    except LinAlgError as e:
        m = gram.shape[0]
        raise NumericalError(f"Eigendecomposition of the {m}x{m} Gram matrix failed: {e}")


def sample_cov_eigs(X: np.ndarray) -> EigenSpectrum:
    """Eigenvalues of S = X^T X / n for an (n, p) observation matrix.

    The smaller of the two Gram matrices is decomposed; when p > n the spectrum is completed
    with p - n exact zeros.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise PreconditionError(f"Observation matrix must be 2-D and non-empty, got {X.shape}")
    if not np.all(np.isfinite(X)):
        raise DataError("Observation matrix contains non-finite entries")
    n, p = X.shape
    gram = (X @ X.T if p > n else X.T @ X) / n
    values = _gram_eigvalsh(gram)
    values = np.clip(values[::-1], 0.0, None)
    if p > n:
        values = np.concatenate([values, np.zeros(p - n)])
    return EigenSpectrum(values=values, p=p, n=n)


def top_eigenvalues(X: np.ndarray, k: int = 2) -> np.ndarray:
    """Largest k sample covariance eigenvalues, descending, without the full decomposition."""
    n, p = X.shape
    gram = (X @ X.T if p > n else X.T @ X) / n
    m = gram.shape[0]
    k = min(k, m)
    values = _gram_eigvalsh(gram, subset_by_index=[m - k, m - 1])
    return values[::-1]
