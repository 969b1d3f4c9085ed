import logging
from typing import NamedTuple

import numpy as np

from core.errors import NumericalError, PreconditionError
from rmt.spectra import bulk_edge, invert_phi
from simulate.eigen import EigenSpectrum

logger = logging.getLogger(__name__)

SIGMA2_RTOL = 1e-10
SIGMA2_MAX_ITER = 200


class Sigma2Fit(NamedTuple):
    value: float
    iterations: int
    converged: bool


def _check_q(eigs: EigenSpectrum, q: int) -> None:
    if not 0 <= q < eigs.p:
        raise PreconditionError(f"Number of factors q={q} must satisfy 0 <= q < p={eigs.p}")


def sigma2_mle(eigs: EigenSpectrum, q: int) -> float:
    """Mean of the p - q smallest eigenvalues (negatively biased when q > 0)."""
    _check_q(eigs, q)
    value = float(np.mean(eigs.values[q:]))
    if value <= 0.0:
        raise NumericalError("Noise level estimate is not positive (degenerate spectrum)")
    return value


def solve_sigma2_corrected(
    eigs: EigenSpectrum,
    q: int,
    c: float | None = None,
    rtol: float = SIGMA2_RTOL,
    max_iter: int = SIGMA2_MAX_ITER,
) -> Sigma2Fit:
    """Bias-corrected noise level by fixed-point iteration on the trace identity.

    The trace of S is matched by the population spikes plus (p - q) noise eigenvalues:
    sigma2 = (sum_i lambda_i - sum_{j<=q} sigma2 * invert_phi(lambda_j / sigma2, c)) / (p - q).
    A top eigenvalue below the current bulk edge is counted as noise instead.
    """
    sigma2 = sigma2_mle(eigs, q)
    if q == 0:
        return Sigma2Fit(sigma2, 0, True)
    c = eigs.c if c is None else c
    total = float(np.sum(eigs.values))
    top = eigs.values[:q]
    for iteration in range(1, max_iter + 1):
        spikes = top[top >= bulk_edge(sigma2, c)]
        population = sum(sigma2 * invert_phi(float(lam) / sigma2, c) for lam in spikes)
        updated = (total - population) / (eigs.p - spikes.size)
        if updated <= 0.0:
            raise NumericalError("Noise level iteration left the positive half-line")
        if abs(updated - sigma2) < rtol * sigma2:
            return Sigma2Fit(updated, iteration, True)
        sigma2 = updated
    return Sigma2Fit(sigma2, max_iter, False)


def sigma2_corrected(eigs: EigenSpectrum, q: int, c: float | None = None) -> float:
    fit = solve_sigma2_corrected(eigs, q, c)
    if not fit.converged:
        logger.warning(
            f"Noise level iteration did not converge in {fit.iterations} steps"
            f" (q={q}), using last iterate {fit.value:.6g}"
        )
    return fit.value
