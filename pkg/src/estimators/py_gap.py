import logging
import math

import numpy as np

from core.errors import PreconditionError
from core.settings import settings as app_settings
from estimators.noise import sigma2_corrected, sigma2_mle
from schema import EstimateResult, EstimatorName, PYSettings
from simulate.eigen import EigenSpectrum

logger = logging.getLogger(__name__)

MIN_SAMPLE_SIZE = 16


def gap_threshold(C: float, n: int) -> float:
    """d_n = C * n^(-2/3) * sqrt(2 log log n)."""
    if n < MIN_SAMPLE_SIZE:
        raise PreconditionError(f"Gap threshold needs n >= {MIN_SAMPLE_SIZE}, got n={n}")
    return C * n ** (-2.0 / 3.0) * math.sqrt(2.0 * math.log(math.log(n)))


def default_s_max(p: int, n: int) -> int:
    return min(app_settings.S_MAX_DEFAULT, p - 3, n - 3)


def scan_gaps(gaps: np.ndarray, d: float, s_max: int, two_gap_rule: bool) -> int | None:
    """Smallest j in {0, ..., s_max} with delta_{j+1} < d (and delta_{j+2} < d)."""
    small = gaps[: s_max + 2] < d
    accepted = small[: s_max + 1]
    if two_gap_rule:
        accepted = accepted & small[1 : s_max + 2]
    hits = np.flatnonzero(accepted)
    return int(hits[0]) if hits.size else None


def py_estimate(eigs: EigenSpectrum, settings: PYSettings) -> EstimateResult:
    p, n = eigs.p, eigs.n
    s_max = settings.s_max if settings.s_max is not None else default_s_max(p, n)
    if s_max < 1 or p < s_max + 3:
        raise PreconditionError(
            f"Spectrum too short: need p >= s_max + 3 with s_max >= 1, got p={p}, s_max={s_max}"
        )
    d = gap_threshold(settings.C, n)

    def scan(sigma2: float) -> tuple[int | None, np.ndarray]:
        gaps = eigs.gaps()[: s_max + 2] / sigma2
        return scan_gaps(gaps, d, s_max, settings.two_gap_rule), gaps

    if settings.sigma2 is not None:
        sigma2 = settings.sigma2
    else:
        # Crude pass with the likelihood estimate at the bound, then the corrected estimate
        # at the first-pass number of factors.
        first, _ = scan(sigma2_mle(eigs, s_max))
        sigma2 = sigma2_corrected(eigs, s_max if first is None else first)
    q_hat, gaps = scan(sigma2)
    saturated = q_hat is None
    if saturated:
        logger.debug(f"PY scan reached s_max={s_max} without two small gaps")
    return EstimateResult(
        estimator=EstimatorName.PY,
        q_hat=s_max if q_hat is None else q_hat,
        gaps=gaps.tolist(),
        threshold_used=d,
        sigma2_used=sigma2,
        saturated=saturated,
        p=p,
        n=n,
    )
