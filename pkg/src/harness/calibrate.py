"""Automatic choice of the PY tuning constant from white Wishart top spacings."""

import logging
import math
from typing import NamedTuple

import numpy as np

from core.errors import UsageError
from core.settings import settings
from harness.utils import map_ordered
from simulate.generator import CALIBRATION_STREAM, replication_seed, wishart_top_gap

logger = logging.getLogger(__name__)

MIN_CALIBRATION_REPS = 100
MIN_DIMENSION = 16
# Upper tail probability of the spacing quantile, in percent.
TAIL_PERCENT = 2


class Calibration(NamedTuple):
    s_hat: float
    C_tilde: float


def threshold_scale(n: int) -> float:
    """n^(2/3) / sqrt(2 log log n), the factor turning a gap threshold into C."""
    return n ** (2.0 / 3.0) / math.sqrt(2.0 * math.log(math.log(n)))


def spacing_quantile(gaps: np.ndarray) -> float:
    """Mean of the k-th and (k+1)-th largest values, k = ceil(2% of the sample)."""
    ordered = np.sort(gaps)[::-1]
    k = -(-TAIL_PERCENT * ordered.size // 100)
    return float(0.5 * (ordered[k - 1] + ordered[k]))


def calibrate_C(
    p: int,
    n: int,
    reps: int = 500,
    seed: int | None = None,
    workers: int | None = None,
) -> Calibration:
    if reps < MIN_CALIBRATION_REPS:
        raise UsageError(f"Calibration needs reps >= {MIN_CALIBRATION_REPS}, got {reps}")
    if p < MIN_DIMENSION or n < MIN_DIMENSION:
        raise UsageError(f"Calibration needs p, n >= {MIN_DIMENSION}, got ({p}, {n})")
    seed = settings.DEFAULT_SEED if seed is None else seed
    seeds = [replication_seed(seed, CALIBRATION_STREAM, r) for r in range(reps)]
    gaps = map_ordered(lambda s: wishart_top_gap(p, n, s), seeds, workers or settings.WORKERS)
    s_hat = spacing_quantile(np.asarray(gaps))
    C_tilde = s_hat * threshold_scale(n)
    logger.info(f"Calibrated (p, n) = ({p}, {n}): s_hat={s_hat:.4f}, C_tilde={C_tilde:.4f}")
    return Calibration(s_hat=s_hat, C_tilde=C_tilde)
