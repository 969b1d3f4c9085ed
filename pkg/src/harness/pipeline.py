import logging
from pathlib import Path
from typing import Any

import numpy as np

from core.errors import UsageError
from core.settings import settings
from estimators import DEFAULT_ESTIMATOR, get_estimator, run_estimator
from harness.calibrate import MIN_DIMENSION, calibrate_C
from schema import EstimateResult, EstimatorName, EstimatorSettings, KNSettings, PYSettings
from simulate import read_observations, replication_seed, sample_cov_eigs
from simulate.generator import CALIBRATION_STREAM

logger = logging.getLogger(__name__)


def resolve_settings(
    name: EstimatorName, p: int, n: int, overrides: dict[str, Any] | None = None
) -> EstimatorSettings:
    """Settings from explicit overrides; a missing PY constant is calibrated at (p, n).

    Keys the estimator does not know are dropped. Without `sigma2` the noise level is estimated.
    """
    settings_type = get_estimator(name).settings_type
    values = {
        k: v
        for k, v in (overrides or {}).items()
        if v is not None and k in settings_type.model_fields
    }
    match name:
        case EstimatorName.PY:
            if "C" not in values:
                if min(p, n) < MIN_DIMENSION:
                    raise UsageError(
                        f"PY with automatic C needs p, n >= {MIN_DIMENSION}, got ({p}, {n});"
                        " pass an explicit C"
                    )
                seed = replication_seed(settings.DEFAULT_SEED, CALIBRATION_STREAM)
                values["C"] = calibrate_C(p, n, settings.CALIBRATION_REPS, seed).C_tilde
            return PYSettings(**values)
        case EstimatorName.KN:
            return KNSettings(**values)
        case _:
            raise UsageError(f"Unknown estimator: {name}")


def estimate_observations(
    X: np.ndarray,
    name: EstimatorName | str = DEFAULT_ESTIMATOR,
    est_settings: EstimatorSettings | None = None,
    overrides: dict[str, Any] | None = None,
) -> EstimateResult:
    eigs = sample_cov_eigs(X)
    get_estimator(name)
    name = EstimatorName(name)
    if est_settings is None:
        est_settings = resolve_settings(name, eigs.p, eigs.n, overrides)
    return run_estimator(name, eigs, est_settings)


def estimate_file(
    path: str | Path,
    name: EstimatorName | str = DEFAULT_ESTIMATOR,
    est_settings: EstimatorSettings | None = None,
    overrides: dict[str, Any] | None = None,
) -> EstimateResult:
    """Read an (n, p) CSV matrix and estimate its number of factors."""
    X = read_observations(path)
    logger.info(f"Estimating factors of {path} with {name} (n={X.shape[0]}, p={X.shape[1]})")
    return estimate_observations(X, name, est_settings, overrides)
