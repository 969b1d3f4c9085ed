from estimators.estimators import (
    DEFAULT_ESTIMATOR,
    Estimator,
    get_all_estimator_info,
    get_estimator,
    run_estimator,
)
from estimators.kn_test import kn_estimate, kn_threshold
from estimators.noise import Sigma2Fit, sigma2_corrected, sigma2_mle, solve_sigma2_corrected
from estimators.py_gap import default_s_max, gap_threshold, py_estimate, scan_gaps

__all__ = [
    "DEFAULT_ESTIMATOR",
    "Estimator",
    "Sigma2Fit",
    "default_s_max",
    "gap_threshold",
    "get_all_estimator_info",
    "get_estimator",
    "kn_estimate",
    "kn_threshold",
    "py_estimate",
    "run_estimator",
    "scan_gaps",
    "sigma2_corrected",
    "sigma2_mle",
    "solve_sigma2_corrected",
]
