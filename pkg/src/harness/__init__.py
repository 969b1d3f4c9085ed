from harness.calibrate import Calibration, calibrate_C, spacing_quantile, threshold_scale
from harness.experiment import ExperimentRunner, run_experiment, sweep_alpha
from harness.pipeline import estimate_file, estimate_observations, resolve_settings
from harness.probe import rate_scaling_probe
from harness.utils import loglog_slope, map_ordered

__all__ = [
    "Calibration",
    "ExperimentRunner",
    "calibrate_C",
    "estimate_file",
    "estimate_observations",
    "loglog_slope",
    "map_ordered",
    "rate_scaling_probe",
    "resolve_settings",
    "run_experiment",
    "spacing_quantile",
    "sweep_alpha",
    "threshold_scale",
]
