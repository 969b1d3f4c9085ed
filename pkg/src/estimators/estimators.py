from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

from core.errors import UsageError
from estimators.kn_test import kn_estimate
from estimators.py_gap import py_estimate
from schema import EstimateResult, EstimatorInfo, EstimatorName, KNSettings, PYSettings
from simulate.eigen import EigenSpectrum

DEFAULT_ESTIMATOR = EstimatorName.PY


@dataclass
class Estimator:
    description: str
    settings_type: type[PYSettings] | type[KNSettings]
    run: Callable[[EigenSpectrum, Any], EstimateResult]


estimators: dict[EstimatorName, Estimator] = {
    EstimatorName.PY: Estimator(
        description="Eigenvalue-gap threshold estimator (stops at two consecutive small gaps).",
        settings_type=PYSettings,
        run=py_estimate,
    ),
    EstimatorName.KN: Estimator(
        description="Sequential Tracy-Widom tests on the largest remaining eigenvalue.",
        settings_type=KNSettings,
        run=kn_estimate,
    ),
}


def get_estimator(name: EstimatorName | str) -> Estimator:
    try:
        return estimators[EstimatorName(name)]
    except ValueError:
        raise UsageError(f"Unknown estimator: {name}")


def get_all_estimator_info() -> list[EstimatorInfo]:
    return [EstimatorInfo(key=key, description=e.description) for key, e in estimators.items()]


def run_estimator(
    name: EstimatorName | str, eigs: EigenSpectrum, settings: PYSettings | KNSettings
) -> EstimateResult:
    estimator = get_estimator(name)
    if not isinstance(settings, estimator.settings_type):
        raise UsageError(
            f"Estimator {name} expects {estimator.settings_type.__name__},"
            f" got {type(settings).__name__}"
        )
    return estimator.run(eigs, settings)
