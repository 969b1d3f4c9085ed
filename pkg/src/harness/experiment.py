import logging
import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from pydantic import ValidationError

from core.errors import FactorCountError, NumericalError, UsageError
from core.settings import settings
from estimators import run_estimator
from estimators.py_gap import MIN_SAMPLE_SIZE
from harness.calibrate import MIN_DIMENSION, calibrate_C
from harness.utils import map_ordered
from schema import (
    EstimatorName,
    EstimatorSettings,
    ExperimentConfig,
    GeneratorSettings,
    GridPoint,
    KNSettings,
    PYSettings,
    RateReport,
    RateRow,
    Sigma2Mode,
    SpikeSpec,
)
from simulate import (
    CALIBRATION_STREAM,
    REPLICATION_STREAM,
    generate_observations,
    replication_seed,
    sample_cov_eigs,
)

logger = logging.getLogger(__name__)


class Outcome(NamedTuple):
    q_hat: int | None
    sigma2: float | None


@dataclass(frozen=True)
class ReplicationTask:
    spec: SpikeSpec
    n: int
    generator: GeneratorSettings
    estimators: tuple[tuple[EstimatorName, EstimatorSettings], ...]


def run_replication(task: ReplicationTask) -> list[Outcome]:
    """generate -> eigenvalues -> every estimator. Estimator failures are recorded, not raised."""
    eigs = sample_cov_eigs(generate_observations(task.spec, task.n, task.generator))
    outcomes = []
    for name, est_settings in task.estimators:
        try:
            result = run_estimator(name, eigs, est_settings)
        except FactorCountError as e:
            logger.debug(f"Replication seed {task.generator.seed}: {name} failed: {e}")
            outcomes.append(Outcome(None, None))
        else:
            outcomes.append(Outcome(result.q_hat, result.sigma2_used))
    return outcomes


def estimator_settings(
    config: ExperimentConfig, name: EstimatorName, C: float | None
) -> EstimatorSettings:
    sigma2 = config.sigma2 if config.sigma2_mode == Sigma2Mode.KNOWN else None
    match name:
        case EstimatorName.PY:
            assert C is not None
            return PYSettings(
                C=C, s_max=config.s_max, two_gap_rule=config.two_gap_rule, sigma2=sigma2
            )
        case EstimatorName.KN:
            return KNSettings(gamma=config.gamma, sigma2=sigma2)
        case _:
            raise UsageError(f"Unknown estimator: {name}")


class ExperimentRunner:
    """Runs every (alpha, grid point) of a config; auto-calibrated constants are shared."""

    def __init__(self, config: ExperimentConfig, workers: int | None = None) -> None:
        self.config = config
        self.workers = workers or settings.WORKERS
        self._calibrated: dict[int, float] = {}

    def _spike_spec(self, point: GridPoint, alpha: float | None) -> SpikeSpec:
        try:
            return self.config.spike_spec(point, alpha)
        except ValidationError as e:
            raise UsageError(
                f"Model {self.config.name} is inconsistent with (p, n) = "
                f"({point.p}, {point.n}): {e.errors()[0]['msg']}"
            )

    def _tuning_constant(self, grid_index: int, point: GridPoint) -> float | None:
        if EstimatorName.PY not in self.config.estimators:
            return None
        if point.n < MIN_SAMPLE_SIZE or point.p < 4:
            raise UsageError(f"PY needs n >= {MIN_SAMPLE_SIZE} and p >= 4, got {point}")
        if self.config.C != "auto":
            return float(self.config.C)
        if point.p < MIN_DIMENSION:
            raise UsageError(
                f"PY with automatic C needs p, n >= {MIN_DIMENSION}, got {point};"
                " pass an explicit C"
            )
        if grid_index not in self._calibrated:
            seed = replication_seed(self.config.master_seed, CALIBRATION_STREAM, grid_index)
            calibration = calibrate_C(
                point.p, point.n, self.config.calibration_reps, seed, self.workers
            )
            self._calibrated[grid_index] = calibration.C_tilde
        return self._calibrated[grid_index]

    def run_point(
        self, point_index: int, grid_index: int, point: GridPoint, alpha: float | None
    ) -> list[RateRow]:
        config = self.config
        spec = self._spike_spec(point, alpha)
        C = self._tuning_constant(grid_index, point)
        estimators = tuple(
            (name, estimator_settings(config, name, C)) for name in config.estimators
        )
        tasks = [
            ReplicationTask(
                spec=spec,
                n=point.n,
                generator=GeneratorSettings(
                    seed=replication_seed(config.master_seed, REPLICATION_STREAM, point_index, r),
                    noise_law=config.noise_law,
                    rotate_basis=config.rotate_basis,
                ),
                estimators=estimators,
            )
            for r in range(config.reps)
        ]
        start = time.perf_counter()
        outcomes = map_ordered(run_replication, tasks, self.workers)
        seconds = time.perf_counter() - start

        rows = []
        for i, name in enumerate(config.estimators):
            valid = [o[i] for o in outcomes if o[i].q_hat is not None]
            if not valid:
                raise NumericalError(f"Every replication of {name} failed at {point}")
            over = sum(1 for o in valid if o.q_hat > spec.q0)  # type: ignore[operator]
            under = sum(1 for o in valid if o.q_hat < spec.q0)  # type: ignore[operator]
            row = RateRow.from_counts(
                over=over,
                under=under,
                valid=len(valid),
                model=config.name,
                estimator=name,
                p=point.p,
                n=point.n,
                c=point.c,
                C=C if name == EstimatorName.PY else None,
                gamma=config.gamma if name == EstimatorName.KN else None,
                sigma2_mode=config.sigma2_mode,
                reps=config.reps,
                mean_sigma2=float(np.mean([o.sigma2 for o in valid])),
                seconds=seconds,
                alpha=alpha,
                failures=config.reps - len(valid),
            )
            logger.info(
                f"{config.name} {name.value} (p, n) = ({point.p}, {point.n})"
                + (f" alpha={alpha}" if alpha is not None else "")
                + f": misest={row.misest:.3f} over={row.overest:.3f}"
                f" under={row.underest:.3f} [{seconds:.1f}s]"
            )
            rows.append(row)
        return rows

    def run(self) -> RateReport:
        report = RateReport(name=self.config.name, master_seed=self.config.master_seed)
        alphas: list[float | None] = list(self.config.alphas) or [None]
        point_index = 0
        for alpha in alphas:
            for grid_index, point in enumerate(self.config.grid):
                report.rows.extend(self.run_point(point_index, grid_index, point, alpha))
                point_index += 1
        return report


def run_experiment(config: ExperimentConfig, workers: int | None = None) -> RateReport:
    return ExperimentRunner(config, workers).run()


def sweep_alpha(config: ExperimentConfig, workers: int | None = None) -> RateReport:
    """Rates along the factor-strength sweep of a template containing 'alpha'."""
    if not config.is_sweep:
        raise UsageError(f"Model {config.name} has no 'alpha' strength to sweep")
    return run_experiment(config, workers)
