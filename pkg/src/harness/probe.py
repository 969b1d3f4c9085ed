"""Empirical convergence rates of sample eigenvalue gaps as n grows at fixed c."""

import logging

import numpy as np

from core.errors import UsageError
from core.settings import settings
from harness.utils import loglog_slope, map_ordered
from rmt.spectra import spike_limit
from schema import GeneratorSettings, ScalingPoint, ScalingReport, SpikeSpec
from simulate import PROBE_STREAM, generate_observations, replication_seed, top_eigenvalues

logger = logging.getLogger(__name__)

MIN_GRID_POINTS = 4
MIN_GRID_SPAN = 8.0


def _check_grid(n_grid: list[int]) -> None:
    if len(n_grid) < MIN_GRID_POINTS:
        raise UsageError(f"Probe needs at least {MIN_GRID_POINTS} sample sizes, got {n_grid}")
    if min(n_grid) < 2 or max(n_grid) / min(n_grid) < MIN_GRID_SPAN:
        raise UsageError(f"Probe sample sizes must span a factor of {MIN_GRID_SPAN:g}: {n_grid}")


def _gap_indices(spec: SpikeSpec) -> tuple[int, int | None, int | None]:
    """Positions in the gap vector of the noise, equal-group and distinct-group gaps."""
    equal = None
    start = 0
    for spike in spec.spikes:
        if spike.multiplicity > 1:
            equal = start
            break
        start += spike.multiplicity
    distinct = spec.spikes[0].multiplicity - 1 if spec.K >= 2 else None
    return spec.q0, equal, distinct


def rate_scaling_probe(
    strengths: list[float],
    c: float,
    n_grid: list[int],
    reps: int,
    sigma2: float = 1.0,
    master_seed: int | None = None,
    workers: int | None = None,
) -> ScalingReport:
    _check_grid(n_grid)
    if reps < 1:
        raise UsageError(f"Probe needs reps >= 1, got {reps}")
    master_seed = settings.DEFAULT_SEED if master_seed is None else master_seed
    workers = workers or settings.WORKERS

    points = []
    for i, n in enumerate(sorted(n_grid)):
        p = max(round(c * n), 2)
        try:
            spec = SpikeSpec.from_strengths(strengths, sigma2, p=p)
        except ValueError as e:
            raise UsageError(f"Invalid probe model at n={n}: {e}")
        noise, equal, distinct = _gap_indices(spec)

        def top_gaps(r: int) -> np.ndarray:
            generator = GeneratorSettings(seed=replication_seed(master_seed, PROBE_STREAM, i, r))
            top = top_eigenvalues(generate_observations(spec, n, generator), k=spec.q0 + 2)
            return top[:-1] - top[1:]

        gaps = np.array(map_ordered(top_gaps, range(reps), workers)) / sigma2
        median = np.median(gaps, axis=0)
        point = ScalingPoint(
            n=n,
            p=p,
            noise_gap=float(median[noise]),
            equal_gap=None if equal is None else float(median[equal]),
            distinct_gap=None if distinct is None else float(median[distinct]),
        )
        logger.info(f"Probe n={n}: {point.model_dump(exclude={'n'}, exclude_none=True)}")
        points.append(point)

    distinct_limit = None
    if spec.K >= 2:
        first, second = spec.normalized[:2]
        distinct_limit = abs(spike_limit(first, c) - spike_limit(second, c))
    return ScalingReport(
        c=c,
        reps=reps,
        points=points,
        noise_slope=loglog_slope([pt.n for pt in points], [pt.noise_gap for pt in points]),
        equal_slope=(
            loglog_slope([pt.n for pt in points], [pt.equal_gap or 0.0 for pt in points])
            if points[0].equal_gap is not None
            else None
        ),
        distinct_limit=distinct_limit,
    )
