import pytest

from core.errors import UsageError
from harness import rate_scaling_probe
from rmt import phi

N_GRID = [20, 40, 80, 160]


def test_probe_grid_checks():
    with pytest.raises(UsageError, match="at least 4"):
        rate_scaling_probe([], 1.0, [100, 200, 800], reps=5)
    with pytest.raises(UsageError, match="span"):
        rate_scaling_probe([], 1.0, [100, 200, 300, 400], reps=5)
    with pytest.raises(UsageError, match="reps"):
        rate_scaling_probe([], 1.0, N_GRID, reps=0)


def test_probe_white_noise():
    report = rate_scaling_probe([], 1.0, N_GRID, reps=10, master_seed=1)
    assert [pt.n for pt in report.points] == N_GRID
    assert [pt.p for pt in report.points] == N_GRID
    assert all(pt.noise_gap > 0 for pt in report.points)
    assert all(pt.equal_gap is None and pt.distinct_gap is None for pt in report.points)
    assert report.noise_slope < 0
    assert report.equal_slope is None
    assert report.distinct_limit is None


def test_probe_equal_and_distinct_groups():
    report = rate_scaling_probe([10.0, 5.0, 5.0], 0.5, N_GRID, reps=9, master_seed=2)
    assert report.equal_slope is not None
    assert all(pt.distinct_gap > pt.equal_gap for pt in report.points[2:])
    assert report.distinct_limit == pytest.approx(phi(11.0, 0.5) - phi(6.0, 0.5))


def test_probe_is_deterministic():
    first = rate_scaling_probe([5.0, 5.0], 1.0, N_GRID, reps=5, master_seed=3)
    assert rate_scaling_probe([5.0, 5.0], 1.0, N_GRID, reps=5, master_seed=3, workers=4) == first
