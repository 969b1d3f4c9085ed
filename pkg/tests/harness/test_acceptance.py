"""Monte Carlo checks at the replication counts of the reference experiments.

Run with `pytest --run-slow`; several take minutes.
"""

import numpy as np
import pytest

from harness import calibrate_C, rate_scaling_probe, run_experiment, sweep_alpha
from rmt import phi
from schema import EstimatorName, ExperimentConfig

pytestmark = pytest.mark.slow


@pytest.mark.parametrize(
    "p, n, s_hat, s_tol",
    [(200, 200, 0.340, 0.04), (600, 600, 0.170, 0.02), (2000, 200, 0.593, 0.06)],
)
def test_calibration_matches_reference(p, n, s_hat, s_tol):
    calibration = calibrate_C(p, n, reps=500)
    assert calibration.s_hat == pytest.approx(s_hat, abs=s_tol)
    if (p, n) == (200, 200):
        assert calibration.C_tilde == pytest.approx(6.37, abs=0.8)


def test_calibration_is_stable_across_seeds():
    values = [calibrate_C(200, 200, reps=500, seed=seed).s_hat for seed in range(20)]
    q1, q3 = np.percentile(values, [25, 75])
    assert q3 - q1 <= 0.05


def test_calibration_varies_slowly_with_n():
    small = calibrate_C(200, 200, reps=500).C_tilde
    large = calibrate_C(600, 600, reps=500).C_tilde
    assert abs(large - small) <= 1.0


@pytest.mark.parametrize(
    "grid, C, expected, tol",
    [([[300, 300]], 5.0, 0.098, 0.05), ([[3000, 300]], 11.0, 0.040, 0.03)],
)
def test_py_false_alarm(grid, C, expected, tol):
    report = run_experiment(ExperimentConfig(preset="K", grid=grid, C=C, reps=500))
    assert report.rows[0].overest == pytest.approx(expected, abs=tol)


def test_py_false_alarm_drops_with_larger_C():
    loose = run_experiment(ExperimentConfig(preset="K", grid=[[300, 300]], C=5.0, reps=500))
    strict = run_experiment(ExperimentConfig(preset="K", grid=[[300, 300]], C=8.0, reps=500))
    assert strict.rows[0].overest < loose.rows[0].overest


@pytest.mark.parametrize(
    "preset, grid, C, expected",
    [("B", [[3000, 300]], 11.0, 0.024), ("J", [[300, 300]], 5.0, 0.026)],
)
def test_py_overestimation(preset, grid, C, expected):
    report = run_experiment(ExperimentConfig(preset=preset, grid=grid, C=C, reps=500))
    assert report.rows[0].overest == pytest.approx(expected, abs=0.02)


def test_kn_false_alarm():
    config = ExperimentConfig(
        preset="K", grid=[[300, 300], [3000, 300]], estimators=["kn"], reps=500
    )
    for row in run_experiment(config).rows:
        assert row.overest <= 0.02


def test_consistency_trend():
    model_b = run_experiment(ExperimentConfig(preset="B", reps=500))
    rates = {row.n: row.misest for row in model_b.rows}
    assert rates[700] <= rates[150]
    assert rates[700] <= 0.05

    model_h = run_experiment(ExperimentConfig(preset="H", reps=500))
    rates_h = {row.n: row.misest for row in model_h.rows}
    assert rates_h[700] <= rates_h[150]
    assert rates_h[150] > rates[150]


def test_detectability_transition():
    config = ExperimentConfig(preset="S4", reps=500)
    report = sweep_alpha(config)
    # alpha = 0 has no factor, so its row is a false-alarm rate.
    crossing = [row.alpha for row in report.rows if row.alpha > 0 and row.misest < 0.5]
    assert crossing
    assert 1.2 <= min(crossing) <= 3.2


def test_single_factor_sweep_endpoints():
    config = ExperimentConfig(preset="S025", alphas=[0.05, 2.0], reps=500)
    low, high = sweep_alpha(config).rows
    assert low.misest >= 0.9
    assert high.misest <= 0.1


def test_model_f_template_runs():
    config = ExperimentConfig(preset="F", alphas=[8.0], reps=20)
    assert config.spike_spec(config.grid[0], 8.0).q0 == 3
    assert len(sweep_alpha(config).rows) == 1


def test_gap_rates():
    n_grid = [200, 400, 800, 1600, 3200]
    white = rate_scaling_probe([], 1.0, n_grid, reps=200)
    assert -0.85 <= white.noise_slope <= -0.55

    equal = rate_scaling_probe([5.0, 5.0], 1.0, n_grid, reps=200)
    assert -0.65 <= equal.equal_slope <= -0.35


def test_distinct_gap_limit():
    report = rate_scaling_probe([10.0, 5.0], 1.0, [200, 400, 800, 1600], reps=200)
    limit = phi(11.0, 1.0) - phi(6.0, 1.0)
    assert report.distinct_limit == pytest.approx(limit)
    assert report.points[-1].distinct_gap == pytest.approx(limit, rel=0.05)


def test_model_a_report_is_independent_of_worker_count():
    config = ExperimentConfig(preset="A", reps=100, estimators=[EstimatorName.PY])
    serial = run_experiment(config, workers=1).to_csv(include_timing=False)
    for workers in [4, 16]:
        assert run_experiment(config, workers=workers).to_csv(include_timing=False) == serial
