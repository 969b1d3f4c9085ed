import numpy as np
import pytest

from core.errors import PreconditionError
from harness import run_experiment
from schema import ExperimentConfig, GeneratorSettings, NoiseLaw, SpikeSpec
from simulate import (
    CALIBRATION_STREAM,
    REPLICATION_STREAM,
    generate_observations,
    replication_seed,
    sample_cov_eigs,
    white_spectrum,
    wishart_top_gap,
)


def test_replication_seed_is_deterministic():
    seed = replication_seed(42, REPLICATION_STREAM, 3, 7)
    assert seed == replication_seed(42, REPLICATION_STREAM, 3, 7)
    assert 0 <= seed < 2**64
    others = {
        replication_seed(42, REPLICATION_STREAM, 3, 8),
        replication_seed(42, REPLICATION_STREAM, 4, 7),
        replication_seed(42, CALIBRATION_STREAM, 3, 7),
        replication_seed(43, REPLICATION_STREAM, 3, 7),
    }
    assert seed not in others
    assert len(others) == 4


def test_generate_observations_is_reproducible():
    spec = SpikeSpec.from_strengths([10.0, 5.0], p=20)
    settings = GeneratorSettings(seed=99)
    X = generate_observations(spec, 50, settings)
    assert X.shape == (50, 20)
    np.testing.assert_array_equal(X, generate_observations(spec, 50, settings))
    assert not np.array_equal(X, generate_observations(spec, 50, GeneratorSettings(seed=100)))


@pytest.mark.parametrize("law", list(NoiseLaw))
@pytest.mark.parametrize("rotate_basis", [False, True])
def test_population_covariance(law, rotate_basis):
    spec = SpikeSpec.from_strengths([10.0, 5.0], sigma2=2.0, p=8)
    settings = GeneratorSettings(seed=5, noise_law=law, rotate_basis=rotate_basis)
    X = generate_observations(spec, 40000, settings)
    sample = np.linalg.eigvalsh(X.T @ X / X.shape[0])[::-1]
    np.testing.assert_allclose(sample, spec.population_eigenvalues(), rtol=0.06)


def test_spike_lifts_sample_eigenvalue():
    spec = SpikeSpec.from_strengths([10.0], p=100)
    eigs = sample_cov_eigs(generate_observations(spec, 400, GeneratorSettings(seed=1)))
    # phi(11, 1/4) = 11.275, far above the bulk edge 2.25
    assert eigs.values[0] == pytest.approx(11.275, rel=0.25)
    assert eigs.values[1] < 2.6


def test_generate_observations_needs_two_rows():
    spec = SpikeSpec.from_strengths([], p=5)
    with pytest.raises(PreconditionError, match="n >= 2"):
        generate_observations(spec, 1, GeneratorSettings(seed=0))


def test_white_helpers():
    eigs = white_spectrum(50, 100, seed=3)
    assert (eigs.p, eigs.n) == (50, 100)
    gap = wishart_top_gap(50, 100, seed=3)
    assert gap == pytest.approx(eigs.values[0] - eigs.values[1], rel=1e-9)
    with pytest.raises(PreconditionError):
        wishart_top_gap(1, 100, seed=3)


def test_white_top_eigenvalue_sits_at_bulk_edge():
    # bulk edge (1 + sqrt(p / n))^2 = 4 at p = n
    top = [white_spectrum(200, 200, seed).values[0] for seed in range(100)]
    assert 3.6 < np.median(top) < 4.2


def test_rates_are_invariant_under_basis_rotation():
    fields = dict(strengths=[2.0], grid=[[100, 100]], estimators=["py", "kn"], C=5.0, reps=200)
    plain = run_experiment(ExperimentConfig(**fields, master_seed=31), workers=1)
    rotated = run_experiment(
        ExperimentConfig(**fields, master_seed=32, rotate_basis=True), workers=1
    )
    for a, b in zip(plain.rows, rotated.rows, strict=True):
        assert a.estimator == b.estimator
        bound = 3.0 * np.hypot(a.misest_se, b.misest_se)
        assert abs(a.misest - b.misest) <= max(bound, 1.0 / a.reps)
