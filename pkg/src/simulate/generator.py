import logging

import numpy as np

from core.errors import PreconditionError
from schema import GeneratorSettings, NoiseLaw, SpikeSpec
from simulate.eigen import EigenSpectrum, sample_cov_eigs, top_eigenvalues

logger = logging.getLogger(__name__)

# Seed streams. A replication seed is derived from (master_seed, stream, point, replication)
# so that it does not depend on execution order or on the number of workers.
REPLICATION_STREAM = 0
CALIBRATION_STREAM = 1
PROBE_STREAM = 2


def replication_seed(master_seed: int, *keys: int) -> int:
    """64-bit seed for the work unit identified by `keys` under `master_seed`."""
    sequence = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(keys))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def _noise(rng: np.random.Generator, law: NoiseLaw, size: tuple[int, int]) -> np.ndarray:
    match law:
        case NoiseLaw.GAUSSIAN:
            return rng.standard_normal(size)
        case NoiseLaw.SYMMETRIC_SUBEXPONENTIAL:
            # Laplace with scale 1/sqrt(2) has unit variance.
            return rng.laplace(0.0, 1.0 / np.sqrt(2.0), size)
        case _:
            raise ValueError(f"Unknown noise law: {law}")


def random_orthogonal(rng: np.random.Generator, p: int) -> np.ndarray:
    """Haar-distributed orthogonal matrix (QR of a Gaussian matrix with sign correction)."""
    q, r = np.linalg.qr(rng.standard_normal((p, p)))
    return q * np.sign(np.diag(r))


def generate_observations(spec: SpikeSpec, n: int, settings: GeneratorSettings) -> np.ndarray:
    """n i.i.d. rows x = A f + sigma * noise with population covariance of `spec`.

    Factors are standard normal and sit on the first q0 canonical coordinates with loadings
    sqrt(alpha_k); with `rotate_basis` every row is mapped through a random orthogonal W.
    """
    if n < 2:
        raise PreconditionError(f"Need at least n >= 2 observations, got n={n}")
    rng = np.random.default_rng(settings.seed)
    X = np.sqrt(spec.sigma2) * _noise(rng, settings.noise_law, (n, spec.p))
    if spec.q0:
        loadings = np.sqrt(np.repeat(spec.strengths, [s.multiplicity for s in spec.spikes]))
        X[:, : spec.q0] += rng.standard_normal((n, spec.q0)) * loadings
    if settings.rotate_basis:
        X = X @ random_orthogonal(rng, spec.p).T
    return X


def white_observations(p: int, n: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).standard_normal((n, p))


def white_spectrum(p: int, n: int, seed: int) -> EigenSpectrum:
    return sample_cov_eigs(white_observations(p, n, seed))


def wishart_top_gap(p: int, n: int, seed: int) -> float:
    """lambda_1 - lambda_2 of one white sample covariance draw with sigma2 = 1."""
    if p < 2 or n < 2:
        raise PreconditionError(f"Need p, n >= 2, got (p, n) = ({p}, {n})")
    top = top_eigenvalues(white_observations(p, n, seed), k=2)
    return float(max(top[0] - top[1], 0.0))
