from simulate.eigen import EigenSpectrum, sample_cov_eigs, top_eigenvalues
from simulate.generator import (
    CALIBRATION_STREAM,
    PROBE_STREAM,
    REPLICATION_STREAM,
    generate_observations,
    replication_seed,
    white_spectrum,
    wishart_top_gap,
)
from simulate.io import read_observations

__all__ = [
    "CALIBRATION_STREAM",
    "PROBE_STREAM",
    "REPLICATION_STREAM",
    "EigenSpectrum",
    "generate_observations",
    "read_observations",
    "replication_seed",
    "sample_cov_eigs",
    "top_eigenvalues",
    "white_spectrum",
    "wishart_top_gap",
]
