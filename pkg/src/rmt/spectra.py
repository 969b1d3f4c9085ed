"""Deterministic limits of spiked sample covariance spectra.

All functions take the aspect ratio c = p/n and work on the sigma2-normalized scale, except
`bulk_edge` which carries the noise level explicitly.
"""

import math

from core.errors import DomainError
from schema import SpikeSpec

# Relative slack below the bulk edge still treated as the edge itself.
EDGE_RTOL = 1e-12


def phi(alpha_prime: float, c: float) -> float:
    """Almost-sure limit of a sample spike eigenvalue: alpha' + c * alpha' / (alpha' - 1)."""
    if alpha_prime == 1.0:
        raise DomainError("phi has a pole at alpha' = 1")
    return alpha_prime + c * alpha_prime / (alpha_prime - 1.0)


def invert_phi(m: float, c: float) -> float:
    """Inverse of `phi` on the branch alpha' >= 1 + sqrt(c).

    Larger root of alpha'^2 + (c - 1 - m) alpha' + m = 0. The discriminant is evaluated in its
    factored form (m - (1+sqrt c)^2)(m - (1-sqrt c)^2) to keep precision near the edge.
    """
    root_c = math.sqrt(c)
    edge = (1.0 + root_c) ** 2
    if m < edge:
        if m < edge * (1.0 - EDGE_RTOL):
            raise DomainError(f"m={m} is below the detectability edge {edge} for c={c}")
        m = edge
    disc = (m - edge) * (m - (1.0 - root_c) ** 2)
    return 0.5 * ((m + 1.0 - c) + math.sqrt(max(disc, 0.0)))


def bulk_edge(sigma2: float, c: float) -> float:
    """Right end sigma2 * (1 + sqrt(c))^2 of the noise spectrum."""
    return sigma2 * (1.0 + math.sqrt(c)) ** 2


def beta_np(n: int, p: int) -> float:
    """Finite-size scale of the largest noise eigenvalue fluctuations."""
    ratio = p / n
    return (1.0 + math.sqrt(ratio)) * (1.0 + math.sqrt(1.0 / ratio)) ** (1.0 / 3.0)


def spike_limit(alpha_prime: float, c: float) -> float:
    """Limit of the sample eigenvalue of a normalized spike, the bulk edge when undetectable."""
    if alpha_prime > 1.0 + math.sqrt(c):
        return phi(alpha_prime, c)
    return bulk_edge(1.0, c)


def detectable(spec: SpikeSpec, c: float) -> list[bool]:
    """One flag per distinct spike: alpha_k > sigma2 * sqrt(c)."""
    return [a > 1.0 + math.sqrt(c) for a in spec.normalized]
