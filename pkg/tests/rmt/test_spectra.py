import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.errors import DomainError
from rmt import beta_np, bulk_edge, detectable, invert_phi, phi, spike_limit
from schema import SpikeSpec


def test_phi_examples():
    assert phi(2.0, 1.0) == 4.0
    assert phi(11.0, 10.0) == 11.0 + 10.0 * 11.0 / 10.0
    with pytest.raises(DomainError):
        phi(1.0, 1.0)


def test_invert_phi_examples():
    assert math.isclose(invert_phi(4.0, 1.0), 2.0, rel_tol=1e-12)
    # At the bulk edge the inverse is the detectability threshold itself.
    assert math.isclose(invert_phi(4.0 * (1 - 1e-14), 1.0), 2.0, rel_tol=1e-6)
    for c in [0.25, 1.0, 10.0]:
        assert math.isclose(invert_phi(bulk_edge(1.0, c), c), 1.0 + math.sqrt(c))


def test_invert_phi_below_edge():
    with pytest.raises(DomainError, match="below the detectability edge"):
        invert_phi(3.9, 1.0)
    # DomainError is also a ValueError
    with pytest.raises(ValueError):
        invert_phi(0.5, 0.25)


@pytest.mark.parametrize("c", [0.25, 1.0, 10.0])
def test_invert_phi_round_trip_grid(c):
    threshold = 1.0 + math.sqrt(c)
    for alpha_prime in np.linspace(threshold + 0.5, threshold + 100.0, 1000):
        assert math.isclose(invert_phi(phi(alpha_prime, c), c), alpha_prime, rel_tol=1e-12)


@given(
    c=st.floats(min_value=0.01, max_value=50.0),
    excess=st.floats(min_value=1e-3, max_value=1e3),
)
def test_invert_phi_round_trip(c, excess):
    alpha_prime = 1.0 + math.sqrt(c) + excess
    assert math.isclose(invert_phi(phi(alpha_prime, c), c), alpha_prime, rel_tol=1e-8)


@given(
    c=st.floats(min_value=0.01, max_value=50.0),
    excess=st.floats(min_value=1e-6, max_value=1e3),
)
def test_phi_above_edge(c, excess):
    assert phi(1.0 + math.sqrt(c) + excess, c) >= bulk_edge(1.0, c) * (1 - 1e-12)


def test_bulk_edge_and_beta():
    assert bulk_edge(2.0, 1.0) == 8.0
    assert math.isclose(bulk_edge(1.0, 10.0), (1 + math.sqrt(10.0)) ** 2)
    assert math.isclose(beta_np(300, 300), 2.0 * 2.0 ** (1.0 / 3.0))
    expected = (1 + math.sqrt(10.0)) * (1 + math.sqrt(0.1)) ** (1 / 3)
    assert math.isclose(beta_np(300, 3000), expected)


def test_spike_limit():
    assert spike_limit(2.0, 1.0) == bulk_edge(1.0, 1.0)
    assert spike_limit(1.5, 1.0) == bulk_edge(1.0, 1.0)
    assert spike_limit(11.0, 10.0) == phi(11.0, 10.0)


def test_detectable():
    spec = SpikeSpec.from_strengths([10.0, 2.0, 1.5], p=100)
    # sqrt(c) = 2 at c = 4: detectable iff alpha > 2
    assert detectable(spec, 4.0) == [True, False, False]
    assert detectable(spec, 1.0) == [True, True, True]


@given(t=st.floats(min_value=1e-3, max_value=1e3))
def test_detectable_is_scale_invariant(t):
    strengths = [10.0, 2.5, 1.5, 0.3]
    base = SpikeSpec.from_strengths(strengths, p=100)
    scaled = SpikeSpec.from_strengths([t * a for a in strengths], sigma2=t, p=100)
    for c in [0.25, 1.0, 4.0, 10.0]:
        assert detectable(scaled, c) == detectable(base, c)
