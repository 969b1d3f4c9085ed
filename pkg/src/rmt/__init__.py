from rmt.spectra import beta_np, bulk_edge, detectable, invert_phi, phi, spike_limit
from rmt.tracy_widom import TW1Table, get_tw1_table, tw1_cdf, tw1_fredholm_cdf, tw1_quantile

__all__ = [
    "TW1Table",
    "beta_np",
    "bulk_edge",
    "detectable",
    "get_tw1_table",
    "invert_phi",
    "phi",
    "spike_limit",
    "tw1_cdf",
    "tw1_fredholm_cdf",
    "tw1_quantile",
]
