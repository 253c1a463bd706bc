"""Cycle statistics, switchings and eigenvalue fluctuations of random regular graphs."""

__version__ = "0.1.0"

from .census import CycleCensus, census, cycle_counts, overlap_events
from .graph import Cycle, GraphError, RegularGraph
from .nbwalks import a_dk, cnbw_counts, cnbw_divisor_sum, mu_k
from .sampler import BudgetExceeded, SamplerConfig, enumerate_all_regular, sample_regular, sample_uniform
from .spectral import ChebExpansion, cheb_expand, gamma_poly, phi_poly, scaled_spectrum
from .stats import EmpiricalDistribution, PoissonSpec, tv_exact
from .switchings import (
    BackwardSwitching,
    ForwardSwitching,
    InvalidMove,
    SteinCertificate,
    apply_backward,
    apply_forward,
    count_backward,
    count_forward,
    is_valid,
    metagraph_step,
    stein_certificate,
)

__all__ = [
    "BackwardSwitching",
    "BudgetExceeded",
    "ChebExpansion",
    "Cycle",
    "CycleCensus",
    "EmpiricalDistribution",
    "ForwardSwitching",
    "GraphError",
    "InvalidMove",
    "PoissonSpec",
    "RegularGraph",
    "SamplerConfig",
    "SteinCertificate",
    "a_dk",
    "apply_backward",
    "apply_forward",
    "census",
    "cheb_expand",
    "cnbw_counts",
    "cnbw_divisor_sum",
    "count_backward",
    "count_forward",
    "cycle_counts",
    "enumerate_all_regular",
    "gamma_poly",
    "is_valid",
    "metagraph_step",
    "mu_k",
    "overlap_events",
    "phi_poly",
    "sample_regular",
    "sample_uniform",
    "scaled_spectrum",
    "stein_certificate",
    "tv_exact",
]
