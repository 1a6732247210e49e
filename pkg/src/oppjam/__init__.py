"""Secrecy throughput of a wiretap link protected by threshold-activated
Poisson jammers: closed forms, threshold optimization, and Monte Carlo
validation."""

from .analytic import (
    DesignPoint,
    beta_b_star,
    beta_e_star,
    conditional_gain_moment,
    connection_outage,
    random_baseline_throughput,
    secrecy_outage,
    selected_intensity,
    selection_probability,
    throughput,
    throughput_derivative,
)
from .errors import ConfigError, NumericalError
from .model import (
    DerivedConstants,
    SystemParams,
    dbm_to_linear,
    derive_constants,
    linear_to_dbm,
)
from .montecarlo import (
    NetworkRealization,
    OutageEstimate,
    SimConfig,
    estimate_outages,
    max_sir_eves,
    realize,
    sample_ppp,
    sinr_bob,
)
from .optimize import OptimizationResult, bisect_root, golden_section, optimize_delta
from .specfun import gamma, lower_incomplete_gamma

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "NumericalError",
    "gamma",
    "lower_incomplete_gamma",
    "SystemParams",
    "DerivedConstants",
    "dbm_to_linear",
    "linear_to_dbm",
    "derive_constants",
    "DesignPoint",
    "selection_probability",
    "selected_intensity",
    "conditional_gain_moment",
    "connection_outage",
    "secrecy_outage",
    "beta_b_star",
    "beta_e_star",
    "throughput",
    "throughput_derivative",
    "random_baseline_throughput",
    "OptimizationResult",
    "bisect_root",
    "golden_section",
    "optimize_delta",
    "SimConfig",
    "OutageEstimate",
    "NetworkRealization",
    "sample_ppp",
    "realize",
    "sinr_bob",
    "max_sir_eves",
    "estimate_outages",
    "__version__",
]
