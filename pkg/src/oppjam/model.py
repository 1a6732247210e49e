"""System parameters and the derived constants of the outage closed forms.

Geometry: transmitter at the origin, receiver at distance d, jammers and
eavesdroppers placed as independent homogeneous Poisson fields. All powers
are linear milliwatts; dBm helpers are provided for configuration input.
Rayleigh fading (unit-mean exponential power gains) and path-loss exponent
alpha > 2 are assumed throughout.
"""

import math
from dataclasses import dataclass

from .errors import ConfigError
from .specfun import gamma


def dbm_to_linear(p_dbm: float) -> float:
    """dBm -> mW. Accepts -inf (maps to 0), rejects NaN/+inf."""
    if math.isnan(p_dbm) or p_dbm == math.inf:
        raise ConfigError(f"power in dBm must be finite or -inf, got {p_dbm!r}")
    return 10.0 ** (p_dbm / 10.0)


def linear_to_dbm(p_mw: float) -> float:
    """mW -> dBm, for p_mw > 0."""
    if not (p_mw > 0.0):
        raise ConfigError(f"linear power must be positive, got {p_mw!r}")
    return 10.0 * math.log10(p_mw)


@dataclass(frozen=True)
class SystemParams:
    """Physical scenario description.

    p_s, p_j : transmit power of the source and of each active jammer [mW]
    n0       : receiver noise power [mW], zero allowed (interference-limited)
    d        : source-receiver distance [m]
    alpha    : path-loss exponent, > 2
    lambda_j : jammer density [1/m^2]
    lambda_e : eavesdropper density [1/m^2]
    sigma    : connection outage constraint, in (0, 1)
    epsilon  : secrecy outage constraint, in (0, 1)
    """

    p_s: float
    p_j: float
    n0: float
    d: float
    alpha: float
    lambda_j: float
    lambda_e: float
    sigma: float
    epsilon: float

    def __post_init__(self):
        checks = [
            (self.p_s > 0.0, "p_s must be > 0"),
            (self.p_j > 0.0, "p_j must be > 0"),
            (self.n0 >= 0.0, "n0 must be >= 0"),
            (self.d > 0.0, "d must be > 0"),
            (self.alpha > 2.0, "alpha must be > 2"),
            (self.lambda_j > 0.0, "lambda_j must be > 0"),
            (self.lambda_e > 0.0, "lambda_e must be > 0"),
            (0.0 < self.sigma < 1.0, "sigma must be in (0, 1)"),
            (0.0 < self.epsilon < 1.0, "epsilon must be in (0, 1)"),
        ]
        for field in ("p_s", "p_j", "n0", "d", "alpha", "lambda_j", "lambda_e", "sigma", "epsilon"):
            v = getattr(self, field)
            if not isinstance(v, (int, float)) or math.isnan(v) or math.isinf(v):
                raise ConfigError(f"{field} must be a finite number, got {v!r}")
        for ok, msg in checks:
            if not ok:
                raise ConfigError(msg)

    @classmethod
    def from_dbm(cls, p_s_dbm: float, p_j_dbm: float, n0_dbm: float, **kwargs) -> "SystemParams":
        """Construct with powers given in dBm (n0_dbm=-inf for zero noise)."""
        return cls(
            p_s=dbm_to_linear(p_s_dbm),
            p_j=dbm_to_linear(p_j_dbm),
            n0=dbm_to_linear(n0_dbm),
            **kwargs,
        )


@dataclass(frozen=True)
class DerivedConstants:
    """Scale constants of the two outage exponents.

    rho : 2 / alpha, the stable-order index of the interference field
    a   : jammer interference coefficient in the connection outage exponent
    b   : noise coefficient in the connection outage exponent
    c   : eavesdropper coefficient in the secrecy outage exponent
    """

    rho: float
    a: float
    b: float
    c: float


def derive_constants(params: SystemParams) -> DerivedConstants:
    rho = 2.0 / params.alpha
    d_alpha = params.d ** params.alpha
    a = params.lambda_j * math.pi * gamma(1.0 - rho) * (d_alpha * params.p_j / params.p_s) ** rho
    b = params.n0 * d_alpha / params.p_s
    c = params.lambda_e * params.p_s ** rho / (
        params.p_j ** rho * params.lambda_j * gamma(1.0 + rho) * gamma(1.0 - rho)
    )
    return DerivedConstants(rho=rho, a=a, b=b, c=c)
