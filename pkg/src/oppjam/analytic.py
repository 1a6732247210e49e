"""Closed-form outage probabilities and secrecy throughput.

Every jammer whose channel gain toward the legitimate receiver falls below
a threshold delta is activated, so the active set is an independently
thinned Poisson field whose interference degrades eavesdroppers far more
than the protected link. Under Rayleigh fading and power-law path loss the
connection and secrecy outage probabilities admit the exponential closed
forms implemented here, along with the outage-constrained rate thresholds
and the resulting secrecy throughput.
"""

import math
from dataclasses import dataclass

from .errors import NumericalError
from .model import SystemParams, derive_constants
from .specfun import gamma, lower_incomplete_gamma

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class DesignPoint:
    """One fully resolved operating point of the scheme.

    delta  : activation threshold on the jammer-to-receiver gain
    beta_b : SINR threshold at the receiver meeting the connection constraint
    beta_e : SIR threshold at the strongest eavesdropper meeting the secrecy
             constraint
    r_t    : codeword rate log2(1 + beta_b) [bits/s/Hz]
    r_e    : rate redundancy log2(1 + beta_e) [bits/s/Hz]
    mu     : secrecy throughput (r_t - r_e) * (1 - sigma), clamped at zero
    """

    delta: float
    beta_b: float
    beta_e: float
    r_t: float
    r_e: float
    mu: float


def selection_probability(delta: float) -> float:
    """Probability that a single jammer's gain falls below delta."""
    if not (delta > 0.0) or math.isnan(delta):
        raise ValueError(f"delta must be > 0, got {delta!r}")
    return -math.expm1(-delta)


def selected_intensity(delta: float, lambda_j: float) -> float:
    """Density of the activated jammer field after thinning."""
    if not (lambda_j > 0.0):
        raise ValueError(f"lambda_j must be > 0, got {lambda_j!r}")
    return lambda_j * selection_probability(delta)


def conditional_gain_moment(delta: float, rho: float) -> float:
    """E[g^rho | g <= delta] for a unit-mean exponential gain g.

    Approaches Gamma(1 + rho) as delta -> inf and delta^rho * rho/(rho+1)
    as delta -> 0; strictly below Gamma(1 + rho) for finite delta.
    """
    if not (0.0 < rho < 1.0):
        raise ValueError(f"rho must be in (0, 1), got {rho!r}")
    sel = selection_probability(delta)
    return lower_incomplete_gamma(rho + 1.0, delta) / sel


def connection_outage(params: SystemParams, delta: float, beta_b: float) -> float:
    """P(receiver SINR < beta_b) under threshold delta."""
    if not (beta_b >= 0.0) or math.isnan(beta_b):
        raise ValueError(f"beta_b must be >= 0, got {beta_b!r}")
    if beta_b == 0.0:
        return 0.0
    k = derive_constants(params)
    g = lower_incomplete_gamma(k.rho + 1.0, _check_delta(delta))
    return -math.expm1(-(k.b * beta_b + k.a * g * beta_b ** k.rho))


def secrecy_outage(params: SystemParams, delta: float, beta_e: float) -> float:
    """P(best eavesdropper SIR > beta_e) under threshold delta."""
    if not (beta_e > 0.0) or math.isnan(beta_e):
        raise ValueError(f"beta_e must be > 0, got {beta_e!r}")
    k = derive_constants(params)
    sel = selection_probability(delta)
    return -math.expm1(-k.c * beta_e ** (-k.rho) / sel)


def beta_e_star(params: SystemParams, delta: float) -> float:
    """Smallest SIR threshold whose secrecy outage meets params.epsilon."""
    k = derive_constants(params)
    sel = selection_probability(delta)
    # p_so(beta_e) = epsilon  <=>  c * beta_e^-rho / sel = -log(1 - epsilon)
    target = -math.log1p(-params.epsilon)
    return (k.c / (sel * target)) ** (1.0 / k.rho)


def beta_b_star(params: SystemParams, delta: float) -> float:
    """Largest SINR threshold whose connection outage meets params.sigma."""
    k = derive_constants(params)
    g = lower_incomplete_gamma(k.rho + 1.0, _check_delta(delta))
    target = -math.log1p(-params.sigma)
    return _solve_outage_exponent(k.b, k.a * g, k.rho, target)


def throughput(params: SystemParams, delta: float) -> DesignPoint:
    """Resolve the operating point at threshold delta.

    Rates follow from the outage-tight thresholds; the throughput is the
    rate margin weighted by the connection success probability, clamped at
    zero when the margin is negative.
    """
    bb = beta_b_star(params, delta)
    be = beta_e_star(params, delta)
    r_t = math.log2(1.0 + bb)
    r_e = math.log2(1.0 + be)
    mu = max(0.0, (r_t - r_e) * (1.0 - params.sigma))
    return DesignPoint(delta=delta, beta_b=bb, beta_e=be, r_t=r_t, r_e=r_e, mu=mu)


def throughput_derivative(params: SystemParams, delta: float) -> float:
    """d(r_t - r_e)/d delta at the outage-tight thresholds.

    Obtained by implicit differentiation of the two constraint equations;
    the first term is the loss from extra interference at the receiver, the
    second the gain from denser jamming at the eavesdroppers.
    """
    k = derive_constants(params)
    delta = _check_delta(delta)
    bb = beta_b_star(params, delta)
    be = beta_e_star(params, delta)
    g = lower_incomplete_gamma(k.rho + 1.0, delta)
    e = math.exp(-delta)
    dg = delta ** k.rho * e  # d/d delta of the lower incomplete gamma
    term_b = -k.a * dg * bb ** k.rho / ((1.0 + bb) * (k.b + k.a * k.rho * g * bb ** (k.rho - 1.0)))
    term_e = be * e / ((1.0 + be) * k.rho * -math.expm1(-delta))
    return (term_b + term_e) / _LN2


def random_baseline_throughput(params: SystemParams, retention: float) -> DesignPoint:
    """Operating point when jammers are kept independently at random.

    Each jammer is retained with the given probability irrespective of its
    channel, so the active density matches the threshold scheme at equal
    retention but the interference moment at the receiver is the full
    Gamma(1 + rho) instead of the truncated one.
    """
    if not (0.0 < retention <= 1.0) or math.isnan(retention):
        raise ValueError(f"retention must be in (0, 1], got {retention!r}")
    k = derive_constants(params)
    target_b = -math.log1p(-params.sigma)
    bb = _solve_outage_exponent(k.b, k.a * retention * gamma(1.0 + k.rho), k.rho, target_b)
    target_e = -math.log1p(-params.epsilon)
    be = (k.c / (retention * target_e)) ** (1.0 / k.rho)
    r_t = math.log2(1.0 + bb)
    r_e = math.log2(1.0 + be)
    mu = max(0.0, (r_t - r_e) * (1.0 - params.sigma))
    # equivalent threshold producing this retention under the thinning map
    delta_eq = -math.log1p(-retention) if retention < 1.0 else math.inf
    return DesignPoint(delta=delta_eq, beta_b=bb, beta_e=be, r_t=r_t, r_e=r_e, mu=mu)


def _check_delta(delta: float) -> float:
    if not (delta > 0.0) or math.isnan(delta) or math.isinf(delta):
        raise ValueError(f"delta must be finite and > 0, got {delta!r}")
    return delta


def _solve_outage_exponent(b: float, coef: float, rho: float, target: float) -> float:
    """Solve b*x + coef*x^rho = target for x > 0.

    Left side is strictly increasing from 0, so the root is unique. Exact
    closed forms when either coefficient vanishes; otherwise bracket by
    doubling from 1 and bisect down to machine-level relative width (the
    downstream threshold-derivative evaluations amplify any residual by
    roughly 1/delta, so a looser tolerance would leak visible noise).
    """
    if target <= 0.0 or (b <= 0.0 and coef <= 0.0):
        raise ValueError("outage exponent equation needs target > 0 and a positive coefficient")
    if coef == 0.0:
        return target / b
    if b == 0.0:
        return (target / coef) ** (1.0 / rho)

    def f(x: float) -> float:
        return b * x + coef * x ** rho - target

    hi = 1.0
    for _ in range(200):
        if f(hi) >= 0.0:
            break
        hi *= 2.0
    else:
        raise NumericalError("failed to bracket the outage exponent root")
    lo = 0.0
    for _ in range(300):
        if hi - lo <= 4e-16 * hi:
            break
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
