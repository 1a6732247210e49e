"""Monte Carlo validation of the outage closed forms.

Fields are sampled on finite disks: jammers on a disk centered at the
receiver (their interference there is what the connection outage sees),
eavesdroppers on a disk centered at the source. Truncation biases the
interference tail like 1/radius for alpha near 3, so validation runs
needing sub-percent accuracy must widen the jammer window well beyond the
default; eavesdroppers beyond a few meters never matter at the densities
of interest, which is why the two windows are sized independently.

The marked jammer field is sampled through its superposition split: the
selected jammers (gain <= delta) form a Poisson field of intensity
lambda_j * (1 - e^-delta) with gains drawn from the exponential law
truncated to [0, delta], the unselected ones an independent field with the
complementary intensity and gains delta + Exp(1). The joint law is exactly
that of marking and thresholding a single field, but the outage events
depend only on the selected part, which keeps the estimators cheap.

Reproducibility: each trial derives independent child generators from
(seed, spawn_key=(trial, k)): k=0 receiver-side draws (direct gain,
selected count, selected gains, selected radii), k=1 eavesdropper-side
draws, k=2 selected-jammer angles, k=3 the unselected remainder (only
materialized by realize()). Receiver-side outcomes therefore do not depend
on whether the eavesdropper side is evaluated, and trial counts merge into
the same totals under any parallel split.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigError
from .model import SystemParams

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SimConfig:
    """Sampling window geometry and run length.

    eve_radius=None reuses radius for the eavesdropper disk.
    """

    radius: float = 50.0
    trials: int = 2000
    seed: int = 1
    eve_radius: Optional[float] = None

    def __post_init__(self):
        if not (self.radius > 0.0) or math.isinf(self.radius):
            raise ConfigError(f"radius must be finite and > 0, got {self.radius!r}")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigError(f"trials must be a positive integer, got {self.trials!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError(f"seed must be a nonnegative integer, got {self.seed!r}")
        if self.eve_radius is not None and not (0.0 < self.eve_radius < math.inf):
            raise ConfigError(f"eve_radius must be finite and > 0, got {self.eve_radius!r}")


@dataclass(frozen=True)
class OutageEstimate:
    p_hat: float
    trials: int
    std_err: float


@dataclass(frozen=True)
class NetworkRealization:
    """One sampled network with every gain needed by the two outage events.

    Jammer arrays list the selected jammers first, then the unselected
    remainder; cross_gains[i, j] is the gain from the i-th selected jammer
    to eavesdropper j.
    """

    h_b: float
    jammer_pos: np.ndarray  # (n, 2), source at the origin
    jammer_gain: np.ndarray  # (n,) toward the receiver
    jammer_selected: np.ndarray  # (n,) bool, gain <= delta
    eve_pos: np.ndarray  # (m, 2)
    eve_gain: np.ndarray  # (m,) from the source
    cross_gains: np.ndarray  # (n_selected, m)


def _rng(seed: int, trial: int, stream: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(trial, stream))
    return np.random.Generator(np.random.PCG64(ss))


def _truncated_gains(u: np.ndarray, delta: float) -> np.ndarray:
    # inverse CDF of Exp(1) conditioned on the value not exceeding delta
    return -np.log1p(math.expm1(-delta) * u)


def sample_ppp(
    intensity: float, radius: float, rng: np.random.Generator, center=(0.0, 0.0)
) -> np.ndarray:
    """Points of a homogeneous Poisson field on a disk, as an (n, 2) array.

    Draw order is fixed (count, radial uniforms, angle uniforms) so that
    callers composing several fields per trial stay stream-reproducible.
    """
    if not (intensity > 0.0) or not (radius > 0.0):
        raise ValueError("sample_ppp needs intensity > 0 and radius > 0")
    n = int(rng.poisson(intensity * math.pi * radius * radius))
    r = radius * np.sqrt(rng.random(n))
    theta = _TWO_PI * rng.random(n)
    pos = np.empty((n, 2))
    pos[:, 0] = center[0] + r * np.cos(theta)
    pos[:, 1] = center[1] + r * np.sin(theta)
    return pos


def realize(
    params: SystemParams, delta: float, config: SimConfig, trial_index: int
) -> NetworkRealization:
    """Sample one network realization for the given trial index."""
    _check_inputs(params, delta, config)
    if not isinstance(trial_index, int) or trial_index < 0:
        raise ValueError(f"trial_index must be a nonnegative integer, got {trial_index!r}")
    r_j = config.radius
    r_e = config.eve_radius if config.eve_radius is not None else config.radius
    p_sel = -math.expm1(-delta)
    area_j = math.pi * r_j * r_j

    rng_b = _rng(config.seed, trial_index, 0)
    h_b = float(rng_b.standard_exponential())
    n_s = int(rng_b.poisson(params.lambda_j * p_sel * area_j))
    gain_s = _truncated_gains(rng_b.random(n_s), delta)
    u_r = rng_b.random(n_s)

    rng_a = _rng(config.seed, trial_index, 2)
    theta_s = _TWO_PI * rng_a.random(n_s)
    rad_s = r_j * np.sqrt(u_r)

    rng_u = _rng(config.seed, trial_index, 3)
    n_u = int(rng_u.poisson(params.lambda_j * (1.0 - p_sel) * area_j))
    gain_u = delta + rng_u.standard_exponential(n_u)
    rad_u = r_j * np.sqrt(rng_u.random(n_u))
    theta_u = _TWO_PI * rng_u.random(n_u)

    rad = np.concatenate([rad_s, rad_u])
    theta = np.concatenate([theta_s, theta_u])
    jammer_pos = np.empty((n_s + n_u, 2))
    jammer_pos[:, 0] = params.d + rad * np.cos(theta)  # disk centered at the receiver
    jammer_pos[:, 1] = rad * np.sin(theta)
    jammer_gain = np.concatenate([gain_s, gain_u])
    selected = np.zeros(n_s + n_u, dtype=bool)
    selected[:n_s] = True

    rng_e = _rng(config.seed, trial_index, 1)
    eve_pos = sample_ppp(params.lambda_e, r_e, rng_e)
    m = eve_pos.shape[0]
    eve_gain = rng_e.standard_exponential(m)
    cross_gains = rng_e.standard_exponential((n_s, m))

    return NetworkRealization(
        h_b=h_b,
        jammer_pos=jammer_pos,
        jammer_gain=jammer_gain,
        jammer_selected=selected,
        eve_pos=eve_pos,
        eve_gain=eve_gain,
        cross_gains=cross_gains,
    )


def sinr_bob(realization: NetworkRealization, params: SystemParams) -> float:
    """SINR of the protected link in one realization."""
    sig = params.p_s * realization.h_b * params.d ** (-params.alpha)
    sel = realization.jammer_selected
    dx = realization.jammer_pos[sel, 0] - params.d
    dy = realization.jammer_pos[sel, 1]
    d2 = dx * dx + dy * dy
    interference = params.p_j * float(
        np.dot(realization.jammer_gain[sel], _plinv(d2, params.alpha))
    )
    denom = interference + params.n0
    if denom == 0.0:
        return math.inf
    return sig / denom


def max_sir_eves(realization: NetworkRealization, params: SystemParams) -> float:
    """SIR of the most favorably placed eavesdropper.

    Zero when no eavesdropper was sampled; infinite when at least one was
    but no jammer is active.
    """
    m = realization.eve_gain.shape[0]
    if m == 0:
        return 0.0
    sel = realization.jammer_selected
    if not bool(sel.any()):
        return math.inf
    e2 = np.einsum("ij,ij->i", realization.eve_pos, realization.eve_pos)
    sig = params.p_s * realization.eve_gain * _plinv(e2, params.alpha)
    jp = realization.jammer_pos[sel]
    dx = jp[:, 0, None] - realization.eve_pos[None, :, 0]
    dy = jp[:, 1, None] - realization.eve_pos[None, :, 1]
    w = _plinv(dx * dx + dy * dy, params.alpha)
    interference = params.p_j * np.einsum("ij,ij->j", realization.cross_gains, w)
    with np.errstate(divide="ignore"):
        sir = np.where(interference > 0.0, sig / interference, math.inf)
    return float(sir.max())


def estimate_outages(
    params: SystemParams,
    delta: float,
    beta_b: Optional[float],
    beta_e: Optional[float],
    config: SimConfig,
    jobs: int = 1,
) -> tuple[Optional[OutageEstimate], Optional[OutageEstimate]]:
    """Empirical connection / secrecy outage probabilities at the thresholds.

    Either threshold may be None to skip that side entirely (the skipped
    side's random draws are never taken, and by the stream layout this does
    not change the other side's estimate). Returns (connection, secrecy)
    estimates with binomial standard errors; jobs > 1 splits trials across
    processes and merges counts, which leaves results identical.
    """
    _check_inputs(params, delta, config)
    if beta_b is None and beta_e is None:
        raise ValueError("at least one of beta_b, beta_e must be given")
    if beta_b is not None and (math.isnan(beta_b) or beta_b < 0.0):
        raise ValueError(f"beta_b must be >= 0, got {beta_b!r}")
    if beta_e is not None and not (beta_e > 0.0):
        raise ValueError(f"beta_e must be > 0, got {beta_e!r}")
    if not isinstance(jobs, int) or jobs < 1:
        raise ValueError(f"jobs must be a positive integer, got {jobs!r}")

    trials = config.trials
    jobs = min(jobs, trials)
    if jobs == 1:
        co, so = _count_range(params, delta, beta_b, beta_e, config, 0, trials)
    else:
        bounds = [trials * i // jobs for i in range(jobs + 1)]
        args = [
            (params, delta, beta_b, beta_e, config, bounds[i], bounds[i + 1])
            for i in range(jobs)
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_count_range_star, args))
        co = sum(p[0] for p in parts)
        so = sum(p[1] for p in parts)

    def pack(count: int) -> OutageEstimate:
        p = count / trials
        return OutageEstimate(p_hat=p, trials=trials, std_err=math.sqrt(p * (1.0 - p) / trials))

    return (
        pack(co) if beta_b is not None else None,
        pack(so) if beta_e is not None else None,
    )


def _check_inputs(params: SystemParams, delta: float, config: SimConfig) -> None:
    if not (delta > 0.0) or math.isnan(delta) or math.isinf(delta):
        raise ValueError(f"delta must be finite and > 0, got {delta!r}")
    if not (config.radius > 10.0 * params.d):
        raise ConfigError(
            f"window radius {config.radius} must exceed 10x the link distance {params.d}"
        )


def _plinv(d2, alpha: float):
    # power-law path gain from squared distance: d2 ** (-alpha / 2)
    if alpha == 3.0:
        s = np.sqrt(d2)
        return 1.0 / (d2 * s)
    return d2 ** (-0.5 * alpha)


def _count_range_star(args) -> tuple[int, int]:
    return _count_range(*args)


def _count_range(
    params: SystemParams,
    delta: float,
    beta_b: Optional[float],
    beta_e: Optional[float],
    config: SimConfig,
    start: int,
    stop: int,
) -> tuple[int, int]:
    """Count outage events over trials [start, stop).

    Consumes random draws in exactly the order realize() does on the
    streams it touches, so the counted events coincide with evaluating
    sinr_bob / max_sir_eves on the corresponding realizations.
    """
    r_j = config.radius
    r_e = config.eve_radius if config.eve_radius is not None else config.radius
    p_sel = -math.expm1(-delta)
    mean_s = params.lambda_j * p_sel * (math.pi * r_j * r_j)
    mean_e = params.lambda_e * math.pi * r_e * r_e
    rj2 = r_j * r_j
    re2 = r_e * r_e
    alpha = params.alpha
    p_s, p_j, n0, d = params.p_s, params.p_j, params.n0, params.d
    sig_scale = p_s * d ** (-alpha)
    neg_em1 = math.expm1(-delta)  # -p_sel, hoisted for the gain transform
    seed = config.seed

    co = 0
    so = 0
    for trial in range(start, stop):
        rng_b = _rng(seed, trial, 0)
        h_b = rng_b.standard_exponential()
        n_s = int(rng_b.poisson(mean_s))
        u_g = rng_b.random(n_s)
        u_r = rng_b.random(n_s)

        if beta_b is not None:
            if n_s:
                g = -np.log1p(neg_em1 * u_g)
                i_b = p_j * float(np.dot(g, _plinv(rj2 * u_r, alpha)))
            else:
                i_b = 0.0
            if sig_scale * h_b < beta_b * (i_b + n0):
                co += 1

        if beta_e is not None:
            rng_e = _rng(seed, trial, 1)
            m = int(rng_e.poisson(mean_e))
            u_er = rng_e.random(m)
            u_et = rng_e.random(m)
            h_e = rng_e.standard_exponential(m)
            if m > 0:
                if n_s == 0:
                    so += 1
                else:
                    cross = rng_e.standard_exponential((n_s, m))
                    u_t = _rng(seed, trial, 2).random(n_s)
                    jr = r_j * np.sqrt(u_r)
                    jt = _TWO_PI * u_t
                    jx = d + jr * np.cos(jt)
                    jy = jr * np.sin(jt)
                    er2 = re2 * u_er
                    er = np.sqrt(er2)
                    et = _TWO_PI * u_et
                    ex = er * np.cos(et)
                    ey = er * np.sin(et)
                    dx = jx[:, None] - ex[None, :]
                    dy = jy[:, None] - ey[None, :]
                    w = _plinv(dx * dx + dy * dy, alpha)
                    i_e = p_j * np.einsum("ij,ij->j", cross, w)
                    sig_e = p_s * h_e * _plinv(er2, alpha)
                    if bool(np.any(sig_e > beta_e * i_e)):
                        so += 1
    return co, so
