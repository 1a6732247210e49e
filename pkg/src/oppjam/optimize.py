"""Search for the throughput-maximizing activation threshold.

The throughput is quasi-concave in the threshold but its derivative can
change sign twice over a wide search interval (once at the maximum, once
more where the clamped-zero plateau begins), so endpoint derivative signs
are not trusted: a coarse log grid locates the mode first, then the
derivative is bisected inside the local bracket, falling back to golden
section when the bracket does not straddle a sign change.
"""

import math
from dataclasses import dataclass
from typing import Callable

from .analytic import DesignPoint, throughput, throughput_derivative
from .errors import NumericalError
from .model import SystemParams

_GRID_POINTS = 81


@dataclass(frozen=True)
class OptimizationResult:
    """delta_star with its resolved design point and search diagnostics.

    method is one of "derivative-bisection", "golden-section-fallback", or
    "boundary" (maximum attained at a search-interval endpoint).
    """

    delta_star: float
    design: DesignPoint
    iterations: int
    method: str


def bisect_root(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    """Root of f on [lo, hi] by bisection; f(lo) and f(hi) must straddle zero."""
    if not (lo < hi) or not (tol > 0.0):
        raise ValueError("bisect_root needs lo < hi and tol > 0")
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise NumericalError("bisect_root: no sign change on the interval")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # interval at floating-point resolution
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def golden_section(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: float = 1e-10,
    max_iter: int = 200,
) -> tuple[float, float, int]:
    """Maximize a unimodal f on [lo, hi]; returns (x, f(x), iterations).

    Ties shrink the interval from the right so plateaus resolve to the
    smallest maximizer.
    """
    if not (lo < hi):
        raise ValueError("golden_section needs lo < hi")
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1 = f(x1)
    f2 = f(x2)
    iters = 0
    while hi - lo > rel_tol * max(abs(lo), abs(hi)) and iters < max_iter:
        if f1 >= f2:
            hi = x2
            x2 = x1
            f2 = f1
            x1 = hi - invphi * (hi - lo)
            f1 = f(x1)
        else:
            lo = x1
            x1 = x2
            f1 = f2
            x2 = lo + invphi * (hi - lo)
            f2 = f(x2)
        iters += 1
    x = x1 if f1 >= f2 else x2
    return x, f(x), iters


def optimize_delta(
    params: SystemParams,
    search_lo: float = 1e-3,
    search_hi: float = 20.0,
    method: str = "auto",
) -> OptimizationResult:
    """Maximize secrecy throughput over the activation threshold.

    method="auto" prefers derivative bisection inside the grid-located
    bracket; method="golden" forces the golden-section path (useful for
    cross-checking the two routes against each other). Ties in throughput
    resolve to the smallest threshold.
    """
    if not (0.0 < search_lo < search_hi) or math.isinf(search_hi):
        raise ValueError("need 0 < search_lo < search_hi, both finite")
    if method not in ("auto", "golden"):
        raise ValueError(f"unknown method {method!r}")

    def mu(delta: float) -> float:
        return throughput(params, delta).mu

    n = _GRID_POINTS
    ratio = search_hi / search_lo
    grid = [search_lo * ratio ** (i / (n - 1)) for i in range(n)]
    grid[-1] = search_hi
    mus = [mu(x) for x in grid]
    k = max(range(n), key=lambda i: (mus[i], -i))  # first index on exact ties

    blo = grid[max(k - 1, 0)]
    bhi = grid[min(k + 1, n - 1)]
    cand_x, cand_mu, iters, how = None, -math.inf, 0, ""
    if method == "auto":
        dlo = throughput_derivative(params, blo)
        dhi = throughput_derivative(params, bhi)
        if dlo > 0.0 > dhi:
            cand_x, iters = _bisect_derivative(params, blo, dlo, bhi)
            cand_mu = mu(cand_x)
            how = "derivative-bisection"
    if how == "":
        cand_x, cand_mu, iters = golden_section(mu, blo, bhi)
        how = "golden-section-fallback"

    # endpoints can dominate the interior candidate (monotone regimes, or a
    # clamped-zero plateau where everything ties and the smallest delta wins)
    best_x, best_mu, best_how = cand_x, cand_mu, how
    for x, m in ((search_hi, mus[-1]), (search_lo, mus[0])):
        if m > best_mu or (m == best_mu and x < best_x):
            best_x, best_mu, best_how = x, m, "boundary"

    return OptimizationResult(
        delta_star=best_x,
        design=throughput(params, best_x),
        iterations=iters,
        method=best_how,
    )


def _bisect_derivative(
    params: SystemParams, lo: float, dlo: float, hi: float
) -> tuple[float, int]:
    # sign-bisection of the throughput derivative; caller guarantees
    # dlo > 0 and the derivative at hi is negative
    iters = 0
    for _ in range(200):
        if hi - lo <= 4e-16 * hi:
            break
        mid = 0.5 * (lo + hi)
        dm = throughput_derivative(params, mid)
        iters += 1
        if dm == 0.0:
            return mid, iters
        if dm > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), iters
