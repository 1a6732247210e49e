"""Gamma-family special functions used by the outage closed forms.

Only the real positive domain is needed. The complete gamma defers to the
C library implementation; the lower incomplete gamma is evaluated by the
classic series / continued-fraction pair, switching representation at
x = a + 1 where both converge fastest.
"""

import math

from .errors import NumericalError

_MAX_ITER = 500
_REL_EPS = 1e-15


def gamma(x: float) -> float:
    """Complete gamma function for x > 0."""
    if not (x > 0.0) or math.isinf(x):
        raise ValueError(f"gamma requires finite x > 0, got {x!r}")
    return math.gamma(x)


def lower_incomplete_gamma(a: float, x: float) -> float:
    """Lower incomplete gamma gamma(a, x) = int_0^x t^(a-1) e^(-t) dt.

    Series expansion for x < a + 1, continued fraction for the upper
    complement otherwise. Terms are iterated until the relative update
    drops below 1e-15; raises NumericalError after 500 iterations.
    """
    if not (a > 0.0) or math.isinf(a):
        raise ValueError(f"lower_incomplete_gamma requires finite a > 0, got {a!r}")
    if not (x >= 0.0) or math.isinf(x):
        raise ValueError(f"lower_incomplete_gamma requires finite x >= 0, got {x!r}")
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _gamma_series(a, x)
    return math.gamma(a) - _upper_gamma_cf(a, x)


def _gamma_series(a: float, x: float) -> float:
    # gamma(a,x) = x^a e^-x sum_{n>=0} x^n / (a (a+1) ... (a+n))
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _REL_EPS:
            return total * math.exp(a * math.log(x) - x)
    raise NumericalError(f"incomplete gamma series stalled at a={a}, x={x}")


def _upper_gamma_cf(a: float, x: float) -> float:
    # Modified Lentz evaluation of Gamma(a,x) = x^a e^-x / (x+1-a - 1(1-a)/(x+3-a - ...))
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _REL_EPS:
            return math.exp(a * math.log(x) - x) * h
    raise NumericalError(f"incomplete gamma continued fraction stalled at a={a}, x={x}")
