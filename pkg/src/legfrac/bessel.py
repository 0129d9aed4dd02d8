"""Modified Bessel functions from their real-axis integral representations.

These are the independent reference values for the large-degree limit
checks: they never touch the Legendre evaluation path under test.

    K(mu, x) = integral_0^inf e^{-x cosh s} cosh(mu s) ds            (x > 0)
    I(mu, x) = (1/pi) integral_0^pi e^{x cos t} cos(mu t) dt
               - sin(pi mu)/pi integral_0^inf e^{-x cosh s - mu s} ds

Both integrals are done by tanh-sinh on truncated intervals whose tails are
below double precision.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .numerics import EvalResult
from .quadrature import tanh_sinh

__all__ = ["bessel_k_integral", "bessel_i_integral"]


def _cosh_cutoff(x: float) -> float:
    # e^{-x cosh s} < 1e-320 once x cosh s > 740
    return math.acosh(max(2.0, 745.0 / x))


def bessel_k_integral(mu: float, x: float) -> EvalResult:
    """Macdonald function of real order by direct quadrature."""
    mu, x = float(mu), float(x)
    if x <= 0.0:
        raise DomainError("argument must be positive")
    smax = _cosh_cutoff(x)

    def f(s):
        return np.exp(-x * np.cosh(s)) * np.cosh(mu * s)

    val, err, n = tanh_sinh(f, 0.0, smax, rel_tol=1e-13)
    return EvalResult(complex(val), err + 1e-15 * abs(val), n)


def bessel_i_integral(mu: float, x: float) -> EvalResult:
    """Modified Bessel function of the first kind, real order."""
    mu, x = float(mu), float(x)
    if x <= 0.0:
        raise DomainError("argument must be positive")

    def f_arc(t):
        return np.exp(x * np.cos(t)) * np.cos(mu * t)

    arc, e1, n1 = tanh_sinh(f_arc, 0.0, math.pi, rel_tol=1e-13)

    if abs(mu - round(mu)) < 1e-14:
        tail, e2, n2 = 0.0, 0.0, 0
    else:
        # e^{-x cosh s - mu s}: cut off where the exponent falls below -745
        smax = _cosh_cutoff(x) + 5.0

        def f_tail(s):
            return np.exp(-x * np.cosh(s) - mu * s)

        tail, e2, n2 = tanh_sinh(f_tail, 0.0, smax, rel_tol=1e-13)

    val = arc / math.pi - math.sin(math.pi * mu) / math.pi * tail
    return EvalResult(complex(val), (e1 + abs(e2)) / math.pi + 1e-15 * abs(val),
                      n1 + n2)
