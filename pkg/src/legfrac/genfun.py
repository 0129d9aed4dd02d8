"""Generating functions: closed forms versus coefficient series.

Each family pairs the closed form produced by a finite group shift with its
expansion in the group parameter u.  Order shifts move the function's order
up or down with 1/n! (raising) or gamma-ratio (lowering) coefficients;
degree shifts move the degree with falling/rising gamma-ratio coefficients;
the classic families expand (1 - 2zu + u^2)^{-1/2}-type kernels in integer
degrees; the double series nests an order family inside a degree family.

Series are summed with all gamma-ratio coefficients assembled in log form,
so partial sums stay finite for several hundred terms even where individual
factors overflow.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from enum import Enum

from .errors import (
    CoefficientPole,
    RadiusViolation,
    ShiftedArgumentOnCut,
)
from .legendre import (
    DegreeOrder,
    FunctionKind,
    LegendreArgument,
    _first_kind,
    _first_kind_log,
    _log_zm1,
    _log_zp1,
    _second_kind,
    _second_kind_log,
    sqrt_zsq_minus_1,
)
from .numerics import EvalResult, _loggamma, is_nonpositive_integer

__all__ = ["GenFunFamily", "GenFunSpec", "genfun_closed", "genfun_series",
           "convergence_radius"]

_MAX_TERMS = 500
_ONCUT_PAD = 1e-8


class GenFunFamily(Enum):
    ORDER_RAISE = "OrderRaise"
    ORDER_LOWER = "OrderLower"
    DEGREE_LOWER = "DegreeLower"
    DEGREE_RAISE = "DegreeRaise"
    CLASSIC_P = "LegendreP"
    CLASSIC_Q = "LegendreQ"
    CLASSIC_P_ORDER = "PnMu"
    DOUBLE_SERIES = "DoubleSeries"


@dataclass(frozen=True)
class GenFunSpec:
    """One generating-function instance.

    ``u`` is the group parameter (the product u*x or u/x for degree
    families is already folded into u); ``t`` the unit-circle phase
    parameter of the order families; ``v`` the inner parameter of the
    double series.  ``kind`` selects which solution family is shifted
    (the classic families fix it themselves).  ``terms`` bounds the
    partial sum.
    """

    family: GenFunFamily
    do: DegreeOrder
    arg: LegendreArgument
    u: complex
    t: complex = 1.0
    v: complex = 0.0
    kind: FunctionKind = FunctionKind.P_OFFCUT
    terms: int = 80

    def __post_init__(self):
        if self.terms < 1:
            raise RadiusViolation("terms must be >= 1")
        if self.terms > _MAX_TERMS:
            raise RadiusViolation(f"terms capped at {_MAX_TERMS}")
        object.__setattr__(self, "u", complex(self.u))
        object.__setattr__(self, "t", complex(self.t))
        object.__setattr__(self, "v", complex(self.v))


def convergence_radius(family: GenFunFamily, arg: LegendreArgument,
                       t: complex = 1.0) -> float:
    """Printed convergence radius of the family's series in u."""
    z = arg.z
    s = sqrt_zsq_minus_1(z)
    if family in (GenFunFamily.ORDER_RAISE, GenFunFamily.ORDER_LOWER):
        r = min(abs(cmath.sqrt((z - 1.0) / (z + 1.0))),
                abs(cmath.sqrt((z + 1.0) / (z - 1.0))))
        return r / abs(t) if family is GenFunFamily.ORDER_RAISE else r * abs(t)
    # degree families and the classic kernels share min |z +- sqrt(z^2-1)|
    return min(abs(z + s), abs(z - s))


def _check_radius(spec: GenFunSpec):
    r = convergence_radius(spec.family, spec.arg, spec.t)
    if abs(spec.u) >= r:
        raise RadiusViolation(
            f"|u| = {abs(spec.u)} outside the printed radius {r}")
    if spec.family is GenFunFamily.DOUBLE_SERIES:
        r_in = convergence_radius(GenFunFamily.ORDER_RAISE, spec.arg, spec.t)
        if abs(spec.v) >= r_in:
            raise RadiusViolation(
                f"|v| = {abs(spec.v)} outside the inner radius {r_in}")
        zs = spec.arg.z + spec.v * spec.t * sqrt_zsq_minus_1(spec.arg.z)
        r_out = min(abs(zs + sqrt_zsq_minus_1(zs)), abs(zs - sqrt_zsq_minus_1(zs)))
        if abs(spec.u) >= r_out:
            raise RadiusViolation(
                f"|u| = {abs(spec.u)} outside the shifted radius {r_out}")


def _guard_offcut(z: complex):
    if abs(z.imag) < _ONCUT_PAD and -1.0 - _ONCUT_PAD <= z.real <= 1.0 + _ONCUT_PAD:
        raise ShiftedArgumentOnCut(f"shifted argument {z} lands on the cut")


def _eval(kind: FunctionKind, nu, mu, z) -> complex:
    if kind.is_first_kind:
        return _first_kind(nu, mu, z)[0][0]
    return _second_kind(nu, mu, z)[0][0]


def _kernel(z: complex, u: complex) -> complex:
    # 1 - 2 z u + u^2
    return 1.0 - 2.0 * z * u + u * u


def genfun_closed(spec: GenFunSpec) -> EvalResult:
    """Closed (finite group shift) side of the family."""
    kind = _canonical_kind(spec)
    nu, mu = spec.do.nu, spec.do.mu
    z, u, t = spec.arg.z, spec.u, spec.t
    s = sqrt_zsq_minus_1(z)

    if spec.family is GenFunFamily.ORDER_RAISE:
        zs = z + u * t * s
        _guard_offcut(zs)
        lead = cmath.exp(0.5 * mu * (
            _log_zm1(z) + _log_zp1(z) - cmath.log(zs - 1.0) - cmath.log(zs + 1.0)))
        val = t**mu * lead * _eval(kind, nu, mu, zs)
        return EvalResult(val, 1e-13 * abs(val), 1)

    if spec.family is GenFunFamily.ORDER_LOWER:
        zs = z - (u / t) * s
        _guard_offcut(zs)
        lead = cmath.exp(0.5 * mu * (
            cmath.log(zs - 1.0) + cmath.log(zs + 1.0) - _log_zm1(z) - _log_zp1(z)))
        val = t**mu * lead * _eval(kind, nu, mu, zs)
        return EvalResult(val, 1e-13 * abs(val), 1)

    if spec.family is GenFunFamily.DEGREE_LOWER:
        R = _kernel(z, u)
        zs = (z - u) / cmath.sqrt(R)
        _guard_offcut(zs)
        val = cmath.exp(0.5 * nu * cmath.log(R)) * _eval(kind, nu, mu, zs)
        return EvalResult(val, 1e-13 * abs(val), 1)

    if spec.family is GenFunFamily.DEGREE_RAISE:
        R = _kernel(z, u)
        zs = (z - u) / cmath.sqrt(R)
        _guard_offcut(zs)
        val = cmath.exp(-0.5 * (nu + 1.0) * cmath.log(R)) * _eval(kind, nu, mu, zs)
        return EvalResult(val, 1e-13 * abs(val), 1)

    if spec.family is GenFunFamily.CLASSIC_P:
        val = 1.0 / cmath.sqrt(_kernel(z, u))
        return EvalResult(val, 1e-15 * abs(val), 1)

    if spec.family is GenFunFamily.CLASSIC_Q:
        R = cmath.sqrt(_kernel(z, u))
        val = (1.0 / R) * cmath.log((z - u + R) / s)
        return EvalResult(val, 1e-14 * abs(val), 1)

    if spec.family is GenFunFamily.CLASSIC_P_ORDER:
        R = cmath.sqrt(_kernel(z, u))
        lead = cmath.exp(-_loggamma(1.0 - mu) + mu * cmath.log((z - u + R) / s))
        val = lead / R
        return EvalResult(val, 1e-13 * abs(val), 1)

    # double series: degree kernel at the order-shifted argument
    zs = z + spec.v * t * s
    _guard_offcut(zs)
    val = 1.0 / cmath.sqrt(_kernel(zs, u))
    return EvalResult(val, 1e-14 * abs(val), 1)


def classic_q_closed_variant(spec: GenFunSpec) -> EvalResult:
    """Second-kind classic kernel with the log argument read as printed
    (product z - u*R rather than the sum z - u + R); the registry reports
    which reading reproduces the series."""
    z, u = spec.arg.z, spec.u
    R = cmath.sqrt(_kernel(z, u))
    s = sqrt_zsq_minus_1(z)
    val = (1.0 / R) * cmath.log((z - u * R) / s)
    return EvalResult(val, 1e-14 * abs(val), 1)


def _canonical_kind(spec: GenFunSpec) -> FunctionKind:
    if spec.family is GenFunFamily.CLASSIC_Q:
        return FunctionKind.Q_OFFCUT
    if spec.family in (GenFunFamily.CLASSIC_P, GenFunFamily.CLASSIC_P_ORDER,
                       GenFunFamily.DOUBLE_SERIES):
        return FunctionKind.P_OFFCUT
    return spec.kind


def _eval_log(kind: FunctionKind, nu, mu, z):
    if kind.is_first_kind:
        return _first_kind_log(nu, mu, z)
    return _second_kind_log(nu, mu, z)


def genfun_series(spec: GenFunSpec, kind: FunctionKind | None = None,
                  enforce_radius: bool = True) -> EvalResult:
    """Partial sum of `terms` coefficients of the family's series.

    The error estimate is twice the magnitude of the last included term.
    """
    if enforce_radius:
        _check_radius(spec)
    if kind is None:
        kind = _canonical_kind(spec)
    nu, mu = spec.do.nu, spec.do.mu
    z, u, t = spec.arg.z, spec.u, spec.t
    total = 0.0 + 0.0j
    last = 0.0
    n_used = 0

    if spec.family is GenFunFamily.ORDER_RAISE:
        # sum_n u^n/n! t^{mu+n} F(nu, mu+n; z), assembled in log form
        lt = cmath.log(t)
        for n in range(spec.terms):
            lp, fval = _eval_log(kind, nu, mu + n, z)
            if lp is None or fval == 0.0:
                term = 0.0 + 0.0j
            else:
                lg = (n * cmath.log(u) if n else 0.0) - _loggamma(n + 1.0) \
                    + (mu + n) * lt + lp
                term = cmath.exp(lg) * fval
            total += term
            last = abs(term)
            n_used = n + 1
            if last < 1e-17 * max(1.0, abs(total)) and n > 3:
                break
        return EvalResult(total, 2.0 * last, n_used)

    if spec.family is GenFunFamily.ORDER_LOWER:
        if is_nonpositive_integer(nu + mu + 1.0) or is_nonpositive_integer(nu - mu + 1.0):
            raise CoefficientPole(
                f"gamma-ratio coefficients singular at (nu, mu) = {spec.do}")
        lg_top0 = _loggamma(mu + nu + 1.0)
        lg_bot0 = _loggamma(nu - mu + 1.0)
        lt = cmath.log(t)
        for n in range(spec.terms):
            # Gamma(mu+nu+1) Gamma(nu-mu+n+1) / (Gamma(mu+nu-n+1) Gamma(nu-mu+1))
            if is_nonpositive_integer(mu + nu - n + 1.0):
                break  # series terminates: all later coefficients vanish
            lp, fval = _eval_log(kind, nu, mu - n, z)
            if lp is None or fval == 0.0:
                term = 0.0 + 0.0j
            else:
                lg = (lg_top0 + _loggamma(nu - mu + n + 1.0)
                      - _loggamma(mu + nu - n + 1.0) - lg_bot0
                      + (n * cmath.log(-u) if n else 0.0) - _loggamma(n + 1.0)
                      + (mu - n) * lt + lp)
                term = cmath.exp(lg) * fval
            total += term
            last = abs(term)
            n_used = n + 1
            if last < 1e-17 * max(1.0, abs(total)) and n > 3:
                break
        return EvalResult(total, 2.0 * last, n_used)

    if spec.family is GenFunFamily.DEGREE_LOWER:
        # sum_n (-u)^n/n! Gamma(nu+mu+1)/Gamma(nu+mu-n+1) F(nu-n, mu; z)
        falling = 1.0 + 0.0j
        for n in range(spec.terms):
            if n:
                falling *= (nu + mu - n + 1.0)
            coef = (falling * cmath.exp(n * cmath.log(-u) - _loggamma(n + 1.0))
                    if n else 1.0)
            term = coef * _eval(kind, nu - n, mu, z)
            total += term
            last = abs(term)
            n_used = n + 1
            if last < 1e-17 * max(1.0, abs(total)) and n > 3:
                break
        return EvalResult(total, 2.0 * last, n_used)

    if spec.family is GenFunFamily.DEGREE_RAISE:
        # sum_n u^n/n! Gamma(nu-mu+n+1)/Gamma(nu-mu+1) F(nu+n, mu; z)
        rising = 1.0 + 0.0j
        for n in range(spec.terms):
            if n:
                rising *= (nu - mu + n)
            coef = (rising * cmath.exp(n * cmath.log(u) - _loggamma(n + 1.0))
                    if n else 1.0)
            term = coef * _eval(kind, nu + n, mu, z)
            total += term
            last = abs(term)
            n_used = n + 1
            if last < 1e-17 * max(1.0, abs(total)) and n > 3:
                break
        return EvalResult(total, 2.0 * last, n_used)

    if spec.family is GenFunFamily.CLASSIC_P:
        for n in range(spec.terms):
            term = u**n * _eval(FunctionKind.P_OFFCUT, float(n), 0.0, z)
            total += term
            last = abs(term)
            n_used = n + 1
            if last < 1e-17 * max(1.0, abs(total)) and n > 3:
                break
        return EvalResult(total, 2.0 * last, n_used)

    if spec.family is GenFunFamily.CLASSIC_Q:
        for n in range(spec.terms):
            term = u**n * _eval(FunctionKind.Q_OFFCUT, float(n), 0.0, z)
            total += term
            last = abs(term)
            n_used = n + 1
            if last < 1e-17 * max(1.0, abs(total)) and n > 3:
                break
        return EvalResult(total, 2.0 * last, n_used)

    if spec.family is GenFunFamily.CLASSIC_P_ORDER:
        # sum_n u^n/n! Gamma(n-mu+1)/Gamma(1-mu) P(n, mu; z)
        lg0 = _loggamma(1.0 - mu)
        for n in range(spec.terms):
            lg = _loggamma(n - mu + 1.0) - lg0
            coef = cmath.exp(lg + n * cmath.log(u) - _loggamma(n + 1.0)) if n else 1.0
            term = coef * _eval(FunctionKind.P_OFFCUT, float(n), mu, z)
            total += term
            last = abs(term)
            n_used = n + 1
            if last < 1e-17 * max(1.0, abs(total)) and n > 3:
                break
        return EvalResult(total, 2.0 * last, n_used)

    # double series: sum_n u^n sum_{m=0}^{n} v^m/m! P(n, m; z)
    v = spec.v * t
    for n in range(spec.terms):
        inner = 0.0 + 0.0j
        for m in range(n + 1):
            coef = cmath.exp(m * cmath.log(v) - _loggamma(m + 1.0)) if m else 1.0
            inner += coef * _eval(FunctionKind.P_OFFCUT, float(n), float(m), z)
        term = u**n * inner
        total += term
        last = abs(term)
        n_used = n + 1
        if last < 1e-17 * max(1.0, abs(total)) and n > 3:
            break
    return EvalResult(total, 2.0 * last, n_used)


def double_series_q(spec: GenFunSpec, inner_tol: float = 1e-16) -> EvalResult:
    """Second-kind double series: the inner order sum does not terminate."""
    nu, mu = spec.do.nu, spec.do.mu
    z, u, t = spec.arg.z, spec.u, spec.t
    v = spec.v * t
    total = 0.0 + 0.0j
    last = 0.0
    n_used = 0
    for n in range(spec.terms):
        inner = 0.0 + 0.0j
        for m in range(_MAX_TERMS):
            coef = cmath.exp(m * cmath.log(v) - _loggamma(m + 1.0)) if m else 1.0
            t_in = coef * _eval(FunctionKind.Q_OFFCUT, float(n), float(m), z)
            inner += t_in
            if abs(t_in) < inner_tol * max(1.0, abs(inner)) and m > 3:
                break
        term = u**n * inner
        total += term
        last = abs(term)
        n_used = n + 1
        if last < 1e-15 * max(1.0, abs(total)) and n > 3:
            break
    return EvalResult(total, 2.0 * last, n_used)


def double_series_q_closed(spec: GenFunSpec) -> EvalResult:
    """Closed side of the second-kind double series."""
    z, u, t = spec.arg.z, spec.u, spec.t
    zs = z + spec.v * t * sqrt_zsq_minus_1(z)
    _guard_offcut(zs)
    R = cmath.sqrt(_kernel(zs, u))
    val = (1.0 / R) * cmath.log((zs - u + R) / sqrt_zsq_minus_1(zs))
    return EvalResult(val, 1e-14 * abs(val), 1)