"""Associated Legendre functions of complex degree and order.

Both kinds are evaluated off the cut (principal branches, cut along
(-inf, 1]) through the hypergeometric representations

    P(nu, mu; z) = ((z+1)/(z-1))^{mu/2} 2F1(-nu, nu+1; 1-mu; (1-z)/2) / Gamma(1-mu)
    Q(nu, mu; z) = e^{i pi mu} 2^{-nu-1} sqrt(pi) Gamma(nu+mu+1)/Gamma(nu+3/2)
                   * z^{-nu-mu-1} (z^2-1)^{mu/2}
                   * 2F1(nu/2+mu/2+1, nu/2+mu/2+1/2; nu+3/2; 1/z^2)

and their analytic continuations; values on the cut -1 < x < 1 are the
standard boundary-value combinations of z +/- i0.  Derivatives come from the
contiguous derivative of 2F1, never finite differences.

The second kind switches to a first-kind recombination when the
hypergeometric continuation cannot converge (arguments very close to the
cut), with a two-point order perturbation when the order is an integer.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    CoefficientVanishes,
    DegenerateCombination,
    DomainError,
    NoConvergence,
    PrefactorPole,
    TemplateMismatch,
)
from .numerics import (
    INTEGER_TOL,
    EvalResult,
    _gamma_ratio,
    _loggamma,
    hyp2f1,
    is_nonpositive_integer,
)

__all__ = [
    "FunctionKind",
    "DegreeOrder",
    "LegendreArgument",
    "ClosedForm",
    "QRelation",
    "eval_legendre",
    "eval_legendre_derivatives",
    "closed_form",
    "step_order",
    "step_degree",
    "whipple",
    "q_symmetries",
]

_ENDPOINT_TOL = 1e-10
_ONCUT_TOL = 1e-12
_SQRT_PI = 1.7724538509055160272981674833411452
_RICHARDSON_MU = 1e-5


class FunctionKind(Enum):
    P_OFFCUT = "P_offcut"
    Q_OFFCUT = "Q_offcut"
    P_CUT = "P_cut"
    Q_CUT = "Q_cut"

    @property
    def is_first_kind(self) -> bool:
        return self in (FunctionKind.P_OFFCUT, FunctionKind.P_CUT)

    @property
    def on_cut(self) -> bool:
        return self in (FunctionKind.P_CUT, FunctionKind.Q_CUT)


class ClosedForm(Enum):
    """Elementary closed forms used as fractional-operator seeds."""

    P_DEGREE_ZERO = "P0mu"            # degree 0, any order
    Q_DEGREE_ZERO = "Q0mu"            # degree 0, any order
    Q_HALF_ORDER = "Qhalf"            # order 1/2, any degree
    P_HALF_ORDER = "Phalf"            # order 1/2, any degree
    Q_ORDER_DEGREE_PLUS_ONE = "QnuNuPlus1"   # order = degree + 1
    P_ORDER_MINUS_DEGREE = "PnuMinusNu"      # order = -degree


class QRelation(Enum):
    """Recombination relations used as cross-check oracles."""

    NEGATE_ORDER = "negate_order"            # Q at order mu from Q at -mu
    FIRST_FROM_SECOND = "first_from_second"  # P from the two Q solutions
    SECOND_FROM_FIRST = "second_from_first"  # Q from P at orders +/- mu


@dataclass(frozen=True)
class DegreeOrder:
    nu: complex
    mu: complex

    def __post_init__(self):
        nu, mu = complex(self.nu), complex(self.mu)
        if not (cmath.isfinite(nu) and cmath.isfinite(mu)):
            raise DomainError("degree and order must be finite")
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "mu", mu)


@dataclass(frozen=True)
class LegendreArgument:
    z: complex
    domain_tag: str = "offcut"  # "offcut" or "oncut"

    def __post_init__(self):
        z = complex(self.z)
        object.__setattr__(self, "z", z)
        if abs(z - 1.0) < _ENDPOINT_TOL or abs(z + 1.0) < _ENDPOINT_TOL:
            raise DomainError(f"argument {z} too close to a singular endpoint")
        on = abs(z.imag) <= _ONCUT_TOL and -1.0 < z.real < 1.0
        if self.domain_tag == "oncut" and not on:
            raise DomainError(f"argument {z} is not on the cut (-1, 1)")
        if self.domain_tag == "offcut" and on:
            raise DomainError(f"argument {z} lies on the cut (-1, 1)")
        if self.domain_tag not in ("offcut", "oncut"):
            raise DomainError(f"unknown domain tag {self.domain_tag!r}")


def _log_zm1(z: complex, side: int = 0) -> complex:
    """log(z-1); `side` picks the boundary branch for real z < 1."""
    if side and z.imag == 0.0 and z.real < 1.0:
        return math.log(abs(z.real - 1.0)) + 1j * math.pi * side
    return cmath.log(z - 1.0)


def _log_zp1(z: complex, side: int = 0) -> complex:
    if side and z.imag == 0.0 and z.real < -1.0:
        return math.log(abs(z.real + 1.0)) + 1j * math.pi * side
    return cmath.log(z + 1.0)


def _log_z(z: complex, side: int = 0) -> complex:
    if side and z.imag == 0.0 and z.real < 0.0:
        return math.log(abs(z.real)) + 1j * math.pi * side
    return cmath.log(z)


def sqrt_zsq_minus_1(z: complex, side: int = 0) -> complex:
    """sqrt(z-1)*sqrt(z+1), the branch positive for real z > 1."""
    return cmath.exp(0.5 * (_log_zm1(z, side) + _log_zp1(z, side)))


# ---------------------------------------------------------------------------
# first kind, off the cut
# ---------------------------------------------------------------------------


def _first_kind_raw(nu: complex, mu: complex, z: complex, side: int = 0,
                    n_derivs: int = 0):
    """P(nu, mu; z) and optionally d/dz, d2/dz2.

    Returns (values tuple, error estimate, terms).  `side` selects the
    boundary branch z +/- i0 for real z < 1.  For positive integer order
    the 1/Gamma(1-mu) prefactor and the lower-parameter pole of the series
    cancel; the limit series in w^m is used instead.
    """
    w = 0.5 * (1.0 - z)
    g = cmath.exp(0.5 * mu * (_log_zp1(z, side) - _log_zm1(z, side)))

    m = round(mu.real)
    integer_mu = abs(mu - m) < 1e-13 and m >= 1
    if integer_mu:
        a, b, c = m - nu, nu + 1.0 + m, m + 1.0
        poch = 1.0 + 0.0j
        for j in range(m):
            poch *= (-nu + j) * (nu + 1.0 + j)
        K = poch / math.factorial(m)
    else:
        a, b, c = -nu, nu + 1.0, 1.0 - mu
        K = _gamma_ratio((), (1.0 - mu,))

    f0 = hyp2f1(a, b, c, w)
    if n_derivs:
        f1 = hyp2f1(a + 1, b + 1, c + 1, w)
        f2 = hyp2f1(a + 2, b + 2, c + 2, w)
        r1 = a * b / c
        Fw = r1 * f1.value
        Fww = r1 * (a + 1.0) * (b + 1.0) / (c + 1.0) * f2.value
    if integer_mu:
        H0 = w**m * f0.value
        if n_derivs:
            wm1 = w ** (m - 1)
            H1 = m * wm1 * f0.value + w**m * Fw
            H2 = ((m * (m - 1) * w ** (m - 2) * f0.value if m >= 2 else 0.0)
                  + 2.0 * m * wm1 * Fw + w**m * Fww)
    else:
        H0 = f0.value
        if n_derivs:
            H1, H2 = Fw, Fww

    if not n_derivs:
        val = K * g * H0
        return (val,), abs(K * g) * f0.abs_error_est + 1e-15 * abs(val), f0.terms_used

    # g' = -mu g / (z^2-1); g'' = mu (mu + 2 z) g / (z^2-1)^2; w' = -1/2
    s2 = (z - 1.0) * (z + 1.0)
    gp = -mu * g / s2
    gpp = mu * (mu + 2.0 * z) * g / (s2 * s2)
    v0 = K * g * H0
    v1 = K * (gp * H0 - 0.5 * g * H1)
    v2 = K * (gpp * H0 - gp * H1 + 0.25 * g * H2)
    err = abs(K * g) * f0.abs_error_est + 1e-14 * abs(v0)
    return (v0, v1, v2), err, f0.terms_used


def _second_kind_prefactor_pole(nu: complex, mu: complex) -> bool:
    return is_nonpositive_integer(nu + mu + 1.0)


def _second_kind_raw(nu: complex, mu: complex, z: complex, side: int = 0,
                     n_derivs: int = 0):
    """Q(nu, mu; z) via the 1/z^2 hypergeometric form, with continuation."""
    if _second_kind_prefactor_pole(nu, mu):
        raise PrefactorPole(f"gamma prefactor pole at nu+mu+1 = {nu + mu + 1}")
    a = 0.5 * nu + 0.5 * mu + 1.0
    b = 0.5 * nu + 0.5 * mu + 0.5
    c = nu + 1.5
    w = 1.0 / (z * z)
    lpref = (1j * math.pi * mu - (nu + 1.0) * math.log(2.0)
             + math.log(_SQRT_PI)
             + _loggamma(nu + mu + 1.0) - _loggamma(nu + 1.5)
             + (-nu - mu - 1.0) * _log_z(z, side)
             + 0.5 * mu * (_log_zm1(z, side) + _log_zp1(z, side)))
    pref = cmath.exp(lpref)
    if n_derivs == 0:
        f0 = hyp2f1(a, b, c, w)
        val = pref * f0.value
        return (val,), abs(pref) * f0.abs_error_est + 1e-15 * abs(val), f0.terms_used

    f0 = hyp2f1(a, b, c, w)
    f1 = hyp2f1(a + 1, b + 1, c + 1, w)
    f2 = hyp2f1(a + 2, b + 2, c + 2, w)
    r1 = a * b / c
    r2 = r1 * (a + 1.0) * (b + 1.0) / (c + 1.0)
    Fw = r1 * f1.value
    Fww = r2 * f2.value
    # w = z^-2: w' = -2 z^-3, w'' = 6 z^-4
    wp = -2.0 / z**3
    wpp = 6.0 / z**4
    # prefactor h: h'/h = (-nu-mu-1)/z + mu z/(z^2-1)
    s2 = (z - 1.0) * (z + 1.0)
    r = (-nu - mu - 1.0) / z + mu * z / s2
    rp = (nu + mu + 1.0) / z**2 - mu * (z * z + 1.0) / (s2 * s2)
    F0 = f0.value
    v0 = pref * F0
    v1 = pref * (r * F0 + Fw * wp)
    v2 = pref * ((rp + r * r) * F0 + 2.0 * r * Fw * wp + Fww * wp * wp + Fw * wpp)
    err = abs(pref) * f0.abs_error_est + 1e-14 * abs(v0)
    return (v0, v1, v2), err, f0.terms_used


def _q_gamma_ratio(nu: complex, mu: complex) -> complex:
    """Gamma(nu+mu+1)/Gamma(nu-mu+1)."""
    return _gamma_ratio((nu + mu + 1.0,), (nu - mu + 1.0,))


def _second_kind_from_first(nu: complex, mu: complex, z: complex, side: int = 0,
                            n_derivs: int = 0):
    """Q from the order +/- mu first-kind pair; Richardson near integer mu."""

    def recombine(mu_eff: complex):
        s = cmath.sin(math.pi * mu_eff)
        fac = cmath.exp(1j * math.pi * mu_eff) * math.pi / (2.0 * s)
        pa, ea, na = _first_kind_raw(nu, mu_eff, z, side, n_derivs)
        pb, eb, nb = _first_kind_raw(nu, -mu_eff, z, side, n_derivs)
        rat = _q_gamma_ratio(nu, mu_eff)
        vals = tuple(fac * (x - rat * y) for x, y in zip(pa, pb))
        err = abs(fac) * (ea + abs(rat) * eb)
        return vals, err, na + nb

    dist = abs(mu - round(mu.real))
    if dist > 1e-8:
        return recombine(mu)
    e = _RICHARDSON_MU
    va, ea, na = recombine(mu + e)
    vb, eb, nb = recombine(mu - e)
    vals = tuple(0.5 * (x + y) for x, y in zip(va, vb))
    err = 0.5 * (ea + eb) + max(abs(v) for v in vals) * (e * e + 1e-16 / e)
    return vals, err, na + nb


def _second_kind(nu, mu, z, side=0, n_derivs=0):
    try:
        return _second_kind_raw(nu, mu, z, side, n_derivs)
    except NoConvergence:
        return _second_kind_from_first(nu, mu, z, side, n_derivs)


def _first_kind(nu, mu, z, side=0, n_derivs=0):
    return _first_kind_raw(nu, mu, z, side, n_derivs)


def _first_kind_log(nu: complex, mu: complex, z: complex):
    """(log prefactor, 2F1 factor) with P = exp(lp) * f.

    Series summations with orders mu +/- n for large n assemble their terms
    entirely in log form; the prefactor alone would overflow long before
    the terms stop mattering.  Returns (None, 0) when the value is exactly
    zero (integer degree below integer order).
    """
    w = 0.5 * (1.0 - z)
    lt = 0.5 * mu * (_log_zp1(z) - _log_zm1(z))
    m = round(mu.real)
    if abs(mu - m) < 1e-13 and m >= 1:
        poch = 1.0 + 0.0j
        for j in range(m):
            poch *= (-nu + j) * (nu + 1.0 + j)
        if poch == 0.0:
            return None, 0.0 + 0.0j
        f = hyp2f1(m - nu, nu + 1.0 + m, m + 1.0, w)
        lp = lt + cmath.log(poch) - _loggamma(m + 1.0) + m * cmath.log(w)
        return lp, f.value
    f = hyp2f1(-nu, nu + 1.0, 1.0 - mu, w)
    if is_nonpositive_integer(1.0 - mu):
        return None, 0.0 + 0.0j
    return lt - _loggamma(1.0 - mu), f.value


def _second_kind_log(nu: complex, mu: complex, z: complex):
    """(log prefactor, 2F1 factor) with Q = exp(lp) * f; see above."""
    if _second_kind_prefactor_pole(nu, mu):
        raise PrefactorPole(f"gamma prefactor pole at nu+mu+1 = {nu + mu + 1}")
    a = 0.5 * nu + 0.5 * mu + 1.0
    b = 0.5 * nu + 0.5 * mu + 0.5
    c = nu + 1.5
    f = hyp2f1(a, b, c, 1.0 / (z * z))
    lp = (1j * math.pi * mu - (nu + 1.0) * math.log(2.0) + math.log(_SQRT_PI)
          + _loggamma(nu + mu + 1.0) - _loggamma(nu + 1.5)
          + (-nu - mu - 1.0) * _log_z(z)
          + 0.5 * mu * (_log_zm1(z) + _log_zp1(z)))
    return lp, f.value


def _first_kind_from_w(nu: complex, mu: complex, w: complex) -> complex:
    """P(nu, mu; z) parametrized by w = (1-z)/2, stable for z near 1.

    Quadrature integrands use this when the shifted argument approaches 1,
    where forming z itself would lose all precision in z - 1.
    """
    # (z+1)/(z-1) = (w-1)/w
    lt = cmath.log(w - 1.0) - cmath.log(w)
    g = cmath.exp(0.5 * mu * lt)
    m = round(mu.real)
    if abs(mu - m) < 1e-13 and m >= 1:
        poch = 1.0 + 0.0j
        for j in range(m):
            poch *= (-nu + j) * (nu + 1.0 + j)
        f = hyp2f1(m - nu, nu + 1.0 + m, m + 1.0, w)
        return g * poch / math.factorial(m) * w**m * f.value
    f = hyp2f1(-nu, nu + 1.0, 1.0 - mu, w)
    return g * _gamma_ratio((), (1.0 - mu,)) * f.value


def _second_kind_from_w(nu: complex, mu: complex, w: complex) -> complex:
    """Q(nu, mu; z) parametrized by w = (1-z)/2 via the first-kind pair."""

    def recombine(mu_eff):
        s = cmath.sin(math.pi * mu_eff)
        fac = cmath.exp(1j * math.pi * mu_eff) * math.pi / (2.0 * s)
        return fac * (_first_kind_from_w(nu, mu_eff, w)
                      - _q_gamma_ratio(nu, mu_eff) * _first_kind_from_w(nu, -mu_eff, w))

    if abs(mu - round(mu.real)) > 1e-8:
        return recombine(mu)
    e = _RICHARDSON_MU
    return 0.5 * (recombine(mu + e) + recombine(mu - e))


# ---------------------------------------------------------------------------
# public evaluation
# ---------------------------------------------------------------------------


def _cut_combination(kind: FunctionKind, nu: complex, mu: complex, x: float,
                     n_derivs: int = 0, printed_phases: bool = False):
    """Boundary-value combination on -1 < x < 1.

    The second-kind combination uses phases exp(-/+ i pi mu / 2); with
    `printed_phases` both phases are exp(-i pi mu / 2) (variant reading,
    kept for the registry's phase check).
    """
    if kind.is_first_kind:
        up, eu, nu_t = _first_kind(nu, mu, x, side=+1, n_derivs=n_derivs)
        dn, ed, nd_t = _first_kind(nu, mu, x, side=-1, n_derivs=n_derivs)
        ph = cmath.exp(0.5j * math.pi * mu)
        vals = tuple(0.5 * (ph * a + b / ph) for a, b in zip(up, dn))
        return vals, 0.5 * (eu + ed), nu_t + nd_t
    up, eu, nu_t = _second_kind(nu, mu, x, side=+1, n_derivs=n_derivs)
    dn, ed, nd_t = _second_kind(nu, mu, x, side=-1, n_derivs=n_derivs)
    ph = cmath.exp(-0.5j * math.pi * mu)
    ph2 = ph if printed_phases else 1.0 / ph
    outer = cmath.exp(-1j * math.pi * mu)
    vals = tuple(0.5 * outer * (ph * a + ph2 * b) for a, b in zip(up, dn))
    return vals, 0.5 * abs(outer) * (eu + ed), nu_t + nd_t


def _eval(kind: FunctionKind, do: DegreeOrder, arg: LegendreArgument,
          n_derivs: int = 0, printed_phases: bool = False):
    if kind.on_cut != (arg.domain_tag == "oncut"):
        raise DomainError(
            f"argument tag {arg.domain_tag!r} inconsistent with kind {kind.value}")
    if kind.on_cut:
        return _cut_combination(kind, do.nu, do.mu, arg.z.real, n_derivs,
                                printed_phases)
    if kind.is_first_kind:
        return _first_kind(do.nu, do.mu, arg.z, 0, n_derivs)
    return _second_kind(do.nu, do.mu, arg.z, 0, n_derivs)


def eval_legendre(kind: FunctionKind, do: DegreeOrder,
                  arg: LegendreArgument) -> EvalResult:
    """Evaluate the associated Legendre function of the given kind."""
    vals, err, n = _eval(kind, do, arg)
    return EvalResult(vals[0], err, n)


def eval_legendre_derivatives(kind: FunctionKind, do: DegreeOrder,
                              arg: LegendreArgument) -> tuple[EvalResult, EvalResult, EvalResult]:
    """Value and first/second z-derivatives, via the 2F1 derivative chain."""
    vals, err, n = _eval(kind, do, arg, n_derivs=2)
    return tuple(EvalResult(v, err, n) for v in vals)


def q_cut_variant(do: DegreeOrder, arg: LegendreArgument) -> EvalResult:
    """Second-kind on-cut value under the repeated-phase variant reading."""
    vals, err, n = _eval(FunctionKind.Q_CUT, do, arg, printed_phases=True)
    return EvalResult(vals[0], err, n)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def _require(cond: bool, msg: str):
    if not cond:
        raise TemplateMismatch(msg)


def closed_form(which: ClosedForm, do: DegreeOrder,
                arg: LegendreArgument) -> EvalResult:
    """Elementary closed-form values for special (nu, mu) combinations."""
    nu, mu, z = do.nu, do.mu, arg.z
    if arg.domain_tag != "offcut":
        raise DomainError("closed forms are evaluated off the cut")
    T = cmath.exp(0.5 * (_log_zp1(z) - _log_zm1(z)))  # sqrt((z+1)/(z-1))
    s = sqrt_zsq_minus_1(z)

    if which is ClosedForm.P_DEGREE_ZERO:
        _require(abs(nu) <= 1e-12, f"degree must be 0, got {nu}")
        val = _gamma_ratio((), (1.0 - mu,)) * T**mu
        return EvalResult(val, 1e-14 * abs(val), 1)

    if which is ClosedForm.Q_DEGREE_ZERO:
        _require(abs(nu) <= 1e-12, f"degree must be 0, got {nu}")
        if abs(mu) < 1e-8:
            val = 0.5 * (_log_zp1(z) - _log_zm1(z))
        else:
            val = (0.5 * cmath.exp(1j * math.pi * mu)
                   * cmath.exp(_loggamma(mu)) * (T**mu - T**-mu))
        return EvalResult(val, 1e-13 * max(1.0, abs(val)), 1)

    if which is ClosedForm.Q_HALF_ORDER:
        _require(abs(mu - 0.5) <= 1e-12, f"order must be 1/2, got {mu}")
        quarter = cmath.exp(-0.25 * (_log_zm1(z) + _log_zp1(z)))
        ep = cmath.exp((-nu - 0.5) * cmath.log(z + s))
        val = 1j * math.sqrt(math.pi / 2.0) * quarter * ep
        return EvalResult(val, 1e-14 * abs(val), 1)

    if which is ClosedForm.P_HALF_ORDER:
        _require(abs(mu - 0.5) <= 1e-12, f"order must be 1/2, got {mu}")
        quarter = cmath.exp(-0.25 * (_log_zm1(z) + _log_zp1(z)))
        ep = cmath.exp((nu + 0.5) * cmath.log(z + s))
        val = math.sqrt(2.0 / math.pi) * quarter * 0.5 * (ep + 1.0 / ep)
        return EvalResult(val, 1e-14 * abs(val), 1)

    if which is ClosedForm.Q_ORDER_DEGREE_PLUS_ONE:
        _require(abs(mu - nu - 1.0) <= 1e-12, f"order must be degree+1, got {do}")
        val = (cmath.exp(1j * math.pi * (nu + 1.0) + nu * math.log(2.0)
                         + _loggamma(nu + 1.0))
               * cmath.exp(-(nu + 1.0) * cmath.log(s)))
        return EvalResult(val, 1e-14 * abs(val), 1)

    if which is ClosedForm.P_ORDER_MINUS_DEGREE:
        _require(abs(mu + nu) <= 1e-12, f"order must be -degree, got {do}")
        val = cmath.exp(-nu * math.log(2.0) - _loggamma(nu + 1.0)
                        + nu * cmath.log(s))
        return EvalResult(val, 1e-14 * abs(val), 1)

    raise TemplateMismatch(f"unknown closed form {which}")


# ---------------------------------------------------------------------------
# differential recurrences
# ---------------------------------------------------------------------------


def step_order(kind: FunctionKind, do: DegreeOrder, arg: LegendreArgument,
               direction: int) -> EvalResult:
    """Order-stepping differential recurrence.

    direction=+1 returns F(nu, mu+1; z) = sqrt(z^2-1) F' - mu z F / sqrt(z^2-1);
    direction=-1 returns the lowering combination including its coefficient,
    (nu+mu)(nu-mu+1) F(nu, mu-1; z).
    """
    if arg.domain_tag != "offcut":
        raise DomainError("order stepping is defined off the cut")
    nu, mu, z = do.nu, do.mu, arg.z
    if direction == -1:
        coef = (nu + mu) * (nu - mu + 1.0)
        if abs(coef) < 1e-12:
            raise CoefficientVanishes(
                f"(nu+mu)(nu-mu+1) = {coef} vanishes; lowered value unrecoverable")
    elif direction != 1:
        raise DomainError("direction must be +1 or -1")
    vals, err, n = _eval(kind, do, arg, n_derivs=2)
    F, dF = vals[0], vals[1]
    s = sqrt_zsq_minus_1(z)
    if direction == 1:
        val = s * dF - mu * z / s * F
    else:
        val = s * dF + mu * z / s * F
    scale = abs(s * dF) + abs(mu * z / s * F)
    return EvalResult(val, err * (abs(s) + abs(mu * z / s)) + 1e-14 * scale, n)


def step_degree(kind: FunctionKind, do: DegreeOrder, arg: LegendreArgument,
                direction: int) -> EvalResult:
    """Degree-stepping differential recurrence (bracket values as printed).

    direction=-1 returns (nu+mu) F(nu-1, mu; z) from the lowering bracket;
    direction=+1 returns -(nu-mu+1) F(nu+1, mu; z) from the raising bracket.
    """
    if arg.domain_tag != "offcut":
        raise DomainError("degree stepping is defined off the cut")
    nu, mu, z = do.nu, do.mu, arg.z
    coef = nu + mu if direction == -1 else -(nu - mu + 1.0)
    if abs(coef) < 1e-12:
        raise CoefficientVanishes(f"printed prefactor {coef} vanishes")
    if direction not in (-1, 1):
        raise DomainError("direction must be +1 or -1")
    vals, err, n = _eval(kind, do, arg, n_derivs=2)
    F, dF = vals[0], vals[1]
    s2 = (z - 1.0) * (z + 1.0)
    if direction == -1:
        val = -s2 * dF + nu * z * F
    else:
        val = -s2 * dF - (nu + 1.0) * z * F
    scale = abs(s2 * dF) + abs((abs(nu) + 1.0) * z * F)
    return EvalResult(val, err * (abs(s2) + abs(z) * (abs(nu) + 1.0)) + 1e-14 * scale, n)


# ---------------------------------------------------------------------------
# Whipple transformation and recombination relations
# ---------------------------------------------------------------------------


def whipple(kind: FunctionKind, do: DegreeOrder, y: complex) -> EvalResult:
    """Degree/order exchange transform.

    For the second kind, returns
    sqrt(pi/2) Gamma(nu+mu+1) (y^2-1)^{1/4} P(-mu-1/2, -nu-1/2; y),
    which equals e^{-i pi mu} Q(nu, mu; y / sqrt(y^2-1)).
    """
    if kind is not FunctionKind.Q_OFFCUT:
        raise TemplateMismatch("transform implemented for the off-cut second kind")
    nu, mu = do.nu, do.mu
    y = complex(y)
    if y.real <= 0:
        raise DomainError("principal region requires Re y > 0")
    if is_nonpositive_integer(nu + mu + 1.0):
        raise PrefactorPole(f"gamma prefactor pole at nu+mu+1 = {nu + mu + 1}")
    q = cmath.exp(0.25 * (_log_zm1(y) + _log_zp1(y)))  # (y^2-1)^{1/4}
    vals, err, n = _first_kind(-mu - 0.5, -nu - 0.5, y)
    fac = math.sqrt(math.pi / 2.0) * cmath.exp(_loggamma(nu + mu + 1.0)) * q
    return EvalResult(fac * vals[0], abs(fac) * err, n)


def q_symmetries(relation: QRelation, do: DegreeOrder,
                 arg: LegendreArgument) -> EvalResult:
    """Recombination values used as cross-check oracles.

    NEGATE_ORDER rebuilds Q(nu, mu) from Q(nu, -mu); FIRST_FROM_SECOND
    rebuilds P from the two second-kind solutions of degree nu and -nu-1;
    SECOND_FROM_FIRST rebuilds Q from P at orders +/- mu.
    """
    if arg.domain_tag != "offcut":
        raise DomainError("recombinations are evaluated off the cut")
    nu, mu, z = do.nu, do.mu, arg.z

    if relation is QRelation.NEGATE_ORDER:
        vals, err, n = _second_kind(nu, -mu, z)
        fac = cmath.exp(2j * math.pi * mu) * _q_gamma_ratio(nu, mu)
        return EvalResult(fac * vals[0], abs(fac) * err, n)

    if relation is QRelation.FIRST_FROM_SECOND:
        c = cmath.cos(math.pi * nu)
        if abs(c) < 1e-10:
            raise DegenerateCombination(f"cos(pi nu) = {c} vanishes")
        qa, ea, na = _second_kind(nu, mu, z)
        qb, eb, nb = _second_kind(-nu - 1.0, mu, z)
        fac = cmath.exp(-1j * math.pi * mu) / (math.pi * c)
        val = fac * (cmath.sin(math.pi * (nu + mu)) * qa[0]
                     - cmath.sin(math.pi * (nu - mu)) * qb[0])
        err = abs(fac) * (abs(cmath.sin(math.pi * (nu + mu))) * ea
                          + abs(cmath.sin(math.pi * (nu - mu))) * eb)
        return EvalResult(val, err, na + nb)

    if relation is QRelation.SECOND_FROM_FIRST:
        s = cmath.sin(math.pi * mu)
        if abs(s) < 1e-10:
            raise DegenerateCombination(f"sin(pi mu) = {s} vanishes")
        vals, err, n = _second_kind_from_first(nu, mu, z)
        return EvalResult(vals[0], err, n)

    raise DomainError(f"unknown relation {relation}")
