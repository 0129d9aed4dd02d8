"""Fractional order- and degree-stepping operators on Legendre functions.

Each operator is realized as a loop-contour integral over the group
parameter; the loop runs over the standard ray contour (in from infinity,
once around the origin, back out) after the contour rotation that puts the
singularities of the integrand on the negative axis, or over a finite loop
for the Riemann variants.  The printed proportionality coefficients are
evaluated through log-gamma differences and divided out, so the shift
functions return plain shifted function values:

    order_shift(+lambda) on Q:  loop value -> Q(nu, mu+lambda; z)
    order_shift(-lambda) on Q, P:  with the second-kind/first-kind lowering
        coefficients respectively
    degree_shift(+lambda):  raising for both kinds
    degree_shift(-lambda) on P:  lowering; on Q the Weyl form produces a
        two-term combination and is exposed as the raw loop value together
        with the printed decomposition coefficients

The raising loop applied to the first kind likewise produces a two-term
combination; ``order_raise_p_decomposition`` returns its coefficients.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    CoefficientVanishes,
    ConvergenceConditionViolated,
    DomainError,
    NoRiemannRepresentation,
)
from .legendre import (
    DegreeOrder,
    FunctionKind,
    LegendreArgument,
    _first_kind,
    _first_kind_from_w,
    _log_zm1,
    _log_zp1,
    _second_kind,
    _second_kind_from_w,
    sqrt_zsq_minus_1,
)
from .numerics import EvalResult, _gamma_ratio, _loggamma, is_nonpositive_integer
from .quadrature import ContourKind, ContourSpec, loop_integral

__all__ = [
    "FracOperator",
    "Representation",
    "FracOpSpec",
    "CoefficientSet",
    "coefficients",
    "frac_order_shift",
    "frac_degree_shift",
    "order_raise_p_decomposition",
    "degree_lower_q_decomposition",
]

_MARGIN = 0.0  # printed conditions are checked as strict inequalities


class FracOperator(Enum):
    ORDER_RAISE = "order_raise"
    ORDER_LOWER = "order_lower"
    DEGREE_RAISE = "degree_raise"
    DEGREE_LOWER = "degree_lower"


class Representation(Enum):
    WEYL = "Weyl"
    RIEMANN = "Riemann"


@dataclass(frozen=True)
class FracOpSpec:
    operator: FracOperator
    lam: complex
    representation: Representation = Representation.WEYL
    nodes_per_unit: int = 40
    circle_radius_factor: float = 0.05
    collapse: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))
        bad = (
            (FracOperator.ORDER_LOWER, Representation.RIEMANN),
            (FracOperator.DEGREE_RAISE, Representation.RIEMANN),
        )
        if (self.operator, self.representation) in bad:
            raise NoRiemannRepresentation(
                f"no finite-loop realization exists for {self.operator.value}")


@dataclass(frozen=True)
class CoefficientSet:
    """The five printed proportionality coefficients at fixed (nu, mu, lambda).

    Poles are carried in-band as complex infinities rather than raised.
    """

    order_raise: complex          # e^{-i pi lam}, both kinds
    order_lower_second_kind: complex
    order_lower_first_kind: complex
    degree_raise: complex         # both kinds
    degree_lower: complex         # first kind


def _ratio_or_inf(num: tuple, den: tuple) -> complex:
    for w in num:
        if is_nonpositive_integer(w):
            return complex(math.inf, 0.0)
    return _gamma_ratio(num, den)


def coefficients(do: DegreeOrder, lam: complex) -> CoefficientSet:
    """All printed stepping coefficients, via log-gamma differences."""
    nu, mu, lam = do.nu, do.mu, complex(lam)
    ph = cmath.exp(-1j * math.pi * lam)
    n_plus = ph
    n_minus = ph * _ratio_or_inf(
        (nu + mu + 1.0, nu - mu + lam + 1.0), (nu + mu - lam + 1.0, nu - mu + 1.0))
    n_minus_tilde = _ratio_or_inf(
        (-nu - mu + lam, nu - mu + lam + 1.0), (-nu - mu, nu - mu + 1.0))
    n_prime_plus = ph * _ratio_or_inf((nu + lam - mu + 1.0,), (nu - mu + 1.0,))
    n_prime_minus = ph * _ratio_or_inf((-nu + lam - mu,), (-nu - mu,))
    return CoefficientSet(n_plus, n_minus, n_minus_tilde, n_prime_plus,
                          n_prime_minus)


def _require_condition(value: complex, label: str):
    if value.real <= _MARGIN:
        raise ConvergenceConditionViolated(
            f"printed condition Re({label}) > 0 fails: {value}")


def _check_coefficient_gammas(args: tuple, what: str):
    for w in args:
        if is_nonpositive_integer(w):
            raise CoefficientVanishes(
                f"{what}: gamma ratio has a pole/zero at argument {w}")


def _offcut_value(kind: FunctionKind, nu: complex, mu: complex, z: complex) -> complex:
    if kind.is_first_kind:
        return _first_kind(nu, mu, z)[0][0]
    return _second_kind(nu, mu, z)[0][0]


def _degree_kernel_w(z: complex, u: complex) -> complex:
    """w = (1 - W)/2 for W = (z+u)/sqrt(u^2+2zu+1), cancellation-free."""
    r = cmath.sqrt(u * u + 2.0 * z * u + 1.0)
    return -((z - 1.0) * (z + 1.0)) / (2.0 * r * (r + z + u))


def _weyl_contour(spec: FracOpSpec, z: complex, branch_dist: float) -> ContourSpec:
    return ContourSpec(
        kind=ContourKind.WEYL_LOOP,
        endpoint=max(4.0, 4.0 * branch_dist),
        circle_radius=spec.circle_radius_factor * branch_dist,
        nodes_per_unit=spec.nodes_per_unit,
        collapse=spec.collapse,
    )


def _branch_distance_order(z: complex) -> float:
    # integrand branch points sit at u = (+-1 - z)/sqrt(z^2-1)
    s = sqrt_zsq_minus_1(z)
    return min(abs((1.0 - z) / s), abs((-1.0 - z) / s))


def _branch_distance_degree(z: complex) -> float:
    # branch points of (u^2 + 2 z u + 1)^{...} at u = -z +- sqrt(z^2-1)
    s = sqrt_zsq_minus_1(z)
    return min(abs(-z + s), abs(-z - s))


def _standoff_ok(z: complex, dist: float) -> bool:
    # the positive ray must keep 10% clearance from the branch points
    s = sqrt_zsq_minus_1(z)
    pts = [(1.0 - z) / s, (-1.0 - z) / s, -z + s, -z - s]
    for p in pts:
        if abs(p.imag) < 0.1 * abs(p) and p.real > 0:
            return False
    return True


# ---------------------------------------------------------------------------
# order shifts
# ---------------------------------------------------------------------------


def frac_order_shift(kind: FunctionKind, do: DegreeOrder, arg: LegendreArgument,
                     spec: FracOpSpec, *, rel_tol: float = 1e-11,
                     phase_base: float = 0.0) -> EvalResult:
    """Shift the order by +lambda (raise) or -lambda (lower).

    Returns the shifted function value F(nu, mu +/- lambda; z) with the
    printed coefficient divided out.  The Weyl raise acting on the first
    kind is a two-term combination, not a pure shift; that case is exposed
    through :func:`order_raise_p_loop` instead.
    """
    if arg.domain_tag != "offcut":
        raise DomainError("fractional shifts are evaluated off the cut")
    nu, mu, lam, z = do.nu, do.mu, spec.lam, arg.z
    if not _standoff_ok(z, 0.0):
        raise DomainError(
            f"branch points too close to the ray contour for z = {z}")
    s = sqrt_zsq_minus_1(z)
    l2 = _log_zm1(z) + _log_zp1(z)

    if spec.operator is FracOperator.ORDER_RAISE:
        if spec.representation is Representation.WEYL:
            if kind.is_first_kind:
                raise DomainError(
                    "the ray-loop raise on the first kind is two-term; "
                    "use order_raise_p_loop")
            _require_condition(nu + mu + lam + 1.0, "nu+mu+lam+1")

            def f(u):
                Z = z + u * s
                lr = 0.5 * mu * (l2 - np.log(Z - 1.0) - np.log(Z + 1.0))
                return np.array(
                    [cmath.exp(lr[i]) * cmath.exp(-1j * math.pi * mu)
                     * _second_kind(nu, mu, complex(Z[i]))[0][0]
                     for i in range(len(u))], dtype=complex)

            contour = _weyl_contour(spec, z, _branch_distance_order(z))
            loop = loop_integral(f, contour, lam, rel_tol=rel_tol,
                                 vectorized=True, phase_base=phase_base)
            fac = cmath.exp(1j * math.pi * (mu + lam))
            if phase_base:
                fac *= cmath.exp(1j * lam * phase_base)
            return EvalResult(fac * loop.value, abs(fac) * loop.abs_error_est,
                              loop.terms_used)

        # finite-loop raise: valid for the first kind only, Re mu < 1
        if not kind.is_first_kind:
            raise NoRiemannRepresentation(
                "the finite-loop raise does not reproduce the second kind")
        _require_condition(1.0 - mu, "1-mu")
        u0 = cmath.exp(0.5 * (_log_zm1(z) - _log_zp1(z)))  # sqrt((z-1)/(z+1))
        # the loop endpoint maps to argument 1; rho absorbs the rounding
        # residual of that identity so Z'-1 stays exact near the endpoint
        rho = (z - 1.0) - u0 * s

        def f(u, d):
            out = np.empty(len(u), dtype=complex)
            for i in range(len(u)):
                zm1 = rho + d[i] * s          # Z' - 1, cancellation-free
                zp1 = (z + 1.0) - u[i] * s    # Z' + 1
                lr = 0.5 * mu * (l2 - cmath.log(zm1) - cmath.log(zp1))
                out[i] = cmath.exp(lr) * _first_kind_from_w(nu, mu, -0.5 * zm1)
            return out

        contour = ContourSpec(
            kind=ContourKind.RIEMANN_LOOP, endpoint=u0,
            circle_radius=spec.circle_radius_factor * abs(u0),
            nodes_per_unit=spec.nodes_per_unit, collapse=spec.collapse)
        loop = loop_integral(f, contour, lam, rel_tol=rel_tol,
                             endpoint_distance_aware=True, phase_base=phase_base)
        return EvalResult(loop.value, loop.abs_error_est, loop.terms_used)

    if spec.operator is not FracOperator.ORDER_LOWER:
        raise DomainError(f"not an order operator: {spec.operator}")

    # ---- lowering (ray loop only) ----
    if kind.is_first_kind:
        _check_coefficient_gammas((-nu - mu, nu - mu + 1.0), "first-kind lowering")
        _require_condition(nu - mu + lam + 1.0, "nu-mu+lam+1")
        _require_condition(-nu - mu + lam, "lam-nu-mu")
        ratio = _gamma_ratio((-nu - mu, nu - mu + 1.0),
                             (-nu - mu + lam, nu - mu + lam + 1.0))
    else:
        _check_coefficient_gammas((nu + mu - lam + 1.0, nu - mu + 1.0),
                                  "second-kind lowering")
        _require_condition(nu - mu + lam + 1.0, "nu-mu+lam+1")
        ratio = _gamma_ratio((nu + mu - lam + 1.0, nu - mu + 1.0),
                             (nu + mu + 1.0, nu - mu + lam + 1.0))

    def f(u):
        Z = z + u * s
        lr = 0.5 * mu * (np.log(Z - 1.0) + np.log(Z + 1.0) - l2)
        if kind.is_first_kind:
            return np.array(
                [cmath.exp(lr[i]) * _first_kind(nu, mu, complex(Z[i]))[0][0]
                 for i in range(len(u))], dtype=complex)
        return np.array(
            [cmath.exp(lr[i]) * cmath.exp(-1j * math.pi * mu)
             * _second_kind(nu, mu, complex(Z[i]))[0][0]
             for i in range(len(u))], dtype=complex)

    contour = _weyl_contour(spec, z, _branch_distance_order(z))
    loop = loop_integral(f, contour, lam, rel_tol=rel_tol,
                         vectorized=True, phase_base=phase_base)
    val = ratio * loop.value
    if not kind.is_first_kind:
        val = cmath.exp(1j * math.pi * (mu - lam)) * val
    if phase_base:
        val *= cmath.exp(1j * lam * phase_base)
    return EvalResult(val, abs(ratio) * loop.abs_error_est, loop.terms_used)


def order_raise_p_loop(do: DegreeOrder, arg: LegendreArgument,
                       spec: FracOpSpec, *, rel_tol: float = 1e-11) -> EvalResult:
    """Raw ray-loop raise applied to the first kind (a two-term combination).

    The value equals c_p P(nu, mu+lam; z) + c_q e^{-i pi (mu+lam)}
    Q(nu, mu+lam; z) with (c_p, c_q) from
    :func:`order_raise_p_decomposition`.
    """
    nu, mu, lam, z = do.nu, do.mu, spec.lam, arg.z
    _require_condition(nu + mu + lam + 1.0, "nu+mu+lam+1")
    _require_condition(-nu + mu + lam, "mu+lam-nu")
    s = sqrt_zsq_minus_1(z)
    l2 = _log_zm1(z) + _log_zp1(z)

    def f(u):
        Z = z + u * s
        lr = 0.5 * mu * (l2 - np.log(Z - 1.0) - np.log(Z + 1.0))
        return np.array(
            [cmath.exp(lr[i]) * _first_kind(nu, mu, complex(Z[i]))[0][0]
             for i in range(len(u))], dtype=complex)

    contour = _weyl_contour(spec, z, _branch_distance_order(z))
    return loop_integral(f, contour, lam, rel_tol=rel_tol, vectorized=True)


def order_raise_p_decomposition(do: DegreeOrder, lam: complex,
                                printed: bool = False) -> tuple[complex, complex]:
    """Coefficients (c_p, c_q) of the two-term raise on the first kind.

    With ``printed`` the second coefficient omits the 1/sin(pi(nu-mu-lam))
    factor, reproducing the uncorrected reading; the registry carries both
    and reports which one checks out.
    """
    nu, mu = do.nu, do.mu
    lam = complex(lam)
    den = cmath.sin(math.pi * (nu - mu - lam))
    if abs(den) < 1e-10:
        raise CoefficientVanishes("sin(pi(nu-mu-lam)) vanishes")
    c_p = cmath.sin(math.pi * (nu - mu)) / den
    c_q = -2.0 / math.pi * cmath.sin(math.pi * nu) * cmath.sin(math.pi * lam)
    if not printed:
        c_q = c_q / den
    return c_p, c_q


# ---------------------------------------------------------------------------
# degree shifts
# ---------------------------------------------------------------------------


def frac_degree_shift(kind: FunctionKind, do: DegreeOrder, arg: LegendreArgument,
                      spec: FracOpSpec, *, rel_tol: float = 1e-11) -> EvalResult:
    """Shift the degree by +lambda (raise) or -lambda (lower).

    The raise exists only as a ray loop and holds for both kinds; the
    lower holds for the first kind as a ray loop and for the second kind
    as a finite loop.  The ray-loop lower on the second kind is two-term
    and exposed through :func:`degree_lower_q_loop`.
    """
    if arg.domain_tag != "offcut":
        raise DomainError("fractional shifts are evaluated off the cut")
    nu, mu, lam, z = do.nu, do.mu, spec.lam, arg.z
    if not _standoff_ok(z, 0.0):
        raise DomainError(
            f"branch points too close to the ray contour for z = {z}")

    if spec.operator is FracOperator.DEGREE_RAISE:
        if not kind.is_first_kind:
            _require_condition(nu + lam + mu + 1.0, "nu+lam+mu+1")
        _require_condition(nu + lam - mu + 1.0, "nu+lam-mu+1")
        ratio = _gamma_ratio((nu - mu + 1.0,), (nu + lam - mu + 1.0,))
        evaluate = _first_kind_from_w if kind.is_first_kind else _second_kind_from_w

        def f(u):
            R2 = u * u + 2.0 * z * u + 1.0
            pref = np.exp(-0.5 * (nu + 1.0) * np.log(R2))
            return np.array(
                [pref[i] * evaluate(nu, mu, _degree_kernel_w(z, complex(u[i])))
                 for i in range(len(u))], dtype=complex)

        contour = _weyl_contour(spec, z, _branch_distance_degree(z))
        loop = loop_integral(f, contour, lam, rel_tol=rel_tol, vectorized=True)
        return EvalResult(ratio * loop.value, abs(ratio) * loop.abs_error_est,
                          loop.terms_used)

    if spec.operator is not FracOperator.DEGREE_LOWER:
        raise DomainError(f"not a degree operator: {spec.operator}")

    if spec.representation is Representation.WEYL:
        if not kind.is_first_kind:
            raise DomainError(
                "the ray-loop degree lower on the second kind is two-term; "
                "use degree_lower_q_loop")
        _check_coefficient_gammas((-nu - mu,), "first-kind degree lowering")
        _require_condition(-nu + lam - mu, "lam-nu-mu")
        ratio = _gamma_ratio((-nu - mu,), (-nu + lam - mu,))

        def f(u):
            R2 = u * u + 2.0 * z * u + 1.0
            pref = np.exp(0.5 * nu * np.log(R2))
            return np.array(
                [pref[i] * _first_kind_from_w(nu, mu, _degree_kernel_w(z, complex(u[i])))
                 for i in range(len(u))], dtype=complex)

        contour = _weyl_contour(spec, z, _branch_distance_degree(z))
        loop = loop_integral(f, contour, lam, rel_tol=rel_tol, vectorized=True)
        return EvalResult(ratio * loop.value, abs(ratio) * loop.abs_error_est,
                          loop.terms_used)

    # finite-loop lower: second kind only
    if kind.is_first_kind:
        raise NoRiemannRepresentation(
            "the finite-loop degree lower does not reproduce the first kind")
    _require_condition(nu + 1.5, "nu+3/2")
    ratio = _gamma_ratio((nu - lam + mu + 1.0,), (nu + mu + 1.0,))
    s = sqrt_zsq_minus_1(z)
    u0 = z - s  # root of u^2 - 2 z u + 1; the loop endpoint

    def f(u, d):
        # u^2 - 2zu + 1 = (u0 - u)(z + s - u) = d (2s + d): exact at the
        # endpoint where the integrand vanishes like d^{nu + 1/2}
        out = np.empty(len(u), dtype=complex)
        for i in range(len(u)):
            R2 = d[i] * (2.0 * s + d[i])
            W = (s + d[i]) / cmath.sqrt(R2)
            pref = cmath.exp(0.5 * nu * cmath.log(R2))
            out[i] = pref * _second_kind(nu, mu, W)[0][0]
        return out

    contour = ContourSpec(
        kind=ContourKind.RIEMANN_LOOP, endpoint=u0,
        circle_radius=spec.circle_radius_factor * abs(u0),
        nodes_per_unit=spec.nodes_per_unit, collapse=spec.collapse)
    loop = loop_integral(f, contour, lam, rel_tol=rel_tol,
                         endpoint_distance_aware=True)
    return EvalResult(ratio * loop.value, abs(ratio) * loop.abs_error_est,
                      loop.terms_used)


def degree_lower_q_loop(do: DegreeOrder, arg: LegendreArgument,
                        spec: FracOpSpec, *, rel_tol: float = 1e-11) -> EvalResult:
    """Ray-loop degree lower on the second kind, coefficient included.

    The value equals e^{-i pi mu} Q(nu-lam, mu; z) - pi cos(pi mu)
    sin(pi lam) / sin(pi(nu-lam+mu)) * P(nu-lam, mu; z).
    """
    nu, mu, lam, z = do.nu, do.mu, spec.lam, arg.z
    _require_condition(lam - nu + mu, "lam-nu+mu")
    _require_condition(lam - nu - mu, "lam-nu-mu")
    ratio = _gamma_ratio((nu - lam + mu + 1.0,), (nu + mu + 1.0,))

    def f(u):
        R2 = u * u + 2.0 * z * u + 1.0
        pref = np.exp(0.5 * nu * np.log(R2))
        return np.array(
            [pref[i] * cmath.exp(-1j * math.pi * mu)
             * _second_kind_from_w(nu, mu, _degree_kernel_w(z, complex(u[i])))
             for i in range(len(u))], dtype=complex)

    contour = _weyl_contour(spec, z, _branch_distance_degree(z))
    loop = loop_integral(f, contour, lam, rel_tol=rel_tol, vectorized=True)
    return EvalResult(ratio * loop.value, abs(ratio) * loop.abs_error_est,
                      loop.terms_used)


def degree_lower_q_decomposition(do: DegreeOrder, lam: complex,
                                 printed: bool = False) -> tuple[complex, complex]:
    """Coefficients (c_q, c_p) of the two-term degree lower on the second kind.

    The default form carries sin(pi(nu-mu))/sin(pi(nu-lam-mu)) on the
    second-kind term and the matching denominator on the first-kind term;
    it reduces to the integer-step recurrence at lam = 1 and is confirmed
    by the registry.  ``printed`` selects the uncorrected variant
    (c_q = 1, single sine denominator), kept so the registry can report
    the comparison.
    """
    nu, mu = do.nu, do.mu
    lam = complex(lam)
    den_p = cmath.sin(math.pi * (nu - lam + mu))
    den_m = cmath.sin(math.pi * (nu - lam - mu))
    if abs(den_p) < 1e-10 or abs(den_m) < 1e-10:
        raise CoefficientVanishes("sin(pi(nu-lam+-mu)) vanishes")
    if printed:
        c_q = 1.0 + 0.0j
        c_p = -math.pi * cmath.cos(math.pi * mu) * cmath.sin(math.pi * lam) / den_p
        return c_q, c_p
    c_q = cmath.sin(math.pi * (nu - mu)) / den_m
    c_p = (-math.pi * cmath.cos(math.pi * mu) * cmath.sin(math.pi * lam)
           / (den_p * den_m))
    return c_q, c_p
