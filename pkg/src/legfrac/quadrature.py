"""Loop-contour quadrature for fractional-power integrands.

A loop integral here is

    (1/2πi) e^{iπλ} Γ(λ+1) ∮ dt f(t) / t^{λ+1}

over either a ray loop (in from a finite truncation radius, around 0, back
out; the ray phase is 0 on the inward leg and 2π on the outward leg) or a
finite loop whose legs end at a given endpoint.  The numerical realization
is a keyhole: the two straight legs collapse into a single line integral
weighted by (e^{-2πiλ} - 1), and the small circle is handled by trapezoid
sampling whose Fourier modes are integrated against the exact t^{-λ-1}
moment factors, so the circle is spectrally exact for analytic integrands.

For integer λ the leg weight vanishes identically and the circle reduces to
a residue (Cauchy) evaluation.

Line legs use tanh-sinh quadrature: on a logarithmic variable for ray loops
(handles power-law decay at infinity), linear for finite loops (handles
integrable endpoint singularities).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .errors import (
    CollapseInvalid,
    DomainError,
    QuadratureFailure,
    TailNotConverged,
)
from .numerics import EvalResult, _loggamma

__all__ = ["ContourKind", "ContourSpec", "loop_integral", "tanh_sinh"]

# generous transformation range: endpoint singularities (b-x)^{-beta} need
# the double-exponential tail to run until the weight kills the blowup
_TS_TMAX = 6.0
_TS_FLOOR = 1e-280
_INTEGER_LAMBDA_TOL = 1e-12


class ContourKind(Enum):
    WEYL_LOOP = "WeylLoop"       # legs run to a truncation radius
    RIEMANN_LOOP = "RiemannLoop"  # legs end at a finite endpoint


@dataclass(frozen=True)
class ContourSpec:
    """Geometry and discretization of one loop contour.

    ``endpoint`` is the finite leg endpoint for a RIEMANN_LOOP and the
    truncation radius hint for a WEYL_LOOP (the tail is extended
    adaptively beyond it until the truncation estimate is small enough).
    ``circle_radius`` is the keyhole circle radius.  ``collapse`` replaces
    the keyhole by the plain line integral with weight (1 - e^{-2πiλ}),
    valid only for Re λ < 0.
    """

    kind: ContourKind
    endpoint: complex
    circle_radius: float
    nodes_per_unit: int = 40
    collapse: bool = False

    def __post_init__(self):
        if self.circle_radius <= 0.0:
            raise DomainError("circle radius must be positive")
        if abs(complex(self.endpoint)) <= self.circle_radius:
            raise DomainError("circle radius must lie inside the endpoint radius")
        if self.nodes_per_unit < 1:
            raise DomainError("nodes_per_unit must be >= 1")


def tanh_sinh(f: Callable, a: float, b: float, *, rel_tol: float = 1e-12,
              abs_tol: float = 1e-14, max_level: int = 9,
              min_level: int = 4,
              endpoint_aware: bool = False) -> tuple[complex, float, int]:
    """Tanh-sinh quadrature of a vectorized integrand on [a, b].

    ``f`` receives a numpy array of abscissas and returns an array of
    complex values.  Returns (integral, error estimate, evaluations).
    Nodes are placed by their exact distance to the nearer endpoint
    (2/(e^{2g}+1) rather than 1 - tanh g), so integrable endpoint
    singularities are resolved at full precision.  Deterministic: fixed
    node ladder, successive-level termination.

    With ``endpoint_aware`` the integrand is called as f(x, d, is_right)
    where d is the exact node distance to the nearer endpoint; this lets
    integrands with endpoint branch factors evaluate them without
    cancellation (the distance drops below machine epsilon relative to x).
    """
    half = 0.5 * (b - a)
    prev = None
    total_evals = 0
    est = math.inf
    value = 0.0 + 0.0j
    for level in range(min_level, max_level + 1):
        h = 1.0 / (1 << level)
        t = h * np.arange(0, int(_TS_TMAX / h) + 1)
        with np.errstate(over="ignore"):
            g = 0.5 * math.pi * np.sinh(t)
            delta = 2.0 * half / (np.exp(2.0 * g) + 1.0)  # distance to endpoint
            wgt = h * half * 0.5 * math.pi * np.cosh(t) / np.cosh(g) ** 2
        xr = b - delta
        xl = a + delta
        keep = (delta > _TS_FLOOR * max(1.0, abs(half))) & (wgt > _TS_FLOOR)
        # t=0 node is shared by both halves; count it once
        keep_l = keep.copy()
        keep_l[0] = False
        if endpoint_aware:
            vr = np.asarray(f(xr[keep], delta[keep], True), dtype=complex)
            vl = np.asarray(f(xl[keep_l], delta[keep_l], False), dtype=complex)
        else:
            vr = np.asarray(f(xr[keep]), dtype=complex)
            vl = np.asarray(f(xl[keep_l]), dtype=complex)
        total_evals += int(keep.sum()) + int(keep_l.sum())
        cur = complex(np.sum(vr * wgt[keep]) + np.sum(vl * wgt[keep_l]))
        if prev is not None:
            est = abs(cur - prev)
            value = cur
            if est <= max(abs_tol, rel_tol * abs(cur)):
                return cur, est, total_evals
        prev = cur
        value = cur
    return value, est, total_evals


def _circle_modes(f: Callable, radius: float, alpha: float, lam: complex,
                  n_nodes: int, vectorized: bool) -> tuple[complex, float, int]:
    """Circle contribution of the keyhole via trapezoid Fourier modes.

    Samples f on the circle, takes the DFT, and integrates each mode k
    against the exact moment of t^{-λ-1} over θ in [α, α+2π]:

        ∫ e^{i(k-λ)θ} dθ = e^{i(k-λ)α} (e^{-2πiλ} - 1) / (i(k-λ)),

    with the 2π limit at integer k = λ.  Aliasing is negligible for
    analytic f when the radius is well inside the nearest singularity.
    """
    m = np.arange(n_nodes)
    theta = alpha + 2.0 * math.pi * m / n_nodes
    pts = radius * np.exp(1j * theta)
    if vectorized:
        vals = np.asarray(f(pts), dtype=complex)
    else:
        vals = np.array([f(p) for p in pts], dtype=complex)
    coef = np.fft.fft(vals) / n_nodes  # coef[k] ~ c_k r^k e^{ik alpha}
    dk = np.arange(n_nodes) - lam
    w = cmath.exp(-2j * math.pi * lam) - 1.0
    factors = np.empty(n_nodes, dtype=complex)
    smallmask = np.abs(dk) < _INTEGER_LAMBDA_TOL
    factors[~smallmask] = w / (1j * dk[~smallmask])
    factors[smallmask] = 2.0 * math.pi
    # circle piece = i r^{-lam} e^{-i lam alpha} sum_k (c_k r^k) factor_k
    contrib = complex(np.sum(coef * factors))
    integral = 1j * radius ** (-lam) * cmath.exp(-1j * lam * alpha) * contrib
    err = float(np.abs(vals).max()) * abs(radius ** complex(-lam)) * 1e-14 if n_nodes else 0.0
    return integral, err, n_nodes


def loop_integral(integrand: Callable, contour: ContourSpec, lam: complex,
                  *, rel_tol: float = 1e-11, abs_tol: float = 1e-13,
                  vectorized: bool = False, endpoint_distance_aware: bool = False,
                  phase_base: float = 0.0) -> EvalResult:
    """(1/2πi) e^{iπλ} Γ(λ+1) times the loop integral of f(t)/t^{λ+1}.

    ``phase_base`` shifts the leg phases ((0, 2π) -> (phase_base,
    phase_base + 2π)), which multiplies the value by e^{-iλ·phase_base};
    the printed stepping coefficients transform the same way, so shifted
    function values are phase-route independent.  ``vectorized`` declares
    that the integrand accepts numpy arrays.  With
    ``endpoint_distance_aware`` (finite loops) the integrand is called as
    f(t, d) where d is the exact displacement from t to the loop endpoint,
    so endpoint branch factors can be formed without cancellation; this
    implies ``vectorized``.
    """
    lam = complex(lam)
    endpoint = complex(contour.endpoint)
    S = abs(endpoint)
    alpha = cmath.phase(endpoint) if endpoint != 0.0 else 0.0
    r = contour.circle_radius
    if endpoint_distance_aware:
        aware_f = integrand

        def integrand_v(ts):
            return aware_f(ts, endpoint - ts)
    elif not vectorized:
        scalar_f = integrand

        def integrand_v(ts):
            return np.array([scalar_f(t) for t in ts], dtype=complex)
    else:
        integrand_v = integrand

    integer_lam = abs(lam - round(lam.real)) < _INTEGER_LAMBDA_TOL and abs(lam.imag) < _INTEGER_LAMBDA_TOL
    leg_weight = cmath.exp(-2j * math.pi * lam) - 1.0
    phase_shift = cmath.exp(-1j * lam * phase_base) if phase_base else 1.0

    # ---- straight legs ----
    legs = 0.0 + 0.0j
    leg_err = 0.0
    evals = 0
    if integer_lam and not contour.collapse:
        legs = 0.0
    else:
        if contour.collapse:
            if lam.real >= 0.0:
                raise CollapseInvalid(
                    f"collapse requires Re lambda < 0, got {lam}")
            lo = 0.0
        else:
            lo = r
        direction = cmath.exp(1j * alpha)

        if contour.kind is ContourKind.WEYL_LOOP:
            # adaptively extend the truncation until the estimated tail
            # integral is small; the decay exponent is measured from
            # successive doublings so slow power-law tails are handled
            U = max(S, 1.0)
            tail_tol = max(abs_tol, rel_tol) * 1e-3
            ok = False
            prev_mag = None
            for _ in range(200):
                probe = complex(integrand_v(np.array([U * direction]))[0])
                mag = abs(probe) * U ** (-lam.real - 1.0) * U
                evals += 1
                if prev_mag is not None and mag > 0.0:
                    p = math.log2(prev_mag / mag) if prev_mag > mag else 0.0
                    if p > 0.05 and mag / p < tail_tol:
                        ok = True
                        break
                elif mag == 0.0:
                    ok = True
                    break
                prev_mag = mag
                U *= 2.0
            if not ok:
                raise TailNotConverged(
                    f"ray tail estimate did not fall below {tail_tol} by U={U}")

            if lo == 0.0:
                # collapsed weyl: split a small linear piece off the log leg
                lo_lin = min(1e-3 * U, 1.0)

                def g_lin(ss):
                    tt = ss * direction
                    return (integrand_v(tt) * np.power(ss, -lam - 1.0)
                            * direction ** (-lam))

                v1, e1, n1 = tanh_sinh(g_lin, 0.0, lo_lin,
                                       rel_tol=rel_tol, abs_tol=abs_tol)
                lo = lo_lin
            else:
                v1, e1, n1 = 0.0 + 0.0j, 0.0, 0

            def g_log(xx):
                ss = np.exp(xx)
                tt = ss * direction
                return (integrand_v(tt) * np.exp(-lam * xx)
                        * direction ** (-lam))

            v2, e2, n2 = tanh_sinh(g_log, math.log(lo), math.log(U),
                                   rel_tol=rel_tol, abs_tol=abs_tol)
            line = v1 + v2
            leg_err = e1 + e2
            evals += n1 + n2
        else:
            if endpoint_distance_aware:
                def g_lin(ss, dd, is_right):
                    tt = ss * direction
                    dist = (dd if is_right else S - ss) * direction
                    return (aware_f(tt, dist) * np.power(ss, -lam - 1.0)
                            * direction ** (-lam))

                line, leg_err, n = tanh_sinh(g_lin, lo, S, rel_tol=rel_tol,
                                             abs_tol=abs_tol, endpoint_aware=True)
            else:
                def g_lin(ss):
                    tt = ss * direction
                    return (integrand_v(tt) * np.power(ss, -lam - 1.0)
                            * direction ** (-lam))

                line, leg_err, n = tanh_sinh(g_lin, lo, S,
                                             rel_tol=rel_tol, abs_tol=abs_tol)
            evals += n
        legs = leg_weight * line

    if contour.collapse:
        # prefactor * leg weight collapses to 1/Gamma(-lam), finite even at
        # negative integer lam where the loop prefactor alone is singular
        pref = cmath.exp(-_loggamma(-lam))
        value = pref * line * phase_shift
        abs_err = abs(pref) * leg_err
        if not cmath.isfinite(value):
            raise QuadratureFailure(
                f"loop integral produced non-finite value {value}")
        return EvalResult(value, abs_err, evals)

    # ---- circle ----
    n_circle = max(64, 8 * contour.nodes_per_unit)
    circ, circ_err, n_c = _circle_modes(integrand_v, r, alpha, lam,
                                        n_circle, True)
    evals += n_c

    total = (legs + circ) * phase_shift
    err = (leg_err * abs(leg_weight) + circ_err) * abs(phase_shift)

    pref = cmath.exp(1j * math.pi * lam + _loggamma(lam + 1.0)) / (2j * math.pi)
    value = pref * total
    abs_err = abs(pref) * err
    if not cmath.isfinite(value):
        raise QuadratureFailure(f"loop integral produced non-finite value {value}")
    return EvalResult(value, abs_err, evals)
