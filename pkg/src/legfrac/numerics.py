"""Complex gamma/log-gamma/digamma and the Gauss hypergeometric function.

The 2F1 evaluator sums the defining series for small arguments and otherwise
selects among the standard argument transformations

    w -> w/(w-1)   (no gamma splitting),
    w -> 1-w       (splits via Gamma(c-a-b)),
    w -> 1/w       (splits via Gamma(b-a)),

by smallest mapped argument.  Integer-parameter-difference degeneracies of
the splitting transformations are handled by the logarithmic limit series,
with a two-point average of perturbed parameters as the near-degenerate
fallback.

All functions are pure and deterministic; values are plain complex numbers
wrapped in :class:`EvalResult` with a cheap, conservative error estimate
(twice the last included series term, propagated linearly through
transformations).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import NoConvergence, ParameterPole, PoleAtNonpositiveInteger

__all__ = [
    "EvalResult",
    "gamma_complex",
    "loggamma_complex",
    "digamma_complex",
    "hyp2f1",
]

# pole / integer detection tolerance used throughout the package
INTEGER_TOL = 1e-12
# below this distance from an integer, splitting transformations switch to
# the logarithmic limit series; between the two, to the two-point average
DEGENERATE_EXACT_TOL = 1e-13
DEGENERATE_NEAR_TOL = 1e-6
_RICHARDSON_EPS = 1e-5

_MAX_TERMS = 2000
_EPS = 2.220446049250313e-16
_LOG_SQRT_2PI = 0.9189385332046727417803297364056176

# Stirling tail coefficients B_{2k}/(2k(2k-1)) for log-gamma, k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_STIRLING_MIN_ABS = 18.0

# Bernoulli numbers B_2 .. B_14 for the digamma asymptotic tail
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)


@dataclass(frozen=True)
class EvalResult:
    """A complex value with an absolute-error estimate and work counter."""

    value: complex
    abs_error_est: float
    terms_used: int

    def __complex__(self) -> complex:
        return self.value


def _nonpositive_int_distance(w: complex) -> float:
    """Distance from w to the nearest nonpositive integer (inf if Re w > 0.5)."""
    if w.real > 0.5:
        return math.inf
    n = round(w.real)
    if n > 0:
        return math.inf
    return abs(w - n)


def is_nonpositive_integer(w: complex, tol: float = INTEGER_TOL) -> bool:
    return _nonpositive_int_distance(complex(w)) <= tol


def _loggamma_right(z: complex) -> complex:
    # valid for Re z >= 0.5: recurrence into |z| >= 18, then Stirling
    shift = 0.0 + 0.0j
    while abs(z) < _STIRLING_MIN_ABS:
        shift += cmath.log(z)
        z = z + 1.0
    inv2 = 1.0 / (z * z)
    tail = 0.0 + 0.0j
    p = 1.0 / z
    for c in _STIRLING:
        tail += c * p
        p *= inv2
    return (z - 0.5) * cmath.log(z) - z + _LOG_SQRT_2PI + tail - shift


def _log_sin_pi(z: complex) -> complex:
    """log(sin(pi z)), overflow-safe for large |Im z|.  Branch unspecified."""
    if abs(z.imag) < 20.0:
        return cmath.log(cmath.sin(math.pi * z))
    if z.imag > 0:
        # sin(pi z) = -e^{-i pi z}(1 - e^{2 i pi z}) / (2i)
        return -1j * math.pi * z - cmath.log(2j) + cmath.log(1 - cmath.exp(2j * math.pi * z))
    return 1j * math.pi * z + cmath.log(0.5j) + cmath.log(1 - cmath.exp(-2j * math.pi * z))


def _gamma(w: complex) -> complex:
    """Gamma(w) for complex w, poles unchecked."""
    if w.real < 0.5:
        s = cmath.sin(math.pi * w)
        return math.pi / (s * cmath.exp(_loggamma_right(1.0 - w)))
    return cmath.exp(_loggamma_right(w))


def _loggamma(w: complex) -> complex:
    """Some branch of log Gamma(w); exp() of differences is always exact."""
    if w.real < 0.5:
        return math.log(math.pi) - _log_sin_pi(w) - _loggamma_right(1.0 - w)
    return _loggamma_right(w)


def _gamma_ratio(num: tuple[complex, ...], den: tuple[complex, ...]) -> complex:
    """prod Gamma(num) / prod Gamma(den) via log-gamma differences.

    Returns 0 when a denominator argument sits on a pole; raises on a
    numerator pole.
    """
    for w in num:
        if is_nonpositive_integer(w):
            raise PoleAtNonpositiveInteger(f"gamma pole in ratio numerator at {w}")
    for w in den:
        if is_nonpositive_integer(w):
            return 0.0 + 0.0j
    s = 0.0 + 0.0j
    for w in num:
        s += _loggamma(w)
    for w in den:
        s -= _loggamma(w)
    return cmath.exp(s)


def gamma_complex(w: complex) -> EvalResult:
    """Gamma function of a complex argument.

    Reflection is used for Re w < 0.5.  Raises
    :class:`PoleAtNonpositiveInteger` within 1e-12 of a pole.
    """
    w = complex(w)
    if is_nonpositive_integer(w):
        raise PoleAtNonpositiveInteger(f"gamma pole at {w}")
    val = _gamma(w)
    return EvalResult(val, 2e-14 * abs(val), 9)


def loggamma_complex(w: complex) -> EvalResult:
    """A branch of log Gamma(w); differences of these exponentiate exactly."""
    w = complex(w)
    if is_nonpositive_integer(w):
        raise PoleAtNonpositiveInteger(f"log-gamma pole at {w}")
    val = _loggamma(w)
    return EvalResult(val, 1e-13 * max(1.0, abs(val)), 9)


def _digamma(w: complex) -> complex:
    if w.real < 0.5:
        # psi(w) = psi(1-w) - pi cot(pi w)
        return _digamma(1.0 - w) - math.pi / cmath.tan(math.pi * w)
    acc = 0.0 + 0.0j
    while w.real < 12.0:
        acc -= 1.0 / w
        w = w + 1.0
    inv2 = 1.0 / (w * w)
    tail = 0.0 + 0.0j
    p = inv2
    for n, b in enumerate(_BERNOULLI, start=1):
        tail += b / (2 * n) * p
        p *= inv2
    return acc + cmath.log(w) - 0.5 / w - tail


def digamma_complex(w: complex) -> EvalResult:
    w = complex(w)
    if is_nonpositive_integer(w):
        raise PoleAtNonpositiveInteger(f"digamma pole at {w}")
    val = _digamma(w)
    return EvalResult(val, 1e-13 * max(1.0, abs(val)), 7)


# ---------------------------------------------------------------------------
# Gauss hypergeometric function
# ---------------------------------------------------------------------------


def _series(a: complex, b: complex, c: complex, w: complex,
            max_terms: int = _MAX_TERMS) -> tuple[complex, float, int]:
    """Direct power series; returns (sum, error bound, terms)."""
    s = 1.0 + 0.0j
    t = 1.0 + 0.0j
    small = 0
    for k in range(max_terms):
        t = t * (a + k) * (b + k) / ((c + k) * (k + 1)) * w
        s += t
        if abs(t) <= _EPS * abs(s):
            small += 1
            if small >= 2:
                return s, 2.0 * abs(t) + _EPS * abs(s), k + 1
        else:
            small = 0
    raise NoConvergence(
        f"2F1 series did not converge in {max_terms} terms at w={w}")


def _terminating(a: complex, b: complex, c: complex, w: complex,
                 n: int) -> tuple[complex, float, int]:
    """Terminating series of exactly n+1 terms (a snapped to -n)."""
    s = 1.0 + 0.0j
    t = 1.0 + 0.0j
    for k in range(n):
        t = t * (-n + k) * (b + k) / ((c + k) * (k + 1)) * w
        s += t
    return s, _EPS * abs(s) * (n + 1), n + 1


def _log1w(w: complex) -> complex:
    # log(1 - w), principal; callers ensure w is off [1, inf)
    return cmath.log(1.0 - w)


def _pow(base: complex, expo: complex) -> complex:
    return cmath.exp(expo * cmath.log(base))


def _one_minus_generic(a, b, c, w):
    """Connection at 1-w, generic c-a-b (DLMF 15.8.4 shape)."""
    u = 1.0 - w
    cab = c - a - b
    g1 = _gamma_ratio((c, cab), (c - a, c - b))
    g2 = _gamma_ratio((c, -cab), (a, b))
    f1, e1, n1 = _series(a, b, 1.0 - cab, u) if g1 != 0.0 else (0.0j, 0.0, 0)
    f2, e2, n2 = _series(c - a, c - b, 1.0 + cab, u) if g2 != 0.0 else (0.0j, 0.0, 0)
    p = _pow(u, cab)
    val = g1 * f1 + g2 * p * f2
    err = abs(g1) * e1 + abs(g2 * p) * e2 + _EPS * abs(val)
    return val, err, n1 + n2


def _one_minus_log(a, b, c, w, m):
    """Limit series at 1-w for c = a+b+m with integer m >= 0."""
    u = 1.0 - w
    lu = _log1w(w)
    if m == 0:
        pref = _gamma_ratio((c,), (a, b))
        s = 0.0 + 0.0j
        t = 1.0 + 0.0j
        n = 0
        psa, psb, ps1 = _digamma(a), _digamma(b), _digamma(1.0)
        last = 0.0
        for n in range(_MAX_TERMS):
            if n > 0:
                t = t * (a + n - 1) * (b + n - 1) / (n * n) * u
                psa += 1.0 / (a + n - 1)
                psb += 1.0 / (b + n - 1)
                ps1 += 1.0 / n
            term = t * (2.0 * ps1 - psa - psb - lu)
            s += term
            last = abs(term)
            if last <= _EPS * abs(s) and n > 2:
                break
        else:
            raise NoConvergence("logarithmic 1-w series (m=0) did not converge")
        val = pref * s
        return val, abs(pref) * 2.0 * last + _EPS * abs(val), n + 1

    # finite part
    s1 = 0.0 + 0.0j
    t = 1.0 + 0.0j
    for n in range(m):
        if n > 0:
            t = t * (a + n - 1) * (b + n - 1) / (n * (n - m)) * u
        s1 += t
    g1 = _gamma_ratio((float(m), c), (a + m, b + m))

    # logarithmic part; term normalization is 1/(n! (n+m)!), so t_0 = 1/m!
    g2 = _gamma_ratio((c,), (a, b))
    sign = -1.0 if m % 2 else 1.0
    psa, psb = _digamma(a + m), _digamma(b + m)
    ps1, psm = _digamma(1.0), _digamma(1.0 + m)
    t = 1.0 / math.factorial(m) + 0.0j
    s2 = 0.0 + 0.0j
    last = 0.0
    n = 0
    for n in range(_MAX_TERMS):
        if n > 0:
            t = t * (a + m + n - 1) * (b + m + n - 1) / (n * (n + m)) * u
            psa += 1.0 / (a + m + n - 1)
            psb += 1.0 / (b + m + n - 1)
            ps1 += 1.0 / n
            psm += 1.0 / (m + n)
        term = t * (lu - ps1 - psm + psa + psb)
        s2 += term
        last = abs(term)
        if last <= _EPS * abs(s2) and n > 2:
            break
    else:
        raise NoConvergence("logarithmic 1-w series did not converge")
    um = u**m
    val = g1 * s1 - sign * g2 * um * s2
    err = abs(g2 * um) * 2.0 * last + _EPS * (abs(g1 * s1) + abs(val))
    return val, err, m + n + 1


def _one_minus(a, b, c, w):
    cab = c - a - b
    m = round(cab.real)
    d = abs(cab - m)
    if d < DEGENERATE_EXACT_TOL:
        if m >= 0:
            return _one_minus_log(a, b, c, w, m)
        # Euler transformation flips the sign of m
        val, err, n = _one_minus_log(c - a, c - b, c, w, -m)
        p = _pow(1.0 - w, cab)
        return p * val, abs(p) * err, n
    if d < DEGENERATE_NEAR_TOL:
        e = _RICHARDSON_EPS
        v1, e1, n1 = _one_minus_generic(a, b, c + e, w)
        v2, e2, n2 = _one_minus_generic(a, b, c - e, w)
        val = 0.5 * (v1 + v2)
        # O(eps^2) centered-limit error plus cancellation amplification
        err = 0.5 * (e1 + e2) + abs(val) * (e * e + _EPS / e)
        return val, err, n1 + n2
    return _one_minus_generic(a, b, c, w)


def _recip_generic(a, b, c, w):
    """Connection at 1/w, generic a-b (DLMF 15.8.2 shape)."""
    ba = b - a
    g1 = _gamma_ratio((c, ba), (b, c - a))
    g2 = _gamma_ratio((c, -ba), (a, c - b))
    wi = 1.0 / w
    f1, e1, n1 = _series(a, a - c + 1.0, 1.0 - ba, wi) if g1 != 0.0 else (0.0j, 0.0, 0)
    f2, e2, n2 = _series(b, b - c + 1.0, 1.0 + ba, wi) if g2 != 0.0 else (0.0j, 0.0, 0)
    pa = _pow(-w, -a)
    pb = _pow(-w, -b)
    val = g1 * pa * f1 + g2 * pb * f2
    err = abs(g1 * pa) * e1 + abs(g2 * pb) * e2 + _EPS * abs(val)
    return val, err, n1 + n2


def _recip_log(a, b, c, w, m):
    """Limit series at 1/w for b = a+m with integer m >= 0."""
    wi = 1.0 / w
    lw = cmath.log(-w)
    if m == 0:
        pref = _gamma_ratio((c,), (a, c - a))
        pa = _pow(-w, -a)
        s = 0.0 + 0.0j
        t = 1.0 + 0.0j
        psa, ps1 = _digamma(a), _digamma(1.0)
        psca = _digamma(c - a)  # psi(c-a-n) stepped downward
        last = 0.0
        n = 0
        for n in range(_MAX_TERMS):
            if n > 0:
                t = t * (a + n - 1) * (1.0 - c + a + n - 1) / (n * n) * wi
                psa += 1.0 / (a + n - 1)
                ps1 += 1.0 / n
                psca -= 1.0 / (c - a - n)
            term = t * (lw + 2.0 * ps1 - psa - psca)
            s += term
            last = abs(term)
            if last <= _EPS * abs(s) and n > 2:
                break
        else:
            raise NoConvergence("logarithmic 1/w series (m=0) did not converge")
        val = pref * pa * s
        return val, abs(pref * pa) * 2.0 * last + _EPS * abs(val), n + 1

    # finite part
    s1 = 0.0 + 0.0j
    t = 1.0 + 0.0j
    for n in range(m):
        if n > 0:
            t = t * (a + n - 1) * (1.0 - c + a + n - 1) / (n * (n - m)) * wi
        s1 += t
    g1 = _gamma_ratio((float(m), c), (a + m, c - a))

    # logarithmic part; term normalization is 1/(n! (n+m)!), so t_0 = 1/m!
    g2 = _gamma_ratio((c,), (a, c - a - m))
    sign = -1.0 if m % 2 else 1.0
    t = 1.0 / math.factorial(m) + 0.0j
    s2 = 0.0 + 0.0j
    psa, ps1 = _digamma(a + m), _digamma(1.0)
    psm = _digamma(1.0 + m)
    psc = _digamma(c - a - m)  # psi(c-a-m-n)
    last = 0.0
    n = 0
    for n in range(_MAX_TERMS):
        if n > 0:
            t = t * (a + m + n - 1) * (1.0 - c + a + m + n - 1) / (n * (n + m)) * wi
            psa += 1.0 / (a + m + n - 1)
            ps1 += 1.0 / n
            psm += 1.0 / (m + n)
            psc -= 1.0 / (c - a - m - n)
        term = t * (lw + ps1 + psm - psa - psc)
        s2 += term
        last = abs(term)
        if last <= _EPS * abs(s2) and n > 2:
            break
    else:
        raise NoConvergence("logarithmic 1/w series did not converge")
    pa = _pow(-w, -a)
    pam = _pow(-w, -a - float(m))
    val = g1 * pa * s1 + sign * g2 * pam * s2
    err = abs(g2 * pam) * 2.0 * last + _EPS * (abs(g1 * pa * s1) + abs(val))
    return val, err, m + n + 1


def _recip(a, b, c, w):
    ba = b - a
    m = round(ba.real)
    d = abs(ba - m)
    if d < DEGENERATE_EXACT_TOL:
        if m >= 0:
            return _recip_log(a, a + float(m), c, w, m)
        return _recip_log(b, b + float(-m), c, w, -m)
    if d < DEGENERATE_NEAR_TOL:
        e = _RICHARDSON_EPS
        v1, e1, n1 = _recip_generic(a + e, b, c, w)
        v2, e2, n2 = _recip_generic(a - e, b, c, w)
        val = 0.5 * (v1 + v2)
        err = 0.5 * (e1 + e2) + abs(val) * (e * e + _EPS / e)
        return val, err, n1 + n2
    return _recip_generic(a, b, c, w)


def hyp2f1(a: complex, b: complex, c: complex, w: complex) -> EvalResult:
    """Gauss hypergeometric function 2F1(a, b; c; w), principal branch.

    Terminating cases (a or b a nonpositive integer) are summed exactly.
    Otherwise the evaluation region is selected by the smallest of
    |w|, |w/(w-1)|, |1-w|, |1/w|; arguments on the cut [1, inf) or with all
    mapped moduli > 0.95 raise :class:`NoConvergence`.
    """
    a, b, c, w = complex(a), complex(b), complex(c), complex(w)

    na = _nonpositive_int_distance(a)
    nb = _nonpositive_int_distance(b)
    if nb <= INTEGER_TOL and (na > INTEGER_TOL or -round(b.real) <= -round(a.real)):
        a, b = b, a
        na = nb
    if na <= INTEGER_TOL:
        n = -round(a.real)
        dc = _nonpositive_int_distance(c)
        if dc <= INTEGER_TOL and -round(c.real) < n:
            raise ParameterPole(
                f"2F1 lower-parameter pole at c={c} before termination")
        s, e, k = _terminating(a, b, c, w, n)
        return EvalResult(s, e, k)

    if is_nonpositive_integer(c):
        raise ParameterPole(f"2F1 lower-parameter pole at c={c}")

    if w == 0.0:
        return EvalResult(1.0 + 0.0j, 0.0, 1)
    if w.imag == 0.0 and w.real >= 1.0:
        raise NoConvergence(f"argument {w} lies on the branch cut [1, inf)")

    routes = [("direct", abs(w))]
    if w != 1.0:
        routes.append(("pfaff", abs(w / (w - 1.0))))
    routes.append(("one_minus", abs(1.0 - w)))
    if abs(w) > 0.0:
        routes.append(("recip", 1.0 / abs(w)))
    routes.sort(key=lambda r: r[1])
    name, size = routes[0]
    if size > 0.95:
        raise NoConvergence(
            f"all transformation regions fail at w={w} (|w| and |1-w| near 1)")

    if name == "direct":
        s, e, n = _series(a, b, c, w)
        return EvalResult(s, e, n)
    if name == "pfaff":
        s, e, n = _series(a, c - b, c, w / (w - 1.0))
        p = _pow(1.0 - w, -a)
        return EvalResult(p * s, abs(p) * e, n)
    if name == "one_minus":
        s, e, n = _one_minus(a, b, c, w)
        return EvalResult(s, e, n)
    s, e, n = _recip(a, b, c, w)
    return EvalResult(s, e, n)


def hyp2f1_dw(a: complex, b: complex, c: complex, w: complex) -> EvalResult:
    """d/dw 2F1(a,b;c;w) = (ab/c) 2F1(a+1,b+1;c+1;w)."""
    r = hyp2f1(a + 1, b + 1, c + 1, w)
    f = a * b / c
    return EvalResult(f * r.value, abs(f) * r.abs_error_est, r.terms_used)
