"""The symmetric function A(s) = Gamma(s) zeta(s) L(s) / pi^s.

Four independent evaluation routes are provided:

* ``DIRECT_PRODUCT``  -- the product of the four factors;
* ``THETA_MELLIN``    -- the Mellin transform of (1 - theta_4^2) / 4, Re s > 0;
* ``HARMONIC_MELLIN`` -- the Mellin transform of the harmonic sum H, Re s > 1;
* ``SYMMETRIC_CONTINUATION`` -- the continuation through H on [pi, inf),
  valid on the whole plane except the poles s = 0, 1.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Tuple

import numpy as np

from . import quadrature as quad
from .core import (
    DEFAULT_PRECISION,
    DivisionNearZeroError,
    DomainError,
    EvalResult,
    Number,
    PoleError,
    Precision,
    RemovableSingularityError,
    as_complex,
    as_positive_real,
    cexpm1,
    cpow,
)
from .special_functions import (
    EPS,
    LN2,
    beta_L,
    gamma,
    rgamma,
    theta4,
    theta4_sq_deficit_array,
    zeta,
)

PI = math.pi
LOG_PI = math.log(PI)

# Imaginary parts of the zeros of L(1/2 + it) with 0 < t <= 30, located by a
# sign-change scan of the real function A(1/2 + it) refined by bisection.
L_ZEROS = (
    6.020948904697597,
    10.243770304166555,
    12.988098012312423,
    16.342607104587169,
    18.291993196123506,
    21.450611343983520,
    23.278376520459486,
    25.728756425089067,
    28.359634343025328,
    29.656384014593227,
)

# Below this x the harmonic sum equals pi/(4x) - 1/4 to far beyond double precision;
# the remainder (pi/x) H(pi^2/x) is smaller than 1e-40 there.
_H_ASYMPTOTIC_BELOW = 0.1


class ARoute(str, Enum):
    DIRECT_PRODUCT = "direct"
    THETA_MELLIN = "theta"
    HARMONIC_MELLIN = "harmonic"
    SYMMETRIC_CONTINUATION = "symmetric"


def _harmonic_terms(x: float, tol: float) -> int:
    # tail after N terms is at most exp(-(N+1)x) / (1 - exp(-x)); relative to H ~ exp(-x)
    return max(1, math.ceil((math.log(10.0 / tol) - math.log(-math.expm1(-x))) / x))


def _harmonic_direct(x: float, n_terms: int) -> float:
    n = np.arange(1, n_terms + 1, dtype=float)
    e = np.exp(-n * x)
    return float(np.sum(e / (1.0 + e * e)))


def harmonic_sum_H(x: float, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """``H(x) = sum_{n>=1} e^{-nx} / (1 + e^{-2nx})``, the harmonic sum.

    When the direct series would exceed ``max_terms`` the value is produced
    from ``pi/(4x) - 1/4 + (pi/x) H(pi^2/x)`` instead.
    """
    x = as_positive_real(x)
    # the terms are cheap, so sum to double precision whatever the target
    n_terms = _harmonic_terms(x, min(prec.target_tol, 1e-17))
    if n_terms <= prec.max_terms:
        value = _harmonic_direct(x, n_terms)
        tail = math.exp(-(n_terms + 1) * x) / -math.expm1(-x)
        return EvalResult(complex(value), tail + EPS * value, n_terms)
    dual = harmonic_sum_H(PI * PI / x, prec)
    value = PI / (4.0 * x) - 0.25 + (PI / x) * dual.value.real
    return EvalResult(complex(value), (PI / x) * dual.err_estimate + 4 * EPS * value, dual.terms_used)


def harmonic_sum_array(x: np.ndarray, tol: float = 1e-16) -> np.ndarray:
    """Vectorised ``H`` for quadrature nodes (any x > 0)."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x < _H_ASYMPTOTIC_BELOW
    out[small] = PI / (4.0 * x[small]) - 0.25
    xb = x[~small]
    if xb.size:
        n_max = _harmonic_terms(float(np.min(xb)), tol)
        n = np.arange(1, n_max + 1, dtype=float)[:, None]
        e = np.exp(-n * xb)
        out[~small] = np.sum(e / (1.0 + e * e), axis=0)
    return out


def check_H_transformation(x: float, prec: Precision = DEFAULT_PRECISION) -> float:
    """``|H(x) - [pi/(4x) - 1/4 + (pi/x) H(pi^2/x)]|``."""
    x = as_positive_real(x)
    lhs = harmonic_sum_H(x, prec).value.real
    rhs = PI / (4.0 * x) - 0.25 + (PI / x) * harmonic_sum_H(PI * PI / x, prec).value.real
    return abs(lhs - rhs)


def _check_poles(s: complex, prec: Precision) -> None:
    if abs(s) < prec.pole_exclusion:
        raise PoleError("A(s) has a pole at s = 0")
    if abs(s - 1.0) < prec.pole_exclusion:
        raise PoleError("A(s) has a pole at s = 1")


def _a_direct(s: complex, prec: Precision) -> EvalResult:
    n = round(s.real)
    if n <= -1 and abs(s - n) < prec.pole_exclusion:
        # Gamma's pole meets a trivial zero of zeta or L; the cancelled product
        # reduces to pi^(s-1) Gamma(1-s) zeta(1-s) L(1-s)
        w = 1.0 - s
        parts = [gamma(w, prec), zeta(w, prec), beta_L(w, prec)]
        scale = cpow(PI, -w)
    else:
        parts = [gamma(s, prec), zeta(s, prec), beta_L(s, prec)]
        scale = cpow(PI, -s)
    value = scale
    rel = 4 * EPS
    for p in parts:
        value *= p.value
        rel += p.err_estimate / abs(p.value) if p.value != 0 else math.inf
    err = abs(value) * rel if math.isfinite(rel) else sum(p.err_estimate for p in parts)
    return EvalResult(value, err, sum(p.terms_used for p in parts))


def _a_theta(s: complex, prec: Precision) -> EvalResult:
    if s.real <= 0:
        raise DomainError("theta-Mellin route requires Re(s) > 0")
    period = 2.0 * PI / LN2
    k = round(s.imag / period)
    if k != 0 and abs(s - complex(1.0, k * period)) < prec.pole_exclusion:
        raise RemovableSingularityError("1 - 2^(1-s) vanishes here; theta-Mellin route refused")
    # Q(x) = 1/4 - theta_4^2 / 4 on (0, pi]: the constant integrates in closed
    # form and the remainder vanishes faster than any power at 0.
    head_spec = quad.IntegrandSpec(
        lambda x: -0.25 * theta4(x) ** 2 * np.exp((s - 1.0) * np.log(x)),
        left_exponent=max(s.real, 1.0),
        vectorized=True,
    )
    tail_spec = quad.IntegrandSpec(
        lambda x: theta4_sq_deficit_array(x) * np.exp((s - 1.0) * np.log(x)),
        left_exponent=s.real,
        vectorized=True,
    )
    head = quad.integrate_head(head_spec, PI, prec)
    tail = quad.integrate_tail(tail_spec, PI, prec)
    mellin = cpow(PI, s) / (4.0 * s) + head.value + tail.value
    factor = cpow(PI, -s) / -cexpm1((1.0 - s) * LN2)
    value = factor * mellin
    err = abs(factor) * (head.err_estimate + tail.err_estimate) + 4 * EPS * abs(value)
    return EvalResult(value, err, head.terms_used + tail.terms_used)


def _a_harmonic(s: complex, prec: Precision) -> EvalResult:
    if s.real <= 1:
        raise DomainError("harmonic-Mellin route requires Re(s) > 1")
    spec = quad.IntegrandSpec(
        lambda x: harmonic_sum_array(x) * np.exp((s - 1.0) * np.log(x)),
        left_exponent=s.real - 1.0,
        vectorized=True,
    )
    res = quad.integrate_semi_infinite(spec, prec)
    factor = cpow(PI, -s)
    return EvalResult(factor * res.value, abs(factor) * res.err_estimate, res.terms_used)


def harmonic_tail_integrals(s: complex, prec: Precision = DEFAULT_PRECISION) -> Tuple[EvalResult, EvalResult]:
    """``int_pi^inf H(x) x^(s-1) dx`` and ``int_pi^inf H(x) x^(-s) dx``."""
    s = as_complex(s)
    first = quad.integrate_tail(
        quad.IntegrandSpec(lambda x: harmonic_sum_array(x) * np.exp((s - 1.0) * np.log(x)), vectorized=True),
        PI,
        prec,
    )
    second = quad.integrate_tail(
        quad.IntegrandSpec(lambda x: harmonic_sum_array(x) * np.exp(-s * np.log(x)), vectorized=True),
        PI,
        prec,
    )
    return first, second


def _a_symmetric(s: complex, prec: Precision) -> EvalResult:
    first, second = harmonic_tail_integrals(s, prec)
    p1 = cpow(PI, -s)
    p2 = cpow(PI, s - 1.0)
    value = 1.0 / (4.0 * s * (s - 1.0)) + p1 * first.value + p2 * second.value
    err = abs(p1) * first.err_estimate + abs(p2) * second.err_estimate + 4 * EPS * abs(value)
    return EvalResult(value, err, first.terms_used + second.terms_used)


_ROUTES = {
    ARoute.DIRECT_PRODUCT: _a_direct,
    ARoute.THETA_MELLIN: _a_theta,
    ARoute.HARMONIC_MELLIN: _a_harmonic,
    ARoute.SYMMETRIC_CONTINUATION: _a_symmetric,
}


def A(s: Number, route: ARoute | str = ARoute.DIRECT_PRODUCT, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """Evaluate ``A(s) = Gamma(s) zeta(s) L(s) pi^-s`` along ``route``.

    Raises PoleError within ``prec.pole_exclusion`` of 0 or 1 and DomainError
    when ``s`` lies outside the half-plane a Mellin route needs.
    """
    s = as_complex(s)
    route = ARoute(route)
    _check_poles(s, prec)
    return _ROUTES[route](s, prec)


def _check_l_zero(s: complex, prec: Precision) -> None:
    n = round(s.real)
    if n <= -1 and n % 2 == 1 and abs(s - n) < prec.pole_exclusion:
        raise DivisionNearZeroError(f"L(s) has a trivial zero at s = {n}")
    if abs(s.real - 0.5) < prec.pole_exclusion:
        for t0 in L_ZEROS:
            if abs(abs(s.imag) - t0) < prec.pole_exclusion:
                raise DivisionNearZeroError(f"L(s) vanishes near s = 1/2 + {t0:.6f}i")


def _theorem1_bracket(s: complex, prec: Precision) -> EvalResult:
    """``1/(4s(s-1)) + int_pi^inf H(x) [(x/pi)^s + (x/pi)^(1-s)] dx / x``."""
    spec = quad.IntegrandSpec(
        lambda x: harmonic_sum_array(x)
        * (np.exp(s * np.log(x / PI)) + np.exp((1.0 - s) * np.log(x / PI)))
        / x,
        vectorized=True,
    )
    integral = quad.integrate_tail(spec, PI, prec)
    value = 1.0 / (4.0 * s * (s - 1.0)) + integral.value
    return EvalResult(value, integral.err_estimate + 4 * EPS * abs(value), integral.terms_used)


def zeta_via_theorem1(s: Number, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """Riemann zeta from the harmonic-sum continuation formula.

    ``zeta(s) = pi^s / (Gamma(s) L(s)) * {1/(4s(s-1)) + int_pi^inf H(x)[(x/pi)^s + (x/pi)^(1-s)] dlog x}``
    """
    s = as_complex(s)
    _check_poles(s, prec)
    _check_l_zero(s, prec)
    lval = beta_L(s, prec)
    if abs(lval.value) <= 10 * lval.err_estimate:
        raise DivisionNearZeroError("L(s) is numerically zero at this point")
    bracket = _theorem1_bracket(s, prec)
    factor = cpow(PI, s) * rgamma(s) / lval.value
    value = factor * bracket.value
    rel = lval.err_estimate / abs(lval.value) + 8 * EPS
    err = abs(factor) * bracket.err_estimate + abs(value) * rel
    return EvalResult(value, err, bracket.terms_used + lval.terms_used)


def residue_at_one(prec: Precision = DEFAULT_PRECISION, method: str = "theorem1") -> float:
    """Richardson-extrapolated ``lim_{s->1} (s-1) zeta(s)``.

    ``method="theorem1"`` uses :func:`zeta_via_theorem1`, ``"direct"`` the
    eta-based :func:`zeta`.
    """
    fn = {"theorem1": zeta_via_theorem1, "direct": zeta}[method]
    hs = (1e-2, 5e-3, 2.5e-3)
    f = [(h * fn(1.0 + h, prec).value).real for h in hs]
    # remove the O(h) then the O(h^2) term of the regular part
    r1 = [2.0 * f[1] - f[0], 2.0 * f[2] - f[1]]
    return (4.0 * r1[1] - r1[0]) / 3.0
