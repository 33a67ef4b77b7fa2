"""Gamma, zeta, eta, Dirichlet beta, theta deficits and a prime sieve.

Every evaluator works in double precision on the whole plane: the right
half-plane uses series, the left half-plane the classical reflection
formulae of Euler.
"""

from __future__ import annotations

import cmath
import math
from typing import List

import numpy as np

from .core import (
    DEFAULT_PRECISION,
    DomainError,
    EvalResult,
    NonConvergenceError,
    Number,
    PoleError,
    Precision,
    RemovableSingularityError,
    as_complex,
    as_positive_real,
    cexpm1,
    cpow,
)

EPS = 2.220446049250313e-16
LN2 = math.log(2.0)
LOG_PI = math.log(math.pi)
SQRT_2PI = math.sqrt(2.0 * math.pi)
# 3 + sqrt(8): convergence rate of the Chebyshev-weighted alternating sums
CVZ_RATE = 3.0 + math.sqrt(8.0)

# Lanczos approximation, g = 7, nine terms (relative error ~1e-15 for Re z >= 1/2)
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LANCZOS_REL_ERR = 2e-15


def _lanczos_rel_err(s: complex) -> float:
    # phase rounding in exp(log) grows with |Im s|
    return _LANCZOS_REL_ERR + 1e-14 * abs(s.imag)


def sinpi(z: complex) -> complex:
    """``sin(pi z)`` with the real part reduced exactly so zeros at integers stay sharp."""
    z = complex(z)
    r = z - 2.0 * round(z.real / 2.0)
    if r.real > 0.5:
        r = 1.0 - r
    elif r.real < -0.5:
        r = -1.0 - r
    if r.imag == 0.0:
        return complex(math.sin(math.pi * r.real), 0.0)
    return cmath.sin(math.pi * r)


def cospi(z: complex) -> complex:
    """``cos(pi z)``, exact zeros at half-integers."""
    z = complex(z)
    r = z - 2.0 * round(z.real / 2.0)
    if r.real < 0.0:
        r = -r
    return sinpi(0.5 - r)


def chi4(k: int) -> int:
    """The non-principal character mod 4: 0 for even k, +1 for k = 1 mod 4, -1 for k = 3 mod 4."""
    if k % 2 == 0:
        return 0
    return 1 if k % 4 == 1 else -1


def _nearest_nonpositive_integer(s: complex) -> int | None:
    n = round(s.real)
    return n if n <= 0 else None


def _lanczos(s: complex) -> complex:
    z = s - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    tt = z + _LANCZOS_G + 0.5
    return SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(tt) - tt) * acc


def gamma(s: Number, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """Euler's Gamma function.

    Lanczos approximation for ``Re s >= 1/2``; the complement formula
    ``Gamma(s) Gamma(1-s) = pi / sin(pi s)`` for the rest of the plane.
    """
    s = as_complex(s)
    n = _nearest_nonpositive_integer(s)
    if n is not None and abs(s - n) < prec.pole_exclusion:
        raise PoleError(f"Gamma has a pole at s = {n}")
    if s.real >= 0.5:
        value = _lanczos(s)
        return EvalResult(value, _lanczos_rel_err(s) * abs(value), len(_LANCZOS_COEF))
    mirror = _lanczos(1.0 - s)
    value = math.pi / (sinpi(s) * mirror)
    return EvalResult(value, 2.0 * _lanczos_rel_err(s) * abs(value), len(_LANCZOS_COEF))


def rgamma(s: Number, prec: Precision = DEFAULT_PRECISION) -> complex:
    """``1 / Gamma(s)``, entire; zero at the non-positive integers."""
    s = as_complex(s)
    if s.real >= 0.5:
        return 1.0 / _lanczos(s)
    return sinpi(s) * _lanczos(1.0 - s) / math.pi


def _cvz_log_growth(s: complex) -> float:
    # log of 3 (1 + 2|t|) exp(pi |t| / 2) / |Gamma(s)|; left of Re s = 1/2 the
    # Gamma factor is frozen at Re s = 1/2 and the growth of the terms,
    # (2n)^-Re(s) with n ~ 25, is charged instead
    t = abs(s.imag)
    anchor = s if s.real >= 0.5 else complex(0.5, s.imag)
    growth = math.log(3.0 * (1.0 + 2.0 * t)) + 0.5 * math.pi * t + math.log(abs(rgamma(anchor)))
    if s.real < 0:
        growth += -s.real * math.log(50.0)
    # the weights alone leave 2 / d_n ~ 4 (3 + sqrt 8)^-n of the leading term,
    # which dominates once 1/Gamma(s) is small (large real part)
    return max(growth, math.log(4.0))


def _cvz_terms(s: complex, tol: float, prec: Precision) -> int:
    """Number of terms for the accelerated alternating sum at ``s``.

    The truncation error of the Chebyshev-weighted sum is bounded by
    ``3 (1 + 2|t|) exp(pi |t| / 2) / (|Gamma(s)| (3 + sqrt 8)^n)``.
    """
    growth = _cvz_log_growth(s)
    n = math.ceil((math.log(1.0 / tol) + growth) / math.log(CVZ_RATE)) + 1
    return max(8, min(n, prec.max_terms))


def _cvz_bound(s: complex, n: int) -> float:
    return math.exp(_cvz_log_growth(s) - n * math.log(CVZ_RATE))


def _alternating_sum(terms: np.ndarray) -> complex:
    """Cohen-Rodriguez Villegas-Zagier acceleration of ``sum (-1)^k a_k``.

    ``terms`` holds ``a_0 .. a_{n-1}``; the Chebyshev weights are built for
    exactly ``n = len(terms)``.
    """
    n = len(terms)
    d = CVZ_RATE ** n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    acc = 0.0 + 0.0j
    for k in range(n):
        c = b - c
        acc += c * terms[k]
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    return acc / d


def _accelerated(s: complex, bases: np.ndarray, prec: Precision) -> EvalResult:
    tol = 0.1 * prec.target_tol
    n = _cvz_terms(s, tol, prec)
    terms = np.exp(-s * np.log(bases[:n]))
    value = _alternating_sum(terms)
    err = _cvz_bound(s, n) + n * EPS * float(np.max(np.abs(terms)))
    return EvalResult(complex(value), err, n)


def eta(s: Number, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """Dirichlet eta ``sum_{n>=1} (-1)^(n-1) n^-s`` for ``Re s > 0``."""
    s = as_complex(s)
    if s.real <= 0:
        raise DomainError("eta series requires Re(s) > 0")
    bases = np.arange(1, prec.max_terms + 1, dtype=float)
    return _accelerated(s, bases, prec)


def _beta_series(s: complex, prec: Precision) -> EvalResult:
    bases = np.arange(1, 2 * prec.max_terms, 2, dtype=float)
    return _accelerated(s, bases, prec)


def eta_summed(s: Number, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """The Chebyshev-summed eta series at any ``s``, with no reflection.

    For ``Re s <= 0`` the series diverges and the weights act as a summation
    method; rounding then grows like ``n**(-Re s)``, which the error
    estimate includes. Used as a reflection-free cross-check.
    """
    s = as_complex(s)
    return _accelerated(s, np.arange(1, prec.max_terms + 1, dtype=float), prec)


def beta_summed(s: Number, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """Chebyshev-summed Dirichlet beta series at any ``s`` (see :func:`eta_summed`)."""
    return _beta_series(as_complex(s), prec)


def zeta_summed(s: Number, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """``eta_summed(s) / (1 - 2^(1-s))`` at any admissible ``s``."""
    s = as_complex(s)
    _check_zeta_singularities(s, prec)
    e = eta_summed(s, prec)
    denom = _one_minus_pow2(s)
    value = e.value / denom
    return EvalResult(value, e.err_estimate / abs(denom) + EPS * abs(value), e.terms_used)


def _check_zeta_singularities(s: complex, prec: Precision) -> None:
    if abs(s - 1.0) < prec.pole_exclusion:
        raise PoleError("zeta has a pole at s = 1")
    period = 2.0 * math.pi / LN2
    k = round(s.imag / period)
    if k != 0 and abs(s - complex(1.0, k * period)) < prec.pole_exclusion:
        raise RemovableSingularityError(
            f"1 - 2^(1-s) vanishes at s = 1 + {k}*2*pi*i/ln 2; eta-based zeta refused there"
        )


def _one_minus_pow2(s: complex) -> complex:
    """``1 - 2^(1-s)`` computed without cancellation near s = 1."""
    return -cexpm1((1.0 - s) * LN2)


def zeta(s: Number, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """Riemann zeta on the whole plane minus s = 1.

    ``eta(s) / (1 - 2^(1-s))`` for ``Re s > -1/2`` (the summed series is
    still accurate a little left of the line, and this keeps s = 0 away from
    the pole of ``zeta(1-s)``); further left the value is obtained through
    ``zeta(1-w) = 2 (2 pi)^-w Gamma(w) cos(pi w / 2) zeta(w)`` with ``w = 1-s``.
    """
    s = as_complex(s)
    _check_zeta_singularities(s, prec)
    if s.real > -0.5:
        e = eta_summed(s, prec)
        denom = _one_minus_pow2(s)
        value = e.value / denom
        return EvalResult(value, e.err_estimate / abs(denom) + EPS * abs(value), e.terms_used)
    w = 1.0 - s
    zw = zeta(w, prec)
    gw = gamma(w, prec)
    factor = 2.0 * cpow(2.0 * math.pi, -w) * gw.value * cospi(0.5 * w)
    value = factor * zw.value
    err = abs(factor) * zw.err_estimate + abs(zw.value * factor) * 4 * _lanczos_rel_err(s)
    return EvalResult(value, err, zw.terms_used + gw.terms_used)


def beta_L(s: Number, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """Dirichlet beta ``L(s) = sum_{n>=0} (-1)^n (2n+1)^-s``, an entire function.

    For ``Re s <= 0`` uses ``L(1-w) = (2/pi)^w Gamma(w) sin(pi w / 2) L(w)``.
    """
    s = as_complex(s)
    if s.real > 0:
        return _beta_series(s, prec)
    w = 1.0 - s
    lw = _beta_series(w, prec)
    gw = gamma(w, prec)
    factor = cpow(2.0 / math.pi, w) * gw.value * sinpi(0.5 * w)
    value = factor * lw.value
    err = abs(factor) * lw.err_estimate + abs(value) * 4 * _lanczos_rel_err(s)
    return EvalResult(value, err, lw.terms_used + gw.terms_used)


def _theta_cutoff(x: float, tol: float) -> int:
    return math.ceil(math.sqrt(math.log(10.0 / tol) / x)) + 2


def theta4_deficit(x: float, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """``D(x) = sum_{m>=1} (-1)^(m-1) exp(-m^2 x) = (1 - theta_4(0 | i x / pi)) / 2``."""
    x = as_positive_real(x)
    m_max = _theta_cutoff(x, prec.target_tol)
    if m_max > prec.max_terms:
        # the direct series is too long here; the dual series converges at once
        th = theta4(x)
        return EvalResult(0.5 * (1.0 - th), 4 * EPS, prec.max_terms)
    m = np.arange(1, m_max + 1, dtype=float)
    terms = np.exp(-m * m * x)
    signs = np.where(m % 2 == 1, 1.0, -1.0)
    value = float(np.sum(signs * terms))
    err = math.exp(-(m_max + 1) ** 2 * x) + EPS * abs(value)
    return EvalResult(complex(value), err, m_max)


def theta4(x):
    """``theta_4(0 | i x / pi) = sum_{m in Z} (-1)^m exp(-m^2 x)`` for x > 0.

    Accepts scalars or arrays. For ``x < pi`` the Jacobi imaginary
    transformation ``sqrt(pi/x) sum_k exp(-pi^2 (k+1/2)^2 / x)`` is used, which
    keeps full relative accuracy as the function tends to zero.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0):
        raise DomainError("theta4 requires x > 0")
    out = np.empty_like(xa)
    small = xa < math.pi
    if np.any(small):
        xs = xa[small]
        k = np.arange(0, 8, dtype=float)[:, None] + 0.5
        out[small] = 2.0 * np.sqrt(math.pi / xs) * np.sum(np.exp(-(math.pi * k) ** 2 / xs), axis=0)
    if np.any(~small):
        xl = xa[~small]
        m = np.arange(1, 8, dtype=float)[:, None]
        signs = np.where(m % 2 == 1, -1.0, 1.0)
        out[~small] = 1.0 + 2.0 * np.sum(signs * np.exp(-m * m * xl), axis=0)
    return out if out.ndim else float(out)


def theta4_sq_deficit(x: float, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """``Q(x) = (1 - theta_4^2) / 4`` as the odd-index Lambert-type series.

    ``Q(x) = sum_{l odd} (-1)^((l-1)/2) / (exp(l x) + 1)``; the alternating
    terms decrease, so the first omitted term bounds the error.
    """
    x = as_positive_real(x)
    l_max = math.ceil(math.log(10.0 / prec.target_tol) / x) + 3
    count = (l_max + 1) // 2
    if count > prec.max_terms:
        count = prec.max_terms
        l = np.arange(1, 2 * count, 2, dtype=float)
        value = _q_series(l, x)
        omitted = math.exp(-(2 * count + 1) * x)
        raise NonConvergenceError(
            f"Q({x}) needs more than max_terms={prec.max_terms} terms", complex(value), omitted
        )
    l = np.arange(1, 2 * count, 2, dtype=float)
    value = _q_series(l, x)
    omitted = math.exp(-(2 * count + 1) * x) / (1.0 + math.exp(-(2 * count + 1) * x))
    return EvalResult(complex(value), omitted + EPS * abs(value), count)


def _q_series(l: np.ndarray, x: float) -> float:
    e = np.exp(-l * x)
    signs = np.where(((l - 1) // 2) % 2 == 0, 1.0, -1.0)
    return float(np.sum(signs * e / (1.0 + e)))


def theta4_sq_deficit_direct(x: float, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """The same ``Q(x)`` from the theta deficit: ``(1 - (1 - 2D)^2) / 4 = D - D^2``."""
    d = theta4_deficit(x, prec)
    dv = d.value.real
    value = dv - dv * dv
    return EvalResult(complex(value), d.err_estimate * abs(1.0 - 2.0 * dv) + EPS * abs(value), d.terms_used)


def theta4_sq_deficit_array(x) -> np.ndarray:
    """Vectorised ``Q(x)`` for quadrature nodes; accurate for every x > 0."""
    xa = np.asarray(x, dtype=float)
    th = theta4(xa)
    out = np.where(xa < math.pi, 0.25 * (1.0 - th * th), 0.0)
    big = xa >= math.pi
    if np.any(big):
        xl = xa[big]
        m = np.arange(1, 8, dtype=float)[:, None]
        signs = np.where(m % 2 == 1, 1.0, -1.0)
        d = np.sum(signs * np.exp(-m * m * xl), axis=0)
        out[big] = d - d * d
    return out


def primes_up_to(n: int) -> List[int]:
    """All primes ``<= n`` in ascending order (sieve of Eratosthenes)."""
    if n < 2:
        raise DomainError("primes_up_to requires n >= 2")
    n = int(n)
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]
