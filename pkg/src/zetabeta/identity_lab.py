"""Executable checks of the identities around A(s).

Each ``check_*`` function returns a :class:`CheckReport` holding the
per-point left side, right side and residual, and a verdict against a
stated tolerance. Wherever a check compares two evaluations of the same
function, the two sides go through different code paths: the zeta and
beta reflection checks, for instance, use the Chebyshev-summed series on
both sides and never the reflection formulae they are testing.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import afunction as af
from . import quadrature as quad
from .core import (
    DEFAULT_PRECISION,
    DomainError,
    EvalResult,
    Number,
    Precision,
    ZetaBetaError,
    as_complex,
    as_positive_real,
    cpow,
)
from .special_functions import (
    EPS,
    beta_summed,
    chi4,
    cospi,
    gamma,
    primes_up_to,
    sinpi,
    zeta_summed,
)

PI = math.pi
SQRT_PI = math.sqrt(PI)


class TruncationWarning(UserWarning):
    """A series was cut off before its terms fell below double precision."""


@dataclass(frozen=True)
class GridSpec:
    """Rectangular sweep ``sigma_min..sigma_max`` x ``t_min..t_max`` minus exclusion disks."""

    sigma_min: float
    sigma_max: float
    sigma_step: float
    t_min: float
    t_max: float
    t_step: float
    exclusions: Tuple[Tuple[complex, float], ...] = ()

    def __post_init__(self):
        if not (self.sigma_step > 0 and self.t_step > 0):
            raise DomainError("grid steps must be positive")
        if self.sigma_min > self.sigma_max or self.t_min > self.t_max:
            raise DomainError("grid bounds must satisfy min <= max")

    @staticmethod
    def _axis(lo: float, hi: float, step: float) -> List[float]:
        count = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return [round(lo + i * step, 12) for i in range(count)]

    def points(self) -> List[complex]:
        """Grid points in sigma-major order, exclusion disks removed."""
        out = []
        for sigma in self._axis(self.sigma_min, self.sigma_max, self.sigma_step):
            for t in self._axis(self.t_min, self.t_max, self.t_step):
                s = complex(sigma, t)
                if all(abs(s - complex(c)) >= r for c, r in self.exclusions):
                    out.append(s)
        return out

    @classmethod
    def parse(cls, text: str, exclusions: Sequence[Tuple[complex, float]] = ()) -> "GridSpec":
        """Parse ``"smin:smax:sstep,tmin:tmax:tstep"``."""
        try:
            sig, tt = text.split(",")
            a = [float(v) for v in sig.split(":")]
            b = [float(v) for v in tt.split(":")]
            if len(a) != 3 or len(b) != 3:
                raise ValueError
        except ValueError:
            raise DomainError(f"malformed grid {text!r}; expected smin:smax:step,tmin:tmax:step") from None
        return cls(a[0], a[1], a[2], b[0], b[1], b[2], tuple(exclusions))


POLE_DISKS = ((0j, 0.05), (1 + 0j, 0.05))
DEFAULT_FUNCEQ_GRID = GridSpec(-1.5, 2.5, 0.5, 0.0, 20.0, 2.0, POLE_DISKS)


@dataclass(frozen=True)
class PointCheck:
    s: complex
    lhs: complex
    rhs: complex
    residual: float
    note: str = ""


@dataclass
class CheckReport:
    identity_name: str
    tolerance: float
    points: List[PointCheck] = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        if not self.points:
            return math.inf
        return max(p.residual for p in self.points)

    @property
    def passed(self) -> bool:
        return bool(self.points) and self.max_residual <= self.tolerance

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.identity_name} max_residual={self.max_residual:.3e} tol={self.tolerance:.1e} points={len(self.points)}"


def _rel(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


def _mixed(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def _run(name: str, tol: float, points: Iterable[complex], pair: Callable, residual: Callable) -> CheckReport:
    report = CheckReport(name, tol)
    for s in points:
        try:
            out = pair(s)
        except ZetaBetaError as exc:
            report.points.append(PointCheck(s, complex("nan"), complex("nan"), math.inf, type(exc).__name__))
            continue
        if out is None:
            continue
        lhs, rhs = out
        report.points.append(PointCheck(s, lhs, rhs, residual(lhs, rhs)))
    return report


def _grid_points(grid) -> List[complex]:
    return grid.points() if isinstance(grid, GridSpec) else [as_complex(p) for p in grid]


def _near_positive_integer(s: complex, radius: float = 1e-9) -> bool:
    n = round(s.real)
    return n >= 1 and abs(s - n) < radius


def check_reflection_zeta(
    grid, prec: Precision = DEFAULT_PRECISION, form: str = "eq1", tol: float = 1e-10
) -> CheckReport:
    """Riemann's reflection, with zeta evaluated by the summed eta series on both sides.

    ``form="eq1"``: ``zeta(1-s) = 2 (2 pi)^-s Gamma(s) cos(pi s/2) zeta(s)``;
    ``form="eq7"``: ``zeta(s) = 2^s pi^(s-1) Gamma(1-s) sin(pi s/2) zeta(1-s)``.
    Points where a Gamma factor sits on its pole are skipped.
    """

    def eq1(s):
        if round(s.real) <= 0 and abs(s - round(s.real)) < 1e-9:
            return None
        rhs = 2.0 * cpow(2 * PI, -s) * gamma(s, prec).value * cospi(0.5 * s) * zeta_summed(s, prec).value
        return zeta_summed(1.0 - s, prec).value, rhs

    def eq7(s):
        if _near_positive_integer(s):
            return None
        rhs = cpow(2.0, s) * cpow(PI, s - 1.0) * gamma(1.0 - s, prec).value * sinpi(0.5 * s)
        return zeta_summed(s, prec).value, rhs * zeta_summed(1.0 - s, prec).value

    if form not in ("eq1", "eq7"):
        raise ValueError("form must be 'eq1' or 'eq7'")
    return _run(f"reflection-zeta-{form}", tol, _grid_points(grid), eq1 if form == "eq1" else eq7, _mixed)


def check_reflection_L(grid, prec: Precision = DEFAULT_PRECISION, tol: float = 1e-10) -> CheckReport:
    """``L(1-s) = (2/pi)^s Gamma(s) sin(pi s/2) L(s)``, both sides by the summed series."""

    def pair(s):
        if round(s.real) <= 0 and abs(s - round(s.real)) < 1e-9:
            return None
        rhs = cpow(2.0 / PI, s) * gamma(s, prec).value * sinpi(0.5 * s) * beta_summed(s, prec).value
        return beta_summed(1.0 - s, prec).value, rhs

    return _run("reflection-L", tol, _grid_points(grid), pair, _mixed)


def check_eq8_identity(grid, prec: Precision = DEFAULT_PRECISION, tol: float = 1e-10) -> CheckReport:
    """``Gamma(s) pi^-s zeta(s) L(s) = Gamma(1-s) pi^-(1-s) zeta(1-s) L(1-s)`` factor by factor."""

    def side(w):
        return gamma(w, prec).value * cpow(PI, -w) * zeta_summed(w, prec).value * beta_summed(w, prec).value

    def pair(s):
        if (round(s.real) <= 0 or round(s.real) >= 1) and abs(s - round(s.real)) < 1e-9:
            return None
        return side(s), side(1.0 - s)

    return _run("eq8", tol, _grid_points(grid), pair, _rel)


def check_functional_equation(
    grid=DEFAULT_FUNCEQ_GRID,
    prec: Precision = DEFAULT_PRECISION,
    route: af.ARoute = af.ARoute.DIRECT_PRODUCT,
    tol: float = 1e-10,
) -> CheckReport:
    """``A(s) = A(1-s)`` with the relative residual ``|A(s) - A(1-s)| / max(|A(s)|, 1e-30)``."""

    def residual(lhs, rhs):
        return abs(lhs - rhs) / max(abs(lhs), 1e-30)

    return _run(
        "funceq-A",
        tol,
        _grid_points(grid),
        lambda s: (af.A(s, route, prec).value, af.A(1.0 - s, route, prec).value),
        residual,
    )


ROUTE_POINTS_ALL = (1.5 + 0j, 2 + 0j, 2.5 + 0j, 2 + 1j, 3 + 2j)
ROUTE_POINTS_STRIP = (0.3 + 0j, 0.5 + 5j, 0.7 + 10j)


def _routes_for(s: complex) -> List[af.ARoute]:
    routes = [af.ARoute.DIRECT_PRODUCT]
    if s.real > 0:
        routes.append(af.ARoute.THETA_MELLIN)
    if s.real > 1:
        routes.append(af.ARoute.HARMONIC_MELLIN)
    routes.append(af.ARoute.SYMMETRIC_CONTINUATION)
    return routes


def check_route_agreement(
    points: Sequence[Number] = ROUTE_POINTS_ALL + ROUTE_POINTS_STRIP,
    prec: Precision = DEFAULT_PRECISION,
    tol: float = 1e-8,
) -> CheckReport:
    """Pairwise relative agreement of every route applicable at each point.

    One report row per (point, route pair); the note names the pair.
    """
    report = CheckReport("route-agreement", tol)
    for s in (as_complex(p) for p in points):
        values = {}
        for route in _routes_for(s):
            try:
                values[route] = af.A(s, route, prec).value
            except ZetaBetaError as exc:
                report.points.append(PointCheck(s, complex("nan"), complex("nan"), math.inf, f"{route.value}:{type(exc).__name__}"))
        for r1, r2 in combinations(values, 2):
            a, b = values[r1], values[r2]
            report.points.append(PointCheck(s, a, b, _rel(a, b), f"{r1.value}-{r2.value}"))
    return report


def check_H_transform(xs: Sequence[float] = (0.5, 1.0, PI, 5.0), prec: Precision = DEFAULT_PRECISION, tol: float = 1e-12) -> CheckReport:
    """``H(x) = pi/(4x) - 1/4 + (pi/x) H(pi^2/x)`` at each x (absolute residual)."""
    report = CheckReport("H-transform", tol)
    for x in xs:
        x = as_positive_real(x)
        lhs = af.harmonic_sum_H(x, prec).value
        rhs = PI / (4 * x) - 0.25 + (PI / x) * af.harmonic_sum_H(PI * PI / x, prec).value
        report.points.append(PointCheck(complex(x), lhs, rhs, abs(lhs - rhs)))
    return report


def _sum_until(term: Callable[[int], float], cutoff: float, max_terms: int) -> Tuple[float, int]:
    """Sum ``term(k)`` for k = 1, 2, ... until the bound ``cutoff`` is passed."""
    total = 0.0
    for k in range(1, max_terms + 1):
        t = term(k)
        total += t
        if abs(t) < cutoff and k > 2:
            return total, k
    raise DomainError("series did not reach its cutoff within max_terms")


def _cosh_ratio(p: float, q: float) -> float:
    """``cosh(p)/cosh(q)`` for q > |p| without overflow."""
    return (math.exp(p - q) + math.exp(-p - q)) / (1.0 + math.exp(-2.0 * q))


def ramanujan_sides(alpha: float, n: float, prec: Precision = DEFAULT_PRECISION) -> Tuple[float, float]:
    """Both sides of Ramanujan's cosh/sech series identity with ``alpha beta = pi``.

    ``beta {1/4 + 1/2 sum cosh(2 beta n k)/cosh(beta^2 k)}`` and
    ``alpha {sec(alpha n)/4 + sum chi(k) cos(alpha n k)/(e^(alpha^2 k) - 1)}``.
    """
    alpha = as_positive_real(alpha, "alpha")
    beta = PI / alpha
    if abs(n) >= beta / 2:
        raise DomainError(f"|n| must be below beta/2 = {beta / 2:.6g}")
    cut = prec.target_tol * 1e-2
    cosh_sum, _ = _sum_until(lambda k: _cosh_ratio(2 * beta * n * k, beta * beta * k), cut, prec.max_terms)
    lambert = sum(
        chi4(k) * math.cos(alpha * n * k) / math.expm1(alpha * alpha * k)
        for k in range(1, _lambert_terms(alpha, cut) + 1)
    )
    lhs = beta * (0.25 + 0.5 * cosh_sum)
    rhs = alpha * (0.25 / math.cos(alpha * n) + lambert)
    return lhs, rhs


def _lambert_terms(alpha: float, cut: float) -> int:
    return max(3, math.ceil(math.log(1.0 / cut) / (alpha * alpha)) + 1)


def check_ramanujan(alpha: float, n: float, prec: Precision = DEFAULT_PRECISION, tol: float = 1e-10) -> CheckReport:
    """Residual of Ramanujan's identity at one ``(alpha, n)``; the row's s is ``alpha + i n``."""
    lhs, rhs = ramanujan_sides(alpha, n, prec)
    report = CheckReport("ramanujan", tol)
    report.points.append(PointCheck(complex(alpha, n), lhs, rhs, abs(lhs - rhs)))
    return report


def check_eq17(beta: float, prec: Precision = DEFAULT_PRECISION, tol: float = 1e-12) -> CheckReport:
    """``(1/2) sum sech(beta^2 k) = sum chi(m) / (e^(beta^2 m) - 1)`` (the n = 0 reduction)."""
    beta = as_positive_real(beta, "beta")
    b2 = beta * beta
    cut = prec.target_tol * 1e-2
    k_max = _lambert_terms(beta, cut)
    lhs = 0.5 * sum(2.0 * math.exp(-b2 * k) / (1.0 + math.exp(-2 * b2 * k)) for k in range(1, k_max + 1))
    rhs = sum(chi4(m) / math.expm1(b2 * m) for m in range(1, k_max + 1))
    report = CheckReport("eq17", tol)
    report.points.append(PointCheck(complex(beta), lhs, rhs, abs(lhs - rhs)))
    return report


def fourier_cosine_closed(a: float, b: float, u: float) -> float:
    """``(pi/b) cos(pi a/2b) cosh(pi u/2b) / (cos(pi a/b) + cosh(pi u/b))``."""
    return (PI / b) * math.cos(PI * a / (2 * b)) * math.cosh(PI * u / (2 * b)) / (
        math.cos(PI * a / b) + math.cosh(PI * u / b)
    )


def fourier_cosine_quadrature(a: float, b: float, u: float, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """``int_0^inf cosh(a t)/cosh(b t) cos(u t) dt`` by double-exponential quadrature."""
    if not 0 < a < b:
        raise DomainError("requires 0 < a < b")

    def f(t):
        e = np.exp(-2.0 * b * t)
        return (np.exp((a - b) * t) + np.exp((-a - b) * t)) / (1.0 + e) * np.cos(u * t)

    return quad.integrate_semi_infinite(quad.IntegrandSpec(f, 1.0, vectorized=True), prec)


def check_fourier_cosine(a: float, b: float, u: float, prec: Precision = DEFAULT_PRECISION, tol: float = 1e-8) -> CheckReport:
    """Quadrature of the cosh-ratio cosine transform against its closed form."""
    num = fourier_cosine_quadrature(a, b, u, prec).value.real
    report = CheckReport("fourier-cosine", tol)
    report.points.append(PointCheck(complex(a, u), num, fourier_cosine_closed(a, b, u), abs(num - fourier_cosine_closed(a, b, u))))
    return report


def check_fourier_cosine_sech(beta: float, n: float, k: int, prec: Precision = DEFAULT_PRECISION, tol: float = 1e-8) -> CheckReport:
    """The transform at ``a = 2 beta n, b = beta^2, u = 2 k pi`` against the sech pair form.

    ``(alpha / 4 beta) [sech(k alpha^2 - i n alpha) + sech(k alpha^2 + i n alpha)]``;
    for ``k = 0`` this is ``(alpha / 2 beta) sec(n alpha)``.
    """
    beta = as_positive_real(beta, "beta")
    alpha = PI / beta
    num = fourier_cosine_quadrature(2 * beta * n, beta * beta, 2 * k * PI, prec).value.real
    z = complex(k * alpha * alpha, -n * alpha)
    closed = (alpha / (4 * beta)) * (1 / np.cosh(z) + 1 / np.cosh(z.conjugate()))
    report = CheckReport("fourier-cosine-sech", tol)
    report.points.append(PointCheck(complex(n, k), num, complex(closed), abs(num - closed)))
    return report


def check_poisson_gaussian(prec: Precision = DEFAULT_PRECISION, tol: float = 1e-12) -> CheckReport:
    """Poisson summation for ``exp(-x^2)``.

    ``1/2 + sum e^{-k^2}`` against ``sqrt(pi)/2 + sqrt(pi) sum e^{-k^2 pi^2}``,
    using ``int_0^inf e^{-x^2} cos(2 k pi x) dx = (sqrt(pi)/2) e^{-k^2 pi^2}``.
    """
    k = np.arange(1, 11, dtype=float)
    lhs = 0.5 + float(np.sum(np.exp(-k * k)))
    rhs = SQRT_PI / 2 + SQRT_PI * float(np.sum(np.exp(-k * k * PI * PI)))
    report = CheckReport("poisson", tol)
    report.points.append(PointCheck(0j, lhs, rhs, abs(lhs - rhs)))
    return report


def poisson_exponential_residuals(truncations: Sequence[int] = (10, 100, 1000)) -> List[Tuple[int, float]]:
    """Poisson summation for ``exp(-x)``: residual after K cosine terms, for each K.

    Informational only; the cosine side decays like ``1/(1 + 4 k^2 pi^2)``.
    """
    lhs = 0.5 + 1.0 / math.expm1(1.0)
    out = []
    for K in truncations:
        k = np.arange(1, K + 1, dtype=float)
        rhs = 1.0 + 2.0 * float(np.sum(1.0 / (1.0 + 4.0 * k * k * PI * PI)))
        out.append((K, abs(lhs - rhs)))
    return out


def _square_angle_integral(s: complex) -> complex:
    """``int_0^(pi/4) cos(theta)^(2s-2) d theta`` by Gauss-Legendre."""
    x, w = np.polynomial.legendre.leggauss(40)
    theta = (x + 1.0) * PI / 8
    return complex(np.sum(w * PI / 8 * np.exp((2 * s - 2) * np.log(np.cos(theta)))))


def _epstein_partial(s: complex, cutoff: int) -> complex:
    m = np.arange(-cutoff, cutoff + 1, dtype=float)
    r2 = (m[:, None] ** 2 + m[None, :] ** 2).ravel()
    r2 = r2[r2 > 0]
    partial = complex(np.sum(np.exp(-s * np.log(r2))))
    # lattice points outside the square own the cells outside half-width cutoff + 1/2
    a = cutoff + 0.5
    tail = 8.0 * cpow(a, 2.0 - 2.0 * s) / (2.0 * s - 2.0) * _square_angle_integral(s)
    return partial + tail


def epstein_tail_bound(s: Number, cutoff: int) -> float:
    """``2 pi cutoff^(2 - 2 sigma) / (2 sigma - 2)``: the omitted mass of the raw square sum."""
    sigma = as_complex(s).real
    return 2 * PI * cutoff ** (2 - 2 * sigma) / (2 * sigma - 2)


def epstein_Z(s: Number, cutoff: int = 200, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """``Z(1; 2s) = sum_{(m,n) != 0} (m^2 + n^2)^-s`` for ``Re s > 1``.

    Square partial sum ``|m|, |n| <= cutoff`` plus the integral of
    ``r^-2s`` over the plane outside the square of half-width ``cutoff + 1/2``.
    The remaining error falls like ``cutoff^-2 sigma``; it is estimated from
    the change against the half cutoff, doubled because the sub-leading
    terms make the plain Richardson figure a few percent short.
    """
    s = as_complex(s)
    if s.real <= 1:
        raise DomainError("lattice sum requires Re(s) > 1")
    if cutoff < 10:
        raise DomainError("cutoff must be at least 10")
    value = _epstein_partial(s, cutoff)
    coarse = _epstein_partial(s, cutoff // 2)
    ratio = 2.0 ** (-2.0 * s.real)
    err = 2.0 * abs(value - coarse) * ratio / (1.0 - ratio) + EPS * (2 * cutoff + 1) ** 2 * 1e-3
    return EvalResult(value, err, (2 * cutoff + 1) ** 2 - 1)


def epstein_quadrant_sum(s: Number, cutoff: int) -> complex:
    """Four times the sum over ``m >= 1, n >= 0`` (a quarter-turn tiling of the punctured square)."""
    s = as_complex(s)
    m = np.arange(1, cutoff + 1, dtype=float)
    n = np.arange(0, cutoff + 1, dtype=float)
    r2 = m[:, None] ** 2 + n[None, :] ** 2
    return 4.0 * complex(np.sum(np.exp(-s * np.log(r2))))


def epstein_square_sum(s: Number, cutoff: int) -> complex:
    """Plain punctured-square sum ``|m|, |n| <= cutoff`` with no tail term."""
    s = as_complex(s)
    m = np.arange(-cutoff, cutoff + 1, dtype=float)
    r2 = (m[:, None] ** 2 + m[None, :] ** 2).ravel()
    r2 = r2[r2 > 0]
    return complex(np.sum(np.exp(-s * np.log(r2))))


def check_epstein_factorization(
    s: Number, prec: Precision = DEFAULT_PRECISION, cutoff: int = 200, tol: Optional[float] = None
) -> CheckReport:
    """``A(s)`` against ``Gamma(s) pi^-s Z(1; 2s) / 4`` (absolute residual)."""
    s = as_complex(s)
    if tol is None:
        tol = 1e-6 if s.imag == 0 else 1e-5
    lhs = af.A(s, af.ARoute.DIRECT_PRODUCT, prec).value
    rhs = gamma(s, prec).value * cpow(PI, -s) * epstein_Z(s, cutoff, prec).value / 4.0
    report = CheckReport("epstein", tol)
    report.points.append(PointCheck(s, lhs, rhs, abs(lhs - rhs)))
    return report


def check_sech_expansion(xs: Sequence[float] = (0.5, 1.0, 2.0), tol: float = 1e-12) -> CheckReport:
    """``sech(x) = 2 sum_{r>=1} chi(r) e^{-r x}`` pointwise."""
    report = CheckReport("sech-expansion", tol)
    for x in xs:
        x = as_positive_real(x)
        r_max = math.ceil(40.0 / x) + 1
        rhs = 2.0 * sum(chi4(r) * math.exp(-r * x) for r in range(1, r_max + 1))
        lhs = 1.0 / math.cosh(x)
        report.points.append(PointCheck(complex(x), lhs, rhs, abs(lhs - rhs)))
    return report


_TRUNCATION_EXPONENT = 41.0


def tschebyschef_F(y: float, p_max: int) -> float:
    """``F(y) = sum over odd primes p <= p_max of (-1)^((p+1)/2) e^{-p y}``.

    Primes ``p = 3 mod 4`` enter with ``+``. Warns with :class:`TruncationWarning`
    when ``p_max * y < 41``, i.e. when the first dropped term may exceed 1e-18.
    """
    y = as_positive_real(y, "y")
    if p_max < 3:
        raise DomainError("p_max must be at least 3")
    if p_max * y < _TRUNCATION_EXPONENT:
        warnings.warn(f"F({y}) truncated at p_max={p_max}: e^(-p_max y) = {math.exp(-p_max * y):.2e}", TruncationWarning)
    p = np.array(primes_up_to(p_max)[1:], dtype=float)
    signs = np.where(p % 4 == 3, 1.0, -1.0)
    return float(np.sum(signs * np.exp(-p * y)))
