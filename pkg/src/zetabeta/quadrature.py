"""Double-exponential quadrature on (0, inf).

The range is split at ``split_point``: a tanh-sinh map handles the algebraic
endpoint at 0 and an exp-sinh map the exponentially decaying tail. Both are
trapezoid rules in the transformed variable; each refinement halves the step
and only evaluates the new (odd) nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from .core import DEFAULT_PRECISION, DomainError, EvalResult, NonConvergenceError, Precision

HALF_PI = 0.5 * math.pi
_TINY_X = 1e-300
_H0 = 0.5
_MIN_LEVEL = 3


@dataclass(frozen=True)
class IntegrandSpec:
    """An integrand on (0, inf).

    ``left_exponent`` is the ``a`` in the leading ``x**(a-1)`` behaviour at 0;
    it decides how far the tanh-sinh nodes reach towards the origin. With
    ``vectorized=True`` the evaluator receives a float ndarray and must
    return an array of the same shape.
    """

    evaluator: Callable
    left_exponent: float = 1.0
    split_point: float = math.pi
    vectorized: bool = False

    def __post_init__(self):
        if not self.left_exponent > 0:
            raise DomainError("left_exponent must be positive")
        if not self.split_point > 0:
            raise DomainError("split_point must be positive")

    def __call__(self, x: np.ndarray) -> np.ndarray:
        if self.vectorized:
            return np.asarray(self.evaluator(x), dtype=complex)
        return np.array([complex(self.evaluator(float(xi))) for xi in x], dtype=complex)


def _tanh_sinh_nodes(u: np.ndarray, upper: float) -> Tuple[np.ndarray, np.ndarray]:
    """Map ``u`` to (0, upper] with x = upper / (1 + exp(-2v)), v = pi/2 sinh u."""
    v = HALF_PI * np.sinh(u)
    e = np.exp(-2.0 * np.abs(v))
    x = np.where(v >= 0, upper / (1.0 + e), upper * e / (1.0 + e))
    w = upper * HALF_PI * np.cosh(u) * 2.0 * e / (1.0 + e) ** 2
    return x, w


def _exp_sinh_nodes(u: np.ndarray, lower: float) -> Tuple[np.ndarray, np.ndarray]:
    """Map ``u`` to [lower, inf) with x = lower + exp(pi/2 sinh u)."""
    v = HALF_PI * np.sinh(u)
    ev = np.exp(v)
    return lower + ev, ev * HALF_PI * np.cosh(u)


def _tanh_sinh_range(upper: float, left_exponent: float, tol: float) -> Tuple[float, float]:
    # nodes stop where the neglected mass int_0^eps x^(a-1) dx = eps^a / a drops below tol
    eps_x = (left_exponent * tol * 1e-3) ** (1.0 / left_exponent)
    eps_x = min(max(eps_x, _TINY_X), 0.5 * upper)
    u_lo = math.asinh(math.log(eps_x / upper) / math.pi)
    return u_lo, 3.2


def _exp_sinh_range(lower: float) -> Tuple[float, float]:
    # from 1e-18 * max(1, lower) above the endpoint out to lower + 800
    near = 1e-18 * max(1.0, lower)
    return math.asinh(math.log(near) / HALF_PI), math.asinh(math.log(800.0) / HALF_PI)


def _refine(
    f: IntegrandSpec,
    mapping: Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]],
    u_lo: float,
    u_hi: float,
    prec: Precision,
    tol: float,
) -> Tuple[EvalResult, List[float]]:
    """Trapezoid refinement in the transformed variable.

    Returns the result and the error estimate after every level.
    """
    h = _H0
    j = np.arange(math.ceil(u_lo / h), math.floor(u_hi / h) + 1)
    x, w = mapping(j * h)
    weighted_sum = complex(np.sum(f(x) * w))
    estimate = h * weighted_sum
    nodes = len(j)
    history: List[float] = []
    prev_err = math.inf
    for level in range(1, prec.quad_levels + 1):
        h *= 0.5
        j = np.arange(math.ceil(u_lo / h), math.floor(u_hi / h) + 1)
        j = j[j % 2 != 0]
        if nodes + len(j) > prec.max_terms:
            raise NonConvergenceError(
                f"quadrature node budget max_terms={prec.max_terms} exhausted at level {level}",
                estimate,
                prev_err,
            )
        x, w = mapping(j * h)
        weighted_sum += complex(np.sum(f(x) * w))
        nodes += len(j)
        new_estimate = h * weighted_sum
        err = abs(new_estimate - estimate)
        history.append(err)
        estimate = new_estimate
        prev_err = err
        if not (math.isfinite(estimate.real) and math.isfinite(estimate.imag)):
            raise NonConvergenceError("integrand produced non-finite values", estimate, math.inf)
        if level >= _MIN_LEVEL and err <= tol * (1.0 + abs(estimate)):
            return EvalResult(estimate, err, nodes), history
    raise NonConvergenceError(
        f"quadrature did not reach tolerance in {prec.quad_levels} levels", estimate, prev_err
    )


def integrate_head(f: IntegrandSpec, upper: float, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """``int_0^upper f(x) dx`` by tanh-sinh."""
    if not upper > 0:
        raise DomainError("upper limit must be positive")
    u_lo, u_hi = _tanh_sinh_range(upper, f.left_exponent, prec.target_tol)
    result, _ = _refine(f, lambda u: _tanh_sinh_nodes(u, upper), u_lo, u_hi, prec, prec.target_tol)
    return result


def integrate_tail(f: IntegrandSpec, lower: float, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """``int_lower^inf f(x) dx`` by exp-sinh; ``f`` must decay exponentially."""
    if not lower > 0:
        raise DomainError("lower limit must be positive")
    u_lo, u_hi = _exp_sinh_range(lower)
    result, _ = _refine(f, lambda u: _exp_sinh_nodes(u, lower), u_lo, u_hi, prec, prec.target_tol)
    return result


def integrate_semi_infinite(f: IntegrandSpec, prec: Precision = DEFAULT_PRECISION) -> EvalResult:
    """``int_0^inf f(x) dx`` as head (tanh-sinh) plus tail (exp-sinh) at ``f.split_point``."""
    c = f.split_point
    half = Precision(0.5 * prec.target_tol, prec.max_terms, prec.pole_exclusion, prec.quad_levels)
    head = integrate_head(f, c, half)
    tail = integrate_tail(f, c, half)
    return EvalResult(
        head.value + tail.value,
        head.err_estimate + tail.err_estimate,
        head.terms_used + tail.terms_used,
    )


def refinement_history(f: IntegrandSpec, prec: Precision = DEFAULT_PRECISION, part: str = "head") -> List[float]:
    """Per-level error estimates of one half of :func:`integrate_semi_infinite`.

    Runs every level up to ``prec.quad_levels`` without early exit.
    """
    c = f.split_point
    if part == "head":
        u_lo, u_hi = _tanh_sinh_range(c, f.left_exponent, prec.target_tol)
        mapping = lambda u: _tanh_sinh_nodes(u, c)  # noqa: E731
    elif part == "tail":
        u_lo, u_hi = _exp_sinh_range(c)
        mapping = lambda u: _exp_sinh_nodes(u, c)  # noqa: E731
    else:
        raise ValueError("part must be 'head' or 'tail'")
    history = _all_levels(f, mapping, u_lo, u_hi, prec.quad_levels)
    return history


def _all_levels(f, mapping, u_lo, u_hi, levels) -> List[float]:
    h = _H0
    j = np.arange(math.ceil(u_lo / h), math.floor(u_hi / h) + 1)
    x, w = mapping(j * h)
    total = complex(np.sum(f(x) * w))
    estimate = h * total
    history = []
    for _ in range(levels):
        h *= 0.5
        j = np.arange(math.ceil(u_lo / h), math.floor(u_hi / h) + 1)
        j = j[j % 2 != 0]
        x, w = mapping(j * h)
        total += complex(np.sum(f(x) * w))
        new = h * total
        history.append(abs(new - estimate))
        estimate = new
    return history
