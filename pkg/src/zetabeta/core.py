"""Shared value types and exceptions."""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import NamedTuple, Union


class ZetaBetaError(Exception):
    """Base class for every evaluation error raised by this package."""


class DomainError(ZetaBetaError, ValueError):
    """Argument outside the region where an operation is defined."""


class PoleError(DomainError):
    """Argument within the exclusion radius of a pole."""


class RemovableSingularityError(DomainError):
    """Argument too close to a point where the chosen representation breaks down."""


class DivisionNearZeroError(DomainError):
    """A denominator in the formula vanishes near the argument."""


class NonConvergenceError(ZetaBetaError, ArithmeticError):
    """Refinement budget exhausted before the tolerance was met.

    The best available estimate and its error are kept on the exception.
    """

    def __init__(self, message: str, estimate: complex = complex("nan"), error: float = math.inf):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class ComplexPoint(NamedTuple):
    """A point ``sigma + i t`` of the complex plane."""

    sigma: float
    t: float = 0.0

    def __complex__(self) -> complex:
        return complex(self.sigma, self.t)

    @classmethod
    def parse(cls, text: str) -> "ComplexPoint":
        return cls.from_complex(parse_complex(text))

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexPoint":
        z = complex(z)
        return cls(z.real, z.imag)


Number = Union[complex, float, int, ComplexPoint]


@dataclass(frozen=True)
class Precision:
    """Accuracy targets and work caps shared by every evaluator."""

    target_tol: float = 1e-12
    max_terms: int = 10_000
    pole_exclusion: float = 1e-6
    quad_levels: int = 12

    def __post_init__(self):
        if not self.target_tol > 0:
            raise ValueError("target_tol must be positive")
        if self.max_terms < 16:
            raise ValueError("max_terms must be at least 16")
        if not self.pole_exclusion > 0:
            raise ValueError("pole_exclusion must be positive")
        if self.quad_levels < 1:
            raise ValueError("quad_levels must be at least 1")


DEFAULT_PRECISION = Precision()


@dataclass(frozen=True)
class EvalResult:
    """A computed value with an absolute error estimate and a work counter."""

    value: complex
    err_estimate: float
    terms_used: int

    def __post_init__(self):
        if not self.err_estimate >= 0:
            raise ValueError("err_estimate must be non-negative")


def as_complex(s: Number) -> complex:
    """Coerce ``s`` to a finite complex number or raise DomainError."""
    z = complex(s)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {s!r}")
    return z


def as_positive_real(x: float, name: str = "x") -> float:
    if isinstance(x, complex):
        if x.imag != 0:
            raise DomainError(f"{name} must be real, got {x!r}")
        x = x.real
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"{name} must be a positive finite real, got {x!r}")
    return x


_NUM = r"(?:\d+\.?\d*|\.\d+)(?:e[+-]?\d+)?"
_IMAG_ONLY = re.compile(rf"(?P<im>[+-]?(?:{_NUM})?)i")
_FULL = re.compile(rf"(?P<re>[+-]?{_NUM})(?:(?P<im>[+-](?:{_NUM})?)i)?")


def parse_complex(text: str) -> complex:
    """Parse ``"a+bi"``, ``"a - b i"``, ``"bi"`` or a plain real."""
    txt = text.replace(" ", "").lower().replace("j", "i")
    m = _IMAG_ONLY.fullmatch(txt)
    if m:
        real, im = "0", m.group("im")
    else:
        m = _FULL.fullmatch(txt)
        if not m:
            raise ValueError(f"cannot parse complex literal {text!r}")
        real, im = m.group("re"), m.group("im") or "0"
    if im in ("", "+", "-"):
        im += "1"
    return as_complex(complex(float(real), float(im)))


def cexpm1(z: complex) -> complex:
    """``exp(z) - 1`` without cancellation for small ``|z|``."""
    x, y = z.real, z.imag
    if y == 0.0:
        return complex(math.expm1(x), 0.0)
    half = math.sin(0.5 * y)
    return complex(math.expm1(x) * math.cos(y) - 2.0 * half * half, math.exp(x) * math.sin(y))


def cpow(base: float, s: complex) -> complex:
    """Principal-branch ``base**s`` for positive real ``base``."""
    return cmath.exp(s * math.log(base))
