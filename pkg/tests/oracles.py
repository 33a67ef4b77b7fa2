"""Reference implementations that share no code with the package.

Gamma by upward recurrence and the Stirling series; Hurwitz zeta (hence
zeta and L) by Euler-Maclaurin summation; primes by trial division.
"""

import cmath
import math
from fractions import Fraction

# B_2 .. B_24
_BERNOULLI = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66),
    Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510), Fraction(43867, 798),
    Fraction(-174611, 330), Fraction(854513, 138), Fraction(-236364091, 2730),
]


def loggamma(s: complex) -> complex:
    s = complex(s)
    shift = 0j
    while s.real < 25:
        shift += cmath.log(s)
        s += 1
    series = sum(
        float(b) / ((2 * k + 2) * (2 * k + 1) * s ** (2 * k + 1)) for k, b in enumerate(_BERNOULLI[:8])
    )
    return (s - 0.5) * cmath.log(s) - s + 0.5 * math.log(2 * math.pi) + series - shift


def gamma(s: complex) -> complex:
    s = complex(s)
    if s.real < 0.5:
        return math.pi / (cmath.sin(math.pi * s) * gamma(1 - s))
    return cmath.exp(loggamma(s))


def hurwitz(s: complex, a: float, n: int = 0) -> complex:
    """``sum_{k>=0} (k + a)^-s`` by Euler-Maclaurin with n explicit terms.

    Left of the critical strip the explicit sum cancels against the tail
    correction, so fewer terms are used there (relative accuracy ~1e-11).
    """
    s = complex(s)
    if n <= 0:
        n = 40 if s.real >= 0 else 10
    total = sum((k + a) ** -s for k in range(n))
    x = n + a
    total += x ** (1 - s) / (s - 1) + 0.5 * x**-s
    rising = s
    for j, b in enumerate(_BERNOULLI):
        k = j + 1
        total += float(b) / math.factorial(2 * k) * rising * x ** (-s - 2 * k + 1)
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return total


def zeta(s: complex) -> complex:
    return hurwitz(s, 1.0)


def dirichlet_L(s: complex) -> complex:
    return 4 ** (-complex(s)) * (hurwitz(s, 0.25) - hurwitz(s, 0.75))


def A(s: complex) -> complex:
    s = complex(s)
    return gamma(s) * zeta(s) * dirichlet_L(s) * math.pi ** (-s)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def bisect(f, a: float, b: float, tol: float = 1e-13) -> float:
    fa = f(a)
    if fa * f(b) > 0:
        raise ValueError("no sign change")
    while b - a > tol:
        m = 0.5 * (a + b)
        fm = f(m)
        if fa * fm <= 0:
            b = m
        else:
            a, fa = m, fm
    return 0.5 * (a + b)
