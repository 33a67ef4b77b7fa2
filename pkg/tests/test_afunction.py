import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from zetabeta.afunction import (
    L_ZEROS,
    A,
    _theorem1_bracket,
    ARoute,
    check_H_transformation,
    harmonic_sum_array,
    harmonic_sum_H,
    harmonic_tail_integrals,
    residue_at_one,
    zeta_via_theorem1,
)
from zetabeta.core import DivisionNearZeroError, DomainError, PoleError, Precision
from zetabeta.special_functions import zeta

# Gamma(s) zeta(s) L(s) pi^-s from mpmath at 30 digits
A_REFERENCE = {
    0.5: -0.97506623000048897071,
    2: 0.15266093236286983584,
    2.5: 0.096703310490026679039,
    2 + 1j: 0.051095650999369898448 - 0.071359107303082228958j,
    0.3: -1.1654969067074076132,
    0.5 + 5j: -0.00044344703377317714275,
    0.7 + 10j: 1.042544001305985973e-7 + 1.6009552390546077324e-7j,
    -1.5 + 2j: 0.021944551491443851305 + 0.022450046679293364166j,
    0.25: -1.3083284028722420633,
}
ZETA_FIRST_ZERO = 14.134725141734694


def rel(a, b):
    return abs(a - b) / abs(b)


def routes_at(s):
    out = [ARoute.DIRECT_PRODUCT, ARoute.SYMMETRIC_CONTINUATION]
    if s.real > 0:
        out.append(ARoute.THETA_MELLIN)
    if s.real > 1:
        out.append(ARoute.HARMONIC_MELLIN)
    return out


@pytest.mark.parametrize("s", list(A_REFERENCE))
def test_reference_values_every_route(s):
    s = complex(s)
    for route in routes_at(s):
        assert rel(A(s, route).value, A_REFERENCE[s]) < 1e-9, route


def test_A_half_pinned():
    assert abs(A(0.5).value - (-0.9751)) < 5e-5


def test_A_real_on_real_axis_and_critical_line():
    assert A(0.37).value.imag == pytest.approx(0.0, abs=1e-15)
    v = A(0.5 + 7.3j).value
    assert abs(v.imag) < 1e-12 * abs(v) + 1e-20


@given(st.floats(-3.0, 4.0), st.floats(0.0, 25.0))
def test_functional_equation_property(sigma, t):
    s = complex(sigma, t)
    if abs(s) < 0.05 or abs(s - 1) < 0.05:
        return
    a, b = A(s).value, A(1 - s).value
    assert abs(a - b) <= 1e-10 * abs(a)


@given(st.floats(-3.0, 4.0), st.floats(0.1, 25.0))
def test_conjugate_symmetry(sigma, t):
    s = complex(sigma, t)
    assert abs(A(s.conjugate()).value - A(s).value.conjugate()) <= 1e-13 * abs(A(s).value)


@given(st.floats(1.2, 4.0), st.floats(-8.0, 8.0))
def test_direct_route_matches_oracle(sigma, t):
    s = complex(sigma, t)
    assert rel(A(s).value, oracles.A(s)) < 1e-11


@pytest.mark.parametrize("s", [1.5, 2 + 1j, 3 + 2j])
def test_harmonic_route_agrees(s):
    assert rel(A(s, "harmonic").value, A(s).value) < 1e-8


@pytest.mark.parametrize("s", [-2.5 + 3j, 0.3 + 1j, 0.5 + 8j])
def test_symmetric_route_off_half_plane(s):
    assert rel(A(s, "symmetric").value, A(s).value) < 1e-8


@pytest.mark.parametrize("s", [0.8 + 20j, 0.5 + 25j, 0.5 + 30j])
def test_symmetric_route_error_estimate_is_honest_high_on_the_line(s):
    # |A| falls like exp(-pi t / 2) while the integrals stay O(1): the
    # absolute error, not the relative one, is what the estimate bounds
    r = A(s, "symmetric")
    assert abs(r.value - A(s).value) <= 10 * r.err_estimate


def test_cancelled_form_at_negative_integers():
    # Gamma's pole meets a trivial zero: A(-2) = A(3)
    assert rel(A(-2).value, A(3).value) < 1e-12
    assert rel(A(-3).value, A(4).value) < 1e-12


@pytest.mark.parametrize("s", [0, 1, 1e-8, 1 + 1e-7j])
def test_poles(s):
    for route in ARoute:
        with pytest.raises(PoleError):
            A(s, route)


def test_mellin_routes_refuse_outside_half_plane():
    with pytest.raises(DomainError):
        A(0.5, ARoute.HARMONIC_MELLIN)
    with pytest.raises(DomainError):
        A(-0.5, ARoute.THETA_MELLIN)


def test_route_by_name():
    assert A(2, "theta").value == A(2, ARoute.THETA_MELLIN).value


def test_zeros_on_critical_line_match_bisection_oracle():
    f = lambda t: oracles.A(complex(0.5, t)).real  # noqa: E731
    for t0 in L_ZEROS[:4]:
        assert abs(oracles.bisect(f, t0 - 0.05, t0 + 0.05) - t0) < 1e-9
    assert abs(oracles.bisect(f, 14.1, 14.2) - ZETA_FIRST_ZERO) < 1e-9


def test_A_vanishes_at_zeros():
    for t0 in L_ZEROS[:3] + (ZETA_FIRST_ZERO,):
        assert abs(A(complex(0.5, t0)).value) < 1e-9 * abs(A(complex(0.5, t0 + 0.3)).value) * 1e3


# ---- harmonic sum

@given(st.floats(0.05, 20.0))
def test_H_transformation(x):
    assert check_H_transformation(x) < 1e-12


def test_H_direct_sum():
    x = 1.3
    expected = math.fsum(1.0 / (2 * math.cosh(n * x)) for n in range(1, 60))
    assert abs(harmonic_sum_H(x).value - expected) < 1e-14


def test_H_small_x_uses_transformation():
    r = harmonic_sum_H(1e-6, Precision(max_terms=1000))
    assert abs(r.value - (math.pi / 4e-6 - 0.25)) < 1e-6


@given(st.floats(0.01, 10.0))
def test_H_array_matches_scalar(x):
    assert abs(float(harmonic_sum_array(np.array([x]))[0]) - harmonic_sum_H(x).value.real) < 1e-12 * (1 + 1 / x)


def test_harmonic_tail_integrals_shape():
    lo, hi = harmonic_tail_integrals(0.5 + 3j)
    assert lo.err_estimate < 1e-10 and hi.err_estimate < 1e-10


# ---- zeta through the continuation formula

@pytest.mark.parametrize("s", [2, 3 + 1j, 0.5 + 3j, -1.5 + 1j, 0.25])
def test_zeta_via_continuation_formula(s):
    assert rel(zeta_via_theorem1(s).value, zeta(s).value) < 1e-10


def test_zeta_via_continuation_rejects_L_zeros():
    with pytest.raises(DivisionNearZeroError):
        zeta_via_theorem1(complex(0.5, L_ZEROS[0]))
    with pytest.raises(DivisionNearZeroError):
        zeta_via_theorem1(-3)


@pytest.mark.parametrize("method", ["theorem1", "direct"])
def test_residue_at_one(method):
    assert abs(residue_at_one(method=method) - 1.0) < 1e-6


CATALAN = 0.91596559417721901505


def test_A_at_two_is_catalan_over_six():
    for route in ARoute:
        assert abs(A(2, route).value - CATALAN / 6) < 1e-10


def test_functional_equation_example_point():
    s = 0.3 + 7j
    assert abs(A(s).value - A(1 - s).value) <= 1e-10 * abs(A(s).value)


@pytest.mark.parametrize("sigma", [-1.5, -0.5, 0.25, 0.5, 0.75, 1.5, 2.5])
@pytest.mark.parametrize("t", [0, 0.5, 1, 5, 10, 20])
def test_functional_equation_grid(sigma, t):
    s = complex(sigma, t)
    assert abs(A(s).value - A(1 - s).value) / max(abs(A(s).value), 1e-30) <= 1e-10


@pytest.mark.parametrize("sigma", np.arange(0.05, 0.5, 0.05))
def test_real_axis_symmetry(sigma):
    assert abs(A(sigma).value.real - A(1 - sigma).value.real) <= 1e-10 * abs(A(sigma).value)


@given(st.floats(0.05, 40.0))
def test_H_positive_and_bounded(x):
    h = harmonic_sum_H(x).value.real
    assert 0 < h <= math.exp(-x) / -math.expm1(-x) * (1 + 1e-15)


def test_H_large_x():
    assert harmonic_sum_H(20.0).value.real == pytest.approx(math.exp(-20), rel=1e-8)


@pytest.mark.parametrize("x", [0.5, 1.0, 3.0])
def test_H_matches_character_sum(x):
    chi = lambda m: 0 if m % 2 == 0 else (1 if m % 4 == 1 else -1)  # noqa: E731
    m_max = math.ceil(40 / x) + 2
    lambert = math.fsum(chi(m) / math.expm1(m * x) for m in range(1, m_max))
    assert abs(harmonic_sum_H(x).value.real - lambert) < 1e-12


@pytest.mark.parametrize("s, expected", [(2, math.pi**2 / 6), (0.5, -1.4603545088095868), (0.3 + 2j, None)])
def test_zeta_via_continuation_examples(s, expected):
    value = zeta_via_theorem1(s).value
    reference = zeta(s).value if expected is None else expected
    assert abs(value - reference) <= 1e-8 * abs(reference)


def test_two_integral_and_dlogx_forms_agree():
    s = 2.0
    lo, hi = harmonic_tail_integrals(s)
    two_integral = 1 / (4 * s * (s - 1)) + math.pi ** (-s) * lo.value + math.pi ** (s - 1) * hi.value
    dlogx = _theorem1_bracket(complex(s), Precision()).value
    assert abs(two_integral - dlogx) < 1e-12


def test_residue_sanity_at_one_point_one():
    assert abs(0.1 * zeta(1.1).value - 1) < 0.1
