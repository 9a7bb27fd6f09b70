import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from hpint import (
    InsufficientNodesError,
    W_BASE,
    exact_u,
    exact_w,
    exact_y,
    gaussian_weighted_integral,
    hermite_poly,
    poly_mul,
    quadrature_value,
)


def test_hermite_poly_small():
    assert hermite_poly(0) == [1]
    assert hermite_poly(1) == [0, 2]
    assert hermite_poly(2) == [-2, 0, 4]
    assert hermite_poly(3) == [0, -12, 0, 8]


def test_hermite_poly_leading_coefficient():
    p = hermite_poly(10)
    assert len(p) == 11
    assert p[-1] == 2**10


def test_poly_mul_identity():
    assert poly_mul([1], [-2, 0, 4]) == [-2, 0, 4]
    assert poly_mul([0, 2], [0, 2]) == [0, 0, 4]


def test_poly_mul_linearization_identity():
    # H_1 * H_1 = H_2 + 2 H_0, checked coefficient-wise
    left = poly_mul(hermite_poly(1), hermite_poly(1))
    right = [c + 2 * d for c, d in zip(hermite_poly(2) + [0], [1, 0, 0])]
    assert left == right[: len(left)]


@given(st.integers(1, 12))
def test_hermite_recurrence_consistency(n):
    # H_{n+1} = 2x H_n - 2n H_{n-1}
    lhs = hermite_poly(n + 1)
    rhs = [0] + [2 * c for c in hermite_poly(n)]
    for p, c in enumerate(hermite_poly(n - 1)):
        rhs[p] -= 2 * n * c
    assert lhs == rhs


def test_gaussian_weighted_integral_examples():
    assert gaussian_weighted_integral([1], 2) == 1
    assert gaussian_weighted_integral([0, 0, 1], 2) == Fraction(1, 4)
    assert gaussian_weighted_integral([0, 1], 2) == 0
    assert gaussian_weighted_integral([0, 1], 3) == 0
    assert gaussian_weighted_integral([0, 0, 1], 3) == Fraction(1, 6)


def test_gaussian_weighted_integral_bad_exponent():
    with pytest.raises(ValueError):
        gaussian_weighted_integral([1], 5)


def test_exact_w_reference_values():
    assert abs(exact_w(0, 0, 0, 0).as_float() - 1 / math.sqrt(2 * math.pi)) < 1e-16
    ref = 3 / (8 * math.sqrt(2 * math.pi))
    assert abs(exact_w(2, 2, 0, 0).as_float() - ref) < 1e-15


def test_exact_u_reference_value():
    ref = 7 / (27 * math.pi * math.sqrt(3))
    assert abs(exact_u(3, 3, 0, 0, 0, 0).as_float() - ref) < 1e-16


def test_exact_y_reference_values():
    assert abs(exact_y(2, 1, 1, 0).as_float() - 3 / (2 * math.sqrt(math.pi))) < 1e-15
    ref = (5 / 4) * math.sqrt(3 / (2 * math.pi))
    assert abs(exact_y(3, 2, 1, 0).as_float() - ref) < 1e-15


def test_exact_y_zero_bracket():
    for kl in [(0, 0), (2, 1), (3, 0)]:
        res = exact_y(1, 1, *kl)
        assert res.raw_rational == 0
        assert res.as_float() == 0.0


def test_exact_w_parity_zero():
    for i, j in [(1, 0), (2, 1), (3, 0), (5, 2)]:
        assert exact_w(i, j, 0, 0).raw_rational == 0


def test_exact_w_equal_pair_values():
    # diagonal pairs against frozen closed forms
    assert abs(exact_w(2, 2, 0, 0).as_float() - 3 / (8 * math.sqrt(2 * math.pi))) < 1e-15
    assert abs(exact_w(3, 3, 0, 0).as_float() - (5 / 32) * math.sqrt(2 / math.pi)) < 1e-15


@given(
    st.integers(0, 6), st.integers(0, 6), st.integers(0, 6), st.integers(0, 6)
)
def test_exact_y_antisymmetric_as_rationals(i, j, k, l):
    assert exact_y(i, j, k, l).raw_rational == -exact_y(j, i, k, l).raw_rational
    assert exact_y(i, j, k, l).raw_rational == -exact_y(i, j, l, k).raw_rational
    assert exact_y(i, j, k, l).raw_rational == exact_y(k, l, i, j).raw_rational


@pytest.mark.parametrize(
    "fn,args",
    [
        (exact_w, (3, 2, 1, 0)),
        (exact_w, (5, 5, 4, 2)),
        (exact_y, (4, 1, 1, 0)),
        (exact_u, (3, 2, 1, 1, 1, 0)),
        (exact_u, (2, 1, 1, 0, 0, 0)),
    ],
)
def test_exact_value_internal_consistency(fn, args):
    res = fn(*args)
    # sign bookkeeping
    r = res.raw_rational
    assert (res.as_float() > 0) == (r > 0)
    assert (res.as_float() < 0) == (r < 0)
    # pi^(arity/2 - 1) * value^2 equals |pi_scaled_square| at oracle precision
    power = len(args) // 2 - 1
    with mpmath.workprec(200):
        lhs = mpmath.pi**power * res.float_value**2
        rhs = mpmath.mpf(abs(res.pi_scaled_square).numerator) / mpmath.mpf(
            abs(res.pi_scaled_square).denominator
        )
        if rhs == 0:
            assert lhs == 0
        else:
            assert abs(lhs - rhs) / rhs < mpmath.mpf(2) ** -150


def test_quadrature_constant_integrand():
    assert quadrature_value("W", (0, 0, 0, 0), nodes=1) == W_BASE


def test_quadrature_reference_values():
    ref = 3 / (4 * math.sqrt(2 * math.pi))
    assert abs(quadrature_value("W", (1, 1, 1, 1), nodes=3) - ref) < 1e-13 * abs(ref)
    ref = -(1 / (3 * math.pi)) * math.sqrt(2 / 3)
    assert abs(quadrature_value("U", (2, 0, 0, 0, 0, 0), nodes=2) - ref) < 1e-13 * abs(ref)


def test_quadrature_insufficient_nodes():
    with pytest.raises(InsufficientNodesError):
        quadrature_value("W", (1, 1, 1, 1), nodes=2)


def test_quadrature_matches_exact_sample():
    cases = [
        ("W", (4, 3, 2, 1), exact_w),
        ("Y", (5, 2, 3, 0), exact_y),
        ("U", (3, 3, 2, 2, 1, 1), exact_u),
    ]
    for kind, t, fn in cases:
        e = fn(*t).as_float()
        q = quadrature_value(kind, t)
        assert abs(q - e) <= 1e-12 * abs(e)
