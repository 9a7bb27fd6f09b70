"""Independent exact evaluation of the integral families.

Ground truth for the recursive tables: each integral is computed by exact
integer polynomial expansion and Gaussian moments in rational arithmetic,
with the normalization applied symbolically.  Nothing here shares code with
the recursion except the index conventions; in particular factorials, which
the recursion is designed to avoid, are embraced deliberately (as exact big
integers they cost accuracy nothing).

A second, structurally different check is provided by Gauss-Hermite
quadrature, which is mathematically exact for the polynomial integrands at
a sufficient node count, leaving only float64 rounding noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy.special import roots_hermite

from .indexing import validate_tuple

_PRECISION_BITS = 200  # oracle float rendering; >= 160-bit significand


class InsufficientNodesError(ValueError):
    pass


IntPolynomial = list  # dense integer coefficients, index = power of x


def hermite_poly(n: int) -> IntPolynomial:
    """Physicists' Hermite polynomial of degree n, exact integer coefficients.

    Three-term recurrence H_{n+1} = 2x H_n - 2n H_{n-1}, H_0 = 1, H_1 = 2x.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    prev: IntPolynomial = [1]
    if n == 0:
        return prev
    cur: IntPolynomial = [0, 2]
    for m in range(1, n):
        nxt = [0] + [2 * c for c in cur]
        for p, c in enumerate(prev):
            nxt[p] -= 2 * m * c
        prev, cur = cur, nxt
    return cur


def poly_mul(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Exact convolution of coefficient lists."""
    out = [0] * (len(p) + len(q) - 1)
    for a, ca in enumerate(p):
        if ca == 0:
            continue
        for b, cb in enumerate(q):
            out[a + b] += ca * cb
    return out


def _poly_scale(p: IntPolynomial, s: int) -> IntPolynomial:
    return [s * c for c in p]


def _poly_sub(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    out = list(p) + [0] * max(0, len(q) - len(p))
    for b, cb in enumerate(q):
        out[b] -= cb
    return out


def _double_factorial_odd(n: int) -> int:
    # (2n-1)!! with the empty-product convention for n = 0
    return math.factorial(2 * n) // (2**n * math.factorial(n))


def gaussian_weighted_integral(p: IntPolynomial, a: int) -> Fraction:
    """Exact rational R with integral(exp(-a x^2) p(x) dx) = R * sqrt(pi/a).

    Even moments give integral(x^{2n} exp(-a x^2)) = (2n-1)!!/(2a)^n * sqrt(pi/a);
    odd powers vanish on the symmetric domain.
    """
    if a not in (2, 3):
        raise ValueError(f"Gaussian exponent a must be 2 or 3, got {a}")
    r = Fraction(0)
    for power in range(0, len(p), 2):
        c = p[power]
        if c:
            n = power // 2
            r += Fraction(c * _double_factorial_odd(n), (2 * a) ** n)
    return r


@dataclass(frozen=True)
class ExactValue:
    """Exact oracle result.

    ``raw_rational`` is the rational R of the unnormalized integral
    R * sqrt(pi/a).  ``pi_scaled_square`` is the exact signed square of the
    normalized value scaled by the residual power of pi, i.e.
    sign(R) * pi^(arity/2 - 1) * value^2 = sign(R) * R^2 / (a * 2^S * prod(fact)).
    ``float_value`` is a 200-bit rendering of the normalized value.
    """

    kind: str
    raw_rational: Fraction
    pi_scaled_square: Fraction
    float_value: mpmath.mpf

    def as_float(self) -> float:
        return float(self.float_value)


def _normalized(kind: str, indices: tuple[int, ...], r: Fraction) -> ExactValue:
    a = 3 if kind == "U" else 2
    sigma = sum(indices)
    fact = math.prod(math.factorial(x) for x in indices)
    denom = a * 2**sigma * fact
    sign = (r > 0) - (r < 0)
    pss = sign * r * r / denom
    with mpmath.workprec(_PRECISION_BITS):
        rm = mpmath.mpf(r.numerator) / mpmath.mpf(r.denominator)
        if a == 2:
            # value = R / sqrt(2 pi 2^S f)
            val = rm / mpmath.sqrt(2 * mpmath.pi * 2**sigma * fact)
        else:
            # value = R / (pi sqrt(3 2^S f))
            val = rm / (mpmath.pi * mpmath.sqrt(3 * 2**sigma * fact))
    return ExactValue(kind=kind, raw_rational=r, pi_scaled_square=pss, float_value=val)


def exact_w(i: int, j: int, k: int, l: int) -> ExactValue:
    """Exact normalized four-factor integral."""
    idx = validate_tuple((i, j, k, l), 4)
    p = [1]
    for d in idx:
        p = poly_mul(p, hermite_poly(d))
    return _normalized("W", idx, gaussian_weighted_integral(p, 2))


def exact_u(i: int, j: int, k: int, l: int, m: int, n: int) -> ExactValue:
    """Exact normalized six-factor integral."""
    idx = validate_tuple((i, j, k, l, m, n), 6)
    p = [1]
    for d in idx:
        p = poly_mul(p, hermite_poly(d))
    return _normalized("U", idx, gaussian_weighted_integral(p, 3))


def _derivative_bracket(i: int, j: int) -> IntPolynomial:
    # H_i' H_j - H_i H_j' with H_d' = 2 d H_{d-1}
    left = (
        _poly_scale(poly_mul(hermite_poly(i - 1), hermite_poly(j)), 2 * i)
        if i
        else [0]
    )
    right = (
        _poly_scale(poly_mul(hermite_poly(i), hermite_poly(j - 1)), 2 * j)
        if j
        else [0]
    )
    return _poly_sub(left, right)


def exact_y(i: int, j: int, k: int, l: int) -> ExactValue:
    """Exact normalized p-wave integral (derivative brackets expanded)."""
    idx = validate_tuple((i, j, k, l), 4)
    p = poly_mul(_derivative_bracket(idx[0], idx[1]), _derivative_bracket(idx[2], idx[3]))
    return _normalized("Y", idx, gaussian_weighted_integral(p, 2))


def _ht_tail(n: int, x: "mpmath.mpf") -> tuple["mpmath.mpf", "mpmath.mpf"]:
    # (h_n(x), h_{n-1}(x)) for the normalized recurrence
    # h_{d+1} = x sqrt(2/(d+1)) h_d - sqrt(d/(d+1)) h_{d-1}, h_0 = 1
    prev = mpmath.mpf(1)
    if n == 0:
        return prev, mpmath.mpf(0)
    cur = mpmath.sqrt(2) * x
    for d in range(1, n):
        prev, cur = cur, x * mpmath.sqrt(mpmath.mpf(2) / (d + 1)) * cur - mpmath.sqrt(
            mpmath.mpf(d) / (d + 1)
        ) * prev
    return cur, prev


@lru_cache(maxsize=None)
def _gh_rule(n: int) -> tuple[tuple, tuple]:
    """Gauss-Hermite rule for weight exp(-u^2), polished beyond float64.

    Golub-Welsch eigen-decomposition (via scipy) seeds the nodes in float64;
    Newton iteration on the normalized Hermite recurrence then polishes each
    node at oracle precision, and the weight follows from the classical
    w_i = sqrt(pi) / (n * h_{n-1}(x_i)^2).  Float64 nodes alone leave noise
    of order 1e-11 on strongly cancelling derivative-bracket integrands,
    which would drown the 1e-12 oracle-vs-oracle bound.

    The cached rule is immutable; concurrent first calls may compute it
    twice, harmlessly.
    """
    x64, _ = roots_hermite(n)
    with mpmath.workprec(_PRECISION_BITS):
        sqrt_pi = mpmath.sqrt(mpmath.pi)
        slope = mpmath.sqrt(mpmath.mpf(2) * n)
        xs = []
        ws = []
        for seed in x64:
            x = mpmath.mpf(float(seed))
            for _ in range(8):
                hn, hn1 = _ht_tail(n, x)
                dx = hn / (slope * hn1)
                x -= dx
                if abs(dx) <= abs(x) * mpmath.mpf(2) ** (8 - _PRECISION_BITS):
                    break
            _, hn1 = _ht_tail(n, x)
            xs.append(x)
            ws.append(sqrt_pi / (n * hn1 * hn1))
    return tuple(xs), tuple(ws)


def quadrature_value(kind: str, t, nodes: int | None = None) -> float:
    """Gauss-Hermite evaluation of a normalized integral, as a 64-bit float.

    Substituting u = x*sqrt(a) maps the weight exp(-a x^2) onto exp(-u^2);
    the rule is then exact for the (polynomial) integrand once the node
    count reaches degree/2 + 1, so the returned value is accurate to the
    final float64 rounding.
    """
    if kind not in ("W", "Y", "U"):
        raise ValueError(f"kind must be W, Y or U, got {kind!r}")
    idx = validate_tuple(t, 4 if kind in ("W", "Y") else 6)
    degree = sum(idx)
    nmin = degree // 2 + 1
    if nodes is None:
        nodes = nmin
    elif nodes < nmin:
        raise InsufficientNodesError(
            f"{nodes} nodes cannot integrate degree {degree} exactly; "
            f"need at least {nmin}"
        )
    u, w = _gh_rule(nodes)
    dmax = max(idx)
    with mpmath.workprec(_PRECISION_BITS):
        a = mpmath.mpf(3 if kind == "U" else 2)
        inv_sqrt_a = 1 / mpmath.sqrt(a)
        if kind == "U":
            prefactor = 1 / (mpmath.pi * mpmath.sqrt(3 * mpmath.pi))
        else:
            prefactor = 1 / (mpmath.pi * mpmath.sqrt(2))
        total = mpmath.mpf(0)
        for ui, wi in zip(u, w):
            x = ui * inv_sqrt_a
            ht = [mpmath.mpf(1)]
            if dmax >= 1:
                ht.append(mpmath.sqrt(2) * x)
            for d in range(1, dmax):
                ht.append(
                    x * mpmath.sqrt(mpmath.mpf(2) / (d + 1)) * ht[d]
                    - mpmath.sqrt(mpmath.mpf(d) / (d + 1)) * ht[d - 1]
                )
            if kind == "Y":

                def bracket(i, j):
                    left = mpmath.sqrt(2 * i) * ht[i - 1] * ht[j] if i else 0
                    right = mpmath.sqrt(2 * j) * ht[i] * ht[j - 1] if j else 0
                    return left - right

                f = bracket(idx[0], idx[1]) * bracket(idx[2], idx[3])
            else:
                f = ht[idx[0]]
                for d in idx[1:]:
                    f *= ht[d]
            total += wi * f
        return float(prefactor * total)
