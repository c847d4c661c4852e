"""Real-number evaluation of the slowly converging series for Euler's constant.

The Gregory polynomial values G_n(x) come from the same division-free
recurrence as the exact path, run here in fixed-point integer arithmetic
(values scaled by 2**wp) so that 10^4..10^5 terms stay affordable.  Exact
rationals are hopeless at that length (the denominators explode), so every
computed stream is validated by precision doubling: recompute with twice
the target precision and demand agreement to half the target bits,
raising on any mismatch.

The reference value of Euler's constant is embedded as digits from an
independent published source (OEIS A001620); nothing here is allowed to be
its own oracle.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from operator import mul

import mpmath
from mpmath import mpf, workprec

from .euler import harmonic

#: Euler's constant to 100 decimal digits, from OEIS A001620.
GAMMA_REF_DIGITS = (
    "0.5772156649015328606065120900824024310421593359399235988057672348848677"
    "267776646709369470632917467495"
)


def gamma_reference(prec: int = 64) -> mpf:
    """The embedded reference gamma, rounded to prec bits (good to ~330 bits)."""
    with workprec(prec):
        return +mpf(GAMMA_REF_DIGITS)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, float, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {type(x).__name__} exactly")


def _to_mpf(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


def _working_bits(prec: int, n_max: int) -> int:
    # guard for the ~n_max truncations the fixed-point recurrence accumulates
    return prec + 32 + max(n_max, 1).bit_length()


@lru_cache(maxsize=8)
def _gregory_fixed(num: int, den: int, n_max: int, wp: int) -> tuple[int, ...]:
    """G_0(x)..G_{n_max}(x) for x = num/den, scaled by 2**wp."""
    one = 1 << wp
    inv_fix = [0, one] + [one // i for i in range(2, n_max + 2)]
    invf_odd_i = inv_fix[2::2]  # 1/(i+1) for odd i
    invf_even_i = inv_fix[3::2]  # 1/(i+1) for even i
    g = [one]
    binom = one
    for n in range(1, n_max + 1):
        binom = binom * (num - den * (n - 1)) // (den * n)
        pos = sum(map(mul, g[n - 1 :: -2], invf_odd_i))
        neg = sum(map(mul, g[n - 2 :: -2], invf_even_i)) if n >= 2 else 0
        g.append(binom + ((pos - neg) >> wp))
    return tuple(g)


def _validated_fixed(x: Fraction, n_max: int, prec: int) -> tuple[tuple[int, ...], int]:
    """Fixed-point stream plus its scale, stable to prec/2 bits under doubling."""
    wp1 = _working_bits(prec, n_max)
    wp2 = _working_bits(2 * prec, n_max)
    a = _gregory_fixed(x.numerator, x.denominator, n_max, wp1)
    b = _gregory_fixed(x.numerator, x.denominator, n_max, wp2)
    need = prec // 2
    shift = wp2 - wp1
    for n in range(n_max + 1):
        diff = abs((a[n] << shift) - b[n])
        # relative to the value, absolute below magnitude 1
        tol = max(1 << (wp2 - need), abs(b[n]) >> need)
        if diff > tol:
            raise ArithmeticError(f"unstable recurrence at n={n} (prec={prec})")
    return a, wp1


def gregory_value_float(x, n_max: int, prec: int = 64) -> list[mpf]:
    """Floating G_0(x)..G_{n_max}(x) at prec bits, validated by doubling."""
    if prec < 64:
        raise ValueError("prec must be at least 64")
    xf = _as_fraction(x)
    fixed, wp = _validated_fixed(xf, n_max, prec)
    with workprec(prec):
        return [mpmath.ldexp(mpf(v), -wp) for v in fixed]


def agrees_to_bits(a, b, bits: int) -> bool:
    """|a - b| within 2^-bits, relative above magnitude 1, absolute below."""
    a, b = mpf(a), mpf(b)
    scale = max(1, abs(a), abs(b))
    return abs(a - b) <= scale * mpf(2) ** (-bits)


def _rising(n: int, length: int) -> int:
    return math.prod(range(n, n + length))


def mascheroni_partial(x, m: int, terms: int, prec: int = 64) -> mpf:
    """Partial Mascheroni/Kluyver-type approximation of Euler's constant:

    m! * sum_{n=1}^{terms} (-1)^(n-1) G_n(x) / (n(n+1)...(n+m))
        + H_m - log(x+m+1),   for real x > -1.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    xf = _as_fraction(x)
    if xf <= -1:
        raise ValueError("x must exceed -1")
    stream, wp = _validated_fixed(xf, terms, prec)
    acc = 0
    for n in range(1, terms + 1):
        t = stream[n] // _rising(n, m + 1)
        acc = acc + t if n % 2 else acc - t
    with workprec(prec):
        s = mpmath.ldexp(mpf(acc), -wp)
        total = mpf(math.factorial(m)) * s
        total = total + _to_mpf(harmonic(m))
        return +(total - mpmath.log(_to_mpf(xf + m + 1)))


def bla101_partial(k: int, x, terms: int, prec: int = 64) -> mpf:
    """Partial form of the k-fold shifted-Gregory identity for gamma:

    (1/k) sum_{n=1}^{terms} (-1)^(n-1) N_{n,k}(x)/n - (1/k) sum_{j=1}^k log(x+j),

    with N_{n,k}(x) the sum of G_n over x, x+1, ..., x+k-1.  At k = 1 this
    reproduces mascheroni_partial(x, 0, terms) bit for bit.
    """
    if k < 1:
        raise ValueError("k must be positive")
    xf = _as_fraction(x)
    if xf <= -1:
        raise ValueError("x must exceed -1")
    streams = []
    wp = None
    for j in range(k):
        st, wp = _validated_fixed(xf + j, terms, prec)
        streams.append(st)
    acc = 0
    for n in range(1, terms + 1):
        tn = 0
        for st in streams:
            tn += st[n]
        t = tn // n
        acc = acc + t if n % 2 else acc - t
    with workprec(prec):
        s = mpmath.ldexp(mpf(acc), -wp)
        total = s / k
        logsum = mpf(0)
        for j in range(1, k + 1):
            logsum = logsum + mpmath.log(_to_mpf(xf + j))
        return +(total - logsum / k)


def asymptotic_sanity(x, n: int, prec: int = 64) -> mpf:
    """Ratio of the computed G_n(x) to its two-term asymptotic main term.

    Descriptive only: expected within a small constant factor of 1 for
    large n, never asserted at tight tolerance.  Needs x > -1 and n >= 1000
    (below that the asymptotic regime has not set in).
    """
    if n < 1000:
        raise ValueError("asymptotic check needs n >= 1000")
    xf = _as_fraction(x)
    if xf <= -1:
        raise ValueError("x must exceed -1")
    stream, wp = _validated_fixed(xf, n, prec)
    with workprec(prec + 16):
        g_n = mpmath.ldexp(mpf(stream[n]), -wp)
        xm = _to_mpf(xf)
        logn = mpmath.log(n)
        gam = mpmath.gamma(xm + 1)
        bracket = mpmath.sinpi(xm) * gam + (
            mpmath.pi * mpmath.cospi(xm) * gam
            + mpmath.sinpi(xm) * gam * mpmath.digamma(xm + 1)
        ) / logn
        main = (-1) ** (n + 1) / (mpmath.pi * mpf(n) ** (xm + 1) * logn) * bracket
        ratio = g_n / main
    with workprec(prec):
        return +ratio


def d_r_numeric(r: int, n: int, x, prec: int = 64) -> mpf:
    """sum_k k^n x^k / (k!)^r, summed until terms drop below 2^-(prec+8)."""
    if r < 1 or n < 0:
        raise ValueError("need r >= 1, n >= 0")
    xf = _as_fraction(x)
    with workprec(prec + 16):
        xm = _to_mpf(xf)
        eps = mpf(2) ** (-(prec + 8))
        floor = max(n, 2, int(2 * abs(xm)) + 1)  # terms may grow until here
        total = mpf(1 if n == 0 else 0)
        w = mpf(1)
        k = 1
        while True:
            w = w * xm / mpf(k) ** r
            t = w * mpf(k) ** n
            total += t
            if k > floor and abs(t) < eps:
                break
            k += 1
        result = +total
    with workprec(prec):
        return +result
