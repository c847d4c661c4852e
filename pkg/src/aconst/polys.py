"""Dense polynomials over Q, truncated series, Stirling triangles, Gregory polynomials.

A RationalPolynomial is a tuple of Fraction coefficients, index = degree,
trailing zeros trimmed.  A TruncatedSeries holds coefficients of t^0..t^M;
entries may be Fractions or RationalPolynomials (anything with ring ops),
and every operation truncates consistently at order M.

Gregory polynomials are the coefficients of t*(1+t)^x / log(1+t).  They are
computed by the division-free recurrence

    G_n(x) = binom(x, n) - sum_{j<n} (-1)^(n-j) G_j(x) / (n-j+1),

which runs unchanged over Q (polynomials or values) and over F_p (residues).
The residue stream deliberately stops at n = p-2: G_{p-1}(x) picks up a
1/p! term and is not p-integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from operator import mul

from .modular import PrimeCtx, Rational, rational_mod

_ZERO = Fraction(0)
_NEG_INF = float("-inf")


class RationalPolynomial:
    """Dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else _NEG_INF

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == (RationalPolynomial([other])).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial([other])
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial([other])
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([c * other for c in self.coeffs])
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RationalPolynomial()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return RationalPolynomial([c / scalar for c in self.coeffs])

    def __call__(self, x: Rational) -> Fraction:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if isinstance(acc, Fraction) else Fraction(acc)

    def shift(self, c: Rational) -> "RationalPolynomial":
        """p(x + c), by Horner recomposition (exact, O(deg^2))."""
        out: list[Fraction] = []
        for a in reversed(self.coeffs):
            # out(x) <- out(x)*(x+c) + a
            out = [_ZERO] + out
            for i in range(len(out) - 1):
                out[i] += c * out[i + 1]
            out[0] += a
        return RationalPolynomial(out)

    def antiderivative(self) -> "RationalPolynomial":
        """The primitive with zero constant term."""
        return RationalPolynomial(
            [_ZERO] + [c / (i + 1) for i, c in enumerate(self.coeffs)]
        )

    def __repr__(self) -> str:
        if not self.coeffs:
            return "RationalPolynomial(0)"
        terms = [f"{c}*x^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c]
        return "RationalPolynomial(" + " + ".join(terms) + ")"


def binomial_polynomial(n: int) -> RationalPolynomial:
    """binom(x, n) = x(x-1)...(x-n+1)/n! as a polynomial in x."""
    poly = RationalPolynomial([1])
    for i in range(n):
        poly = poly * RationalPolynomial([-i, 1]) / (i + 1)
    return poly


class TruncatedSeries:
    """Formal power series in t, truncated at a fixed order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int | None = None):
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = cs[: order + 1]
        cs += [_ZERO] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = cs

    def _check(self, other: "TruncatedSeries"):
        if self.order != other.order:
            raise ValueError("order mismatch")

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            [a - b for a, b in zip(self.coeffs, other.coeffs)], self.order
        )

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(self.order + 1):
            acc = _ZERO
            for i in range(n + 1):
                if a[i] and b[n - i]:
                    acc = acc + a[i] * b[n - i]
            out.append(acc)
        return TruncatedSeries(out, self.order)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        b0 = other.coeffs[0]
        if not b0 or isinstance(b0, RationalPolynomial):
            raise ZeroDivisionError("non-unit series")
        out = []
        for n in range(self.order + 1):
            acc = self.coeffs[n]
            for i in range(n):
                if out[i] and other.coeffs[n - i]:
                    acc = acc - out[i] * other.coeffs[n - i]
            out.append(acc if b0 == 1 else acc / b0)
        return TruncatedSeries(out, self.order)

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, {self.coeffs[: min(5, self.order + 1)]}...)"


def series_log1p(order: int) -> TruncatedSeries:
    """log(1+t) = t - t^2/2 + t^3/3 - ... truncated."""
    return TruncatedSeries(
        [_ZERO] + [Fraction((-1) ** (n - 1), n) for n in range(1, order + 1)], order
    )


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a / b


def series_pow_binomial(x: Rational, order: int) -> TruncatedSeries:
    """(1+t)^x = sum binom(x, n) t^n truncated, for rational x."""
    x = Fraction(x)
    coeffs = [Fraction(1)]
    for n in range(1, order + 1):
        coeffs.append(coeffs[-1] * (x - n + 1) / n)
    return TruncatedSeries(coeffs, order)


@lru_cache(maxsize=None)
def gregory_polynomials(n_max: int) -> tuple[RationalPolynomial, ...]:
    """G_0(x)..G_{n_max}(x) by the division-free recurrence."""
    g = [RationalPolynomial([1])]
    binom = RationalPolynomial([1])
    for n in range(1, n_max + 1):
        binom = binom * RationalPolynomial([1 - n, 1]) / n  # binom(x, n)
        acc = binom
        for j in range(n):
            i = n - j
            term = g[j] / (i + 1)
            acc = acc + term if i % 2 else acc - term
        g.append(acc)
    return tuple(g)


def gregory_polynomial(n: int) -> RationalPolynomial:
    return gregory_polynomials(n)[n]


def gregory_explicit(n: int) -> RationalPolynomial:
    """G_n(x) from the unsigned Stirling-cycle expansion (n >= 1).

    ((-1)^n/n!) * sum_{j=1}^{n} ((-1)^j/(j+1)) [n,j] ((x+1)^{j+1} - x^{j+1}),
    an independent construction used to cross-check the recurrence.
    """
    if n < 1:
        raise ValueError("explicit form needs n >= 1")
    row = stirling_rows(n).s1[n]
    acc = RationalPolynomial()
    for j in range(1, n + 1):
        # (x+1)^(j+1) - x^(j+1): the top-degree terms cancel
        diff = RationalPolynomial([math.comb(j + 1, i) for i in range(j + 1)])
        acc = acc + diff * Fraction((-1) ** j * row[j], j + 1)
    return acc * Fraction((-1) ** n, math.factorial(n))


def gregory_values_exact(x: Rational, n_max: int) -> list[Fraction]:
    """G_0(x)..G_{n_max}(x) as exact rationals, by the value recurrence."""
    x = Fraction(x)
    g = [Fraction(1)]
    binom = Fraction(1)
    for n in range(1, n_max + 1):
        binom = binom * (x - n + 1) / n
        acc = binom
        for j in range(n):
            i = n - j
            term = g[j] / (i + 1)
            acc = acc + term if i % 2 else acc - term
        g.append(acc)
    return g


def gregory_residue_stream(x: Rational, n_max: int, ctx: PrimeCtx) -> list[int] | None:
    """Residues of G_0(x)..G_{n_max}(x) mod p, or None when p | den(x).

    Requires n_max <= p-2 (beyond that the values stop being p-integral).
    O(n_max^2) time, O(n_max) space; this is the hot loop of every
    Euler-constant verifier, so the inner sums run over preassembled
    slices with a single reduction at the end.
    """
    p = ctx.p
    if n_max > p - 2:
        raise ValueError(f"n_max={n_max} exceeds p-2={p - 2}")
    xr = rational_mod(x, ctx)
    if xr is None:
        return None
    inv = ctx.inv_table
    inv_odd_i = inv[2::2]  # inv[i+1] for odd i = 1, 3, ...
    inv_even_i = inv[3::2]  # inv[i+1] for even i = 2, 4, ...
    g = [1]
    binom = 1
    for n in range(1, n_max + 1):
        binom = binom * ((xr - n + 1) % p) % p * inv[n] % p
        pos = sum(map(mul, g[n - 1 :: -2], inv_odd_i))
        neg = sum(map(mul, g[n - 2 :: -2], inv_even_i)) if n >= 2 else 0
        g.append((binom + pos - neg) % p)
    return g


def N_nk(n: int, k: int, x: Rational) -> Fraction:
    """Sum of the shifted Gregory polynomial: G_n(x) + G_n(x+1) + ... + G_n(x+k-1)."""
    if k < 1:
        raise ValueError("k must be positive")
    x = Fraction(x)
    poly = gregory_polynomial(n)
    return sum((poly(x + j) for j in range(k)), _ZERO)


def check_shift_identity(n: int, N: int, x: Rational) -> bool:
    """G_n(x) == (-1)^N sum_j (-1)^j binom(N,j) G_{n+N}(x+j), exactly."""
    x = Fraction(x)
    polys = gregory_polynomials(n + N)
    rhs = _ZERO
    for j in range(N + 1):
        rhs += Fraction((-1) ** j * math.comb(N, j)) * polys[n + N](x + j)
    return polys[n](x) == (-1) ** N * rhs


@dataclass(frozen=True)
class StirlingTriangles:
    """Rows 0..n_max of both Stirling triangles.

    s1 is the UNSIGNED first kind (cycle counts); the alternating sign
    (-1)^(n-j) lives in the generating function (log(1+t))^j / j!,
    not in the table.  s2 is the second kind (set partitions).
    """

    s1: tuple[tuple[int, ...], ...]
    s2: tuple[tuple[int, ...], ...]


def stirling_rows(n_max: int) -> StirlingTriangles:
    s1 = [(1,)]
    s2 = [(1,)]
    for n in range(1, n_max + 1):
        prev1, prev2 = s1[-1], s2[-1]
        row1 = [0] * (n + 1)
        row2 = [0] * (n + 1)
        for j in range(1, n + 1):
            row1[j] = prev1[j - 1] + (n - 1) * (prev1[j] if j < n else 0)
            row2[j] = prev2[j - 1] + j * (prev2[j] if j < n else 0)
        s1.append(tuple(row1))
        s2.append(tuple(row2))
    return StirlingTriangles(tuple(s1), tuple(s2))


def stirling1_row_mod(n: int, ctx: PrimeCtx) -> list[int]:
    """Row n of the unsigned first-kind triangle, reduced mod p."""
    p = ctx.p
    row = [1]
    for m in range(1, n + 1):
        prev = row
        row = [0] * (m + 1)
        for j in range(1, m + 1):
            row[j] = (prev[j - 1] + (m - 1) * (prev[j] if j < m else 0)) % p
    return row


def _theta(series: TruncatedSeries) -> TruncatedSeries:
    # Euler operator t * d/dt on coefficients
    return TruncatedSeries(
        [k * c for k, c in enumerate(series.coeffs)], series.order
    )


def check_euler_operator_ode(r: int, order: int) -> bool:
    """Formal check that E(z) = sum z^{rn}/(n!)^r satisfies theta^r E = (rz)^r E."""
    if order < r:
        raise ValueError("order must be at least r")
    coeffs = [_ZERO] * (order + 1)
    n = 0
    while r * n <= order:
        coeffs[r * n] = Fraction(1, math.factorial(n) ** r)
        n += 1
    E = TruncatedSeries(coeffs, order)
    lhs = E
    for _ in range(r):
        lhs = _theta(lhs)
    monomial = TruncatedSeries([_ZERO] * r + [Fraction(r**r)], order)
    return lhs == series_mul(monomial, E)
