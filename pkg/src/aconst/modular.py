"""Prime windows and exact arithmetic mod p / mod p**2.

Residues are plain ints in [0, p); a PrimeCtx carries the prime and its
lazily built inverse/factorial tables.  Rationals are reduced into a prime
field only when the denominator is a unit mod p; otherwise the operations
return None ("undefined") rather than assigning an arbitrary value.  An
AElement is the windowed stand-in for a prime-indexed residue family that
is only meaningful at all but finitely many primes: it stores one residue
per window prime, plus the primes where its value carries no meaning.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Union

Rational = Union[int, Fraction]


def sieve_primes(lo: int, hi: int) -> list[int]:
    """All primes in [lo, hi], ascending.  Empty range gives []."""
    if hi < 2 or hi < lo:
        return []
    lo = max(lo, 2)
    # sieve the base range [2, sqrt(hi)], then comb the segment [lo, hi]
    root = int(hi ** 0.5) + 1
    base = bytearray([1]) * (root + 1)
    base[0:2] = b"\x00\x00"
    for i in range(2, int(root ** 0.5) + 1):
        if base[i]:
            base[i * i :: i] = bytearray(len(base[i * i :: i]))
    small = [i for i in range(2, root + 1) if base[i]]
    if hi <= root:
        return [p for p in small if lo <= p <= hi]
    seg = bytearray([1]) * (hi - lo + 1)
    for p in small:
        start = max(p * p, ((lo + p - 1) // p) * p)
        seg[start - lo :: p] = bytearray(len(seg[start - lo :: p]))
    return [p for p in small if p >= lo] + [
        lo + i for i, flag in enumerate(seg) if flag and lo + i > root
    ]


class PrimeCtx:
    """A prime p with inverse and factorial tables mod p, built on first use.

    All tables are index-aligned: inv_table[i] is the inverse of i for
    1 <= i < p, fact_table[k] = k! mod p for 0 <= k <= p-1.
    """

    __slots__ = ("p", "__dict__")

    def __init__(self, p: int):
        if p < 2:
            raise ValueError(f"modulus must be a prime >= 2, got {p}")
        self.p = p

    @cached_property
    def inv_table(self) -> list[int]:
        # inv[i] = -(p//i) * inv[p%i] mod p, one O(p) pass
        p = self.p
        inv = [0, 1] + [0] * (p - 2)
        for i in range(2, p):
            inv[i] = (p - p // i) * inv[p % i] % p
        return inv

    @cached_property
    def fact_table(self) -> list[int]:
        p = self.p
        fact = [1] * p
        for k in range(1, p):
            fact[k] = fact[k - 1] * k % p
        return fact

    @cached_property
    def inv_fact_table(self) -> list[int]:
        p = self.p
        inv_fact = [1] * p
        inv_fact[p - 1] = pow(self.fact_table[p - 1], p - 2, p)
        for k in range(p - 1, 0, -1):
            inv_fact[k - 1] = inv_fact[k] * k % p
        return inv_fact

    def inv(self, i: int) -> int:
        return self.inv_table[i % self.p]

    def __repr__(self) -> str:
        return f"PrimeCtx({self.p})"


def _num_den(q: Rational) -> tuple[int, int]:
    if isinstance(q, int):
        return q, 1
    return q.numerator, q.denominator


def rational_mod(q: Rational, ctx: PrimeCtx) -> int | None:
    """Residue of a rational mod p, or None when p divides the denominator."""
    num, den = _num_den(q)
    p = ctx.p
    if den % p == 0:
        return None
    if den == 1:
        return num % p
    return num * pow(den, -1, p) % p


def rational_pow_mod_p2(x: Rational, e: int, p: int) -> int | None:
    """x**e mod p**2, defined only when p divides neither part of x."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    num, den = _num_den(x)
    if num % p == 0 or den % p == 0:
        return None
    p2 = p * p
    r = pow(num, e, p2)
    if den != 1:
        r = r * pow(pow(den, e, p2), -1, p2) % p2
    return r


def binom_rational_mod(x: Rational, k: int, ctx: PrimeCtx) -> int | None:
    """Residue of x(x-1)...(x-k+1)/k! mod p; None if p | den(x) or k >= p."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    p = ctx.p
    if k >= p:
        return None  # k! not invertible
    xr = rational_mod(x, ctx)
    if xr is None:
        return None
    prod = 1
    for i in range(k):
        prod = prod * (xr - i) % p
    return prod * ctx.inv_fact_table[k] % p


class AElement:
    """Residue family over a prime window, defined at all but finitely many primes.

    components maps each meaningful window prime to its residue; exceptional
    maps the remaining window primes to the reason their value is undefined.
    Primes <= exceptional_bound are ignored outright (small primes a theorem
    excludes wholesale).  Equality means agreement at every admissible prime
    of the common window.
    """

    __slots__ = ("window", "components", "exceptional", "exceptional_bound")

    def __init__(
        self,
        window: Iterable[int],
        components: Mapping[int, int],
        exceptional: Mapping[int, str] | None = None,
        exceptional_bound: int = 0,
    ):
        self.window = tuple(window)
        self.components = dict(components)
        self.exceptional = dict(exceptional or {})
        self.exceptional_bound = exceptional_bound
        for p in self.window:
            if p not in self.components and p not in self.exceptional:
                raise ValueError(f"window prime {p} has neither residue nor reason")

    @classmethod
    def from_rational(
        cls, q: Rational, window: Iterable[int], exceptional_bound: int = 0
    ) -> "AElement":
        comps: dict[int, int] = {}
        bad: dict[int, str] = {}
        num, den = _num_den(q)
        for p in window:
            if den % p == 0:
                bad[p] = "p divides denominator"
            else:
                comps[p] = num * pow(den, -1, p) % p
        return cls(window, comps, bad, exceptional_bound)

    @classmethod
    def zero(cls, window: Iterable[int], exceptional_bound: int = 0) -> "AElement":
        return cls(window, {p: 0 for p in window}, {}, exceptional_bound)

    def admissible(self, p: int) -> bool:
        return p in self.components and p > self.exceptional_bound

    def __getitem__(self, p: int) -> int:
        if p in self.exceptional:
            raise KeyError(f"component at p={p} undefined: {self.exceptional[p]}")
        return self.components[p]

    def get(self, p: int) -> int | None:
        return self.components.get(p)

    def _binary(self, other, op) -> "AElement":
        if isinstance(other, AElement):
            if self.window != other.window:
                raise ValueError("window mismatch")
            comps = {}
            bad = dict(self.exceptional)
            for p, reason in other.exceptional.items():
                bad.setdefault(p, reason)
            for p in self.window:
                if p in self.components and p in other.components:
                    comps[p] = op(self.components[p], other.components[p]) % p
            return AElement(
                self.window,
                comps,
                bad,
                max(self.exceptional_bound, other.exceptional_bound),
            )
        if isinstance(other, (int, Fraction)):
            return self._binary(
                AElement.from_rational(other, self.window, self.exceptional_bound), op
            )
        return NotImplemented

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._binary(other, lambda a, b: b + a)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __neg__(self):
        return AElement(
            self.window,
            {p: (-r) % p for p, r in self.components.items()},
            self.exceptional,
            self.exceptional_bound,
        )

    def scale(self, c: Rational) -> "AElement":
        """Componentwise product with a rational scalar."""
        num, den = _num_den(c)
        comps = {}
        bad = dict(self.exceptional)
        for p, r in self.components.items():
            if den % p == 0:
                bad[p] = "scalar denominator divisible by p"
            else:
                comps[p] = r * num % p * pow(den, -1, p) % p
        return AElement(self.window, comps, bad, self.exceptional_bound)

    def comparable_primes(self, other: "AElement") -> list[int]:
        """Window primes where both sides carry a meaningful residue."""
        bound = max(self.exceptional_bound, other.exceptional_bound)
        return [
            p
            for p in self.window
            if p > bound and p in self.components and p in other.components
        ]

    def __eq__(self, other) -> bool:
        if not isinstance(other, AElement):
            return NotImplemented
        if self.window != other.window:
            return False
        return all(
            self.components[p] == other.components[p]
            for p in self.comparable_primes(other)
        )

    __hash__ = None  # mutable mappings inside

    def __repr__(self) -> str:
        shown = {p: self.components[p] for p in self.window[:4] if p in self.components}
        return (
            f"AElement(window[{len(self.window)}], {shown}..., "
            f"exceptional={sorted(self.exceptional)}, bound={self.exceptional_bound})"
        )
