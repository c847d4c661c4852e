"""Bell-type sequences, their coefficient families, and Dobinski congruences.

Dobinski's formula writes the moment-like series sum k^n/k! as b(n)*e with
b(n) the Bell numbers.  The finite analogue truncates the series at k = p-1
and reads it mod p; the Bell-side coefficients pick up a correction sequence
g.  Everything generalizes to an extra power r in the factorial and a
rational weight x: the coefficient polynomials b_{r,j}(n; x) and g_r(n; x)
share one binomial-transform recurrence and differ only in initial values.

Conventions: 0^0 = 1 (the k = 0 term of every sum), and the g recurrence
starts at shift index 1 -- its initial window spans indices 0..r, one past
the b window, and the index-r value is pinned by the initial data, not the
recurrence.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .modular import AElement, PrimeCtx, Rational, rational_mod
from .polys import RationalPolynomial
from .report import CheckRecord, SkipRecord, VerificationReport

DEFAULT_WINDOW = (5, 2003)


def bell(n_max: int) -> list[int]:
    """Bell numbers b(0)..b(n_max): 1, 1, 2, 5, 15, 52, ..."""
    seq = [1]
    for n in range(n_max):
        seq.append(sum(math.comb(n, k) * seq[k] for k in range(n + 1)))
    return seq


def g_seq(n_max: int) -> list[int]:
    """The companion sequence 0, 1, 1, 3, 9, 31, ...: g(0)=0, g(1)=1, Bell recurrence."""
    seq = [0, 1]
    for n in range(1, n_max):
        seq.append(sum(math.comb(n, k) * seq[k] for k in range(n + 1)))
    return seq[: n_max + 1]


@dataclass(frozen=True)
class CoeffFamily:
    """Tables b_{r,j}(n; x) (j < r) and g_r(n; x) for 0 <= n <= n_max."""

    r: int
    n_max: int
    b: tuple[tuple[RationalPolynomial, ...], ...]  # indexed [j][n]
    g: tuple[RationalPolynomial, ...]

    def b_values(self, x: Rational) -> list[list[Fraction]]:
        x = Fraction(x)
        return [[poly(x) for poly in row] for row in self.b]

    def g_values(self, x: Rational) -> list[Fraction]:
        x = Fraction(x)
        return [poly(x) for poly in self.g]


def _times_x(poly: RationalPolynomial) -> RationalPolynomial:
    return RationalPolynomial([Fraction(0)] + list(poly.coeffs))


def coeff_family(r: int, n_max: int) -> CoeffFamily:
    """Build both coefficient tables up to index n_max.

    b_{r,j}: delta_{j,n} for n < r, then f(n+r) = x sum_k C(n,k) f(k) for n >= 0.
    g_r: (-1)^(r-1) x delta_{n,r} for n <= r, then the same recurrence for n >= 1.
    """
    if r < 1:
        raise ValueError("r must be positive")
    b_rows = []
    for j in range(r):
        row = [RationalPolynomial([1] if n == j else []) for n in range(min(r, n_max + 1))]
        for n in range(r, n_max + 1):
            m = n - r
            acc = RationalPolynomial()
            for k in range(m + 1):
                acc = acc + math.comb(m, k) * row[k]
            row.append(_times_x(acc))
        b_rows.append(tuple(row))

    spike = RationalPolynomial([0, (-1) ** (r - 1)])  # (-1)^(r-1) * x
    g_row = [spike if n == r else RationalPolynomial() for n in range(min(r, n_max) + 1)]
    for n in range(r + 1, n_max + 1):
        m = n - r  # >= 1 here: the index-r value comes from the initial data
        acc = RationalPolynomial()
        for k in range(m + 1):
            acc = acc + math.comb(m, k) * g_row[k]
        g_row.append(_times_x(acc))
    return CoeffFamily(r, n_max, tuple(b_rows), tuple(g_row[: n_max + 1]))


def partial_sum_exact(r: int, n: int, N: int, x: Rational) -> Fraction:
    """Exact value of sum_{k=0}^{N-1} k^n x^k / (k!)^r."""
    if r < 1 or n < 0 or N < 1:
        raise ValueError("need r >= 1, n >= 0, N >= 1")
    x = Fraction(x)
    total = Fraction(1 if n == 0 else 0)  # k = 0 term, with 0^0 = 1
    w = Fraction(1)
    for k in range(1, N):
        w = w * x / k**r
        total += k**n * w
    return total


def check_truncation_identity(r: int, n: int, N: int, x: Rational) -> bool:
    """Exact check of the finite-sum recurrence with its boundary term:

    D^(N)(n+r) = x sum_k C(n,k) D^(N)(k) - N^n x^N / ((N-1)!)^r.
    """
    x = Fraction(x)
    lhs = partial_sum_exact(r, n + r, N, x)
    rhs = x * sum(
        (math.comb(n, k) * partial_sum_exact(r, k, N, x) for k in range(n + 1)),
        Fraction(0),
    )
    rhs -= Fraction(N**n) * x**N / math.factorial(N - 1) ** r
    return lhs == rhs


def _d_sums_mod(r: int, n_max: int, x: Fraction, p: int) -> list[int] | None:
    """Residues of sum_{k<p} k^n x^k/(k!)^r for all n = 0..n_max, or None.

    One O(p * n_max) pass: the weight x^k/(k!)^r advances by x * inv(k)^r
    per step and the powers k^n by one multiply per n.
    """
    if x.denominator % p == 0:
        return None
    ctx = PrimeCtx(p)
    inv = ctx.inv_table
    xr = x.numerator * pow(x.denominator, -1, p) % p
    acc = [0] * (n_max + 1)
    acc[0] = 1
    w = 1
    for k in range(1, p):
        iv = inv[k]
        w = w * xr % p
        for _ in range(r):
            w = w * iv % p
        acc[0] += w
        kp = 1
        for n in range(1, n_max + 1):
            kp = kp * k % p
            acc[n] += kp * w
    return [a % p for a in acc]


def d_r_A(r: int, n: int, x: Rational, window: Sequence[int]) -> AElement:
    """The windowed finite analogue of D_r(n; x): residue of the truncated
    sum at each window prime not dividing den(x)."""
    return d_r_A_range(r, n, x, window)[n]


def d_r_A_range(r: int, n_max: int, x: Rational, window: Sequence[int]) -> list[AElement]:
    """All of D_{r,A}(0; x)..D_{r,A}(n_max; x) in one pass per prime."""
    x = Fraction(x)
    comps: list[dict[int, int]] = [{} for _ in range(n_max + 1)]
    bad: dict[int, str] = {}
    for p in window:
        sums = _d_sums_mod(r, n_max, x, p)
        if sums is None:
            bad[p] = "p divides den(x)"
            continue
        for n in range(n_max + 1):
            comps[n][p] = sums[n]
    return [AElement(window, comps[n], bad) for n in range(n_max + 1)]


def _value_denominator_primes(values: list[Fraction], primes: Sequence[int]) -> dict[int, str]:
    """Window primes dividing the denominator of any of the given values."""
    lcm = 1
    for v in values:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    return {
        p: "p divides a coefficient denominator" for p in primes if lcm % p == 0
    }


def _dobinski_batch(args) -> tuple[list[tuple], list[tuple]]:
    r, n_max, x, b_vals, g_vals, primes = args
    checks = []
    skips = []
    n_top = max(n_max, r - 1)  # the right side always needs D(j) for j < r
    for p in primes:
        sums = _d_sums_mod(r, n_top, x, p)
        if sums is None:
            skips.append((p, "", "p divides den(x)"))
            continue
        ctx = PrimeCtx(p)
        b_res = [[rational_mod(v, ctx) for v in row] for row in b_vals]
        g_res = [rational_mod(v, ctx) for v in g_vals]
        for n in range(n_max + 1):
            rhs = g_res[n]
            for j in range(r):
                rhs += b_res[j][n] * sums[j]
            rhs %= p
            checks.append((p, f"n={n}", sums[n], rhs, sums[n] == rhs))
    return checks, skips


def verify_dobinski(
    r: int,
    n_max: int,
    x: Rational,
    window: Sequence[int],
    threads: int = 1,
) -> VerificationReport:
    """Check D_{r,A}(n; x) = sum_j b_{r,j}(n; x) D_{r,A}(j; x) + g_r(n; x)
    at every admissible (prime, n) over the window.

    Both sides are computed independently: the left from the truncated sums,
    the right from the exact coefficient values reduced per prime.  Primes
    dividing den(x) or any coefficient denominator are skipped and listed.
    """
    x = Fraction(x)
    window = list(window)
    start = time.monotonic()
    fam = coeff_family(r, n_max)
    b_vals = fam.b_values(x)
    g_vals = fam.g_values(x)
    flat = [v for row in b_vals for v in row] + g_vals
    skipped_coeff = _value_denominator_primes(flat, window)

    report = VerificationReport(
        theorem="dobinski",
        params={"r": r, "n_max": n_max, "x": str(x)},
        window_lo=window[0] if window else 0,
        window_hi=window[-1] if window else 0,
        prime_count=len(window),
    )
    for p, reason in skipped_coeff.items():
        report.skipped.append(SkipRecord(p, "", reason))
    todo = [p for p in window if p not in skipped_coeff]

    if threads > 1 and len(todo) > 1:
        shards = [todo[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = pool.map(
                _dobinski_batch,
                [(r, n_max, x, b_vals, g_vals, shard) for shard in shards if shard],
            )
            batches = list(results)
    else:
        batches = [_dobinski_batch((r, n_max, x, b_vals, g_vals, todo))]

    for checks, skips in batches:
        report.checks.extend(CheckRecord(*c) for c in checks)
        report.skipped.extend(SkipRecord(*s) for s in skips)
    report.sort_records()
    report.elapsed = time.monotonic() - start
    return report


def numeric_identity_check(
    r: int, n: int, x: Rational, N: int, tolerance: Rational
) -> bool:
    """Exact-rational check that the truncated series satisfy the real-number
    identity D_r(n; x) = sum_j b_{r,j}(n; x) D_r(j; x) to within tolerance.

    Refuses (raises ValueError) when the crude geometric tail bound cannot
    certify the truncation error below the tolerance.
    """
    x = Fraction(x)
    tol = Fraction(tolerance)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    fam = coeff_family(r, n)
    b_at = [fam.b[j][n](x) for j in range(r)]

    def tail_bound(idx: int) -> Fraction:
        # sum_{k>=N} k^idx |x|^k / (k!)^r, bounded by a geometric series
        ax = abs(x)
        t = Fraction(N**idx) * ax**N / math.factorial(N) ** r
        q = (1 + Fraction(1, N)) ** idx * ax / (N + 1) ** r
        if q >= 1:
            raise ValueError(f"tail bound diverges at N={N} (ratio {q} >= 1)")
        return t / (1 - q)

    err = tail_bound(n) + sum(
        (abs(b) * tail_bound(j) for j, b in enumerate(b_at)), Fraction(0)
    )
    if err >= tol / 2:
        raise ValueError(f"truncation tail bound {float(err):.3g} exceeds tolerance/2")

    lhs = partial_sum_exact(r, n, N, x)
    rhs = sum(
        (b_at[j] * partial_sum_exact(r, j, N, x) for j in range(r)), Fraction(0)
    )
    return abs(lhs - rhs) < tol
