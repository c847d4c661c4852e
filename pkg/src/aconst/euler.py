"""Finite analogues of Euler's constant and the congruences tying them together.

The Fermat quotient q_p(x) = (x^(p-1) - 1)/p plays the role of log x; the
Wilson quotient ((p-1)! + 1)/p gives one analogue of Euler's constant, and
alternating sums of Gregory polynomial residues (Mascheroni- and
Kluyver-style) give others.  The theorems verified here say the two kinds
differ only by values of x*q_p(x) and rational constants.

Every verifier computes its two sides along genuinely independent paths:
the sum side from Gregory residue streams, the quotient side from Fermat
and Wilson quotients mod p^2.  Primes 2 and 3 are excluded from verifiers
wholesale (the congruences are sufficiently-large-p statements); primes
dividing a relevant numerator or denominator are skipped per component,
with the reason recorded.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from ._parallel import run_prime_shards
from .modular import AElement, PrimeCtx, Rational, rational_mod, rational_pow_mod_p2
from .polys import gregory_residue_stream
from .report import CheckRecord, SkipRecord, VerificationReport

DEFAULT_WINDOW = (5, 1009)
_SMALL_PRIME_BOUND = 3  # verifiers skip p <= 3 outright


def fermat_quotient(x: Rational, p: int) -> int | None:
    """Residue of (x^(p-1) - 1)/p mod p; None unless p is odd and prime to x."""
    if p == 2:
        return None
    r = rational_pow_mod_p2(x, p - 1, p)
    if r is None:
        return None
    return (r - 1) // p % p  # r = 1 mod p by Fermat, so the division is exact


def harmonic(m: int) -> Fraction:
    """H_m = 1 + 1/2 + ... + 1/m, with H_0 = 0."""
    return sum((Fraction(1, j) for j in range(1, m + 1)), Fraction(0))


def delta_minus_one(x: Rational) -> int:
    """Indicator of x = -1, evaluated exactly on the rational x."""
    return 1 if Fraction(x) == -1 else 0


def _ell_component(x: Fraction, p: int) -> int | None:
    # x * q_p(x) mod p, with the conventions ell(0) = 0 and ell(1) = 0
    if x == 0 or x == 1:
        return 0
    q = fermat_quotient(x, p)
    if q is None:
        return None
    xr = x.numerator * pow(x.denominator, -1, p) % p
    return xr * q % p


def ell_A(x: Rational, window: Sequence[int]) -> AElement:
    """The family (x * q_p(x) mod p)_p, i.e. x times the log analogue.

    Zero when x is 0 or 1; elsewhere primes dividing the numerator or
    denominator of x (and p = 2) are exceptional.
    """
    x = Fraction(x)
    comps: dict[int, int] = {}
    bad: dict[int, str] = {}
    for p in window:
        c = _ell_component(x, p)
        if c is None:
            bad[p] = f"fermat quotient undefined at x={x}"
        else:
            comps[p] = c
    return AElement(window, comps, bad)


def _wilson_component(p: int) -> int:
    # ((p-1)! + 1)/p mod p, one O(p) pass mod p^2
    p2 = p * p
    f = 1
    for i in range(2, p):
        f = f * i % p2
    return (f + 1) // p % p  # (p-1)! = -1 mod p makes the division exact


def wilson_gamma(window: Sequence[int]) -> AElement:
    """The Wilson-quotient family (((p-1)! + 1)/p mod p)_p."""
    return AElement(window, {p: _wilson_component(p) for p in window})


def _mascheroni_sum(stream: list[int], ctx: PrimeCtx) -> int:
    # sum_{n=1}^{p-2} (-1)^(n-1) G_n(x) / n mod p
    p = ctx.p
    inv = ctx.inv_table
    s = 0
    for n in range(1, p - 1):
        t = stream[n] * inv[n]
        s = s + t if n % 2 else s - t
    return s % p


def _kluyver_sum(stream: list[int], m: int, ctx: PrimeCtx) -> int:
    # m! sum_{n=1}^{p-m-1} (-1)^(n-1) G_n(x) / (n(n+1)...(n+m)) mod p
    p = ctx.p
    inv = ctx.inv_table
    s = 0
    for n in range(1, p - m):
        iv = inv[n]
        for i in range(1, m + 1):
            iv = iv * inv[n + i] % p
        t = stream[n] * iv
        s = s + t if n % 2 else s - t
    return s % p * (math.factorial(m) % p) % p


def gamma_M(x: Rational, window: Sequence[int]) -> AElement:
    """Mascheroni-style analogue: alternating sum of G_n(x)/n for n <= p-2."""
    x = Fraction(x)
    comps: dict[int, int] = {}
    bad: dict[int, str] = {}
    for p in window:
        ctx = PrimeCtx(p)
        stream = gregory_residue_stream(x, p - 2, ctx)
        if stream is None:
            bad[p] = "p divides den(x)"
        else:
            comps[p] = _mascheroni_sum(stream, ctx)
    return AElement(window, comps, bad)


def gamma_K(m: int, x: Rational, window: Sequence[int]) -> AElement:
    """Kluyver-style analogue of order m: the rising-factorial sum plus
    H_m minus the ell component at x+m+1.

    A prime is exceptional when p <= m+1 or when the ell part is undefined;
    the whole component is then dropped rather than split.
    """
    if m < 1:
        raise ValueError("m must be positive")
    x = Fraction(x)
    hm = harmonic(m)
    comps: dict[int, int] = {}
    bad: dict[int, str] = {}
    for p in window:
        if p <= m + 1:
            bad[p] = f"p <= m+1 = {m + 1}"
            continue
        ctx = PrimeCtx(p)
        stream = gregory_residue_stream(x, p - 2, ctx)
        if stream is None:
            bad[p] = "p divides den(x)"
            continue
        ell = _ell_component(x + m + 1, p)
        if ell is None:
            bad[p] = f"fermat quotient undefined at x+m+1={x + m + 1}"
            continue
        comps[p] = (_kluyver_sum(stream, m, ctx) + rational_mod(hm, ctx) - ell) % p
    return AElement(window, comps, bad)


def G_A(k: int, x: Rational, window: Sequence[int]) -> AElement:
    """The family (G_{p-k}(x) mod p)_p for fixed offset k >= 2."""
    if k < 2:
        raise ValueError("k must be at least 2")
    x = Fraction(x)
    comps: dict[int, int] = {}
    bad: dict[int, str] = {}
    for p in window:
        if p <= k:
            bad[p] = f"p <= k = {k}"
            continue
        stream = gregory_residue_stream(x, p - k, PrimeCtx(p))
        if stream is None:
            bad[p] = "p divides den(x)"
            continue
        comps[p] = stream[p - k]
    return AElement(window, comps, bad)


def L1(x: Rational, window: Sequence[int]) -> AElement:
    """The log-type family (-sum_{n=1}^{p-1} (1-x)^n / n mod p)_p."""
    x = Fraction(x)
    comps: dict[int, int] = {}
    bad: dict[int, str] = {}
    for p in window:
        if x.denominator % p == 0:
            bad[p] = "p divides den(x)"
            continue
        ctx = PrimeCtx(p)
        inv = ctx.inv_table
        y = rational_mod(1 - x, ctx)
        s = 0
        w = 1
        for n in range(1, p):
            w = w * y % p
            s += w * inv[n]
        comps[p] = -s % p
    return AElement(window, comps, bad)


def _eisenstein_sides(x: Fraction, p: int) -> tuple[int, int] | None:
    # sum_{m=1}^{p-1} (-1)^(m-1) x^m/m  vs  (x+1)q_p(x+1) - x q_p(x), mod p
    ctx = PrimeCtx(p)
    xr = rational_mod(x, ctx)
    if xr is None:
        return None
    e1 = _ell_component(x + 1, p)
    e0 = _ell_component(x, p)
    if e1 is None or e0 is None:
        return None
    inv = ctx.inv_table
    s = 0
    w = 1
    for m in range(1, p):
        w = w * xr % p
        t = w * inv[m]
        s = s + t if m % 2 else s - t
    return s % p, (e1 - e0) % p


def check_eisenstein(x: Rational, p: int) -> bool | None:
    """Eisenstein's congruence for the truncated log series at x; None when
    a needed quotient is undefined at p."""
    sides = _eisenstein_sides(Fraction(x), p)
    if sides is None:
        return None
    return sides[0] == sides[1]


def _new_report(theorem: str, params: dict, window: Sequence[int]) -> VerificationReport:
    return VerificationReport(
        theorem=theorem,
        params=params,
        window_lo=window[0] if window else 0,
        window_hi=window[-1] if window else 0,
        prime_count=len(window),
    )


def _split_small_primes(window: Sequence[int]):
    small = [p for p in window if p <= _SMALL_PRIME_BOUND]
    todo = [p for p in window if p > _SMALL_PRIME_BOUND]
    return small, todo


def _finish(report: VerificationReport, batches, small_primes, start: float):
    for p in small_primes:
        report.skipped.append(SkipRecord(p, "", "excluded small prime (p <= 3)"))
    for checks, skips in batches:
        report.checks.extend(CheckRecord(*c) for c in checks)
        report.skipped.extend(SkipRecord(*s) for s in skips)
    report.sort_records()
    report.elapsed = time.monotonic() - start
    return report


def _mascheroni_batch(payload):
    (xs,), primes = payload
    checks, skips = [], []
    for p in primes:
        ctx = PrimeCtx(p)
        wilson = _wilson_component(p)
        for x in xs:
            label = f"x={x}"
            stream = gregory_residue_stream(x, p - 2, ctx)
            if stream is None:
                skips.append((p, label, "p divides den(x)"))
                continue
            e2 = _ell_component(x + 2, p)
            e1 = _ell_component(x + 1, p)
            if e2 is None or e1 is None:
                skips.append((p, label, "fermat quotient undefined at x+1 or x+2"))
                continue
            lhs = _mascheroni_sum(stream, ctx)
            rhs = (wilson + e2 - e1 + delta_minus_one(x) - 1) % p
            checks.append((p, label, lhs, rhs, lhs == rhs))
    return checks, skips


def verify_mascheroni(
    xs: Sequence[Rational], window: Sequence[int], threads: int = 1
) -> VerificationReport:
    """Mascheroni-sum analogue against Wilson quotient plus ell terms,
    componentwise over the window, for each sampled x."""
    xs = [Fraction(x) for x in xs]
    start = time.monotonic()
    report = _new_report("mascheroni", {"x": [str(x) for x in xs]}, window)
    small, todo = _split_small_primes(window)
    batches = run_prime_shards(_mascheroni_batch, (xs,), todo, threads)
    return _finish(report, batches, small, start)


def _interlude_batch(payload):
    (ks, xs), primes = payload
    checks, skips = [], []
    for p in primes:
        ctx = PrimeCtx(p)
        for x in xs:
            stream = gregory_residue_stream(x, p - 2, ctx)
            if stream is None:
                for k in ks:
                    skips.append((p, f"k={k} x={x}", "p divides den(x)"))
                continue
            for k in ks:
                label = f"k={k} x={x}"
                if p <= k:
                    skips.append((p, label, f"p <= k = {k}"))
                    continue
                ells = [_ell_component(x + j + 1, p) for j in range(k + 1)]
                if any(e is None for e in ells):
                    skips.append((p, label, "fermat quotient undefined at some x+j+1"))
                    continue
                rhs = 0
                for j, e in enumerate(ells):
                    t = math.comb(k, j) * e
                    rhs = rhs - t if j % 2 else rhs + t
                rhs = rhs % p if k % 2 else -rhs % p  # overall (-1)^(k-1)
                lhs = stream[p - k]
                checks.append((p, label, lhs, rhs, lhs == rhs))
    return checks, skips


def verify_interlude(
    ks: Sequence[int], xs: Sequence[Rational], window: Sequence[int], threads: int = 1
) -> VerificationReport:
    """G_{p-k}(x) against the alternating binomial combination of ell values."""
    xs = [Fraction(x) for x in xs]
    ks = list(ks)
    if any(k < 2 for k in ks):
        raise ValueError("k must be at least 2")
    start = time.monotonic()
    report = _new_report(
        "interlude", {"k": ks, "x": [str(x) for x in xs]}, window
    )
    small, todo = _split_small_primes(window)
    batches = run_prime_shards(_interlude_batch, (ks, xs), todo, threads)
    return _finish(report, batches, small, start)


def _kluyver_batch(payload):
    (ms, xs), primes = payload
    checks, skips = [], []
    for p in primes:
        ctx = PrimeCtx(p)
        wilson = _wilson_component(p)
        for x in xs:
            stream = gregory_residue_stream(x, p - 2, ctx)
            if stream is None:
                for m in ms:
                    skips.append((p, f"m={m} x={x}", "p divides den(x)"))
                continue
            for m in ms:
                label = f"m={m} x={x}"
                if p <= m + 1:
                    skips.append((p, label, f"p <= m+1 = {m + 1}"))
                    continue
                ells = [_ell_component(x + j + 1, p) for j in range(m + 1)]
                if any(e is None for e in ells):
                    skips.append((p, label, "fermat quotient undefined at some x+j+1"))
                    continue
                hm = harmonic(m)
                lhs = (
                    _kluyver_sum(stream, m, ctx) + rational_mod(hm, ctx) - ells[m]
                ) % p
                rhs = wilson + delta_minus_one(x + m) - 1
                rhs += rational_mod(hm - 1, ctx) * ells[m]
                for j in range(m):
                    coef = rational_mod(
                        Fraction((-1) ** (m - j) * math.comb(m, j), m - j), ctx
                    )
                    rhs += coef * ells[j]
                rhs %= p
                checks.append((p, label, lhs, rhs, lhs == rhs))
    return checks, skips


def verify_kluyver(
    ms: Sequence[int], xs: Sequence[Rational], window: Sequence[int], threads: int = 1
) -> VerificationReport:
    """Kluyver-sum analogue (from its defining sum) against the Wilson/ell
    expansion computed on an independent path."""
    xs = [Fraction(x) for x in xs]
    ms = list(ms)
    if any(m < 1 for m in ms):
        raise ValueError("m must be positive")
    start = time.monotonic()
    report = _new_report("kluyver", {"m": ms, "x": [str(x) for x in xs]}, window)
    small, todo = _split_small_primes(window)
    batches = run_prime_shards(_kluyver_batch, (ms, xs), todo, threads)
    return _finish(report, batches, small, start)


def _eisenstein_batch(payload):
    (xs,), primes = payload
    checks, skips = [], []
    for p in primes:
        for x in xs:
            label = f"x={x}"
            sides = _eisenstein_sides(x, p)
            if sides is None:
                skips.append((p, label, "quotient or residue undefined"))
            else:
                lhs, rhs = sides
                checks.append((p, label, lhs, rhs, lhs == rhs))
    return checks, skips


def verify_eisenstein(
    xs: Sequence[Rational], window: Sequence[int], threads: int = 1
) -> VerificationReport:
    """Eisenstein's congruence for each sampled x over the window."""
    xs = [Fraction(x) for x in xs]
    start = time.monotonic()
    report = _new_report("eisenstein", {"x": [str(x) for x in xs]}, window)
    small, todo = _split_small_primes(window)
    batches = run_prime_shards(_eisenstein_batch, (xs,), todo, threads)
    return _finish(report, batches, small, start)


def _logadd_batch(payload):
    (pairs,), primes = payload
    checks, skips = [], []
    for p in primes:
        for x, y in pairs:
            label = f"x={x} y={y}"
            qx = fermat_quotient(x, p)
            qy = fermat_quotient(y, p)
            qxy = fermat_quotient(x * y, p)
            if qx is None or qy is None or qxy is None:
                skips.append((p, label, "fermat quotient undefined"))
            else:
                rhs = (qx + qy) % p
                checks.append((p, label, qxy, rhs, qxy == rhs))
    return checks, skips


def verify_log_additivity(
    values: Sequence[Rational], window: Sequence[int], threads: int = 1
) -> VerificationReport:
    """q_p(xy) = q_p(x) + q_p(y) for every pair (with repetition) of values."""
    vals = [Fraction(v) for v in values]
    pairs = list(combinations_with_replacement(vals, 2))
    start = time.monotonic()
    report = _new_report(
        "log-additivity", {"values": [str(v) for v in vals]}, window
    )
    small, todo = _split_small_primes(window)
    batches = run_prime_shards(_logadd_batch, (pairs,), todo, threads)
    return _finish(report, batches, small, start)
