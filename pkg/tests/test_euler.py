import math
from fractions import Fraction

import pytest

from aconst.euler import (
    G_A,
    L1,
    check_eisenstein,
    delta_minus_one,
    ell_A,
    fermat_quotient,
    gamma_K,
    gamma_M,
    harmonic,
    verify_eisenstein,
    verify_interlude,
    verify_kluyver,
    verify_log_additivity,
    verify_mascheroni,
    wilson_gamma,
)
from aconst.modular import AElement, PrimeCtx, rational_mod, sieve_primes
from aconst.polys import gregory_values_exact

F = Fraction
WINDOW = sieve_primes(5, 101)


def brute_gamma_M(x, p):
    """Exact-rational oracle for the Mascheroni-type component at p."""
    values = gregory_values_exact(x, p - 2)
    total = F(0)
    for n in range(1, p - 1):
        term = values[n] / n
        total = total + term if n % 2 else total - term
    return rational_mod(total, PrimeCtx(p))


def brute_gamma_K(m, x, p):
    values = gregory_values_exact(x, p - 2)
    total = F(0)
    for n in range(1, p - m):
        term = values[n] / math.prod(range(n, n + m + 1))
        total = total + term if n % 2 else total - term
    total = math.factorial(m) * total + harmonic(m)
    ell = F(x + m + 1) * F(fermat_quotient(x + m + 1, p))
    return (rational_mod(total, PrimeCtx(p)) - rational_mod(ell, PrimeCtx(p))) % p


class TestFermatQuotient:
    def test_base_two_mod_three(self):
        assert fermat_quotient(2, 3) == 1

    @pytest.mark.parametrize("p", [3, 5, 7, 101])
    def test_one_maps_to_zero(self, p):
        assert fermat_quotient(1, p) == 0

    def test_rational_base_brute_force(self):
        # ((3 * inv2)^6 - 1)/7 with inv2 taken mod 49
        inv2 = next(v for v in range(49) if 2 * v % 49 == 1)
        expected = (pow(3 * inv2, 6, 49) - 1) // 7 % 7
        assert fermat_quotient(F(3, 2), 7) == expected == 4

    def test_undefined_cases(self):
        assert fermat_quotient(F(7, 2), 7) is None
        assert fermat_quotient(F(2, 7), 7) is None
        assert fermat_quotient(3, 2) is None

    def test_minus_one_maps_to_zero(self):
        assert fermat_quotient(-1, 13) == 0


class TestEll:
    def test_zero_and_one(self):
        assert ell_A(0, WINDOW) == AElement.zero(WINDOW)
        assert ell_A(1, WINDOW) == AElement.zero(WINDOW)
        assert ell_A(-1, WINDOW) == AElement.zero(WINDOW)

    def test_two_at_three(self):
        assert ell_A(2, [3])[3] == 2

    def test_exceptional_marks(self):
        elem = ell_A(F(10, 3), [3, 5, 7])
        assert set(elem.exceptional) == {3, 5}
        assert 7 in elem.components


class TestWilson:
    def test_known_quotients(self):
        wg = wilson_gamma([5, 7, 13])
        assert wg[5] == 0
        assert wg[7] == 5  # (720+1)/7 = 103 = 5 mod 7
        assert wg[13] == 0

    @pytest.mark.parametrize("p", sieve_primes(5, 80))
    def test_brute_force(self, p):
        expected = (math.factorial(p - 1) + 1) // p % p
        assert wilson_gamma([p])[p] == expected


class TestGammaM:
    def test_small_prime_oracle(self):
        for p in (5, 7, 11, 13):
            for x in (F(0), F(-1), F(1, 2), F(-3)):
                assert gamma_M(x, [p])[p] == brute_gamma_M(x, p)

    def test_at_minus_one_equals_wilson(self):
        assert gamma_M(-1, WINDOW) == wilson_gamma(WINDOW)

    def test_componentwise_theorem(self):
        x = F(1, 2)
        lhs = gamma_M(x, WINDOW)
        rhs = (
            wilson_gamma(WINDOW)
            + ell_A(x + 2, WINDOW)
            - ell_A(x + 1, WINDOW)
            + (delta_minus_one(x) - 1)
        )
        assert lhs == rhs
        assert len(lhs.comparable_primes(rhs)) > 20


class TestGammaK:
    def test_oracle_small_primes(self):
        for p in (7, 11, 13):
            for m in (1, 2):
                got = gamma_K(m, 0, [p])[p]
                assert got == brute_gamma_K(m, F(0), p)

    def test_indicator_boundary(self):
        # x+m = -1 activates the indicator on the theorem side
        report = verify_kluyver([1], [F(-2)], sieve_primes(5, 60))
        assert report.passed
        assert report.checks

    def test_small_primes_excluded(self):
        elem = gamma_K(3, 0, [3, 5, 7])
        assert 3 in elem.exceptional

    def test_m_guard(self):
        with pytest.raises(ValueError):
            gamma_K(0, 0, [5])


class TestGA:
    def test_against_exact_gregory(self):
        # G_5(0) = 3/160
        exact = gregory_values_exact(F(0), 5)[5]
        assert exact == F(3, 160)
        assert G_A(2, 0, [7])[7] == rational_mod(exact, PrimeCtx(7)) == 4

    def test_telescoped_case(self):
        # at x = -2 the theorem side collapses to ell(-1) = 0
        window = sieve_primes(5, 60)
        lhs = G_A(2, -2, window)
        assert lhs == AElement.zero(window)

    def test_theorem_componentwise(self):
        window = sieve_primes(5, 80)
        for k, x in [(2, F(0)), (3, F(1, 2)), (4, F(-1))]:
            lhs = G_A(k, x, window)
            rhs = AElement.zero(window)
            for j in range(k + 1):
                term = ell_A(x + j + 1, window).scale((-1) ** j * math.comb(k, j))
                rhs = rhs + term
            rhs = rhs.scale((-1) ** (k - 1))
            assert lhs == rhs

    def test_k_guard(self):
        with pytest.raises(ValueError):
            G_A(1, 0, [5])


class TestL1:
    def test_at_one_vanishes(self):
        assert L1(1, WINDOW) == AElement.zero(WINDOW)

    def test_at_two_brute_force(self):
        # -sum (-1)^n / n mod 5
        total = -sum(F((-1) ** n, n) for n in range(1, 5))
        assert L1(2, [5])[5] == rational_mod(total, PrimeCtx(5))

    def test_matches_ell_difference(self):
        for x in (F(2), F(1, 2), F(-3), F(7, 3)):
            lhs = L1(x, WINDOW)
            rhs = ell_A(x, WINDOW) - ell_A(x - 1, WINDOW)
            assert lhs == rhs
            assert len(lhs.comparable_primes(rhs)) > 15


class TestEisenstein:
    def test_hand_example(self):
        # x=1, p=3: lhs = 1 - inv(2) = 2, rhs = 2*q_3(2) - q_3(1) = 2
        assert check_eisenstein(1, 3) is True

    def test_zero_trivial(self):
        assert check_eisenstein(0, 11) is True

    def test_rational_brute_force(self):
        assert check_eisenstein(F(5, 3), 11) is True

    def test_undefined(self):
        assert check_eisenstein(F(1, 5), 5) is None

    def test_window_report(self):
        report = verify_eisenstein([F(7, 3), F(0), F(-1)], sieve_primes(5, 101))
        assert report.passed


class TestVerifiers:
    XS = [F(0), F(-1), F(1, 2), F(-3), F(7, 3)]

    def test_mascheroni(self):
        report = verify_mascheroni(self.XS, WINDOW)
        assert report.passed
        assert report.checks

    def test_interlude(self):
        report = verify_interlude([2, 3, 4, 5], [F(0), F(-1), F(1, 2)], WINDOW)
        assert report.passed

    def test_kluyver(self):
        report = verify_kluyver([1, 2, 3], [F(0), F(-1), F(-2), F(1, 2)], WINDOW)
        assert report.passed

    def test_log_additivity(self):
        report = verify_log_additivity([2, 3, 5, F(1, 2), -4, F(7, 3)], WINDOW)
        assert report.passed
        labels = {c.label for c in report.checks} | {s.label for s in report.skipped}
        assert len(labels) == 21  # 6 values, pairs with repetition

    def test_small_primes_skipped(self):
        report = verify_mascheroni([F(0)], [2, 3, 5, 7])
        skipped = {s.prime for s in report.skipped}
        assert {2, 3} <= skipped
        assert {c.prime for c in report.checks} == {5, 7}

    def test_threads_match_serial(self):
        serial = verify_interlude([2, 3], [F(0), F(1, 2)], WINDOW, threads=1)
        parallel = verify_interlude([2, 3], [F(0), F(1, 2)], WINDOW, threads=3)
        assert serial.checks == parallel.checks
        assert serial.skipped == parallel.skipped

    def test_parameter_guards(self):
        with pytest.raises(ValueError):
            verify_interlude([1], [F(0)], WINDOW)
        with pytest.raises(ValueError):
            verify_kluyver([0], [F(0)], WINDOW)
