import math
from fractions import Fraction

import pytest

from zisieve.core import GaussianInt, norm
from zisieve.mertens import (
    MERTENS_CONSTANT,
    inverse_product,
    mertens_report,
    recip_prime_sum,
    sieve_density_product,
    sieve_density_ratio_check,
)


class TestReport:
    def test_x16_exact(self, table_small):
        rep = mertens_report(16, table_small)
        exact = Fraction(1, 2) + Fraction(2, 5) + Fraction(1, 9) + Fraction(2, 13)
        assert rep.recip_sum == pytest.approx(float(exact), abs=1e-15)

    def test_requires_x16(self, table_small):
        with pytest.raises(ValueError):
            mertens_report(10, table_small)

    def test_monotone_in_x(self, table_small):
        xs = [16, 50, 200, 1000, 1999]
        reports = [mertens_report(x, table_small) for x in xs]
        for a, b in zip(reports, reports[1:]):
            assert b.recip_sum > a.recip_sum
            assert b.product_inv > a.product_inv

    def test_ratio_at_1e6(self, table_1e6):
        rep = mertens_report(10**6, table_1e6)
        assert 0.95 <= rep.ratio_to_theory <= 1.05

    def test_fitted_B_stabilizes(self, table_1e6):
        b5 = mertens_report(10**5, table_1e6).fitted_B
        b6 = mertens_report(10**6, table_1e6).fitted_B
        assert abs(b6 - b5) <= 0.02

    def test_sum_against_direct_loop(self, table_small):
        x = 300
        direct = sum(1.0 / norm(p) for p in table_small.entries if norm(p) < x)
        assert recip_prime_sum(x, table_small) == pytest.approx(direct, rel=1e-12)


class TestPreSieveInequality:
    def test_product_ratio_bound(self, table_1e6):
        # prod_inv(x)/prod_inv(u) < (1+eps) log x / log u for moderate u
        eps = 0.01
        for u, x in [(10**3, 10**5), (10**4, 10**6), (5000, 200000)]:
            lhs = inverse_product(x, table_1e6) / inverse_product(u, table_1e6)
            assert lhs < (1 + eps) * math.log(x) / math.log(u)

    def test_log_space_range_identity(self, table_1e6):
        # product over [u, z) equals product(z)/product(u) in log space
        u, z = 500, 50000
        banded = math.fsum(
            math.log1p(-1.0 / norm(p))
            for p in table_1e6.in_norm_range(u, z)
        )
        full = math.log(inverse_product(u, table_1e6)) - math.log(
            inverse_product(z, table_1e6)
        )
        assert banded == pytest.approx(full, abs=1e-12)


class TestDensityCheck:
    def test_empty_range_true(self, table_small):
        # u just below z with no primes in between: product is 1
        assert sieve_density_ratio_check(1500, 1501, table_small, eps=0.05)

    def test_large_window(self, table_1e6):
        assert sieve_density_ratio_check(10**3, 10**5, table_1e6, eps=0.05)

    def test_excludes_divisors_of_target(self, table_small):
        N = GaussianInt(3, 3)
        with_three = sieve_density_product(5, 20, table_small, GaussianInt(1, 1))
        without_three = sieve_density_product(5, 20, table_small, N)
        # dropping the norm-9 factor (3 | N) shrinks the product
        assert without_three < with_three

    def test_small_u_scan_finds_threshold(self, table_1e6):
        # the bound only promises a threshold u0(eps); record where it
        # first holds for a sweep and make sure the sweep is sane
        eps = 0.05
        z = 10**5
        verdicts = {u: sieve_density_ratio_check(u, z, table_1e6, eps=eps)
                    for u in (3, 10, 100, 1000)}
        assert verdicts[1000]

    def test_bad_range_rejected(self, table_small):
        with pytest.raises(ValueError):
            sieve_density_ratio_check(10, 5, table_small)


def test_constant_value():
    assert MERTENS_CONSTANT == pytest.approx(
        (math.pi / 4) * math.exp(0.57721566490153286), rel=1e-15
    )
