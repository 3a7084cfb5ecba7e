import pytest

from zisieve.primes import build_prime_table
from zisieve.sieve import build_sieve_function_table


@pytest.fixture(scope="session")
def table_1e6():
    """Covers norms <= 10^6; shared by everything at acceptance scale."""
    return build_prime_table(10**6 + 1)


@pytest.fixture(scope="session")
def table_small():
    return build_prime_table(2000)


@pytest.fixture(scope="session")
def fn_table():
    return build_sieve_function_table()
