"""Empirical Mertens-type sums and products over Gaussian prime ideals.

The reference asymptotics: sum of 1/N(p) over norms < x is loglog x + B +
O(1/log x), and prod (1 - 1/N(p))^-1 is (pi/4) e^gamma log x (1 + O(1/log x)).
All sums use math.fsum (exactly rounded); products go through log space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import GaussianInt, divides, norm
from .primes import PrimeTable

EULER_GAMMA = 0.57721566490153286

#: Leading constant of the inverse-product asymptotic, (pi/4) e^gamma.
MERTENS_CONSTANT = (math.pi / 4.0) * math.exp(EULER_GAMMA)


@dataclass(frozen=True)
class MertensReport:
    x: float
    recip_sum: float
    product_inv: float
    fitted_B: float
    ratio_to_theory: float


def _norms_below(table: PrimeTable, x: float) -> list[int]:
    return [int(n) for n in table.norms[: table.count_norm_lt(x)]]


def recip_prime_sum(x: float, table: PrimeTable) -> float:
    """sum of 1/N(p) over prime ideals with norm < x."""
    if x > table.limit:
        raise ValueError(f"x={x} exceeds table limit {table.limit}")
    return math.fsum(1.0 / n for n in _norms_below(table, x))


def inverse_product(x: float, table: PrimeTable) -> float:
    """prod over norms < x of (1 - 1/N(p))^-1, via exp of an fsum of logs."""
    if x > table.limit:
        raise ValueError(f"x={x} exceeds table limit {table.limit}")
    return math.exp(-math.fsum(math.log1p(-1.0 / n) for n in _norms_below(table, x)))


def mertens_report(x: float, table: PrimeTable) -> MertensReport:
    """Exact sums and products over tabled prime ideals of norm < x."""
    if x < 16:
        raise ValueError("mertens report requires x >= 16 (loglog territory)")
    if x > table.limit:
        raise ValueError(f"x={x} exceeds table limit {table.limit}")
    s = recip_prime_sum(x, table)
    prod = inverse_product(x, table)
    return MertensReport(
        x=x,
        recip_sum=s,
        product_inv=prod,
        fitted_B=s - math.log(math.log(x)),
        ratio_to_theory=prod / (MERTENS_CONSTANT * math.log(x)),
    )


def sieve_density_product(
    u: float,
    z: float,
    table: PrimeTable,
    N: GaussianInt = GaussianInt(1, 1),
) -> float:
    """prod over sieving primes u <= N(p) < z of (1 - g(p))^-1.

    g(p) = 1/(N(p)-1); sieving primes are odd and do not divide N.
    """
    if z > table.limit:
        raise ValueError(f"z={z} exceeds table limit {table.limit}")
    logs = []
    for p in table.in_norm_range(u, z):
        n = norm(p)
        if n <= 2 or divides(p, N):
            continue
        logs.append(math.log1p(-1.0 / (n - 1)))
    return math.exp(-math.fsum(logs))


def sieve_density_ratio_check(
    u: float,
    z: float,
    table: PrimeTable,
    N: GaussianInt = GaussianInt(1, 1),
    eps: float = 0.05,
) -> bool:
    """True iff prod (1-g)^-1 over [u, z) beats (1+eps) log z / log u.

    The reference result only promises a threshold u0(eps) above which this
    holds; scanning u downward locates the empirical threshold.
    """
    if not (1 < u < z):
        raise ValueError("need 1 < u < z")
    lhs = sieve_density_product(u, z, table, N)
    return lhs < (1.0 + eps) * math.log(z) / math.log(u)
