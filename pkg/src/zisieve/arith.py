"""Arithmetic functions on ideals of Z[i] and the singular series.

Ideals are identified with their canonical generators; enumeration iterates
the half-open first quadrant (re > 0, im >= 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterator

from .core import RAMIFIED, GaussianInt, canonicalize, divrem, gcd, norm
from .primes import IdealFactorization, PrimeTable, factorize


def moebius(f: IdealFactorization) -> int:
    """0 on non-squarefree ideals, else (-1)^(number of prime divisors)."""
    if any(e >= 2 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def euler_phi(f: IdealFactorization) -> int:
    """|(Z[i]/n)*| = prod N(p)^(e-1) (N(p)-1), exact integer arithmetic."""
    out = 1
    for p, e in f.factors:
        n = norm(p)
        out *= n ** (e - 1) * (n - 1)
    return out


def lattice_count(x: float) -> int:
    """#{n in Z[i], 0 included : N(n) <= x}, by summing per-row circle widths."""
    if x < 0:
        raise ValueError("norm bound must be nonnegative")
    bound = math.floor(x)
    r = isqrt(bound)
    total = 0
    for a in range(-r, r + 1):
        total += 2 * isqrt(bound - a * a) + 1
    return total


def canonical_elements(x: float) -> Iterator[GaussianInt]:
    """Canonical generators (re > 0, im >= 0) with 0 < norm < x, one per ideal."""
    bound = math.ceil(x) - 1  # largest admissible norm
    if bound < 1:
        return
    r = isqrt(bound)
    for re in range(1, r + 1):
        rem = bound - re * re
        if rem < 0:
            break
        for im in range(0, isqrt(rem) + 1):
            yield GaussianInt(re, im)


@dataclass(frozen=True)
class SingularSeriesValue:
    """Truncated local-density Euler product for an even target.

    value: first factor over 2 < N(p) <= cutoff times the exact correction
    over primes dividing the target; tail_bound bounds the relative
    truncation error of the first factor.
    """

    value: float
    cutoff: float
    tail_bound: float


@lru_cache(maxsize=32)
def singular_first_factor(cutoff: float, table: PrimeTable) -> float:
    """prod over prime ideals 2 < N(p) <= cutoff of (1 - 1/(N(p)-1)^2).

    Deterministic: exp of an fsum of log-terms in table order.  Cached per
    (cutoff, table) since the product is target-independent.
    """
    if cutoff > table.limit:
        raise ValueError(f"cutoff {cutoff} exceeds table limit {table.limit}")
    logs = [
        math.log1p(-1.0 / (int(n) - 1) ** 2)
        for n in table.norms[: table.count_norm_le(cutoff)]
        if n > 2
    ]
    return math.exp(math.fsum(logs))


def singular_series(
    N: GaussianInt, cutoff: float, table: PrimeTable
) -> SingularSeriesValue:
    """Singular series of an even Gaussian integer, truncated at `cutoff`.

    First factor runs over all prime ideals with 2 < N(p) <= cutoff; the
    correction prod (N(p)-1)/(N(p)-2) over prime ideals dividing the target
    (norm > 2) is exact at every norm.  The tail of the first factor is
    majorized by 2/cutoff.
    """
    if N.is_zero() or not divrem(N, RAMIFIED)[1].is_zero():
        raise ValueError("singular series defined for even N only")
    fac = factorize(N)
    for p, _ in fac.factors:
        if norm(p) > table.limit:
            raise ValueError(
                f"prime divisor {p} of norm {norm(p)} outside table limit"
            )
    first = singular_first_factor(cutoff, table)
    second = 1.0
    for p, _ in fac.factors:
        n = norm(p)
        if n > 2:
            second *= (n - 1) / (n - 2)
    return SingularSeriesValue(
        value=first * second, cutoff=cutoff, tail_bound=2.0 / cutoff
    )


def phi_recip_sum(x: float, table: PrimeTable | None = None) -> float:
    """Exact sum of 1/phi(n) over nonzero ideals of norm < x.

    Computed in Fractions then rounded once; the ideal enumeration walks
    canonical generators in the first quadrant.
    """
    total = Fraction(0)
    for g in canonical_elements(x):
        total += Fraction(1, euler_phi(factorize(g)))
    return float(total)


def divisor_ideals(f: IdealFactorization) -> list[GaussianInt]:
    """Canonical generators of all ideal divisors (unit ideal included)."""
    divs = [GaussianInt(1, 0)]
    for p, e in f.factors:
        powers = [p**k for k in range(e + 1)]
        divs = [d * pk for d in divs for pk in powers]
    return [canonicalize(d) for d in divs]


def residues(d: GaussianInt) -> list[GaussianInt]:
    """A complete residue system mod d: the canonical divrem remainders.

    Every class has a representative of norm <= N(d)/2, so scanning the box
    |re|, |im| <= isqrt(N(d)/2) + 1 hits all N(d) classes.
    """
    if d.is_zero():
        raise ZeroDivisionError("residues modulo zero")
    n = norm(d)
    b = isqrt(n // 2) + 1
    seen: set[GaussianInt] = set()
    for re in range(-b, b + 1):
        for im in range(-b, b + 1):
            seen.add(divrem(GaussianInt(re, im), d)[1])
    out = sorted(seen, key=GaussianInt.key)
    assert len(out) == n, f"residue system mod {d}: found {len(out)}, expected {n}"
    return out


def coprime_residues(d: GaussianInt) -> list[GaussianInt]:
    """Residues a mod d with gcd(a, d) a unit."""
    return [r for r in residues(d) if not r.is_zero() and gcd(r, d).is_unit()]
