"""Gaussian primes by norm: generation, testing, factoring, and counting.

A prime ideal of Z[i] is represented by its canonical generator.  Norms come
in three shapes: 2 (the ramified prime 1+i), a rational prime p = 1 (mod 4)
(two conjugate split primes per p), and q^2 for a rational prime
q = 3 (mod 4) (the inert prime q itself).
"""

from __future__ import annotations

import struct
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
import sympy

from .core import (
    RAMIFIED,
    UNITS,
    GaussianInt,
    canonicalize,
    divrem,
    gcd,
    norm,
)

CACHE_MAGIC = b"ZIPT"
CACHE_VERSION = 1


def rational_primes(limit: int) -> np.ndarray:
    """All rational primes < limit, by a plain sieve of Eratosthenes."""
    if limit <= 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(limit, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def sqrt_minus_one(p: int) -> int:
    """A square root of -1 modulo a rational prime p = 1 (mod 4).

    Scans n = 2, 3, ... for a quadratic nonresidue; the scan is
    deterministic so table construction is reproducible bit for bit.
    """
    if p % 4 != 1:
        raise ValueError(f"{p} is not 1 mod 4")
    e = (p - 1) // 2
    n = 2
    while pow(n, e, p) != p - 1:
        n += 1
    return pow(n, (p - 1) // 4, p)


@lru_cache(maxsize=None)
def split_prime(p: int) -> tuple[GaussianInt, GaussianInt]:
    """The two canonical conjugate primes above a split rational prime.

    Hermite-Serret: with x^2 = -1 (mod p), gcd(p, x+i) in Z[i] has norm p.
    Returns the pair sorted by (re, im).
    """
    x = sqrt_minus_one(p)
    g = gcd(GaussianInt(p, 0), GaussianInt(x, 1))
    assert norm(g) == p, f"Hermite-Serret failed for {p}"
    other = canonicalize(g.conjugate())
    pair = sorted((g, other), key=lambda a: (a.re, a.im))
    return pair[0], pair[1]


class PrimeTable:
    """Norm-sorted table of canonical Gaussian primes with a prefix index.

    One entry per prime ideal of norm < limit; sorted by (norm, re, im).
    Immutable after construction; queries are pure reads.
    """

    def __init__(self, entries: list[GaussianInt], limit: int):
        self.entries = entries
        self.limit = limit
        self.norms = np.array([norm(p) for p in entries], dtype=np.int64)
        self.res = np.array([p.re for p in entries], dtype=np.int64)
        self.ims = np.array([p.im for p in entries], dtype=np.int64)

    def __len__(self) -> int:
        return len(self.entries)

    def count_norm_le(self, x: float) -> int:
        """Number of entries with norm <= x."""
        return int(bisect_right(self.norms, x))

    def count_norm_lt(self, z: float) -> int:
        """Number of entries with norm < z."""
        return int(np.searchsorted(self.norms, z, side="left"))

    def in_norm_range(self, lo: float, hi: float) -> list[GaussianInt]:
        """Entries with lo <= norm < hi."""
        i = int(np.searchsorted(self.norms, lo, side="left"))
        j = int(np.searchsorted(self.norms, hi, side="left"))
        return self.entries[i:j]

    # -- persistence ----------------------------------------------------------

    def save(self, path: str | Path) -> None:
        """Write the cache file: 'ZIPT', u16 version, u64 limit, u64 count,
        then (i64 re, i64 im) records, little-endian, in table order."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "wb") as fh:
            fh.write(CACHE_MAGIC)
            fh.write(struct.pack("<HQQ", CACHE_VERSION, self.limit, len(self.entries)))
            coords = np.empty(2 * len(self.entries), dtype="<i8")
            coords[0::2] = self.res
            coords[1::2] = self.ims
            fh.write(coords.tobytes())

    @classmethod
    def load(cls, path: str | Path) -> "PrimeTable":
        with open(path, "rb") as fh:
            magic = fh.read(4)
            if magic != CACHE_MAGIC:
                raise ValueError(f"{path}: not a prime table cache (bad magic)")
            version, limit, count = struct.unpack("<HQQ", fh.read(18))
            if version != CACHE_VERSION:
                raise ValueError(f"{path}: unsupported cache version {version}")
            coords = np.frombuffer(fh.read(16 * count), dtype="<i8")
            if coords.size != 2 * count:
                raise ValueError(f"{path}: truncated cache file")
        entries = [
            GaussianInt(int(coords[2 * i]), int(coords[2 * i + 1]))
            for i in range(count)
        ]
        return cls(entries, int(limit))


def build_prime_table(limit: int) -> PrimeTable:
    """Complete table of canonical Gaussian primes of norm < limit.

    Sieve rational primes, then: 1+i for norm 2, Hermite-Serret extraction
    for each split p = 1 (mod 4), and q itself for inert q = 3 (mod 4) with
    q^2 < limit.
    """
    if limit < 2:
        raise ValueError("limit must be >= 2")
    if limit > 2**62:
        raise ValueError("limit exceeds the norm ceiling")
    entries: list[GaussianInt] = []
    if limit > 2:
        entries.append(RAMIFIED)
    for p in rational_primes(limit):
        p = int(p)
        if p == 2:
            continue
        if p % 4 == 1:
            entries.extend(split_prime(p))
        elif p * p < limit:
            entries.append(GaussianInt(p, 0))
    entries.sort(key=GaussianInt.key)
    return PrimeTable(entries, limit)


def is_gaussian_prime(a: GaussianInt) -> bool:
    """True iff (a) is a prime ideal of Z[i]."""
    if a.is_zero() or a.is_unit():
        raise ValueError("primality is undefined for zero and units")
    n = norm(a)
    if n == 2:
        return True
    if sympy.isprime(n):
        return True
    # Inert case: a must be an associate of a rational prime q = 3 (mod 4).
    if a.re == 0 or a.im == 0:
        q = abs(a.re) + abs(a.im)
        return q % 4 == 3 and sympy.isprime(q)
    return False


@dataclass(frozen=True)
class IdealFactorization:
    """unit * prod(prime^exp) with canonical, (norm, re, im)-sorted primes."""

    factors: tuple[tuple[GaussianInt, int], ...]
    unit: GaussianInt

    def value(self) -> GaussianInt:
        out = self.unit
        for p, e in self.factors:
            out = out * p**e
        return out

    def big_omega(self) -> int:
        return sum(e for _, e in self.factors)

    def omega(self) -> int:
        return len(self.factors)

    def norm(self) -> int:
        n = 1
        for p, e in self.factors:
            n *= norm(p) ** e
        return n

    def prime_divisors(self) -> tuple[GaussianInt, ...]:
        return tuple(p for p, _ in self.factors)


@lru_cache(maxsize=65536)
def _factor_norm(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(sympy.factorint(n).items()))


def factorize(a: GaussianInt) -> IdealFactorization:
    """Exact ideal factorization of a nonzero Gaussian integer.

    Factors norm(a) over Z, splits each rational prime as in the table
    build, and divides out.
    """
    if a.is_zero():
        raise ValueError("cannot factor zero")
    factors: list[tuple[GaussianInt, int]] = []
    rest = a
    for p, _ in _factor_norm(norm(a)):
        if p == 2:
            candidates = [RAMIFIED]
        elif p % 4 == 1:
            candidates = list(split_prime(p))
        else:
            candidates = [GaussianInt(p, 0)]
        for cand in candidates:
            e = 0
            while True:
                q, r = divrem(rest, cand)
                if not r.is_zero():
                    break
                rest = q
                e += 1
            if e:
                factors.append((cand, e))
    assert rest.is_unit(), f"non-unit cofactor {rest} left while factoring {a}"
    factors.sort(key=lambda fe: fe[0].key())
    return IdealFactorization(tuple(factors), rest)


def big_omega(a: GaussianInt) -> int:
    """Number of prime-ideal divisors of (a) with multiplicity."""
    if a.is_zero():
        raise ValueError("big_omega is undefined at zero")
    if a.is_unit():
        return 0
    return factorize(a).big_omega()


def omega(a: GaussianInt) -> int:
    """Number of distinct prime-ideal divisors of (a)."""
    if a.is_zero():
        raise ValueError("omega is undefined at zero")
    if a.is_unit():
        return 0
    return factorize(a).omega()


def pi_ideal(x: float, table: PrimeTable) -> int:
    """pi(x): number of prime ideals with norm <= x."""
    if x > table.limit:
        raise ValueError(f"x={x} exceeds the table limit {table.limit}")
    return table.count_norm_le(x)


def prime_elements(table: PrimeTable, x: float) -> list[GaussianInt]:
    """All prime elements (4 associates per ideal) of norm <= x."""
    out = []
    for p in table.entries[: table.count_norm_le(x)]:
        out.extend(u * p for u in UNITS)
    return out


def pi_congruence(
    x: float, d: GaussianInt, a: GaussianInt, table: PrimeTable
) -> int:
    """pi(x; d, a): prime elements p with norm <= x and p = a (mod d).

    All four associates of each tabled prime are tested individually.
    """
    if d.is_zero():
        raise ZeroDivisionError("congruence modulo zero")
    if not gcd(a, d).is_unit():
        raise ValueError("pi_congruence requires gcd(a, d) to be a unit")
    if x > table.limit:
        raise ValueError(f"x={x} exceeds the table limit {table.limit}")
    target = divrem(a, d)[1]
    count = 0
    for p in table.entries[: table.count_norm_le(x)]:
        for u in UNITS:
            if divrem(u * p, d)[1] == target:
                count += 1
    return count


def residue_counts(x: float, d: GaussianInt, table: PrimeTable) -> dict[GaussianInt, int]:
    """Histogram of prime elements of norm <= x by residue class mod d.

    Keys are the canonical divrem remainders; one pass over the table, used
    by the Bombieri-Vinogradov spot checks.
    """
    if d.is_zero():
        raise ZeroDivisionError("congruence modulo zero")
    if x > table.limit:
        raise ValueError(f"x={x} exceeds the table limit {table.limit}")
    counts: dict[GaussianInt, int] = {}
    for p in table.entries[: table.count_norm_le(x)]:
        for u in UNITS:
            r = divrem(u * p, d)[1]
            counts[r] = counts.get(r, 0) + 1
    return counts


def euler_phi_ideal(a: GaussianInt) -> int:
    """|(Z[i]/(a))*| from the factorization of a (integer arithmetic)."""
    if a.is_zero():
        raise ValueError("euler phi is undefined at zero")
    out = 1
    for p, e in factorize(a).factors:
        n = norm(p)
        out *= n ** (e - 1) * (n - 1)
    return out


def bv_discrepancy(
    x: float, d: GaussianInt, a: GaussianInt, table: PrimeTable
) -> float:
    """delta(x; d, a) = pi(x; d, a) - 4*pi(x)/phi((d))."""
    return pi_congruence(x, d, a, table) - 4.0 * pi_ideal(x, table) / euler_phi_ideal(d)
