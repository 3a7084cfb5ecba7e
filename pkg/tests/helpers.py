"""Independent brute-force oracles, deliberately kept apart from the
production code paths they check."""

from zisieve.core import GaussianInt, divrem, norm


def _is_rational_prime(m: int) -> bool:
    if m < 2:
        return False
    i = 2
    while i * i <= m:
        if m % i == 0:
            return False
        i += 1
    return True


def naive_is_gaussian_prime(g: GaussianInt) -> bool:
    n = norm(g)
    if n < 2:
        return False
    if n == 2:
        return True
    if _is_rational_prime(n):
        return True
    if g.re == 0 or g.im == 0:
        q = abs(g.re) + abs(g.im)
        return q % 4 == 3 and _is_rational_prime(q)
    return False


def naive_canonical_primes(limit: float) -> list[GaussianInt]:
    """Canonical primes of norm < limit by per-point primality testing."""
    out = []
    bound = int(limit) if limit != int(limit) else int(limit) - 1
    r = int(bound**0.5) + 1
    for a in range(1, r + 1):
        for b in range(0, r + 1):
            g = GaussianInt(a, b)
            if 0 < norm(g) <= bound and naive_is_gaussian_prime(g):
                out.append(g)
    out.sort(key=GaussianInt.key)
    return out


def naive_big_omega(m: GaussianInt) -> int:
    """Prime-ideal divisor count with multiplicity, by trial division."""
    count = 0
    rest = m
    for p in naive_canonical_primes(norm(m) + 1):
        while True:
            q, r = divrem(rest, p)
            if not r.is_zero():
                break
            rest = q
            count += 1
        if rest.is_unit():
            break
    assert rest.is_unit(), f"naive factorization of {m} left {rest}"
    return count
