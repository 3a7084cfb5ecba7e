"""Exact representation counts N = p + P2 and the decomposition checks.

r(N) counts prime elements p (associates separately) with N(p) < N(N),
p not dividing N, such that m = N - p is nonzero with at most two
prime-ideal factors counted with multiplicity.

The with-multiplicity factor count of m depends only on its norm
(v_2 + sum of v_p over split p + half of v_q over inert q), so scans index
a sieved table of that count by N(m); tests cross-check against per-element
ideal factorization.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import canonical_elements, singular_series
from .core import RAMIFIED, GaussianInt, divides, norm
from .primes import PrimeTable, factorize, rational_primes
from .quadrature import adaptive_simpson
from .sieve import SieveProblem, _divisible_mask, sieving_primes

TWO_LOG3_MINUS_LOG6 = 2.0 * math.log(3.0) - math.log(6.0)


@lru_cache(maxsize=4)
def omega_norm_table(limit: int) -> np.ndarray:
    """Prime-ideal divisor count (with multiplicity) indexed by norm.

    For any m in Z[i] with N(m) <= limit, table[N(m)] is Omega(m): the
    ramified and split rational primes contribute one per dividing power,
    inert primes one per dividing even power.
    """
    om = np.zeros(limit + 1, dtype=np.int8)
    for p in rational_primes(limit + 1):
        p = int(p)
        step = p if (p == 2 or p % 4 == 1) else p * p
        pk = step
        while pk <= limit:
            om[pk::pk] += 1
            pk *= step
    return om


def _prime_element_arrays(table: PrimeTable) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates of all prime elements, 4 rows per ideal in unit order."""
    k = len(table.entries)
    res = np.empty(4 * k, dtype=np.int64)
    ims = np.empty(4 * k, dtype=np.int64)
    # units 1, i, -1, -i applied to p = a+bi
    res[0::4], ims[0::4] = table.res, table.ims
    res[1::4], ims[1::4] = -table.ims, table.res
    res[2::4], ims[2::4] = -table.res, -table.ims
    res[3::4], ims[3::4] = table.ims, -table.res
    return res, ims


def _divisor_ideal_indices(N: GaussianInt, table: PrimeTable) -> list[int]:
    """Positions in the table of the prime ideals dividing N."""
    lookup = getattr(table, "_coord_index", None)
    if lookup is None:
        lookup = {(p.re, p.im): i for i, p in enumerate(table.entries)}
        table._coord_index = lookup
    out = []
    for p, _ in factorize(N).factors:
        idx = lookup.get((p.re, p.im))
        if idx is not None:
            out.append(idx)
    return out


def require_even(N: GaussianInt) -> None:
    if N.is_zero() or not divides(RAMIFIED, N):
        raise ValueError(f"{N} is not an even Gaussian integer")


# -- the set A and its sieve problem -------------------------------------------


def build_A(N: GaussianInt, table: PrimeTable, z: float = 2.0) -> SieveProblem:
    """A = {N - p : p a prime element, N(p) < N(N), p not dividing N}."""
    require_even(N)
    NN = norm(N)
    if NN > table.limit:
        raise ValueError(f"table limit {table.limit} below N(N)={NN}")
    k = table.count_norm_lt(NN)
    res, ims = _prime_element_arrays(table)
    keep = np.ones(4 * k, dtype=bool)
    for idx in _divisor_ideal_indices(N, table):
        if idx < k:
            keep[4 * idx : 4 * idx + 4] = False
    pe_res = res[: 4 * k][keep]
    pe_ims = ims[: 4 * k][keep]
    return SieveProblem(
        res=N.re - pe_res,
        ims=N.im - pe_ims,
        counts=np.ones(pe_res.size, dtype=np.int64),
        N=N,
        z=z,
    )


def _coprime_alive(problem: SieveProblem, table: PrimeTable) -> np.ndarray:
    alive = np.ones(len(problem.res), dtype=bool)
    for p in sieving_primes(table, problem.N, problem.z):
        alive &= ~_divisible_mask(problem.res, problem.ims, p)
    return alive


# -- the set B (triples) ---------------------------------------------------------


def _triple_products(
    N: GaussianInt,
    table: PrimeTable,
    p1_lo: float,
    p1_hi: float,
    y: float,
    pair_budget_factor: float,
    exclude_p1_divisors: bool,
) -> tuple[np.ndarray, np.ndarray]:
    """Products p1*p2*p3 over ideal triples with the norm-window pattern.

    p1 in [p1_lo, p1_hi); p2, p3 of norm >= y with N(p2) <= N(p3) and
    budget * N(p2 p3) < 4 N(N), where budget is p1's own norm or the window
    floor depending on the caller.  Divisors of N are excluded from p2, p3
    always, from p1 when requested.  Returns product coordinates, one row
    per ordered ideal triple.
    """
    NN = norm(N)
    four_nn = 4 * NN
    excluded = set(_divisor_ideal_indices(N, table))
    norms = table.norms
    j0 = int(np.searchsorted(norms, y, side="left"))
    p23_idx = np.array(
        [j for j in range(j0, len(norms)) if j not in excluded], dtype=np.int64
    )
    out_re: list[np.ndarray] = []
    out_im: list[np.ndarray] = []
    i_lo = int(np.searchsorted(norms, p1_lo, side="left"))
    i_hi = int(np.searchsorted(norms, p1_hi, side="left"))
    if p23_idx.size:
        n23 = norms[p23_idx]
        r23 = table.res[p23_idx]
        m23 = table.ims[p23_idx]
    for i in range(i_lo, i_hi):
        if exclude_p1_divisors and i in excluded:
            continue
        p1 = table.entries[i]
        n1 = int(norms[i])
        budget = n1 if pair_budget_factor == 0 else pair_budget_factor
        if p23_idx.size == 0:
            continue
        # p2 candidates: budget * n2^2 < 4NN (since n3 >= n2)
        hi2 = int(np.searchsorted(n23, math.sqrt(four_nn / budget), side="right"))
        for a in range(hi2):
            n2 = int(n23[a])
            if budget * n2 * n2 >= four_nn:
                break
            p12_re = p1.re * int(r23[a]) - p1.im * int(m23[a])
            p12_im = p1.re * int(m23[a]) + p1.im * int(r23[a])
            # p3 candidates: norm in [n2, 4NN/(budget*n2))
            lo3 = int(np.searchsorted(n23, n2, side="left"))
            hi3 = int(np.searchsorted(n23, four_nn / (budget * n2), side="left"))
            if hi3 <= lo3:
                continue
            r3 = r23[lo3:hi3]
            m3 = m23[lo3:hi3]
            out_re.append(p12_re * r3 - p12_im * m3)
            out_im.append(p12_re * m3 + p12_im * r3)
    if not out_re:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(out_re), np.concatenate(out_im)


def _problem_from_products(
    N: GaussianInt, prod_re: np.ndarray, prod_im: np.ndarray, z: float
) -> SieveProblem:
    """N - u*product over the four units, weight 16 per (triple, unit)."""
    res = np.concatenate(
        [N.re - prod_re, N.re + prod_im, N.re + prod_re, N.re - prod_im]
    )
    ims = np.concatenate(
        [N.im - prod_im, N.im - prod_re, N.im + prod_im, N.im + prod_re]
    )
    counts = np.full(res.size, 16, dtype=np.int64)
    assert not np.any((res == 0) & (ims == 0)), "even target cannot equal odd triple"
    return SieveProblem(res=res, ims=ims, counts=counts, N=N, z=z)


def build_B(N: GaussianInt, z: float, y: float, table: PrimeTable) -> SieveProblem:
    """The multiset B of N - p1 p2 p3 over prime-element triples.

    z <= N(p1) < y <= N(p2) <= N(p3), N(p1 p2 p3) < 4 N(N), and the triple
    coprime to N.  Element triples come 4^3 to an ideal triple; rows carry
    multiplicity 16 (one row per ideal triple and unit of the product).
    """
    require_even(N)
    if 4 * norm(N) > table.limit:
        raise ValueError(f"table limit {table.limit} below 4*N(N)={4 * norm(N)}")
    prod_re, prod_im = _triple_products(
        N, table, z, y, y, pair_budget_factor=0, exclude_p1_divisors=True
    )
    return _problem_from_products(N, prod_re, prod_im, z=y)


def bk_partition(
    N: GaussianInt, z: float, y: float, eps: float, table: PrimeTable
) -> list[SieveProblem]:
    """The B^(k) cover of B along p1-norm windows [l_k, l_{k+1}).

    l_k = z (1+eps)^k; within window k the pair budget is the window floor
    l_k and only p2, p3 are required coprime to N.
    """
    require_even(N)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    out = []
    k = 0
    while True:
        lk = z * (1.0 + eps) ** k
        if lk >= y:
            break
        lk1 = min(z * (1.0 + eps) ** (k + 1), y)
        prod_re, prod_im = _triple_products(
            N,
            table,
            max(lk, z),
            lk1,
            y,
            pair_budget_factor=lk,
            exclude_p1_divisors=False,
        )
        out.append(_problem_from_products(N, prod_re, prod_im, z=y))
        k += 1
    return out


# -- reports ---------------------------------------------------------------------


@dataclass(frozen=True)
class RepresentationReport:
    N: GaussianInt
    r_value: int
    goldbach_count: int
    singular_series: float
    lower_bound: float
    ratio: float


@dataclass(frozen=True)
class DecompositionReport:
    N: GaussianInt
    z: float
    y: float
    S_A: int
    sum_S_Aq: int
    S_B: int
    T1: int
    T2: int
    rhs: float


def r_of_N(
    N: GaussianInt, table: PrimeTable, ss_cutoff: float | None = None
) -> RepresentationReport:
    """Exact r(N) with the reference lower bound S1(N) N(N) / log(N(N))^2."""
    require_even(N)
    NN = norm(N)
    if NN > table.limit:
        raise ValueError(f"table limit {table.limit} below N(N)={NN}")
    om = omega_norm_table(4 * NN)
    k = table.count_norm_lt(NN)
    res, ims = _prime_element_arrays(table)
    keep = np.ones(4 * k, dtype=bool)
    for idx in _divisor_ideal_indices(N, table):
        if idx < k:
            keep[4 * idx : 4 * idx + 4] = False
    m_re = N.re - res[: 4 * k][keep]
    m_im = N.im - ims[: 4 * k][keep]
    m_norm = m_re * m_re + m_im * m_im
    nz = m_norm > 0
    counts = om[m_norm[nz]]
    r_value = int(np.count_nonzero((counts == 1) | (counts == 2)))
    goldbach = int(np.count_nonzero(counts == 1))
    cutoff = ss_cutoff if ss_cutoff is not None else float(table.limit)
    ss = singular_series(N, cutoff, table).value
    lower = ss * NN / math.log(NN) ** 2
    return RepresentationReport(
        N=N,
        r_value=r_value,
        goldbach_count=goldbach,
        singular_series=ss,
        lower_bound=lower,
        ratio=r_value / lower,
    )


def loose_r_of_N(N: GaussianInt, table: PrimeTable) -> int:
    """r counted without multiplicity: omega(m) in {1, 2} instead of Omega.

    Slower (per-element factorization); reported in verbose output only.
    """
    require_even(N)
    NN = norm(N)
    problem = build_A(N, table)
    count = 0
    for re, im in zip(problem.res, problem.ims):
        m = GaussianInt(int(re), int(im))
        if factorize(m).omega() in (1, 2):
            count += 1
    return count


def weighted_count(
    N: GaussianInt,
    table: PrimeTable,
    z: float | None = None,
    y: float | None = None,
) -> DecompositionReport:
    """Exact S(A,P,z), T1, T2, sum over q of S(A_q,P,z), S(B,P,y), and
    rhs = S_A - T1/2 - T2/2 - 4."""
    require_even(N)
    NN = norm(N)
    if y is None:
        y = NN ** (1.0 / 3.0)
    if z is None:
        z = NN ** (1.0 / 8.0)
    A = build_A(N, table, z=z)
    alive = _coprime_alive(A, table)
    S_A = int(A.counts[alive].sum())
    sres, sims = A.res[alive], A.ims[alive]

    window = table.in_norm_range(z, y)
    T1 = 0
    sum_S_Aq = 0
    max_norm = 4 * NN
    for q in window:
        mask = _divisible_mask(sres, sims, q)
        sum_S_Aq += int(np.count_nonzero(mask))
        qk = q
        while True:
            T1 += int(np.count_nonzero(_divisible_mask(sres, sims, qk)))
            if norm(qk) * norm(q) > max_norm:
                break
            qk = qk * q

    om = omega_norm_table(4 * NN)
    snorm = sres * sres + sims * sims
    T2 = 0
    for i in np.nonzero(om[snorm] == 3)[0]:
        m = GaussianInt(int(sres[i]), int(sims[i]))
        ideals: list[GaussianInt] = []
        for p, e in factorize(m).factors:
            ideals.extend([p] * e)
        for t1, t2, t3 in set(itertools.permutations(ideals)):
            n1, n2, n3 = norm(t1), norm(t2), norm(t3)
            if z <= n1 < y <= n2 <= n3:
                T2 += 1

    if z >= y:
        S_B = 0  # empty norm window, B is empty by definition
    else:
        S_B = _sieve_count_of(build_B(N, z, y, table), table)
    rhs = S_A - T1 / 2.0 - T2 / 2.0 - 4.0
    return DecompositionReport(
        N=N, z=z, y=y, S_A=S_A, sum_S_Aq=sum_S_Aq, S_B=S_B, T1=T1, T2=T2, rhs=rhs
    )


def _sieve_count_of(problem: SieveProblem, table: PrimeTable) -> int:
    from .sieve import sieve_count

    return sieve_count(problem, table)


# -- the constant c and positivity ----------------------------------------------


def _c_integrand(w: float) -> float:
    return math.log(2.0 - 3.0 * w) / (w * (1.0 - w))


def constant_c(tol: float = 1e-10) -> float:
    """c = integral over [1/8, 1/3] of log(2-3w) / (w(1-w)) dw."""
    if tol < 1e-12:
        raise ValueError("tolerance below 1e-12 is not certified")
    return adaptive_simpson(_c_integrand, 0.125, 1.0 / 3.0, tol)


def constant_c_double(tol: float = 1e-10) -> float:
    """The same constant by the double integral of 1/(v w (1-v-w))."""
    if tol < 1e-12:
        raise ValueError("tolerance below 1e-12 is not certified")

    def inner(w: float) -> float:
        hi = (1.0 - w) / 2.0
        if hi <= 1.0 / 3.0:
            return 0.0
        return adaptive_simpson(
            lambda v: 1.0 / (v * w * (1.0 - v - w)), 1.0 / 3.0, hi, tol / 8.0
        )

    return adaptive_simpson(inner, 0.125, 1.0 / 3.0, tol)


def final_positivity(tol: float = 1e-10) -> tuple[float, bool]:
    """2 log 3 - log 6 - c and its sign."""
    value = TWO_LOG3_MINUS_LOG6 - constant_c(tol)
    return value, value > 0


# -- scanning ---------------------------------------------------------------------


def even_canonical_targets(min_norm: float, max_norm: float) -> list[GaussianInt]:
    """Canonical even N with min_norm <= N(N) <= max_norm, (norm, re, im) order."""
    out = [
        g
        for g in canonical_elements(max_norm + 1)
        if (g.re + g.im) % 2 == 0 and norm(g) >= min_norm
    ]
    out.sort(key=GaussianInt.key)
    return out


_SCAN_STATE: dict = {}


def _scan_worker(chunk: list[GaussianInt]) -> list[RepresentationReport]:
    table = _SCAN_STATE["table"]
    cutoff = _SCAN_STATE["cutoff"]
    return [r_of_N(N, table, ss_cutoff=cutoff) for N in chunk]


def chen_scan(
    min_norm: float,
    max_norm: float,
    table: PrimeTable,
    jobs: int = 1,
    ss_cutoff: float | None = None,
) -> list[RepresentationReport]:
    """r(N) reports for every canonical even N in the norm window.

    Embarrassingly parallel over targets; output is in input order
    regardless of worker completion order.
    """
    targets = even_canonical_targets(min_norm, max_norm)
    cutoff = ss_cutoff if ss_cutoff is not None else float(table.limit)
    # Warm shared read-only state (omega table, first factor) before forking.
    omega_norm_table(4 * math.floor(max_norm))
    from .arith import singular_first_factor

    singular_first_factor(cutoff, table)
    if jobs <= 1 or len(targets) < 32:
        return [r_of_N(N, table, ss_cutoff=cutoff) for N in targets]
    import multiprocessing as mp

    _SCAN_STATE["table"] = table
    _SCAN_STATE["cutoff"] = cutoff
    chunks = [targets[i::jobs] for i in range(jobs)]
    ctx = mp.get_context("fork")
    with ctx.Pool(jobs) as pool:
        results = pool.map(_scan_worker, chunks)
    # Stitch the strided chunks back into input order.
    merged: list[RepresentationReport] = [None] * len(targets)  # type: ignore[list-item]
    for j, part in enumerate(results):
        merged[j :: jobs] = part
    return merged
