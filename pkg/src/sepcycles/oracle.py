"""Exhaustive ground truth at desk scale.

Every closed form and recurrence in :mod:`sepcycles.counting` is checked
against counts obtained here by brute force: enumerate all (n-1)!
n-cycle upper horizontals s and all n! verticals pi, classify each pair
by the cycle type of the diagonal s * pi^-1, the cycle type of pi, and
the largest prefixes of [n] that pi separates / fixes.  One cached
census per n answers every query.

The enumeration is exact or it refuses: queries above the configured cap
(default 7, hard maximum 9 -- the n = 9 census is a multi-hour run) raise
:class:`OracleCapError`.  There is no sampling fallback.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import permutations as _all_arrangements
from math import factorial
from operator import itemgetter

from .partitions import Composition, IntegerPartition

DEFAULT_CAP = 7
HARD_CAP = 9


class OracleCapError(ValueError):
    """Enumeration refused: n exceeds the active cap."""

    def __init__(self, n: int, cap: int):
        super().__init__(
            f"oracle refuses n={n}: cap is {cap} "
            f"(pass cap=, hard maximum {HARD_CAP})"
        )
        self.n = n
        self.cap = cap


def _check_cap(n: int, cap: int | None) -> None:
    limit = DEFAULT_CAP if cap is None else cap
    if limit > HARD_CAP:
        raise ValueError(f"cap {limit} exceeds the hard maximum {HARD_CAP}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > limit:
        raise OracleCapError(n, limit)


# ---------------------------------------------------------------------------
# internal enumeration (0-based tuples for speed)

@lru_cache(maxsize=None)
def _n_cycles0(n: int) -> tuple[tuple[int, ...], ...]:
    """All n-cycles on {0..n-1} as image tuples, tails in lex order."""
    if n == 1:
        return ((0,),)
    out = []
    for tail in _all_arrangements(range(1, n)):
        images = [0] * n
        prev = 0
        for x in tail:
            images[prev] = x
            prev = x
        images[prev] = 0
        out.append(tuple(images))
    return tuple(out)


@lru_cache(maxsize=None)
def _cycle_type_table(n: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Image tuple -> non-increasing cycle type, for all of S_n."""
    table = {}
    for p in _all_arrangements(range(n)):
        table[p] = _cycle_type0(p)
    return table


def _cycle_type0(p: tuple[int, ...]) -> tuple[int, ...]:
    n = len(p)
    seen = [False] * n
    lengths = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            length += 1
            x = p[x]
        lengths.append(length)
    lengths.sort(reverse=True)
    return tuple(lengths)


def _vertical_stats(p: tuple[int, ...]) -> tuple[tuple[int, ...], int, int]:
    """(cycle type, largest separated prefix, largest fixed prefix) of p."""
    n = len(p)
    cid = [-1] * n
    lengths = []
    for start in range(n):
        if cid[start] >= 0:
            continue
        label = len(lengths)
        length = 0
        x = start
        while cid[x] < 0:
            cid[x] = label
            length += 1
            x = p[x]
        lengths.append(length)
    lengths.sort(reverse=True)
    smax = 0
    seen_cycles: set[int] = set()
    for x in range(n):
        if cid[x] in seen_cycles:
            break
        seen_cycles.add(cid[x])
        smax += 1
    imax = 0
    for x in range(n):
        if p[x] != x:
            break
        imax += 1
    return tuple(lengths), smax, imax


CensusKey = tuple[tuple[int, ...], tuple[int, ...], int, int]


def _census_slice(n: int, lo: int, hi: int | None) -> dict[CensusKey, int]:
    """Census over verticals x a slice of the n-cycle enumeration.

    Key: (diagonal cycle type, vertical cycle type, largest separated
    prefix, largest fixed prefix).  Summing disjoint slices reproduces
    the full census exactly.
    """
    cycles = _n_cycles0(n)[lo:hi]
    census: dict[CensusKey, int] = {}
    if n == 1:
        for _ in cycles:
            key = ((1,), (1,), 1, 1)
            census[key] = census.get(key, 0) + 1
        return census
    ct = _cycle_type_table(n)
    get_type = ct.__getitem__
    for p in _all_arrangements(range(n)):
        mu, smax, imax = _vertical_stats(p)
        pinv = [0] * n
        for i, v in enumerate(p):
            pinv[v] = i
        diag_of = itemgetter(*pinv)
        # diagonal = s composed with pi^-1, evaluated for every horizontal s
        for lam, cnt in Counter(map(get_type, map(diag_of, cycles))).items():
            key = (lam, mu, smax, imax)
            census[key] = census.get(key, 0) + cnt
    return census


@lru_cache(maxsize=None)
def _census(n: int) -> dict[CensusKey, int]:
    return _census_slice(n, 0, None)


@lru_cache(maxsize=None)
def _census_stratified(n: int) -> dict[tuple[tuple[int, ...], int, int, int], int]:
    """Census keyed by (diagonal type, vertical cycle count, largest
    separated prefix, exceedance count of the pair).

    Exceedances depend on the actual sequence order of the horizontal,
    so this walks every pair explicitly; it is noticeably slower than
    the plain census and intended for n <= 6.
    """
    census: dict[tuple[tuple[int, ...], int, int, int], int] = {}
    if n == 1:
        census[((1,), 1, 1, 0)] = 1
        return census
    ct = _cycle_type_table(n)
    verticals = []
    for p in _all_arrangements(range(n)):
        mu, smax, _ = _vertical_stats(p)
        pinv = tuple(sorted(range(n), key=p.__getitem__))
        verticals.append((p, pinv, len(mu), smax))
    for tail in _all_arrangements(range(1, n)):
        seq = (0, *tail)
        pos = [0] * n
        for idx, x in enumerate(seq):
            pos[x] = idx
        nxt = [0] * n  # the horizontal as a permutation
        for idx, x in enumerate(seq):
            nxt[x] = seq[(idx + 1) % n]
        for p, pinv, k, smax in verticals:
            d = tuple(nxt[pinv[x]] for x in range(n))
            a = sum(1 for x in range(n) if pos[x] < pos[p[x]])
            key = (ct[d], k, smax, a)
            census[key] = census.get(key, 0) + 1
    return census


@lru_cache(maxsize=None)
def _alpha_census(n: int) -> dict[int, int]:
    """Counts of pairs of n-cycles by the bitmask of valid cut points of
    their product.

    Cut t (1 <= t <= n-1, bit t-1) is valid when no cycle of the product
    has members on both sides of the [1..t] | [t+1..n] divide; a product
    is alpha-separated exactly when every internal boundary of alpha is a
    valid cut.
    """
    census: dict[int, int] = {}
    cycles = _n_cycles0(n)
    for c1 in cycles:
        for c2 in cycles:
            q = tuple(c1[x] for x in c2)
            mask = _valid_cut_mask(q)
            census[mask] = census.get(mask, 0) + 1
    return census


def _valid_cut_mask(q: tuple[int, ...]) -> int:
    n = len(q)
    full = (1 << (n - 1)) - 1
    blocked = 0
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        lo = hi = start
        x = q[start]
        seen[start] = True
        while x != start:
            seen[x] = True
            if x < lo:
                lo = x
            if x > hi:
                hi = x
            x = q[x]
        # cuts strictly inside [lo, hi] are blocked by this cycle
        if hi > lo:
            blocked |= ((1 << hi) - 1) & ~((1 << lo) - 1)
    return full & ~blocked


# ---------------------------------------------------------------------------
# public queries

def oracle_p(lam: IntegerPartition, m: int, k: int, cap: int | None = None) -> int:
    """Pairs (s, pi), s an n-cycle, with diagonal s*pi^-1 of cycle type
    lam, pi having k cycles and 1..m in distinct cycles of pi.
    """
    n = lam.n
    _check_cap(n, cap)
    _check_m(n, m)
    target = lam.parts
    return sum(
        cnt
        for (d, mu, smax, _), cnt in _census(n).items()
        if d == target and len(mu) == k and smax >= m
    )


def oracle_i(lam: IntegerPartition, m: int, k: int, cap: int | None = None) -> int:
    """As :func:`oracle_p` but with 1..m required to be fixed points."""
    n = lam.n
    _check_cap(n, cap)
    _check_m(n, m)
    target = lam.parts
    return sum(
        cnt
        for (d, mu, _, imax), cnt in _census(n).items()
        if d == target and len(mu) == k and imax >= m
    )


def oracle_p_by_vertical_type(
    lam: IntegerPartition, mu: IntegerPartition, m: int, cap: int | None = None
) -> int:
    """Separation count restricted to verticals of exact cycle type mu."""
    n = lam.n
    _check_cap(n, cap)
    _check_m(n, m)
    d_target, v_target = lam.parts, mu.parts
    return sum(
        cnt
        for (d, v, smax, _), cnt in _census(n).items()
        if d == d_target and v == v_target and smax >= m
    )


def oracle_i_by_vertical_type(
    lam: IntegerPartition, mu: IntegerPartition, m: int, cap: int | None = None
) -> int:
    """Isolation count restricted to verticals of exact cycle type mu."""
    n = lam.n
    _check_cap(n, cap)
    _check_m(n, m)
    d_target, v_target = lam.parts, mu.parts
    return sum(
        cnt
        for (d, v, _, imax), cnt in _census(n).items()
        if d == d_target and v == v_target and imax >= m
    )


def oracle_p_stratified(
    lam: IntegerPartition, m: int, k: int, cap: int | None = None
) -> dict[int, int]:
    """Separation counts split by the exceedance count of the pair.

    The values sum to ``oracle_p(lam, m, k)``.
    """
    n = lam.n
    _check_cap(n, cap)
    _check_m(n, m)
    target = lam.parts
    out: dict[int, int] = {}
    for (d, kk, smax, a), cnt in _census_stratified(n).items():
        if d == target and kk == k and smax >= m:
            out[a] = out.get(a, 0) + cnt
    return out


def oracle_fixed_point_distribution(n: int, cap: int | None = None) -> dict[int, int]:
    """For each i, the number of pairs of n-cycles whose product has
    exactly i fixed points.  Values sum to ((n-1)!)^2.
    """
    _check_cap(n, cap)
    ncycle = (n,)
    out: dict[int, int] = {}
    for (d, mu, _, _), cnt in _census(n).items():
        if d == ncycle:
            fixed = sum(1 for part in mu if part == 1)
            out[fixed] = out.get(fixed, 0) + cnt
    return out


def oracle_alpha(alpha: Composition, cap: int | None = None) -> int:
    """Pairs of n-cycles whose product keeps every cycle inside a single
    block of the composition.
    """
    n = alpha.n
    _check_cap(n, cap)
    required = 0
    for t in alpha.boundaries():
        required |= 1 << (t - 1)
    return sum(
        cnt for mask, cnt in _alpha_census(n).items() if mask & required == required
    )


def pair_count(n: int) -> int:
    """Total number of enumerated pairs: (n-1)! * n!."""
    return factorial(n - 1) * factorial(n)


def _check_m(n: int, m: int) -> None:
    if not 0 <= m <= n:
        raise ValueError(f"m must satisfy 0 <= m <= {n}, got {m}")
