"""Closed forms and recurrences for separation/isolation statistics of
products of permutations.

Conventions used throughout:

* ``p``-quantities count plane permutations (s, pi) with a prescribed
  diagonal cycle type whose vertical pi has k cycles and keeps 1..m in
  distinct cycles; ``i``-quantities require 1..m to be fixed points
  instead.  With the diagonal an n-cycle these are exactly the pairs of
  n-cycles whose product has k cycles and separates (fixes) 1..m.
* Every division is exact and checked; a remainder raises
  :class:`ArithmeticError` instead of rounding.
* Probabilities and moments are :class:`fractions.Fraction` values,
  always in lowest terms.  No floating point enters the core.
* ``binom(a, 0) = 1`` for every a, and ``binom(a, b) = 0`` whenever
  b < 0, a < b, or a < 0 < b; empty sums truncate silently.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Literal

from . import oracle as _oracle
from .partitions import Composition, IntegerPartition, partitions_of, splits_of

BaseValueSource = Literal["auto", "oracle", "closed_form"]


def binom(a: int, b: int) -> int:
    if b < 0:
        return 0
    if b == 0:
        return 1
    if a < 0 or a < b:
        return 0
    return comb(a, b)


def exact_div(num: int, den: int) -> int:
    """Integer division that must be exact; remainders are a bug."""
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"non-exact division: {num} / {den} leaves {r}")
    return q


# ---------------------------------------------------------------------------
# Stirling numbers and their separating / fixing refinements

@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = prev[k - 1] + (n - 1) * (prev[k] if k <= n - 1 else 0)
    return tuple(row)


def stirling_c(n: int, k: int) -> int:
    """Signless Stirling number of the first kind: permutations of [n]
    with k cycles.
    """
    if n < 0 or k < 0:
        raise ValueError(f"n and k must be >= 0, got {n}, {k}")
    if k > n:
        return 0
    return _stirling_row(n)[k]


def c_sep(n: int, k: int, m: int) -> int:
    """Permutations of [n] with k cycles and 1..m in distinct cycles.

    Summed over how many of the other n - m elements share a cycle with
    [m]: choose them, thread them into the m distinguished cycles, and
    let the rest form k - m further cycles.
    """
    if not 0 <= m <= n:
        raise ValueError(f"m must satisfy 0 <= m <= {n}, got {m}")
    if m == 0:
        return stirling_c(n, k)
    total = 0
    for d in range(0, n - m + 1):
        lower = stirling_c(n - m - d, k - m) if k - m >= 0 else 0
        if lower == 0:
            continue
        total += binom(n - m, d) * binom(d + m - 1, d) * factorial(d) * lower
    return total


def c_fix(n: int, k: int, m: int) -> int:
    """Permutations of [n] with k cycles fixing each of 1..m."""
    if not 0 <= m <= n:
        raise ValueError(f"m must satisfy 0 <= m <= {n}, got {m}")
    if k < m:
        return 0
    return stirling_c(n - m, k - m)


# ---------------------------------------------------------------------------
# products of two n-cycles: closed forms

def p_ncycle(n: int, m: int, k: int) -> int:
    """Pairs of n-cycles whose product has k cycles with 1..m in
    distinct cycles.  Zero unless n - k is even.
    """
    _check_nmk(n, m, k)
    if (n - k) % 2:
        return 0
    return exact_div(2 * factorial(n - 1) * c_sep(n + 1, k, m), (n + m) * (n + 1 - m))


def i_ncycle(n: int, m: int, k: int) -> int:
    """Pairs of n-cycles whose product has k cycles fixing each of 1..m.
    Requires m < n; zero unless n - k is even.
    """
    if not 0 <= m < n:
        raise ValueError(f"m must satisfy 0 <= m < n, got m={m}, n={n}")
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= {n}, got {k}")
    if (n - k) % 2:
        return 0
    return exact_div(2 * factorial(n - 1) * c_fix(n + 1, k, m), (n - m) * (n + 1 - m))


def _check_nmk(n: int, m: int, k: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= m <= n:
        raise ValueError(f"m must satisfy 0 <= m <= {n}, got {m}")
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= {n}, got {k}")


# ---------------------------------------------------------------------------
# general diagonal cycle type: initial values at the tree level
#
# The recurrences below bottom out where the vertical cycle count k
# reaches n + 1 - l(lambda); there the counts split by the exact vertical
# cycle type mu with l(mu) = k, and admit product formulas.

def i_base(lam: IntegerPartition, mu: IntegerPartition, m: int) -> int:
    """Plane permutations with diagonal type lam and vertical of exact
    type mu fixing 1..m, on the boundary l(lam) + l(mu) = n + 1.

    Zero when mu has fewer than m unit parts.  A tempting variant of
    this formula reads (n+1-m)! over (b1-m+1)!; it overcounts (already
    on [3]: diagonal 2+1, vertical 2+1, m=0 gives 12 instead of 6).
    The version here matches exhaustive enumeration on all of n <= 6.
    """
    n = _check_base_pair(lam, mu, m)
    b1 = mu.multiplicity(1)
    if b1 < m:
        return 0
    d, t = mu.length, lam.length
    num = factorial(t - 1) * factorial(d - 1) * factorial(n - m)
    den = factorial(b1 - m)
    for a in lam.multiplicities().values():
        den *= factorial(a)
    for value, b in mu.multiplicities().items():
        if value > 1:
            den *= factorial(b)
    return exact_div(num, den)


def p_base(
    lam: IntegerPartition,
    mu: IntegerPartition,
    m: int,
    reading: str | None = None,
) -> int:
    """Plane permutations with diagonal type lam and vertical of exact
    type mu separating 1..m, on the boundary l(lam) + l(mu) = n + 1.

    The sum runs over the size r of a distinguished root group of
    vertical parts together with ordered splittings of the remaining
    oversized parts.  The binomial argument admits two candidate
    spellings (l1 - b - 1 vs l1 - b + 1 for r > 1); both are implemented
    and ``reading`` selects one.  With reading=None the spelling is
    resolved once by exhaustive comparison against the oracle (see
    :func:`resolve_p_base_reading`); the minus spelling wins.
    """
    n = _check_base_pair(lam, mu, m)
    if reading is None:
        reading = resolve_p_base_reading()
    if reading not in ("minus", "plus"):
        raise ValueError(f"reading must be 'minus' or 'plus', got {reading!r}")
    # separating one element constrains nothing, exactly like m = 0, and
    # the tuple sum below presumes there is a first constrained element
    mm = max(m, 1)
    d, t = mu.length, lam.length
    if mm > d:
        return 0
    den = factorial(d - mm)
    for a in lam.multiplicities().values():
        den *= factorial(a)
    prefactor = Fraction(
        factorial(t - 1) * factorial(d - 1) * factorial(n - mm), den
    )
    oversized = Counter(p - 1 for p in mu.parts if p > 1)
    ell1 = sum(oversized.values())
    total = 0
    for r in sorted(set(mu.parts)):
        delta = 0 if r == 1 else 1
        pool = oversized.copy()
        if r > 1:
            pool[r - 1] -= 1
            if not pool[r - 1]:
                del pool[r - 1]
        pool_size = sum(pool.values())
        for b in range(0, min(mm - 1, pool_size) + 1):
            arg = ell1 - b - delta if reading == "minus" else ell1 - b + delta
            outer = binom(d - mm, arg) * binom(mm - 1, b) * r
            if outer == 0:
                continue
            for chosen in _sub_multisets(pool, b):
                rest = pool - chosen
                orderings = _multiset_arrangements(chosen) * _multiset_arrangements(rest)
                weight = 1
                for value, count in chosen.items():
                    weight *= (value + 1) ** count
                total += outer * weight * orderings
    result = prefactor * total
    if result.denominator != 1:
        raise ArithmeticError(
            f"non-exact base value for lam={lam}, mu={mu}, m={m}: {result}"
        )
    return int(result)


def _check_base_pair(lam: IntegerPartition, mu: IntegerPartition, m: int) -> int:
    n = lam.n
    if mu.n != n:
        raise ValueError(f"partitions of different n: {lam} vs {mu}")
    if lam.length + mu.length != n + 1:
        raise ValueError(
            f"initial values need l(lam) + l(mu) = n + 1; "
            f"got {lam.length} + {mu.length} != {n + 1}"
        )
    if not 0 <= m <= n:
        raise ValueError(f"m must satisfy 0 <= m <= {n}, got {m}")
    return n


def _sub_multisets(pool: Counter, size: int) -> Iterator[Counter]:
    """Distinct sub-multisets of the given size."""
    values = sorted(pool)

    def rec(idx: int, remaining: int) -> Iterator[Counter]:
        if remaining == 0:
            yield Counter()
            return
        if idx == len(values):
            return
        value = values[idx]
        for take in range(min(pool[value], remaining), -1, -1):
            for rest in rec(idx + 1, remaining - take):
                if take:
                    rest = rest.copy()
                    rest[value] = take
                yield rest

    yield from rec(0, size)


def _multiset_arrangements(counter: Counter) -> int:
    total = factorial(sum(counter.values()))
    for count in counter.values():
        total = exact_div(total, factorial(count))
    return total


_READING_CACHE: dict = {}


def resolve_p_base_reading(max_n: int = 6, cap: int | None = None) -> str:
    """Decide the binomial spelling in :func:`p_base` by exhaustive
    comparison with the oracle over every boundary pair (lam, mu) and
    every m with n <= max_n.  Exactly one spelling must survive;
    anything else raises.  The outcome is cached for the process.
    """
    cached = _READING_CACHE.get("result")
    if cached is not None and _READING_CACHE["max_n"] >= max_n:
        return cached
    mismatches: dict[str, list] = {"minus": [], "plus": []}
    for n in range(1, max_n + 1):
        for lam in partitions_of(n):
            for mu in partitions_of(n):
                if lam.length + mu.length != n + 1:
                    continue
                for m in range(0, n + 1):
                    expected = _oracle.oracle_p_by_vertical_type(lam, mu, m, cap=cap)
                    for reading in ("minus", "plus"):
                        got = p_base(lam, mu, m, reading=reading)
                        if got != expected:
                            mismatches[reading].append((str(lam), str(mu), m, got, expected))
    survivors = [r for r, bad in mismatches.items() if not bad]
    if len(survivors) != 1:
        raise RuntimeError(
            f"initial-value spelling not uniquely resolved: survivors={survivors}, "
            f"mismatch counts={ {r: len(v) for r, v in mismatches.items()} }"
        )
    _READING_CACHE.update(
        result=survivors[0], max_n=max_n, mismatches=mismatches
    )
    return survivors[0]


# ---------------------------------------------------------------------------
# general diagonal cycle type: downward recurrences
#
# Entries are filled in increasing defect n + 1 - l(lambda) - k.  Both
# recurrence inputs sit at strictly smaller defect: raising k by 2j, or
# refining the diagonal type into 2j more parts at fixed k.  Defect-0
# entries come from the initial values; negative defect is impossible
# (a plane permutation always satisfies C(pi) + C(D) <= n + 1).

def _weight_p(m: int, k: int, j: int) -> int:
    return m * binom(k + 2 * j - m, 2 * j) + binom(k + 2 * j - m, 2 * j + 1)


def _weight_i(m: int, k: int, j: int) -> int:
    return binom(k + 2 * j - m, 2 * j + 1)


@lru_cache(maxsize=None)
def _lambda_table(
    n: int, m: int, kind: str, base: str, reading: str | None, cap: int | None
) -> dict[tuple[tuple[int, ...], int], int]:
    weight = _weight_p if kind == "p" else _weight_i
    pairs = [
        (lam, k)
        for lam in partitions_of(n)
        for k in range(1, n + 1)
        if n + 1 - lam.length - k >= 0
    ]
    pairs.sort(key=lambda pk: n + 1 - pk[0].length - pk[1])
    table: dict[tuple[tuple[int, ...], int], int] = {}
    for lam, k in pairs:
        defect = n + 1 - lam.length - k
        if defect == 0:
            table[(lam.parts, k)] = _base_value(lam, m, kind, base, reading, cap)
            continue
        numerator = 0
        j = 1
        while k + 2 * j <= n:
            w = weight(m, k, j)
            if w:
                numerator += w * table.get((lam.parts, k + 2 * j), 0)
            j += 1
        j = 1
        while lam.length + 2 * j <= n:
            for mu, kappa in splits_of(lam, 2 * j + 1):
                numerator += kappa * table.get((mu.parts, k), 0)
            j += 1
        table[(lam.parts, k)] = exact_div(numerator, defect)
    return table


def _base_value(
    lam: IntegerPartition, m: int, kind: str, base: str, reading: str | None,
    cap: int | None,
) -> int:
    n = lam.n
    k0 = n + 1 - lam.length
    if base == "oracle":
        if kind == "p":
            return _oracle.oracle_p(lam, m, k0, cap=cap)
        return _oracle.oracle_i(lam, m, k0, cap=cap)
    total = 0
    for mu in partitions_of(n):
        if mu.length != k0:
            continue
        if kind == "p":
            total += p_base(lam, mu, m, reading=reading)
        else:
            total += i_base(lam, mu, m)
    return total


def _resolve_base(n: int, base: str, kind: str, cap: int | None) -> str:
    if base == "auto":
        if kind == "i":
            return "closed_form"
        limit = _oracle.DEFAULT_CAP if cap is None else cap
        return "oracle" if n <= limit else "closed_form"
    if base not in ("oracle", "closed_form"):
        raise ValueError(f"base must be auto, oracle or closed_form, got {base!r}")
    return base


def p_lambda(
    lam: IntegerPartition, m: int, k: int, base: BaseValueSource = "auto",
    cap: int | None = None,
) -> int:
    """Plane permutations with diagonal cycle type lam whose vertical has
    k cycles separating 1..m, computed by the downward defect recurrence.

    ``base`` picks the defect-0 source: exhaustive enumeration
    ("oracle", the default up to the oracle cap) or the boundary closed
    form ("closed_form", the default beyond; its binomial spelling is
    self-checked against the oracle on first use).
    """
    n = lam.n
    _check_nmk(n, m, k)
    chosen = _resolve_base(n, base, "p", cap)
    reading = resolve_p_base_reading() if chosen == "closed_form" else None
    table = _lambda_table(n, m, "p", chosen, reading, cap)
    return table.get((lam.parts, k), 0)


def i_lambda(
    lam: IntegerPartition, m: int, k: int, base: BaseValueSource = "auto",
    cap: int | None = None,
) -> int:
    """Plane permutations with diagonal cycle type lam whose vertical has
    k cycles fixing 1..m, computed by the downward defect recurrence with
    closed-form boundary values (oracle-backed on request).
    """
    n = lam.n
    _check_nmk(n, m, k)
    chosen = _resolve_base(n, base, "i", cap)
    table = _lambda_table(n, m, "i", chosen, None, cap)
    return table.get((lam.parts, k), 0)


# ---------------------------------------------------------------------------
# probabilities and fixed-point statistics

def sep_prob_ncycle(n: int, m: int) -> Fraction:
    """Probability that the product of two uniform n-cycles has 1..m in
    distinct cycles: 1/m! when n - m is odd, with an extra
    2/((m-2)!(n+1-m)(n+m)) otherwise.  Trivially 1 for m <= 1.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= m <= n:
        raise ValueError(f"m must satisfy 0 <= m <= {n}, got {m}")
    if m <= 1:
        return Fraction(1)
    result = Fraction(1, factorial(m))
    if (n - m) % 2 == 0:
        result += Fraction(2, factorial(m - 2) * (n + 1 - m) * (n + m))
    return result


def iso_prob_ncycle(n: int, m: int) -> Fraction:
    """Probability that the product of two uniform n-cycles fixes each of
    1..m (m < n): 1/(m! * binom(n-1, m)).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= m < n:
        raise ValueError(f"m must satisfy 0 <= m < n, got m={m}, n={n}")
    return Fraction(1, factorial(m) * comb(n - 1, m))


def fixed_point_pair_counts(n: int) -> tuple[int, ...]:
    """Exact pair counts by number of fixed points of the product.

    Entry i is the number of pairs of n-cycles whose product has exactly
    i fixed points; inclusion-exclusion over the counts of pairs fixing
    a prescribed j-subset pointwise.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    total_pairs = factorial(n - 1) ** 2
    fixing = []  # fixing[j]: pairs whose product fixes a given j-set pointwise
    for j in range(n):
        fixing.append(exact_div(total_pairs, factorial(j) * comb(n - 1, j)))
    fixing.append(factorial(n - 1))  # product is forced to the identity
    counts = []
    for i in range(n + 1):
        value = 0
        for j in range(i, n + 1):
            term = binom(j, i) * binom(n, j) * fixing[j]
            value += term if (j - i) % 2 == 0 else -term
        if value < 0:
            raise ArithmeticError(f"negative count at i={i}: {value}")
        counts.append(value)
    if sum(counts) != total_pairs:
        raise ArithmeticError("fixed-point counts do not sum to the pair total")
    return tuple(counts)


def fpf_probability(n: int) -> Fraction:
    """Probability that the product of two uniform n-cycles has no fixed
    point.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    result = Fraction(0)
    for j in range(0, n):
        term = Fraction(n, (n - j) * factorial(j))
        result += term if j % 2 == 0 else -term
    last = Fraction(1, factorial(n - 1))
    result += last if n % 2 == 0 else -last
    return result


def fixed_point_moments(n: int) -> tuple[Fraction, Fraction]:
    """(mean, variance) of the number of fixed points in the product of
    two uniform n-cycles.  The mean is n/(n-1); the variance comes from
    the exact distribution.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    counts = fixed_point_pair_counts(n)
    total = factorial(n - 1) ** 2
    mean = Fraction(sum(i * c for i, c in enumerate(counts)), total)
    expected_mean = Fraction(n, n - 1)
    if mean != expected_mean:
        raise ArithmeticError(f"distribution mean {mean} != {expected_mean}")
    second = Fraction(sum(i * i * c for i, c in enumerate(counts)), total)
    return expected_mean, second - expected_mean * expected_mean


def alpha_separated_count(alpha: Composition) -> int:
    """Pairs of n-cycles whose product keeps every cycle inside a single
    block of the composition: (n-1)! * prod(parts!) / (n + 1 - #parts).
    """
    n = alpha.n
    k = alpha.length
    num = factorial(n - 1)
    for part in alpha.parts:
        num *= factorial(part)
    return exact_div(num, n + 1 - k)


# ---------------------------------------------------------------------------
# tables

@dataclass
class CountTable:
    """Exact values indexed by (diagonal cycle type, vertical cycle
    count).  Absent entries are zero; values are arbitrary-precision and
    serialize as decimal strings.
    """

    n: int
    m: int
    kind: str  # "p" (separation) or "i" (isolation)
    source: str  # "closed_form" | "recurrence" | "oracle"
    entries: dict[tuple[IntegerPartition, int], int] = field(default_factory=dict)

    def get(self, lam: IntegerPartition, k: int) -> int:
        return self.entries.get((lam, k), 0)

    def to_json_dict(self) -> dict:
        items = sorted(
            self.entries.items(), key=lambda kv: (kv[0][0].parts, kv[0][1]),
            reverse=True,
        )
        return {
            "n": self.n,
            "m": self.m,
            "kind": self.kind,
            "source": self.source,
            "entries": [
                {"lambda": str(lam), "k": k, "value": str(value)}
                for (lam, k), value in items
            ],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)

    @staticmethod
    def from_json_dict(data: dict) -> "CountTable":
        entries = {}
        for item in data["entries"]:
            key = (IntegerPartition.from_string(item["lambda"]), int(item["k"]))
            entries[key] = int(item["value"])
        return CountTable(
            n=int(data["n"]), m=int(data["m"]), kind=data["kind"],
            source=data["source"], entries=entries,
        )

    @staticmethod
    def from_json(text: str) -> "CountTable":
        return CountTable.from_json_dict(json.loads(text))


def build_count_table(
    n: int,
    m: int,
    kind: str = "p",
    source: str = "recurrence",
    base: BaseValueSource = "auto",
    cap: int | None = None,
) -> CountTable:
    """Materialise the full (lambda, k) table for one (n, m)."""
    if kind not in ("p", "i"):
        raise ValueError(f"kind must be 'p' or 'i', got {kind!r}")
    if source not in ("recurrence", "oracle"):
        raise ValueError(f"source must be 'recurrence' or 'oracle', got {source!r}")
    entries: dict[tuple[IntegerPartition, int], int] = {}
    for lam in partitions_of(n):
        for k in range(1, n + 1):
            if source == "oracle":
                fn = _oracle.oracle_p if kind == "p" else _oracle.oracle_i
                value = fn(lam, m, k, cap=cap)
            elif kind == "p":
                value = p_lambda(lam, m, k, base=base, cap=cap)
            else:
                value = i_lambda(lam, m, k, base=base, cap=cap)
            if value:
                entries[(lam, k)] = value
    return CountTable(n=n, m=m, kind=kind, source=source, entries=entries)
