"""Exact permutation arithmetic on the ground set [n] = {1, ..., n}.

A permutation is stored as its image tuple: ``images[i-1]`` is the image
of i.  Composition follows the (p*q)(x) = p(q(x)) convention everywhere
in this package.

Text forms: canonical cycle form ``(1 3 6)(2 5 4)`` (each cycle rotated
so its minimum comes first, cycles sorted by minimum, fixed points
included) and one-line form ``5,4,1,3,6,2``.  Both are parseable.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _all_arrangements
from typing import Iterable, Iterator, Sequence

from .partitions import IntegerPartition


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        n = len(images)
        if n < 1:
            raise ValueError("ground set must have at least one element")
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection on [{n}]: {images}")
        object.__setattr__(self, "images", images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        if not 1 <= x <= self.n:
            raise ValueError(f"{x} is outside the ground set [{self.n}]")
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.images):
            inv[v - 1] = i + 1
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles in canonical form: each cycle starts at its
        minimum, cycles are sorted by minimum, fixed points included.
        """
        seen = [False] * self.n
        out = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cycle = [start]
            seen[start - 1] = True
            x = self.images[start - 1]
            while x != start:
                cycle.append(x)
                seen[x - 1] = True
                x = self.images[x - 1]
            out.append(tuple(cycle))
        return tuple(out)

    def cycle_count(self) -> int:
        seen = [False] * self.n
        count = 0
        for start in range(self.n):
            if seen[start]:
                continue
            count += 1
            x = start
            while not seen[x]:
                seen[x] = True
                x = self.images[x] - 1
        return count

    def cycle_type(self) -> IntegerPartition:
        return IntegerPartition(tuple(len(c) for c in self.cycles()))

    def parity(self) -> int:
        """0 for even permutations, 1 for odd."""
        return (self.n - self.cycle_count()) % 2

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, v in enumerate(self.images) if v == i + 1)

    def __str__(self) -> str:
        return self.cycle_string()

    def cycle_string(self) -> str:
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in self.cycles())

    def one_line_string(self) -> str:
        return ",".join(str(v) for v in self.images)

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def from_cycles(cycles: Iterable[Sequence[int]], n: int | None = None) -> "Permutation":
        """Build from disjoint cycles.  Elements of [n] absent from every
        cycle are fixed points; with n omitted the cycles must cover
        [max element] completely.
        """
        cycles = [tuple(c) for c in cycles]
        elements = [x for c in cycles for x in c]
        if not elements and n is None:
            raise ValueError("cannot infer n from empty cycle list")
        top = max(elements) if elements else 0
        if n is None:
            n = top
            if sorted(elements) != list(range(1, n + 1)):
                raise ValueError("cycles must partition [n]; pass n to allow implicit fixed points")
        if top > n or len(set(elements)) != len(elements):
            raise ValueError(f"cycles are not disjoint subsets of [{n}]: {cycles}")
        images = list(range(1, n + 1))
        for c in cycles:
            for i, x in enumerate(c):
                images[x - 1] = c[(i + 1) % len(c)]
        return Permutation(tuple(images))

    @staticmethod
    def from_cycle_sequence(seq: Sequence[int]) -> "Permutation":
        """The n-cycle mapping seq[i] -> seq[i+1] (cyclically)."""
        return Permutation.from_cycles([tuple(seq)])


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p*q)(x) = p(q(x)): apply q first, then p."""
    if p.n != q.n:
        raise ValueError(f"ground sets differ: [{p.n}] vs [{q.n}]")
    pi = p.images
    return Permutation(tuple(pi[v - 1] for v in q.images))


def cycle_type(p: Permutation) -> IntegerPartition:
    return p.cycle_type()


def separates(p: Permutation, m: int) -> bool:
    """True when 1..m lie in pairwise distinct cycles of p.

    Vacuously true for m <= 1.
    """
    if not 0 <= m <= p.n:
        raise ValueError(f"m must satisfy 0 <= m <= {p.n}, got {m}")
    visited = [False] * p.n
    images = p.images
    for start in range(1, m + 1):
        if visited[start - 1]:
            return False  # shares a cycle with a smaller element of [m]
        x = start
        while not visited[x - 1]:
            visited[x - 1] = True
            x = images[x - 1]
    return True


def isolates(p: Permutation, m: int) -> bool:
    """True when every element of 1..m is a fixed point of p."""
    if not 0 <= m <= p.n:
        raise ValueError(f"m must satisfy 0 <= m <= {p.n}, got {m}")
    return all(p.images[i] == i + 1 for i in range(m))


def enumerate_n_cycles(n: int) -> Iterator[Permutation]:
    """All (n-1)! n-cycles on [n], as the cycle (1 t2 ... tn) with the
    tail running through arrangements of {2..n} in lexicographic order.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        yield Permutation.identity(1)
        return
    for tail in _all_arrangements(range(2, n + 1)):
        images = [0] * n
        prev = 1
        for x in tail:
            images[prev - 1] = x
            prev = x
        images[prev - 1] = 1
        yield Permutation(tuple(images))


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    """Parse cycle form ``(1 3)(2)`` or one-line form ``3,2,1``."""
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty permutation text")
    if stripped.startswith("("):
        cycles = []
        pos = 0
        while pos < len(stripped):
            ch = stripped[pos]
            if ch.isspace():
                pos += 1
                continue
            if ch != "(":
                raise ValueError(f"expected '(' at position {pos} in {text!r}")
            close = stripped.find(")", pos)
            if close < 0:
                raise ValueError(f"unclosed cycle at position {pos} in {text!r}")
            body = stripped[pos + 1:close].replace(",", " ").split()
            if not body:
                raise ValueError(f"empty cycle at position {pos} in {text!r}")
            cycles.append(tuple(int(tok) for tok in body))
            pos = close + 1
        return Permutation.from_cycles(cycles, n=n)
    images = tuple(int(tok) for tok in stripped.replace(",", " ").split())
    if n is not None and len(images) != n:
        raise ValueError(f"expected {n} images, got {len(images)}")
    return Permutation(images)
