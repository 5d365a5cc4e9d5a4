"""Partitions, skew shapes, weights and permutations.

All values here are immutable tuples, so they hash, compare and pickle like
plain tuples.  Permutations are 1-based in one-line notation.
"""

from __future__ import annotations

import bisect
import re
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import InvalidShape, NotAPartition, NotAPermutation


class Partition(tuple):
    """Weakly decreasing tuple of positive integers (trailing zeros stripped)."""

    def __new__(cls, parts: Iterable[int] = ()):
        return tuple.__new__(cls, _canonical_parts(parts))

    def size(self) -> int:
        return sum(self)

    def part(self, j: int) -> int:
        """0-based part lookup that pads with zeros."""
        return self[j] if j < len(self) else 0

    def contains(self, other: Sequence[int]) -> bool:
        return all(other[j] <= self.part(j) for j in range(len(other)))

    def scaled(self, n: int) -> "Partition":
        return tuple.__new__(Partition, (n * p for p in self))

    def __repr__(self):
        return f"Partition{tuple(self)!r}"


def _canonical_parts(parts: Iterable[int]) -> tuple:
    parts = [int(p) for p in parts]
    if any(p < 0 for p in parts):
        raise NotAPartition(f"negative part in {tuple(parts)}")
    while parts and parts[-1] == 0:
        parts.pop()
    for a, b in zip(parts, parts[1:]):
        if b > a:
            raise NotAPartition(f"{tuple(parts)} is not weakly decreasing")
    return tuple(parts)


def canonicalize(parts: Iterable[int]) -> Partition:
    """Validate ``parts`` as a partition and strip trailing zeros.

    Input is never sorted: ``(2, 3, 1)`` raises :class:`NotAPartition`.
    """
    return Partition(parts)


class WeightVector(tuple):
    """Sequence of nonnegative integers (the content of a tableau)."""

    def __new__(cls, weights: Iterable[int] = ()):
        weights = tuple(int(w) for w in weights)
        if any(w < 0 for w in weights):
            raise ValueError(f"negative weight in {weights}")
        return tuple.__new__(cls, weights)

    def total(self) -> int:
        return sum(self)

    def stripped(self) -> "WeightVector":
        return WeightVector(w for w in self if w)

    def scaled(self, n: int) -> "WeightVector":
        return tuple.__new__(WeightVector, (n * w for w in self))

    def __repr__(self):
        return f"WeightVector{tuple(self)!r}"


class SkewShape(NamedTuple):
    outer: Partition
    inner: Partition = Partition()

    @classmethod
    def of(cls, outer: Iterable[int], inner: Iterable[int] = ()) -> "SkewShape":
        outer, inner = Partition(outer), Partition(inner)
        if len(inner) > len(outer) or not outer.contains(inner):
            raise InvalidShape(f"{tuple(inner)} is not contained in {tuple(outer)}")
        return cls(outer, inner)

    def size(self) -> int:
        return self.outer.size() - self.inner.size()

    def scaled(self, n: int) -> "SkewShape":
        return SkewShape(self.outer.scaled(n), self.inner.scaled(n))


class Permutation(tuple):
    """A permutation of ``1..n`` in one-line notation."""

    def __new__(cls, values: Iterable[int]):
        values = tuple(int(v) for v in values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise NotAPermutation(f"{values} is not a permutation of 1..{len(values)}")
        return tuple.__new__(cls, values)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return tuple.__new__(cls, range(1, n + 1))

    def __repr__(self):
        return f"Permutation{tuple(self)!r}"


def is_horizontal_strip(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """True iff ``beta / alpha`` is a horizontal strip.

    That is, ``alpha`` is contained in ``beta`` and the two interlace:
    ``beta[j+1] <= alpha[j]`` for every row ``j``.
    """
    m = max(len(alpha), len(beta))
    a = list(alpha) + [0] * (m - len(alpha))
    b = list(beta) + [0] * (m - len(beta))
    if any(x > y for x, y in zip(a, b)):
        return False
    return all(b[j + 1] <= a[j] for j in range(m - 1))


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield tuple.__new__(Partition, (first,) + rest)


def compositions(n: int, k: int) -> Iterator[tuple]:
    """Weak compositions of ``n`` into exactly ``k`` nonnegative parts."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def _is_monotone(pattern: Sequence[int]) -> int:
    k = len(pattern)
    if tuple(pattern) == tuple(range(k, 0, -1)):
        return -1
    if tuple(pattern) == tuple(range(1, k + 1)):
        return 1
    return 0


def longest_increasing_run(seq: Sequence[int]) -> int:
    """Length of the longest strictly increasing subsequence."""
    tails = []
    for x in seq:
        i = bisect.bisect_left(tails, x)
        if i == len(tails):
            tails.append(x)
        else:
            tails[i] = x
    return len(tails)


def contains_pattern(w: Sequence[int], pattern: Sequence[int]) -> bool:
    """True iff some subsequence of ``w`` is order-isomorphic to ``pattern``.

    Monotone patterns are decided through the longest increasing/decreasing
    subsequence; other patterns by enumerating position subsets.
    """
    k = len(pattern)
    if k == 0:
        return True
    if k > len(w):
        return False
    direction = _is_monotone(pattern)
    if direction == 1:
        return longest_increasing_run(w) >= k
    if direction == -1:
        return longest_increasing_run([-x for x in w]) >= k
    target = _standardize(pattern)
    return any(_standardize([w[i] for i in idx]) == target for idx in combinations(range(len(w)), k))


def _standardize(seq: Sequence[int]) -> tuple:
    order = sorted(range(len(seq)), key=seq.__getitem__)
    ranks = [0] * len(seq)
    for r, i in enumerate(order):
        ranks[i] = r
    return tuple(ranks)


def transposition_neighborhood(w: Sequence[int], radius: int) -> set:
    """Permutations reachable from ``w`` by at most ``radius`` position swaps."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    start = tuple.__new__(Permutation, w)
    seen = {start}
    frontier = [start]
    n = len(start)
    pairs = list(combinations(range(n), 2))
    for _ in range(radius):
        nxt = []
        for p in frontier:
            lst = list(p)
            for i, j in pairs:
                lst[i], lst[j] = lst[j], lst[i]
                q = tuple.__new__(Permutation, lst)
                lst[i], lst[j] = lst[j], lst[i]
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


_REPEAT = re.compile(r"^\s*(-?\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_int_list(text: str) -> tuple:
    """Parse ``"3,2,1"`` or ``"2,1^8"`` into a tuple of integers.

    An empty string gives the empty tuple.
    """
    text = text.strip()
    if not text:
        return ()
    out = []
    for item in text.split(","):
        m = _REPEAT.match(item)
        if not m:
            raise ValueError(f"cannot parse {item!r} in {text!r}")
        value, times = int(m.group(1)), m.group(2)
        out.extend([value] * (int(times) if times is not None else 1))
    return tuple(out)


def format_int_list(values: Sequence[int]) -> str:
    return ",".join(str(v) for v in values)
