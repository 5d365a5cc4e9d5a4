"""Slow reference counts used to cross-check the main engine.

Nothing here calls into the DP code in :mod:`kostka.gt`, :mod:`kostka.posets`
or :mod:`kostka.birkhoff`; each routine is a plain backtracking search over
the objects being counted.  Every search runs under an :class:`OracleBudget`
and raises :class:`BudgetExceeded` rather than returning a partial count.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Optional

from .combinatorics import SkewShape, WeightVector
from .errors import KostkaError


class BudgetExceeded(KostkaError):
    pass


@dataclass
class OracleBudget:
    max_states: Optional[int] = 10_000_000
    max_seconds: Optional[float] = 60.0
    states: int = 0
    _start: float = field(default_factory=time.monotonic, repr=False)

    def tick(self, n: int = 1) -> None:
        self.states += n
        if self.max_states is not None and self.states > self.max_states:
            raise BudgetExceeded(f"oracle visited more than {self.max_states} states")
        if self.max_seconds is not None and self.states % 4096 == 0:
            if time.monotonic() - self._start > self.max_seconds:
                raise BudgetExceeded(f"oracle ran longer than {self.max_seconds}s")


def _budget(budget):
    return budget if budget is not None else OracleBudget()


# --- tableaux ------------------------------------------------------------------


def enumerate_ssyt(shape, w, budget: OracleBudget | None = None) -> int:
    """Semistandard skew tableaux of ``shape`` with content ``w``.

    Grows the inner shape one horizontal strip at a time; each strip is
    built row by row with ``new[r] <= old[r - 1]``.
    """
    budget = _budget(budget)
    if not isinstance(shape, SkewShape):
        shape = SkewShape.of(shape, ())
    outer = list(shape.outer)
    ell = len(outer)
    inner = list(shape.inner) + [0] * (ell - len(shape.inner))
    weights = [c for c in WeightVector(w)]
    if sum(outer) - sum(inner) != sum(weights):
        return 0

    def strips(cur, size):
        # every nu with cur <= nu <= outer, nu/cur a horizontal strip of this size
        nu = list(cur)

        def rec(r, left):
            if r == ell:
                if left == 0:
                    yield tuple(nu)
                return
            cap = outer[r] if r == 0 else min(outer[r], cur[r - 1])
            for add in range(0, min(cap - cur[r], left) + 1):
                nu[r] = cur[r] + add
                yield from rec(r + 1, left - add)
            nu[r] = cur[r]

        yield from rec(0, size)

    def chains(cur, step):
        budget.tick()
        if step == len(weights):
            return 1 if list(cur) == outer else 0
        return sum(chains(nxt, step + 1) for nxt in strips(cur, weights[step]))

    return chains(tuple(inner), 0)


def enumerate_strict_patterns(spec, mask, dilation: int, budget: OracleBudget | None = None) -> int:
    """Lattice points of the relative interior of ``dilation * GT(spec)``.

    Fills the pattern entry by entry.  An interlacing inequality flagged in
    ``mask`` must hold with equality, every other one strictly.
    """
    budget = _budget(budget)
    n = dilation
    lam = list(spec.shape.outer)
    ell = len(lam)
    mu = list(spec.shape.inner) + [0] * (ell - len(spec.shape.inner))
    k = len(spec.weight)
    top = [n * x for x in lam]
    rows = [[n * x for x in mu]] + [[0] * ell for _ in range(k - 1)] + [top]
    sums = [n * sum(mu)]
    for c in spec.weight:
        sums.append(sums[-1] + n * c)
    if sums[-1] != sum(top):
        return 0

    def ok(i, j, value):
        prev = rows[i - 1]
        if mask.lower[i][j]:
            if value != prev[j]:
                return False
        elif value <= prev[j]:
            return False
        if j > 0:
            if mask.upper[i][j]:
                if value != prev[j - 1]:
                    return False
            elif value >= prev[j - 1]:
                return False
        return True

    def fill(i, j, acc):
        budget.tick()
        if i == k:
            return 1 if all(ok(k, jj, top[jj]) for jj in range(ell)) else 0
        if j == ell:
            return fill(i + 1, 0, 0) if acc == sums[i] else 0
        total = 0
        for value in range(rows[i - 1][j], (top[j] if j == 0 else rows[i - 1][j - 1]) + 1):
            if ok(i, j, value):
                rows[i][j] = value
                total += fill(i, j + 1, acc + value)
        return total

    if k == 0:
        return 1 if rows[0] == top else 0
    return fill(1, 0, 0)


# --- posets --------------------------------------------------------------------


def _strictly_below(P):
    rel = set(P.relations())
    return [[a for a in range(P.n) if (a, b) in rel] for b in range(P.n)]


def enumerate_order_maps(P, k: int, strict: bool = False, budget: OracleBudget | None = None) -> int:
    """Maps ``P -> {1..k}`` preserving (``strict``: strictly) every relation."""
    budget = _budget(budget)
    below = _strictly_below(P)
    values = [0] * P.n

    def rec(v):
        budget.tick()
        if v == P.n:
            return 1
        total = 0
        for x in range(1, k + 1):
            if all(values[a] < x if strict else values[a] <= x for a in below[v]):
                values[v] = x
                total += rec(v + 1)
        return total

    return rec(0)


def enumerate_linear_extensions(P, budget: OracleBudget | None = None) -> list:
    """All linear extensions as label tuples, lexicographically sorted."""
    budget = _budget(budget)
    below = [set(b) for b in _strictly_below(P)]
    out = []

    def rec(word, placed):
        budget.tick()
        if len(word) == P.n:
            out.append(tuple(word))
            return
        for v in range(P.n):
            if v not in placed and below[v] <= placed:
                rec(word + [v], placed | {v})

    rec([], frozenset())
    return out


# --- magic squares ---------------------------------------------------------------


def enumerate_magic_squares(ell: int, t: int, positive: bool = False, budget: OracleBudget | None = None) -> int:
    """``ell x ell`` integer matrices with every line sum ``t``.

    Entries are ``>= 1`` when ``positive`` and ``>= 0`` otherwise.
    """
    budget = _budget(budget)
    low = 1 if positive else 0
    rows = [r for r in itertools.product(range(low, t + 1), repeat=ell) if sum(r) == t]
    count = 0
    for m in itertools.product(rows, repeat=ell):
        budget.tick()
        if all(sum(col) == t for col in zip(*m)):
            count += 1
    return count
