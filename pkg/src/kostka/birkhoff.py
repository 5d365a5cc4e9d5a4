"""Magic squares and the Ehrhart polynomial of the Birkhoff polytope.

``H_l(t)`` counts ``l x l`` nonnegative integer matrices with all line sums
``t``; it is the Ehrhart polynomial of the Birkhoff polytope ``B_l``, of
dimension ``(l - 1)^2``.  The polynomial satisfies

    H(-l - t) = (-1)^(l-1) H(t)        H(-1) = ... = H(-(l-1)) = 0

so computing ``H(1..m)`` yields roughly twice as many interpolation points.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial

from .ehrhart import EhrhartResult
from .errors import ResourceLimit, VerificationFailed
from .polynomial import EvaluationPoint, lagrange_interpolate

MAX_ELL = 6


def _row_choices(groups, total):
    """Ways to fill one row against grouped column capacities.

    ``groups`` is a tuple of ``(capacity, multiplicity)``.  Yields
    ``(new_capacities, ways)`` where ``new_capacities`` is an unsorted list
    and ``ways`` counts the distinct rows giving that multiset.
    """

    def fill(gi, left, acc, ways):
        if gi == len(groups):
            if left == 0:
                yield acc, ways
            return
        cap, mult = groups[gi]
        # nonincreasing entries for this group, weighted by arrangements
        def pick(slot, bound, left, entries):
            if slot == mult:
                w = factorial(mult)
                run = 1
                for a, b in zip(entries, entries[1:]):
                    if a == b:
                        run += 1
                    else:
                        w //= factorial(run)
                        run = 1
                w //= factorial(run)
                yield from fill(gi + 1, left, acc + [cap - e for e in entries], ways * w)
                return
            for e in range(min(bound, left), -1, -1):
                entries.append(e)
                yield from pick(slot + 1, e, left - e, entries)
                entries.pop()

        yield from pick(0, cap, left, [])

    yield from fill(0, total, [], 1)


def magic_square_count(ell: int, t: int) -> int:
    """Number of ``ell x ell`` nonnegative integer matrices with line sums ``t``.

    Row-by-row DP whose state is the sorted tuple of remaining column sums.
    """
    if ell < 1 or t < 0:
        raise ValueError("need ell >= 1 and t >= 0")
    if t == 0 or ell == 1:
        return 1

    @lru_cache(maxsize=None)
    def count(state, rows_left):
        if rows_left == 1:
            # last row is forced to the remaining capacities
            return 1
        groups = []
        for c in state:
            if groups and groups[-1][0] == c:
                groups[-1][1] += 1
            else:
                groups.append([c, 1])
        total = 0
        for caps, ways in _row_choices(tuple(map(tuple, groups)), t):
            total += ways * count(tuple(sorted(caps, reverse=True)), rows_left - 1)
        return total

    return count((t,) * ell, ell)


def birkhoff_interior_count(ell: int, t: int) -> int:
    """Strictly positive ``ell x ell`` magic squares with line sum ``t``."""
    if t < ell:
        return 0
    return magic_square_count(ell, t - ell)


def symmetry_points_needed(ell: int) -> int:
    """Smallest ``m`` such that ``H(0..m)``, their mirrors and the trivial
    zeros give at least ``(ell - 1)^2 + 1`` distinct points."""
    d = (ell - 1) ** 2
    # points: t = 0..m, mirrors -ell-t, zeros -1..-(ell-1): ell + 1 + 2m
    return max(0, -((ell - d) // 2))


def birkhoff_ehrhart(ell: int, verify: bool = True) -> EhrhartResult:
    """Ehrhart polynomial of ``B_ell`` by symmetry interpolation.

    ``points`` in the result lists every abscissa used, computed values and
    mirrors alike, in the order they were produced.  With ``verify`` the
    polynomial is checked against ``H(m + 1)``, which is not used for the
    fit.  ``ell > 6`` raises :class:`ResourceLimit`.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    if ell > MAX_ELL:
        raise ResourceLimit(f"Birkhoff polytope B_{ell} is beyond the supported range (ell <= {MAX_ELL})")
    d = (ell - 1) ** 2
    m = symmetry_points_needed(ell)
    sign = -1 if (ell - 1) % 2 else 1
    points = [EvaluationPoint(-j, 0) for j in range(1, ell)]
    for t in range(m + 1):
        h = magic_square_count(ell, t)
        points.append(EvaluationPoint(t, h))
        points.append(EvaluationPoint(-ell - t, sign * h))
    poly = lagrange_interpolate(points)
    if poly.degree > d:
        raise VerificationFailed(None, f"degree <= {d}", poly.degree, "symmetry points are inconsistent")
    verified = None
    if verify:
        x = m + 1
        expected = magic_square_count(ell, x)
        if poly(x) != expected:
            raise VerificationFailed(x, expected, poly(x))
        verified = True
    return EhrhartResult(d, poly, points, verified, {"family": "birkhoff", "ell": ell})
