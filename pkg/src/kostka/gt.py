"""Kostka and strict Kostka numbers via horizontal-strip dynamic programming.

A GT pattern of shape ``lam/mu`` and weight ``w = (w_1..w_k)`` is a chain of
partitions ``mu = a[0] <= a[1] <= ... <= a[k] = lam`` where row ``i`` is
obtained from row ``i-1`` by adding a horizontal strip of size ``w_i``:

    a[i-1][j] <= a[i][j] <= a[i-1][j-1]          (interlacing)
    |a[i]| = |mu| + w_1 + ... + w_i               (row sums)

Columns are 0-based throughout this module; rows run ``0..k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .combinatorics import Partition, SkewShape, WeightVector
from .ehrhart import EhrhartResult, PointEvaluator, compute_ehrhart
from .errors import EmptyPolytope, SizeMismatch

WEAK, STRICT, EQUAL = 0, 1, 2


@dataclass(frozen=True)
class GTChainSpec:
    """Shape and weight of a GT polytope; zero weights are already stripped."""

    shape: SkewShape
    weight: WeightVector

    @classmethod
    def of(cls, lam: Iterable[int], w: Iterable[int], mu: Iterable[int] = ()) -> "GTChainSpec":
        return cls(SkewShape.of(lam, mu), WeightVector(w).stripped())

    @property
    def lam(self) -> Partition:
        return self.shape.outer

    @property
    def mu(self) -> Partition:
        return self.shape.inner

    @property
    def rows(self) -> int:
        """Number of columns tracked per chain row (the length of ``lam``)."""
        return len(self.shape.outer)

    @property
    def k(self) -> int:
        return len(self.weight)

    def is_balanced(self) -> bool:
        return self.weight.total() == self.shape.size()

    def row_sums(self) -> list:
        sums = [self.mu.size()]
        for w in self.weight:
            sums.append(sums[-1] + w)
        return sums

    def boundary_rows(self) -> tuple:
        ell = self.rows
        mu = tuple(self.mu.part(j) for j in range(ell))
        return mu, tuple(self.lam)

    def __str__(self):
        lam = ",".join(map(str, self.lam))
        w = ",".join(map(str, self.weight))
        if self.mu:
            return f"GT({lam} / {','.join(map(str, self.mu))}; {w})"
        return f"GT({lam}; {w})"


def scale_spec(spec: GTChainSpec, n: int) -> GTChainSpec:
    """Multiply ``lam``, ``mu`` and ``w`` entrywise by ``n``."""
    if n < 1:
        raise ValueError("dilation must be a positive integer")
    if n == 1:
        return spec
    return GTChainSpec(spec.shape.scaled(n), spec.weight.scaled(n))


# --- forced-value propagation ----------------------------------------------


def _propagate(spec: GTChainSpec):
    """Interval bounds for every chain entry, tightened to a fixpoint.

    Returns ``(lo, hi)`` as lists of per-row lists, or ``None`` when the
    bounds become contradictory (the polytope is empty).  Every bound is
    implied by the defining constraints, so ``lo == hi`` means the entry is
    forced on the whole polytope.
    """
    ell, k = spec.rows, spec.k
    mu, lam = spec.boundary_rows()
    if k == 0:
        return ([list(mu)], [list(mu)]) if mu == lam else None
    top = lam[0] if ell else 0
    lo = [list(mu)] + [[0] * ell for _ in range(k - 1)] + [list(lam)]
    hi = [list(mu)] + [[top] * ell for _ in range(k - 1)] + [list(lam)]
    sums = spec.row_sums()

    changed = True
    while changed:
        changed = False
        for i in range(1, k + 1):
            prev_lo, prev_hi, cur_lo, cur_hi = lo[i - 1], hi[i - 1], lo[i], hi[i]
            for j in range(ell):
                # a[i-1][j] <= a[i][j]
                if prev_lo[j] > cur_lo[j]:
                    cur_lo[j] = prev_lo[j]
                    changed = True
                if cur_hi[j] < prev_hi[j]:
                    prev_hi[j] = cur_hi[j]
                    changed = True
                # a[i][j] <= a[i-1][j-1]
                if j:
                    if prev_hi[j - 1] < cur_hi[j]:
                        cur_hi[j] = prev_hi[j - 1]
                        changed = True
                    if cur_lo[j] > prev_lo[j - 1]:
                        prev_lo[j - 1] = cur_lo[j]
                        changed = True
        for i in range(1, k):
            s = sums[i]
            row_lo, row_hi = lo[i], hi[i]
            tot_lo, tot_hi = sum(row_lo), sum(row_hi)
            for j in range(ell):
                new_lo = s - (tot_hi - row_hi[j])
                new_hi = s - (tot_lo - row_lo[j])
                if new_lo > row_lo[j]:
                    tot_lo += new_lo - row_lo[j]
                    row_lo[j] = new_lo
                    changed = True
                if new_hi < row_hi[j]:
                    tot_hi += new_hi - row_hi[j]
                    row_hi[j] = new_hi
                    changed = True
        for i in range(k + 1):
            if any(a > b for a, b in zip(lo[i], hi[i])):
                return None
    return lo, hi


@dataclass(frozen=True)
class ForcedEqualityMask:
    """Tight interlacing inequalities and pinned entries of a GT polytope.

    ``lower[i][j]`` flags ``a[i][j] == a[i-1][j]`` on the whole polytope and
    ``upper[i][j]`` flags ``a[i][j] == a[i-1][j-1]`` (rows ``1..k``;
    ``upper[i][0]`` is always False).  ``lo``/``hi`` are the propagated
    bounds at dilation 1; they scale linearly with the dilation.
    """

    lower: tuple
    upper: tuple
    lo: tuple
    hi: tuple

    def forced_value(self, i: int, j: int) -> Optional[int]:
        return self.lo[i][j] if self.lo[i][j] == self.hi[i][j] else None

    def lower_tight(self, i: int, j: int) -> bool:
        return self.lower[i][j]

    def upper_tight(self, i: int, j: int) -> bool:
        return self.upper[i][j]

    def free_entries(self) -> list:
        """``(i, j)`` of entries not pinned by propagation, interior rows only."""
        return [
            (i, j)
            for i in range(1, len(self.lo) - 1)
            for j in range(len(self.lo[i]))
            if self.lo[i][j] != self.hi[i][j]
        ]


def _build_mask(lo, hi) -> ForcedEqualityMask:
    k = len(lo) - 1
    ell = len(lo[0]) if lo else 0
    pinned = [[lo[i][j] == hi[i][j] for j in range(ell)] for i in range(k + 1)]
    lower = [[False] * ell]
    upper = [[False] * ell]
    for i in range(1, k + 1):
        lower.append([pinned[i][j] and pinned[i - 1][j] and lo[i][j] == lo[i - 1][j] for j in range(ell)])
        upper.append(
            [False]
            + [
                pinned[i][j] and pinned[i - 1][j - 1] and lo[i][j] == lo[i - 1][j - 1]
                for j in range(1, ell)
            ]
        )
    freeze = lambda rows: tuple(tuple(r) for r in rows)  # noqa: E731
    return ForcedEqualityMask(freeze(lower), freeze(upper), freeze(lo), freeze(hi))


def forced_equality_mask(spec: GTChainSpec) -> ForcedEqualityMask:
    bounds = _propagate(spec)
    if bounds is None:
        raise EmptyPolytope(f"{spec} is empty")
    return _build_mask(*bounds)


def gt_dimension(spec: GTChainSpec):
    """Dimension of ``GT(lam/mu, w)`` by propagation of forced values.

    Returns ``(dimension, mask)``.  Each interior row with an unpinned entry
    loses one degree of freedom to its row sum.  Equalities among unpinned
    entries that propagation cannot see would make this an overestimate;
    :func:`kostka.ehrhart.verify_polynomial` turns that into a hard failure.
    """
    if not spec.is_balanced():
        raise SizeMismatch(f"|w| = {spec.weight.total()} but |lam/mu| = {spec.shape.size()}")
    if kostka(spec) == 0:
        raise EmptyPolytope(f"{spec} has no lattice points")
    mask = forced_equality_mask(spec)
    free = mask.free_entries()
    rows_with_free = {i for i, _ in free}
    return len(free) - len(rows_with_free), mask


# --- counting --------------------------------------------------------------


def _add_strips(low, high, target, count, out):
    """Add ``count`` to ``out[x]`` for every tuple ``low <= x <= high`` with sum ``target``."""
    m = len(low)
    if m == 1:
        if low[0] <= target <= high[0]:
            key = (target,)
            out[key] = out.get(key, 0) + count
        return
    suf_lo = [0] * (m + 1)
    suf_hi = [0] * (m + 1)
    for j in range(m - 1, -1, -1):
        suf_lo[j] = suf_lo[j + 1] + low[j]
        suf_hi[j] = suf_hi[j + 1] + high[j]
    if not suf_lo[0] <= target <= suf_hi[0]:
        return
    partial = [((), target)]
    for j in range(m - 2):
        lj, hj, sl, sh = low[j], high[j], suf_lo[j + 1], suf_hi[j + 1]
        grown = []
        for prefix, rem in partial:
            a = rem - sh
            if a < lj:
                a = lj
            b = rem - sl
            if b > hj:
                b = hj
            for x in range(a, b + 1):
                grown.append((prefix + (x,), rem - x))
        partial = grown
    # the last two entries are determined by one free choice
    lj, hj, ll, hl = low[m - 2], high[m - 2], low[m - 1], high[m - 1]
    get = out.get
    for prefix, rem in partial:
        a = rem - hl
        if a < lj:
            a = lj
        b = rem - ll
        if b > hj:
            b = hj
        for x in range(a, b + 1):
            key = prefix + (x, rem - x)
            out[key] = get(key, 0) + count


def _count_chains(spec: GTChainSpec, lo, hi, lower_mode, upper_mode) -> int:
    """Count integer chains within bounds under per-inequality modes.

    ``lower_mode[i][j]`` / ``upper_mode[i][j]`` are WEAK, STRICT or EQUAL
    for the inequalities ``a[i-1][j] <= a[i][j]`` / ``a[i][j] <= a[i-1][j-1]``.
    """
    ell, k = spec.rows, spec.k
    mu, lam = spec.boundary_rows()
    if k == 0:
        return 1 if mu == lam else 0
    if ell == 0:
        return 1
    sums = spec.row_sums()
    big = lam[0] + 1
    states = {mu: 1}
    for i in range(1, k + 1):
        row_lo, row_hi = lo[i], hi[i]
        lmode, umode = lower_mode[i], upper_mode[i]
        target = sums[i]
        nxt = {}
        for alpha, count in states.items():
            low = [0] * ell
            high = [0] * ell
            ok = True
            for j in range(ell):
                a_lo = row_lo[j]
                a_hi = row_hi[j]
                m = lmode[j]
                if m == WEAK:
                    if alpha[j] > a_lo:
                        a_lo = alpha[j]
                elif m == STRICT:
                    if alpha[j] + 1 > a_lo:
                        a_lo = alpha[j] + 1
                else:
                    if alpha[j] > a_lo:
                        a_lo = alpha[j]
                    if alpha[j] < a_hi:
                        a_hi = alpha[j]
                if j:
                    m = umode[j]
                    cap = alpha[j - 1]
                    if m == WEAK:
                        if cap < a_hi:
                            a_hi = cap
                    elif m == STRICT:
                        if cap - 1 < a_hi:
                            a_hi = cap - 1
                    else:
                        if cap < a_hi:
                            a_hi = cap
                        if cap > a_lo:
                            a_lo = cap
                elif a_hi > big:
                    a_hi = big
                if a_lo > a_hi:
                    ok = False
                    break
                low[j] = a_lo
                high[j] = a_hi
            if not ok:
                continue
            _add_strips(low, high, target, count, nxt)
        states = nxt
        if not states:
            return 0
    return states.get(lam, 0)


def _scaled(rows, n):
    return [[n * x for x in row] for row in rows]


def kostka(spec: GTChainSpec, bounds=None) -> int:
    """Number of SSYT of shape ``lam/mu`` and content ``w``.

    Forward DP over intermediate partitions: each weight adds a horizontal
    strip inside ``lam``; equal partitions are merged.  ``bounds`` may pass
    precomputed ``(lo, hi)`` entry bounds valid for ``spec``.
    """
    if not spec.is_balanced():
        return 0
    if bounds is None:
        bounds = _propagate(spec)
        if bounds is None:
            return 0
    lo, hi = bounds
    modes = [[WEAK] * spec.rows for _ in range(spec.k + 1)]
    return _count_chains(spec, lo, hi, modes, modes)


def kostka_dilated(spec: GTChainSpec, n: int, mask: ForcedEqualityMask | None = None) -> int:
    """``kostka(scale_spec(spec, n))``, reusing the dilation-1 bounds if given."""
    big = scale_spec(spec, n)
    if mask is None:
        return kostka(big)
    return kostka(big, (_scaled(mask.lo, n), _scaled(mask.hi, n)))


def strict_kostka(spec: GTChainSpec, mask: ForcedEqualityMask, dilation: int) -> int:
    """Interior lattice points of ``dilation * GT(spec)``.

    Counts integer chains for the dilated data in which every interlacing
    inequality flagged tight in ``mask`` holds with equality and every other
    one holds strictly.
    """
    if dilation < 1:
        raise ValueError("dilation must be a positive integer")
    if not spec.is_balanced():
        return 0
    n = dilation
    big = scale_spec(spec, n)
    lower_mode = [[EQUAL if t else STRICT for t in row] for row in mask.lower]
    upper_mode = [[EQUAL if t else STRICT for t in row] for row in mask.upper]
    return _count_chains(big, _scaled(mask.lo, n), _scaled(mask.hi, n), lower_mode, upper_mode)


def pattern_constraints(spec: GTChainSpec, mask: ForcedEqualityMask | None = None):
    """List the interlacing inequalities as ``(i, j, kind, tight)`` tuples.

    ``kind`` is ``"lower"`` for ``a[i-1][j] <= a[i][j]`` and ``"upper"`` for
    ``a[i][j] <= a[i-1][j-1]``.
    """
    out = []
    for i in range(1, spec.k + 1):
        for j in range(spec.rows):
            out.append((i, j, "lower", bool(mask and mask.lower[i][j])))
            if j:
                out.append((i, j, "upper", bool(mask and mask.upper[i][j])))
    return out


# --- Ehrhart polynomial -----------------------------------------------------


class GTEvaluator(PointEvaluator):
    """Point oracle for ``GT(lam/mu, w)``: Kostka and strict Kostka counts."""

    def __init__(self, spec: GTChainSpec):
        self.spec = spec
        self.dimension, self.mask = gt_dimension(spec)

    def positive(self, n: int) -> int:
        return kostka_dilated(self.spec, n, self.mask)

    def interior(self, n: int) -> int:
        return strict_kostka(self.spec, self.mask, n)

    def describe(self) -> dict:
        return {
            "family": "gt",
            "lambda": list(self.spec.lam),
            "mu": list(self.spec.mu),
            "w": list(self.spec.weight),
        }


def gt_ehrhart(spec: GTChainSpec, verify: bool = True, schedule: str = "adaptive") -> EhrhartResult:
    return compute_ehrhart(GTEvaluator(spec), verify=verify, schedule=schedule)
