"""Naturally labeled posets, order polynomials and order-polytope h*-vectors.

Lattice points of ``t * O(P)`` are weakly order-preserving maps
``P -> {0..t}`` and interior points are strict maps ``P -> {1..t-1}``, so

    L(t) = Omega(P, t + 1)        (-1)^n L(-t) = strict Omega(P, t - 1)

Both counts come from a frontier DP that keeps only the values of vertices
that still constrain something unprocessed, or, when the poset has few
order ideals, from repeated transforms over the ideal lattice.
"""

from __future__ import annotations

import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .combinatorics import Partition, Permutation, contains_pattern, parse_int_list, transposition_neighborhood
from .ehrhart import (
    EhrhartResult,
    HStarVector,
    PointEvaluator,
    compute_ehrhart,
    hstar_from_ehrhart,
    is_log_concave,
    is_real_rooted,
    is_ultra_log_concave,
)
from .errors import Cancelled, InvalidShape, NotNaturallyLabeled, ResourceLimit

log = logging.getLogger(__name__)


class Poset:
    """Finite poset on ``0..n-1`` given by its cover relations.

    Labels must be natural (``a < b`` in the poset implies ``a < b`` as
    integers) and covers irredundant; violations raise instead of being
    repaired.
    """

    def __init__(self, n: int, covers: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("poset size must be nonnegative")
        self.n = n
        covers = sorted({(int(a), int(b)) for a, b in covers})
        for a, b in covers:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"cover {(a, b)} out of range for n={n}")
            if a >= b:
                raise NotNaturallyLabeled(f"cover {a} < {b} violates natural labeling")
        self.covers = tuple(covers)
        self.lower_covers = [[] for _ in range(n)]
        self.upper_covers = [[] for _ in range(n)]
        for a, b in covers:
            self.lower_covers[b].append(a)
            self.upper_covers[a].append(b)
        # below[v]: bitmask of all u < v in the poset
        below = [0] * n
        for v in range(n):
            m = 0
            for u in self.lower_covers[v]:
                m |= below[u] | (1 << u)
            below[v] = m
        self.below = below
        for a, b in covers:
            for u in self.lower_covers[b]:
                if u != a and (below[u] >> a) & 1:
                    raise ValueError(f"cover {(a, b)} is implied by transitivity")

    @classmethod
    def from_relations(cls, n: int, relations: Iterable[Sequence[int]]) -> "Poset":
        """Build from any generating set of relations (transitively reduced here)."""
        rel = {(int(a), int(b)) for a, b in relations}
        for a, b in rel:
            if a >= b:
                raise NotNaturallyLabeled(f"relation {a} < {b} violates natural labeling")
        below = [0] * n
        ups = [[] for _ in range(n)]
        for a, b in rel:
            ups[b].append(a)
        for v in range(n):
            m = 0
            for u in ups[v]:
                m |= below[u] | (1 << u)
            below[v] = m
        covers = []
        for b in range(n):
            for a in range(b):
                if (below[b] >> a) & 1 and not any(
                    (below[b] >> c) & 1 and (below[c] >> a) & 1 for c in range(a + 1, b)
                ):
                    covers.append((a, b))
        return cls(n, covers)

    def less(self, a: int, b: int) -> bool:
        return bool((self.below[b] >> a) & 1)

    def relations(self) -> list:
        return [(a, b) for b in range(self.n) for a in range(b) if self.less(a, b)]

    def longest_chain(self) -> int:
        """Number of elements in a longest chain."""
        height = [0] * self.n
        for v in range(self.n):
            height[v] = 1 + max((height[u] for u in self.lower_covers[v]), default=0)
        return max(height, default=0)

    def to_dict(self) -> dict:
        return {"n": self.n, "covers": [list(c) for c in self.covers]}

    @classmethod
    def from_dict(cls, data: dict) -> "Poset":
        return cls(int(data["n"]), [tuple(c) for c in data["covers"]])

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __eq__(self, other):
        return isinstance(other, Poset) and (self.n, self.covers) == (other.n, other.covers)

    def __hash__(self):
        return hash((self.n, self.covers))

    def __repr__(self):
        return f"Poset(n={self.n}, covers={list(self.covers)})"


# --- named families ----------------------------------------------------------


def chain(n: int) -> Poset:
    return Poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return Poset(n)


def fence_path_labels(n: int) -> list:
    """Label of the ``t``-th element along the zigzag ``p0 < p1 > p2 < p3 ...``.

    Each maximum is labeled right after its right-hand minimum, which keeps
    the labeling natural.
    """
    labels = []
    for t in range(n):
        if t % 2 == 0:
            labels.append(t - 1 if t >= 2 else 0)
        else:
            labels.append(t + 1 if t + 1 < n else t)
    return labels


def fence(n: int) -> Poset:
    """Zigzag poset ``p0 < p1 > p2 < p3 > ...`` on ``n`` elements."""
    lab = fence_path_labels(n)
    covers = []
    for t in range(0, n, 2):
        for s in (t - 1, t + 1):
            if 0 <= s < n:
                covers.append((lab[t], lab[s]))
    return Poset(n, covers)


def shape_poset(lam: Sequence[int]) -> Poset:
    """Cells of a Young diagram under the componentwise order, row-reading labels."""
    lam = Partition(lam)
    if not lam:
        raise InvalidShape("shape poset needs a nonempty partition")
    label = {}
    for i, row in enumerate(lam):
        for j in range(row):
            label[i, j] = len(label)
    covers = []
    for (i, j), v in label.items():
        for cell in ((i, j + 1), (i + 1, j)):
            if cell in label:
                covers.append((v, label[cell]))
    return Poset(len(label), covers)


def permutation_poset(w: Sequence[int]) -> Poset:
    """``i < j`` iff ``i < j`` and ``w_i < w_j`` (positions relabeled 0-based)."""
    w = Permutation(w)
    n = len(w)
    covers = []
    for j in range(n):
        for i in range(j):
            if w[i] < w[j] and not any(w[i] < w[m] < w[j] for m in range(i + 1, j)):
                covers.append((i, j))
    return Poset(n, covers)


def parse_poset(text: str) -> Poset:
    """Parse ``chain:n``, ``antichain:n``, ``fence:n``, ``shape:4,3,2,1``,
    ``perm:2,4,1,3`` or ``file:path`` (JSON ``{n, covers}``)."""
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind == "chain":
        return chain(int(arg))
    if kind == "antichain":
        return antichain(int(arg))
    if kind == "fence":
        return fence(int(arg))
    if kind == "shape":
        return shape_poset(parse_int_list(arg))
    if kind == "perm":
        return permutation_poset(parse_int_list(arg))
    if kind == "file":
        with open(arg, encoding="utf-8") as fh:
            return Poset.from_dict(json.load(fh))
    raise ValueError(f"unknown poset family {kind!r}")


# --- frontier DP -------------------------------------------------------------


@dataclass
class _Step:
    vertex: int
    lower_idx: tuple  # positions of processed lower neighbors in the state key
    upper_idx: tuple  # positions of processed upper neighbors
    keep_idx: tuple  # positions that survive this step
    keep_all: bool
    becomes_live: bool


class FrontierPlan:
    """Processing schedule for the frontier DP.

    A vertex is live from the step it is processed until its last
    neighbor (upper or lower cover) has been processed; vertices with no
    unprocessed neighbor are summed out on the spot.  ``width`` is the
    largest number of simultaneously live vertices.  The default order is
    the label order, in which every processed neighbor is a lower cover.
    """

    def __init__(self, poset: Poset, order: Optional[Sequence[int]] = None):
        n = poset.n
        order = list(range(n)) if order is None else list(order)
        if sorted(order) != list(range(n)):
            raise ValueError("order must list every element once")
        self.poset = poset
        self.order = order
        pos = {v: t for t, v in enumerate(order)}
        nbrs = [poset.lower_covers[v] + poset.upper_covers[v] for v in range(n)]
        last = [max((pos[u] for u in nbrs[v]), default=-1) for v in range(n)]
        live = []
        self.steps = []
        self.live_sets = []
        width = 0
        for t, v in enumerate(order):
            index = {u: i for i, u in enumerate(live)}
            lower = tuple(index[u] for u in poset.lower_covers[v] if pos[u] < t)
            upper = tuple(index[u] for u in poset.upper_covers[v] if pos[u] < t)
            becomes_live = last[v] > t
            keep = tuple(i for i, u in enumerate(live) if last[u] > t)
            self.steps.append(_Step(v, lower, upper, keep, len(keep) == len(live), becomes_live))
            live = [live[i] for i in keep] + ([v] if becomes_live else [])
            self.live_sets.append(tuple(live))
            width = max(width, len(live))
        self.width = width


def _frontier_count(plan: FrontierPlan, k: int, strict: bool) -> int:
    if plan.poset.n == 0:
        return 1
    if k <= 0:
        return 0
    off = 1 if strict else 0
    states = {(): 1}
    for step in plan.steps:
        nxt = {}
        get = nxt.get
        lower, upper, keep = step.lower_idx, step.upper_idx, step.keep_idx
        keep_all = step.keep_all
        for key, c in states.items():
            lo = 1
            for i in lower:
                if key[i] + off > lo:
                    lo = key[i] + off
            hi = k
            for i in upper:
                if key[i] - off < hi:
                    hi = key[i] - off
            if lo > hi:
                continue
            base = key if keep_all else tuple(key[i] for i in keep)
            if step.becomes_live:
                for x in range(lo, hi + 1):
                    nk = base + (x,)
                    nxt[nk] = get(nk, 0) + c
            else:
                nxt[base] = get(base, 0) + c * (hi - lo + 1)
        states = nxt
        if not states:
            return 0
    return sum(states.values())


def order_polynomial(P: Poset, k: int, order: Optional[Sequence[int]] = None) -> int:
    """Omega(P, k): maps ``P -> {1..k}`` with ``a < b`` implying ``f(a) <= f(b)``."""
    return _frontier_count(FrontierPlan(P, order), k, strict=False)


def strict_order_polynomial(P: Poset, m: int, order: Optional[Sequence[int]] = None) -> int:
    """Strict Omega(P, m): maps ``P -> {1..m}`` with ``a < b`` implying ``f(a) < f(b)``."""
    return _frontier_count(FrontierPlan(P, order), m, strict=True)


class IdealLattice:
    """Order ideals of ``P`` as bitmasks, with one-step chain transforms.

    ``Omega(P, k)`` counts multichains of ideals ``0 = I_0 <= ... <= I_k = P``
    and the strict count asks in addition that each difference ``I_j - I_{j-1}``
    be an antichain.  One step of either transform is a pass over the
    elements, touching each (ideal, maximal element) pair once, so the cost
    per dilation is ``O(#ideals * width)`` instead of a full state sweep.

    Raises :class:`ResourceLimit` when ``P`` has more than ``cap`` ideals.
    """

    def __init__(self, P: Poset, cap: Optional[int] = None):
        n = P.n
        above = [0] * n
        for v in range(n):
            for u in P.upper_covers[v]:
                above[v] |= 1 << u
        below = P.below
        index = {0: 0}
        ideals = [0]
        i = 0
        while i < len(ideals):
            I = ideals[i]
            i += 1
            for x in range(n):
                if not (I >> x) & 1 and below[x] & ~I == 0:
                    J = I | (1 << x)
                    if J not in index:
                        index[J] = len(ideals)
                        ideals.append(J)
                        if cap is not None and len(ideals) > cap:
                            raise ResourceLimit(f"more than {cap} order ideals")
        # (J, J - x) index pairs for x maximal in J
        removals = [[] for _ in range(n)]
        for J, a in index.items():
            for x in range(n):
                if (J >> x) & 1 and above[x] & J == 0:
                    removals[x].append((a, index[J ^ (1 << x)]))
        self.poset = P
        self.ideals = ideals
        self.removals = removals
        self.top = index[(1 << n) - 1]

    def __len__(self):
        return len(self.ideals)

    def _step(self, u: list, strict: bool) -> None:
        # in place: ascending labels sum over all convex tops (weak),
        # descending labels over antichains of maximal elements (strict)
        n = self.poset.n
        xs = range(n - 1, -1, -1) if strict else range(n)
        for x in xs:
            for a, b in self.removals[x]:
                u[a] += u[b]

    def counts(self, k: int, strict: bool = False) -> list:
        """``[count(1), ..., count(k)]`` for the weak or strict order polynomial."""
        u = [0] * len(self.ideals)
        u[0] = 1
        out = []
        for _ in range(k):
            self._step(u, strict)
            out.append(u[self.top])
        return out


class _CountSequence:
    """Lazily extended list of ``count(1), count(2), ...`` for one lattice."""

    def __init__(self, lattice: IdealLattice, strict: bool):
        self.lattice = lattice
        self.strict = strict
        self.u = [0] * len(lattice)
        self.u[0] = 1
        self.values = []

    def __call__(self, k: int) -> int:
        if k <= 0:
            return 1 if self.lattice.poset.n == 0 else 0
        while len(self.values) < k:
            self.lattice._step(self.u, self.strict)
            self.values.append(self.u[self.lattice.top])
        return self.values[k - 1]


IDEAL_CAP = 50_000


class OrderPolytopeEvaluator(PointEvaluator):
    """Point counts for dilates of ``O(P)``.

    ``method="frontier"`` runs the frontier DP for every count.
    ``method="ideals"`` walks the lattice of order ideals once and reads
    every dilation off successive transforms.  ``"auto"`` uses the ideal
    lattice when it has at most :data:`IDEAL_CAP` elements, else the
    frontier DP.
    """

    def __init__(
        self,
        P: Poset,
        order: Optional[Sequence[int]] = None,
        descriptor: dict | None = None,
        method: str = "auto",
    ):
        if method not in ("auto", "frontier", "ideals"):
            raise ValueError(f"unknown counting method {method!r}")
        self.poset = P
        self.dimension = P.n
        self.chain_length = P.longest_chain()
        self._descriptor = descriptor or {"family": "poset", "poset": P.to_dict()}
        lattice = None
        if method != "frontier":
            try:
                lattice = IdealLattice(P, cap=None if method == "ideals" else IDEAL_CAP)
            except ResourceLimit:
                log.debug("ideal lattice too large, using frontier DP")
        self.method = "ideals" if lattice is not None else "frontier"
        if lattice is not None:
            self._weak = _CountSequence(lattice, strict=False)
            self._strict = _CountSequence(lattice, strict=True)
        else:
            self.plan = FrontierPlan(P, order)
            self._weak = lambda k: _frontier_count(self.plan, k, strict=False)
            self._strict = lambda k: _frontier_count(self.plan, k, strict=True)

    def positive(self, t: int) -> int:
        return self._weak(t + 1)

    def interior(self, t: int) -> int:
        # strict maps into {1..t-1} need a value per element of a longest chain
        if t - 1 < self.chain_length:
            return 0
        return self._strict(t - 1)

    def describe(self) -> dict:
        return dict(self._descriptor)


def order_polytope_ehrhart(
    P: Poset, verify: bool = True, order=None, descriptor=None, method: str = "auto"
) -> EhrhartResult:
    """Ehrhart polynomial of the order polytope of ``P`` (degree ``P.n``)."""
    return compute_ehrhart(OrderPolytopeEvaluator(P, order, descriptor, method), verify=verify)


def order_polytope_hstar(P: Poset, verify: bool = True, method: str = "auto") -> HStarVector:
    res = order_polytope_ehrhart(P, verify=verify, method=method)
    return hstar_from_ehrhart(res.polynomial, P.n)


# --- linear extensions -----------------------------------------------------------


def iter_linear_extensions(P: Poset) -> Iterator[tuple]:
    """Linear extensions as label words, in lexicographic order."""
    n = P.n
    missing = [len(P.lower_covers[v]) for v in range(n)]
    word = []
    placed = [False] * n

    def rec():
        if len(word) == n:
            yield tuple(word)
            return
        for v in range(n):
            if not placed[v] and missing[v] == 0:
                placed[v] = True
                word.append(v)
                for u in P.upper_covers[v]:
                    missing[u] -= 1
                yield from rec()
                for u in P.upper_covers[v]:
                    missing[u] += 1
                word.pop()
                placed[v] = False

    return rec()


def hstar_via_linext(
    P: Poset,
    progress: Optional[Callable[[int], Optional[bool]]] = None,
    every: int = 100_000,
) -> HStarVector:
    """h*-vector of ``O(P)`` as the descent histogram of linear extensions.

    Streams the extensions with O(n) working memory.  ``progress`` is called
    with the running count every ``every`` extensions; returning ``False``
    stops the enumeration with :class:`Cancelled`.
    """
    n = P.n
    hist = [0] * (n + 1)
    missing = [len(P.lower_covers[v]) for v in range(n)]
    avail = [v for v in range(n) if missing[v] == 0]
    upper = P.upper_covers
    seen = 0

    def rec(depth, avail, prev, des):
        nonlocal seen
        if depth == n:
            hist[des] += 1
            seen += 1
            if progress is not None and seen % every == 0 and progress(seen) is False:
                raise Cancelled(f"stopped after {seen} linear extensions")
            return
        for idx, v in enumerate(avail):
            rest = avail[:idx] + avail[idx + 1:]
            for u in upper[v]:
                missing[u] -= 1
                if missing[u] == 0:
                    rest.append(u)
            rest.sort()
            rec(depth + 1, rest, v, des + (1 if prev > v else 0))
            for u in upper[v]:
                missing[u] += 1

    rec(0, avail, -1, 0)
    return HStarVector(hist)


def count_linear_extensions(P: Poset) -> int:
    """Number of linear extensions, by DP over order ideals."""
    n = P.n
    full = (1 << n) - 1
    below = P.below
    memo = {full: 1}

    def count(ideal):
        if ideal in memo:
            return memo[ideal]
        total = 0
        for v in range(n):
            if not (ideal >> v) & 1 and below[v] & ~ideal == 0:
                total += count(ideal | (1 << v))
        memo[ideal] = total
        return total

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10 * n + 100))
    try:
        return count(0)
    finally:
        sys.setrecursionlimit(old)


# --- permutation-poset search ------------------------------------------------------


@dataclass
class SearchHit:
    permutation: Permutation
    hstar: HStarVector
    flags: dict


def neighborhood_candidates(w0: Sequence[int], radius: int, avoid: Sequence[int]) -> list:
    """Permutations within ``radius`` transpositions of ``w0`` avoiding ``avoid``, sorted."""
    hood = transposition_neighborhood(Permutation(w0), radius)
    return sorted(w for w in hood if not contains_pattern(w, avoid))


def permutation_hstar(w: Sequence[int], method: str = "ehrhart") -> HStarVector:
    P = permutation_poset(w)
    if method == "linext":
        return hstar_via_linext(P)
    return order_polytope_hstar(P)


def _analyse(args):
    w, method = args
    h = permutation_hstar(w, method)
    poly = h.as_polynomial()
    real = is_real_rooted(poly)
    flags = {
        "real_rooted": real,
        "log_concave": is_log_concave(h),
        "ultra_log_concave": is_ultra_log_concave(h),
    }
    return w, h, flags


def search_nonrealrooted(
    w0: Sequence[int],
    radius: int,
    avoid: Sequence[int],
    jobs: int = 1,
    method: str = "ehrhart",
    candidates: Optional[Sequence[Permutation]] = None,
    on_hit: Optional[Callable[[SearchHit], None]] = None,
) -> list:
    """Non-real-rooted order-polytope h*-vectors near ``w0``.

    Visits every permutation within ``radius`` transpositions of ``w0`` that
    avoids ``avoid`` (lexicographic order), computes the h*-vector of its
    permutation poset and keeps those whose h*-polynomial has a non-real
    root.  ``on_hit`` is called as hits arrive, in candidate order.
    """
    if candidates is None:
        candidates = neighborhood_candidates(w0, radius, avoid)
    work = [(w, method) for w in candidates]
    hits = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_analyse, work, chunksize=64)
            for w, h, flags in results:
                if not flags["real_rooted"]:
                    hit = SearchHit(w, h, flags)
                    hits.append(hit)
                    if on_hit:
                        on_hit(hit)
    else:
        for item in work:
            w, h, flags = _analyse(item)
            if not flags["real_rooted"]:
                hit = SearchHit(w, h, flags)
                hits.append(hit)
                if on_hit:
                    on_hit(hit)
    hits.sort(key=lambda hit: tuple(hit.permutation))
    return hits
