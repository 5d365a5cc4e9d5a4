"""Adaptive reciprocity scheduling, h*-vectors and coefficient properties.

A :class:`PointEvaluator` exposes two counts for a polytope ``P`` of
dimension ``d``: lattice points of ``nP`` and interior lattice points of
``nP``.  By Ehrhart-Macdonald reciprocity ``L(-n) = (-1)^d * interior(n)``,
so both sides of the Ehrhart polynomial are reachable, and the scheduler
always asks for whichever side was cheaper last time.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import NonIntegralHStar, VerificationFailed
from .polynomial import EvaluationPoint, RationalPolynomial, is_real_rooted as _poly_real_rooted
from .polynomial import lagrange_interpolate

log = logging.getLogger(__name__)


class PointEvaluator:
    """Lattice-point oracle for the dilates of one polytope.

    Subclasses set ``dimension`` and implement :meth:`positive` and
    :meth:`interior` for ``n >= 1``.  ``positive(0) == 1`` is assumed and
    never queried.
    """

    dimension: int = 0

    def positive(self, n: int) -> int:
        raise NotImplementedError

    def interior(self, n: int) -> int:
        raise NotImplementedError

    def describe(self) -> dict:
        return {}


def adaptive_ehrhart(evaluator: PointEvaluator, schedule: str = "adaptive"):
    """Ehrhart polynomial from ``d + 1`` evaluations, cheapest side first.

    Starts from the free point ``(0, 1)``.  While fewer than ``d + 1``
    points are known, the negative side is taken when its last raw count
    does not exceed the positive side's (ties go negative), otherwise the
    positive side.  ``schedule="positive"`` / ``"negative"`` force one side;
    they exist for cross-checking.

    Returns ``(polynomial, points)`` where ``points`` lists the
    :class:`EvaluationPoint` values in the order they were obtained.
    """
    d = evaluator.dimension
    sign = -1 if d % 2 else 1
    points = [EvaluationPoint(0, 1)]
    p = q = 0
    cost_pos = cost_neg = 1
    while len(points) <= d:
        if schedule == "negative" or (schedule == "adaptive" and cost_neg <= cost_pos):
            q += 1
            v = evaluator.interior(q)
            points.append(EvaluationPoint(-q, sign * v))
            cost_neg = v
        else:
            p += 1
            v = evaluator.positive(p)
            points.append(EvaluationPoint(p, v))
            cost_pos = v
        log.debug("point %s = %s", points[-1].x, points[-1].value)
    return lagrange_interpolate(points), points


def verify_polynomial(
    poly: RationalPolynomial,
    evaluator: PointEvaluator,
    points: Sequence[EvaluationPoint] = (),
    raise_on_failure: bool = False,
) -> bool:
    """Cross-check an interpolated polynomial at points it was not built from.

    Compares against ``evaluator`` at the next unused positive and negative
    dilation, and checks that ``poly`` is integer-valued on
    ``[-(d+2), d+2]``.  With ``raise_on_failure`` a mismatch raises
    :class:`VerificationFailed` instead of returning False.
    """
    d = evaluator.dimension
    sign = -1 if d % 2 else 1
    used = {pt.x for pt in points}
    p = max([x for x in used if x > 0], default=0) + 1
    q = max([-x for x in used if x < 0], default=0) + 1
    checks = [
        (p, lambda: evaluator.positive(p)),
        (-q, lambda: sign * evaluator.interior(q)),
    ]
    try:
        for x, count in checks:
            expected = count()
            actual = poly(x)
            if actual != expected:
                raise VerificationFailed(x, expected, actual)
        for x in range(-(d + 2), d + 3):
            v = poly(x)
            if v.denominator != 1:
                raise VerificationFailed(x, "an integer", v, "not integer-valued")
    except VerificationFailed:
        if raise_on_failure:
            raise
        return False
    return True


@dataclass
class EhrhartResult:
    dimension: int
    polynomial: RationalPolynomial
    points: list
    verified: bool | None = None
    descriptor: dict = field(default_factory=dict)

    def hstar(self) -> "HStarVector":
        return hstar_from_ehrhart(self.polynomial, self.dimension)


def compute_ehrhart(evaluator: PointEvaluator, verify: bool = True, schedule: str = "adaptive") -> EhrhartResult:
    """Run the scheduler and (by default) the verification step.

    Verification failure raises :class:`VerificationFailed`.
    """
    poly, points = adaptive_ehrhart(evaluator, schedule=schedule)
    verified = None
    if verify:
        verified = verify_polynomial(poly, evaluator, points, raise_on_failure=True)
    return EhrhartResult(evaluator.dimension, poly, points, verified, evaluator.describe())


# --- h*-vectors --------------------------------------------------------------


class HStarVector(tuple):
    """h*-coefficients ``h_0..h_d`` (length ``d + 1``, trailing zeros kept)."""

    def __new__(cls, entries: Iterable[int]):
        return tuple.__new__(cls, (int(e) for e in entries))

    @property
    def effective_degree(self) -> int:
        """Largest ``i`` with ``h_i != 0`` (``-1`` if all vanish)."""
        for i in range(len(self) - 1, -1, -1):
            if self[i]:
                return i
        return -1

    def trimmed(self) -> tuple:
        return tuple(self[: self.effective_degree + 1])

    def as_polynomial(self) -> RationalPolynomial:
        return RationalPolynomial(self)

    def flags(self) -> dict:
        nonzero = self.effective_degree >= 0
        return {
            "hstar_nonnegative": all(h >= 0 for h in self),
            "palindromic": is_palindromic(self),
            "log_concave": is_log_concave(self),
            "ultra_log_concave": is_ultra_log_concave(self),
            "real_rooted": is_real_rooted(self.as_polynomial()) if nonzero else None,
        }

    def __repr__(self):
        return f"HStarVector{tuple(self)!r}"


def hstar_from_ehrhart(poly: RationalPolynomial, dimension: int | None = None) -> HStarVector:
    """h*-vector of a polytope from its Ehrhart polynomial.

    ``h_j = sum_{i<=j} (-1)^i C(d+1, i) L(j - i)``: the numerator of the
    Ehrhart series over ``(1 - z)^(d+1)``.  ``dimension`` defaults to the
    degree of ``poly``.
    """
    d = poly.degree if dimension is None else dimension
    if d < 0:
        raise NonIntegralHStar("zero polynomial is not an Ehrhart polynomial")
    values = [poly(m) for m in range(d + 1)]
    out = []
    for j in range(d + 1):
        h = sum((-1) ** i * comb(d + 1, i) * values[j - i] for i in range(j + 1))
        if h.denominator != 1:
            raise NonIntegralHStar(f"h*_{j} = {h} is not an integer")
        out.append(h.numerator)
    return HStarVector(out)


def ehrhart_from_hstar(h: Sequence[int], terms: int) -> list:
    """``L(0..terms-1)`` from the series ``h(z) / (1 - z)^(len(h))``."""
    d = len(h) - 1
    # coefficient of z^n in (1-z)^-(d+1) is C(n+d, d)
    return [sum(h[i] * comb(n - i + d, d) for i in range(min(n, d) + 1)) for n in range(terms)]


# --- properties --------------------------------------------------------------


def _coefficients(obj) -> tuple:
    if isinstance(obj, RationalPolynomial):
        return obj.coeffs
    return tuple(obj)


def is_nonnegative_coeffs(poly) -> bool:
    return all(c >= 0 for c in _coefficients(poly))


def is_palindromic(h) -> bool:
    """``h_i == h_{s-i}`` where ``s`` is the index of the last nonzero entry."""
    h = _coefficients(h)
    s = max((i for i, c in enumerate(h) if c), default=-1)
    return all(h[i] == h[s - i] for i in range(s + 1))


def _support_ok(h) -> tuple:
    nz = [i for i, c in enumerate(h) if c]
    if not nz:
        return True, 0, 0
    first, last = nz[0], nz[-1]
    return all(h[i] for i in range(first, last + 1)), first, last


def is_log_concave(h) -> bool:
    """``h_i^2 >= h_{i-1} h_{i+1}`` with no internal zeros."""
    h = _coefficients(h)
    contiguous, _, s = _support_ok(h)
    if not contiguous:
        return False
    return all(h[i] * h[i] >= h[i - 1] * h[i + 1] for i in range(1, s))


def is_ultra_log_concave(h) -> bool:
    """Log-concavity of ``h_i / C(s, i)``, compared exactly."""
    h = _coefficients(h)
    contiguous, _, s = _support_ok(h)
    if not contiguous:
        return False
    a = [Fraction(h[i]) / comb(s, i) for i in range(s + 1)]
    return all(a[i] * a[i] >= a[i - 1] * a[i + 1] for i in range(1, s))


def is_real_rooted(poly) -> bool:
    """Exact real-rootedness of a polynomial or coefficient sequence."""
    if not isinstance(poly, RationalPolynomial):
        poly = RationalPolynomial(poly)
    return _poly_real_rooted(poly)


def polynomial_flags(poly: RationalPolynomial, h: HStarVector) -> dict:
    flags = {"ehrhart_nonnegative": is_nonnegative_coeffs(poly)}
    flags.update(h.flags())
    return flags
