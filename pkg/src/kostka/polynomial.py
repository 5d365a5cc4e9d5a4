"""Exact univariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`, lowest degree first.  Nothing
on a decision path uses floating point; :func:`approximate_roots` exists for
human-readable diagnostics only.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, lcm
from typing import Iterable, NamedTuple, Sequence

from .errors import DuplicateAbscissa, ZeroPolynomial


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c.strip())
    return Fraction(c)


class RationalPolynomial:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("coeffs", "_scaled")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self._scaled = None

    @classmethod
    def constant(cls, c) -> "RationalPolynomial":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "RationalPolynomial":
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "RationalPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-_as_fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        if isinstance(x, int):
            # integer Horner over a common denominator
            if self._scaled is None:
                den = 1
                for c in self.coeffs:
                    den = lcm(den, c.denominator)
                self._scaled = ([c.numerator * (den // c.denominator) for c in self.coeffs], den)
            nums, den = self._scaled
            acc = 0
            for c in reversed(nums):
                acc = acc * x + c
            return Fraction(acc, den)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RationalPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return self.to_text()

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            quot[k - dq] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return RationalPolynomial(quot), RationalPolynomial(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "RationalPolynomial":
        if self.is_zero():
            return self
        lead = self.leading()
        return RationalPolynomial(c / lead for c in self.coeffs)

    def compose_affine(self, a, b) -> "RationalPolynomial":
        """Return ``x -> self(a*x + b)`` as an exact polynomial."""
        inner = RationalPolynomial([b, a])
        acc = RationalPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def is_integer_valued_on(self, xs: Iterable[int]) -> bool:
        return all(self(x).denominator == 1 for x in xs)

    def to_strings(self) -> list:
        """Coefficients as ``"p/q"`` (or ``"p"``) strings, lowest degree first."""
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "RationalPolynomial":
        return cls(Fraction(s) for s in items)

    def to_text(self, var: str = "n") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c) if c.denominator == 1 else f"({c})"
            if i == 0:
                terms.append(cs)
            elif i == 1:
                terms.append(f"{cs}*{var}")
            else:
                terms.append(f"{cs}*{var}^{i}")
        return " + ".join(terms)


def _coerce(x) -> RationalPolynomial:
    if isinstance(x, RationalPolynomial):
        return x
    return RationalPolynomial([x])


def poly_gcd(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class EvaluationPoint(NamedTuple):
    x: int
    value: int


def lagrange_interpolate(points: Iterable) -> RationalPolynomial:
    """Unique polynomial of degree < len(points) through ``points``.

    Points are ``(x, value)`` pairs with pairwise distinct ``x``.  Built
    in Newton form with exact divided differences, then expanded.
    """
    pts = [(Fraction(x), _as_fraction(v)) for x, v in points]
    if not pts:
        raise ValueError("need at least one point")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        seen = set()
        dup = next(x for x in xs if x in seen or seen.add(x))
        raise DuplicateAbscissa(f"abscissa {dup} appears more than once")
    table = [v for _, v in pts]
    m = len(pts)
    for level in range(1, m):
        for i in range(m - 1, level - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - level])
    # Horner on the Newton basis: coeffs <- coeffs * (x - xs[i]) + table[i]
    coeffs = [table[-1]]
    for i in range(m - 2, -1, -1):
        shift = xs[i]
        coeffs.append(coeffs[-1])
        for j in range(len(coeffs) - 2, 0, -1):
            coeffs[j] = coeffs[j - 1] - shift * coeffs[j]
        coeffs[0] = table[i] - shift * coeffs[0]
    return RationalPolynomial(coeffs)


def binomial_poly(top_shift: int, k: int) -> RationalPolynomial:
    """The polynomial ``n -> C(n + top_shift, k)``."""
    p = RationalPolynomial([1])
    for i in range(k):
        p = p * RationalPolynomial([top_shift - i, 1])
    return p * Fraction(1, factorial(k))


# --- real roots -------------------------------------------------------------


def squarefree_part(p: RationalPolynomial) -> RationalPolynomial:
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no squarefree part")
    if p.degree <= 0:
        return p.monic()
    return (p // poly_gcd(p, p.derivative())).monic()


def sturm_sequence(p: RationalPolynomial) -> list:
    """Sturm chain of ``p``, each member rescaled by a positive constant."""
    if p.is_zero():
        raise ZeroPolynomial("Sturm sequence of the zero polynomial")
    seq = [_positive_normalize(p)]
    if p.degree == 0:
        return seq
    seq.append(_positive_normalize(p.derivative()))
    while True:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(_positive_normalize(r))
    return seq


def _positive_normalize(p: RationalPolynomial) -> RationalPolynomial:
    lead = abs(p.leading())
    return RationalPolynomial(c / lead for c in p.coeffs)


def _sign_changes(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def count_real_roots(p: RationalPolynomial) -> int:
    """Number of distinct real roots of ``p`` (Sturm's theorem)."""
    seq = sturm_sequence(p)
    at_neg = [_sign(q.leading()) * (-1) ** (q.degree % 2) for q in seq]
    at_pos = [_sign(q.leading()) for q in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def count_real_roots_in(p: RationalPolynomial, a, b) -> int:
    """Distinct real roots in the half-open interval ``(a, b]``."""
    seq = sturm_sequence(p)
    return _sign_changes(_sign(q(a)) for q in seq) - _sign_changes(_sign(q(b)) for q in seq)


def is_real_rooted(p: RationalPolynomial) -> bool:
    """True iff every complex root of ``p`` is real.

    Decided exactly: the distinct real roots of the squarefree part are
    counted with a Sturm chain and compared with its degree.
    """
    if p.is_zero():
        raise ZeroPolynomial("real-rootedness of the zero polynomial")
    sf = squarefree_part(p)
    return count_real_roots(sf) == sf.degree


def approximate_roots(p: RationalPolynomial) -> list:
    """Floating-point roots, for display only."""
    import numpy as np

    if p.degree < 1:
        return []
    return list(np.roots([float(c) for c in reversed(p.coeffs)]))


def binomial(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0
