from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kostka.combinatorics import SkewShape, partitions
from kostka.errors import EmptyPolytope, SizeMismatch
from kostka.gt import (
    GTChainSpec,
    forced_equality_mask,
    gt_dimension,
    gt_ehrhart,
    kostka,
    kostka_dilated,
    pattern_constraints,
    scale_spec,
    strict_kostka,
)
from kostka.oracles import enumerate_ssyt, enumerate_strict_patterns


def hook_length_count(lam):
    n = sum(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(n) // prod


@pytest.mark.parametrize(
    "lam, w, mu, expected",
    [
        ((2, 1), (1, 1, 1), (), 2),
        ((2, 2), (2, 2), (), 1),
        ((1,), (), (1,), 1),
        ((3, 2, 1), (1,) * 6, (), 16),
        ((4, 3, 2, 1), (1,) * 10, (), 768),
        ((3, 1), (2, 2), (), 1),
        ((2, 1), (3,), (), 0),
    ],
)
def test_kostka_fixtures(lam, w, mu, expected):
    assert kostka(GTChainSpec.of(lam, w, mu)) == expected


def test_unbalanced_weight_gives_zero():
    assert kostka(GTChainSpec.of((2, 1), (1, 1))) == 0


def test_zero_weights_are_stripped():
    assert GTChainSpec.of((2, 1), (1, 0, 2)).weight == (1, 2)


@given(st.integers(1, 7).flatmap(lambda n: st.sampled_from(list(partitions(n)))))
@settings(max_examples=40, deadline=None)
def test_standard_tableaux_match_hook_length(lam):
    assert kostka(GTChainSpec.of(lam, (1,) * sum(lam))) == hook_length_count(lam)


@given(
    st.integers(2, 6).flatmap(lambda n: st.tuples(st.sampled_from(list(partitions(n))), st.permutations([1] * (n // 2) + [2] * 0 + list(range(1, n - n // 2 + 1)))))
)
@settings(max_examples=30, deadline=None)
def test_kostka_is_symmetric_in_weight_order(args):
    lam, w = args
    if sum(w) != sum(lam):
        return
    base = kostka(GTChainSpec.of(lam, w))
    assert kostka(GTChainSpec.of(lam, tuple(reversed(w)))) == base
    assert kostka(GTChainSpec.of(lam, sorted(w))) == base


@pytest.mark.parametrize(
    "lam, w, mu",
    [((3, 2), (2, 2, 1), ()), ((4, 3, 1), (2, 2, 1), (2, 1)), ((3, 3), (1,) * 6, ()), ((3, 2, 2), (2, 1, 2, 2), ())],
)
def test_kostka_agrees_with_oracle(lam, w, mu):
    spec = GTChainSpec.of(lam, w, mu)
    assert kostka(spec) == enumerate_ssyt(SkewShape.of(lam, mu), w)


@pytest.mark.parametrize(
    "lam, w, d",
    [
        ((2, 1), (1, 1, 1), 1),
        ((3, 2, 1), (1,) * 6, 7),
        ((3, 3, 3), (1,) * 9, 10),
        ((4, 3, 2), (1,) * 9, 13),
        ((4, 3, 2, 1), (1,) * 10, 21),
        ((2, 2), (2, 2), 0),
        ((3,), (1, 1, 1), 0),
    ],
)
def test_dimension(lam, w, d):
    assert gt_dimension(GTChainSpec.of(lam, w))[0] == d


def test_dimension_errors():
    with pytest.raises(SizeMismatch):
        gt_dimension(GTChainSpec.of((2, 1), (1, 1)))
    with pytest.raises(EmptyPolytope):
        gt_dimension(GTChainSpec.of((1, 1), (2,)))


def test_mask_marks_pinned_zeros():
    spec = GTChainSpec.of((2, 1), (1, 1, 1))
    mask = forced_equality_mask(spec)
    # first row is (1, 0): a[1][1] is pinned to 0 along with the boundary
    assert mask.forced_value(1, 0) == 1
    assert mask.forced_value(1, 1) == 0
    assert mask.lower_tight(1, 1)
    assert mask.free_entries() == [(2, 0), (2, 1)]
    tight = [c for c in pattern_constraints(spec, mask) if c[3]]
    assert (1, 1, "lower", True) in tight


def test_scale_spec():
    spec = GTChainSpec.of((2, 1), (1, 1, 1), ())
    s3 = scale_spec(spec, 3)
    assert s3.lam == (6, 3) and s3.weight == (3, 3, 3)
    with pytest.raises(ValueError):
        scale_spec(spec, 0)


@pytest.mark.parametrize(
    "lam, w, mu", [((2, 1), (1, 1, 1), ()), ((3, 2, 1), (2, 2, 2), ()), ((3, 2), (1,) * 5, ()), ((4, 3, 1), (2, 2, 1), (2, 1))]
)
def test_strict_kostka_agrees_with_oracle(lam, w, mu):
    spec = GTChainSpec.of(lam, w, mu)
    _, mask = gt_dimension(spec)
    for n in range(1, 4):
        assert strict_kostka(spec, mask, n) == enumerate_strict_patterns(spec, mask, n)


def test_dilated_kostka_matches_scaled_spec():
    spec = GTChainSpec.of((3, 1), (1, 1, 1, 1))
    for n in range(1, 4):
        assert kostka_dilated(spec, n) == kostka(scale_spec(spec, n))


def test_strict_pattern_exists_at_dilation_7():
    # an interior lattice point of 7 * GT((4,3,2,1), 1^10): every
    # inequality not forced tight holds strictly
    rows = [
        (0, 0, 0, 0), (7, 0, 0, 0), (8, 6, 0, 0), (9, 7, 5, 0), (13, 8, 6, 1), (14, 12, 7, 2),
        (16, 13, 10, 3), (19, 15, 11, 4), (21, 18, 12, 5), (24, 20, 13, 6), (28, 21, 14, 7),
    ]
    spec = GTChainSpec.of((4, 3, 2, 1), (1,) * 10)
    _, mask = gt_dimension(spec)
    for i in range(1, 11):
        assert sum(rows[i]) == 7 * i
        for j in range(4):
            lo = rows[i - 1][j]
            assert rows[i][j] == lo if mask.lower[i][j] else rows[i][j] > lo
            if j:
                hi = rows[i - 1][j - 1]
                assert rows[i][j] == hi if mask.upper[i][j] else rows[i][j] < hi
    assert strict_kostka(spec, mask, 7) > 0
    assert all(strict_kostka(spec, mask, n) == 0 for n in range(1, 7))


@pytest.mark.parametrize(
    "lam, w, mu", [((2, 1), (1, 1, 1), ()), ((3, 2, 1), (1,) * 6, ()), ((4, 3, 1), (2, 2, 1), (2, 1)), ((3, 3), (2, 2, 2), ())]
)
def test_ehrhart_reproduces_counts(lam, w, mu):
    spec = GTChainSpec.of(lam, w, mu)
    res = gt_ehrhart(spec)
    assert res.verified
    assert res.polynomial.degree == res.dimension
    assert res.polynomial(0) == 1
    for n in range(1, 5):
        assert res.polynomial(n) == kostka_dilated(spec, n)
    _, mask = gt_dimension(spec)
    sign = (-1) ** res.dimension
    for n in range(1, 5):
        assert sign * res.polynomial(-n) == strict_kostka(spec, mask, n)


def test_schedules_agree():
    spec = GTChainSpec.of((3, 2, 1), (2, 2, 1, 1))
    polys = {gt_ehrhart(spec, schedule=s).polynomial for s in ("adaptive", "positive", "negative")}
    assert len(polys) == 1


def test_point_polytope():
    res = gt_ehrhart(GTChainSpec.of((3, 1), (3, 1)))
    assert res.dimension == 0
    assert res.polynomial == 1
