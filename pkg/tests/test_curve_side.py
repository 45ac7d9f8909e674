from collections import Counter
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetagraph.curve_side import (
    CurveTheta,
    canonicalize,
    enumerate_curve_theta,
    fiber_size,
    pairing,
    parity,
    specialization_table,
    specialize,
)
from thetagraph.theta import ThetaChar


def test_genus2_census():
    ts = enumerate_curve_theta(2)
    assert len(ts) == 16
    assert sum(1 for t in ts if t.m == -1) == comb(6, 3) // 2 == 10
    assert sum(1 for t in ts if t.m == 0) == 6


@pytest.mark.parametrize("g", range(2, 7))
def test_census_sizes(g):
    ts = enumerate_curve_theta(g)
    assert len(ts) == 4**g == len(set(ts))
    assert sum(1 for t in ts if parity(t) == "odd") == 2 ** (g - 1) * (2**g - 1)
    assert all(canonicalize(t) == t for t in ts)


def test_parity():
    assert parity(CurveTheta(2, -1, (1, 3, 5))) == "even"
    assert parity(CurveTheta(2, 0, (3,))) == "odd"
    assert parity(CurveTheta(3, 1, ())) == "even"


def test_canonicalize():
    assert canonicalize(CurveTheta(2, -1, (2, 4, 6))) == CurveTheta(2, -1, (1, 3, 5))
    t = CurveTheta(2, 0, (3,))
    assert canonicalize(t) == t
    for t in enumerate_curve_theta(3):
        assert canonicalize(canonicalize(t)) == canonicalize(t)


def test_specialize_examples():
    assert specialize(CurveTheta(2, 0, (1,))) == ThetaChar(2, 0, (1,))
    assert specialize(CurveTheta(2, -1, (1, 3, 5))) == ThetaChar(2, -1, (1, 2, 3))
    assert specialize(CurveTheta(2, -1, (1, 2, 3))) == ThetaChar(2, 0, (2,))


def test_pairing_covers_each_index_once():
    g = 4
    flat = [k for pair in pairing(g).values() for k in pair]
    assert sorted(flat) == list(range(1, 2 * g + 3))


def _half_subsets(g):
    return st.tuples(st.just(g), st.sets(st.integers(1, 2 * g + 2), min_size=g + 1, max_size=g + 1))


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 7).flatmap(_half_subsets))
def test_complements_specialize_alike(data):
    g, S = data
    full = set(range(1, 2 * g + 3))
    a = CurveTheta(g, -1, tuple(S))
    b = CurveTheta(g, -1, tuple(full - S))
    assert specialize(a) == specialize(b) == specialize(canonicalize(a))


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 6), st.data())
def test_relabeling_within_pairs(g, data):
    # swapping the two curve points over the same graph point changes nothing
    t = data.draw(st.sampled_from(enumerate_curve_theta(g)))
    i = data.draw(st.integers(1, g + 1))
    swap = {2 * i - 1: 2 * i, 2 * i: 2 * i - 1}
    s = CurveTheta(g, t.m, tuple(swap.get(k, k) for k in t.S))
    assert specialize(s) == specialize(t)
    assert parity(s) == parity(t)


@pytest.mark.parametrize("g", range(2, 7))
def test_specialize_preserves_invariants(g):
    for t in enumerate_curve_theta(g):
        s = specialize(t)
        pairs = sum(1 for i in range(1, g + 2) if 2 * i - 1 in t.S and 2 * i in t.S)
        assert s.m == t.m + pairs
        assert len(s.S) == g - 1 - 2 * s.m


def test_specialization_table_g2():
    table = specialization_table(2)
    assert table[ThetaChar(2, -1, (1, 2, 3))] == (4, 0)
    assert [table[ThetaChar(2, 0, (i,))] for i in (1, 2, 3)] == [(2, 2)] * 3
    assert sum(e + o for e, o in table.values()) == 16


def test_specialization_table_g3():
    table = specialization_table(3)
    assert Counter(table.values()) == Counter({(8, 0): 1, (4, 4): 7})


@pytest.mark.parametrize("g", range(2, 9))
def test_fiber_sizes(g):
    for m in range(0, (g - 1) // 2 + 1):
        assert fiber_size(g, m) == 2**g


@pytest.mark.parametrize("g, m, S", [(2, -1, (1, 2)), (2, 0, (7,)), (2, 1, ()), (1, 0, ())])
def test_invalid_curve_symbols(g, m, S):
    with pytest.raises(ValueError):
        CurveTheta(g, m, S)
