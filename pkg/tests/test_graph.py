from fractions import Fraction

import pytest

from conftest import make_b3, make_k4
from thetagraph.errors import GraphFormatError, PointNotOnGraphError
from thetagraph.graph import (
    MetricGraph,
    bridges,
    canonical_divisor,
    contract_bridges,
    distance,
    genus,
    parse_rational,
    smooth,
    subdivide,
    valence,
)


def test_genus_examples():
    assert genus(make_b3()) == 2
    assert genus(MetricGraph(["a", "b"], [("s", "a", "b", 1)])) == 0
    assert genus(make_k4()) == 3


def test_valence_examples(b3):
    assert valence(b3, b3.vertex_point("u")) == 3
    assert valence(b3, b3.midpoint("e1")) == 2
    loop = MetricGraph(["o"], [("c", "o", "o", 1)])
    assert valence(loop, loop.vertex_point("o")) == 2
    assert len(b3.tangent_directions(b3.vertex_point("u"))) == 3


def test_canonical_examples(b3, k4):
    K = canonical_divisor(b3)
    assert dict(K.items()) == {b3.vertex_point("u"): 1, b3.vertex_point("v"): 1}
    assert dict(canonical_divisor(k4).items()) == {k4.vertex_point(v): 1 for v in "abcd"}
    circle = MetricGraph(["o"], [("c", "o", "o", 5)])
    assert canonical_divisor(circle).degree == 0 and len(canonical_divisor(circle)) == 0


def test_canonical_degree_is_2g_minus_2(k4, dumbbell):
    for G in (k4, dumbbell, make_b3(1, 2, 3)):
        assert canonical_divisor(G).degree == 2 * G.genus - 2


def test_subdivide_examples(b3):
    H, ref = subdivide(b3, [b3.midpoint("e1")])
    assert (len(H.vertices), len(H.edges), H.genus) == (3, 4, 2)
    same, _ = subdivide(b3, [])
    assert same == b3
    seg = MetricGraph(["a", "b"], [("s", "a", "b", 1)])
    S, _ = subdivide(seg, [seg.edge_point("s", Fraction(1, 3))])
    assert sorted(e.length for e in S.edges) == [Fraction(1, 3), Fraction(2, 3)]


def test_refinement_round_trip(b3):
    p = b3.edge_point("e2", Fraction(3, 2))
    H, ref = subdivide(b3, [b3.midpoint("e2")])
    q = ref.to_fine(p)
    assert ref.to_coarse(q) == p
    assert valence(H, ref.to_fine(b3.midpoint("e2"))) == 2


def test_smooth_undoes_subdivision(b3):
    H, _ = subdivide(b3, [b3.midpoint("e1"), b3.edge_point("e3", 1)])
    S, ref = smooth(H)
    assert len(S.vertices) == 2 and len(S.edges) == 3 and S.genus == 2
    assert sorted(e.length for e in S.edges) == [2, 2, 2]


def test_bridges_examples(b3, dumbbell):
    assert bridges(b3) == []
    assert bridges(dumbbell) == ["br"]
    H, c = contract_bridges(dumbbell)
    assert len(H.vertices) == 1 and len(H.edges) == 2 and H.genus == 2
    tree = MetricGraph(["a", "b", "c"], [("ab", "a", "b", 1), ("bc", "b", "c", 2)])
    assert bridges(tree) == ["ab", "bc"]
    T, _ = contract_bridges(tree)
    assert len(T.vertices) == 1 and len(T.edges) == 0


def test_point_normalization(b3):
    assert b3.edge_point("e1", 0) == b3.vertex_point("u")
    assert b3.edge_point("e1", 2) == b3.vertex_point("v")
    with pytest.raises(PointNotOnGraphError):
        b3.edge_point("e1", 3)
    with pytest.raises(PointNotOnGraphError):
        b3.vertex_point("zz")


def test_distance(b3):
    assert distance(b3, b3.midpoint("e1"), b3.midpoint("e2")) == 2
    G = make_b3(1, 2, 3)
    assert distance(G, G.edge_point("e3", Fraction(5, 2)), G.vertex_point("u")) == Fraction(3, 2)


@pytest.mark.parametrize("bad", [1.5, "0.5", "x", "1/0"])
def test_rejects_inexact_rationals(bad):
    with pytest.raises(GraphFormatError):
        parse_rational(bad)


def test_rational_parsing_is_canonical():
    assert parse_rational("6/4") == Fraction(3, 2)
    assert parse_rational(3) == 3


@pytest.mark.parametrize(
    "vertices, edges",
    [
        (["a", "b"], [("e", "a", "b", 0)]),
        (["a", "b"], [("e", "a", "b", -1)]),
        (["a", "b", "c"], [("e", "a", "b", 1)]),
        (["a"], [("e", "a", "z", 1)]),
        (["a", "a"], []),
    ],
)
def test_invalid_graphs(vertices, edges):
    with pytest.raises(GraphFormatError):
        MetricGraph(vertices, edges)
