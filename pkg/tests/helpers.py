"""Seeded random graphs, divisors and PL functions for property tests."""

import math
import random
from fractions import Fraction

from thetagraph.divisor import Divisor, PLFunction
from thetagraph.generators import banana, chain
from thetagraph.graph import MetricGraph


def random_graph(rng: random.Random, max_genus=3, denominator=1) -> MetricGraph:
    """A small connected multigraph, possibly with loops and bridges."""
    kind = rng.choice(["banana", "chain", "multi", "multi", "loopy"])
    unit = Fraction(1, denominator)
    length = lambda: unit * rng.randint(1, 3 * denominator)  # noqa: E731
    if kind == "banana":
        g = rng.randint(2, max(2, max_genus))
        return banana(g, lengths=[length() for _ in range(g + 1)])
    if kind == "chain":
        g = rng.randint(2, max(2, max_genus))
        return chain(g, lengths=[2 * length() for _ in range(g)])
    if kind == "loopy":
        return MetricGraph(["x", "y"], [("l1", "x", "x", length()), ("br", "x", "y", length()),
                                        ("l2", "y", "y", length())])
    n = rng.randint(2, 4)
    vs = [f"n{i}" for i in range(n)]
    edges = [(f"t{i}", vs[rng.randrange(i)], vs[i], length()) for i in range(1, n)]
    for k in range(rng.randint(1, max_genus)):
        a, b = rng.choice(vs), rng.choice(vs)
        edges.append((f"x{k}", a, b, length()))
    return MetricGraph(vs, edges)


def lattice_points(G: MetricGraph, delta: Fraction):
    """Every point of G at lattice spacing delta (lengths must be multiples)."""
    pts = [G.vertex_point(v) for v in G.vertices]
    for e in G.edges:
        n = int(e.length / delta)
        pts.extend(G.edge_point(e.id, k * delta) for k in range(1, n))
    return pts


def random_point(rng: random.Random, G: MetricGraph, delta=None):
    if delta is not None:
        return rng.choice(lattice_points(G, delta))
    if rng.random() < 0.4:
        return G.vertex_point(rng.choice(G.vertices))
    e = rng.choice(G.edges)
    return G.edge_point(e.id, e.length * Fraction(rng.randint(1, 7), 8))


def random_divisor(rng: random.Random, G: MetricGraph, degree=None, points=4, delta=None, lo=-2, hi=3):
    coeffs: dict = {}
    for _ in range(rng.randint(1, points)):
        p = random_point(rng, G, delta)
        coeffs[p] = coeffs.get(p, 0) + rng.randint(lo, hi)
    D = Divisor(G, coeffs)
    if degree is not None:
        D = D.plus_point(random_point(rng, G, delta), degree - D.degree)
    return D


def random_plfunction(rng: random.Random, G: MetricGraph) -> PLFunction:
    """Random vertex values; each edge gets one or two random kinks with
    integer slopes that join its end values."""
    values = {G.vertex_point(v): Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for v in G.vertices}
    for e in G.edges:
        L = e.length
        rise = values[G.vertex_point(e.ends[1])] - values[G.vertex_point(e.ends[0])]
        avg = rise / L
        s1 = math.floor(avg) + 1 + rng.randint(0, 2)
        s2 = math.ceil(avg) - 1 - rng.randint(0, 2)
        if rng.random() < 0.5:
            s1, s2 = s2, s1
        # s1 on [0, t], s2 on [t, L] with s1 t + s2 (L - t) = rise
        t = (rise - s2 * L) / (s1 - s2)
        values[G.edge_point(e.id, t)] = values[G.vertex_point(e.ends[0])] + s1 * t
    return PLFunction.from_values(G, values)
