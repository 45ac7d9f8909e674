"""Reduced divisors, linear equivalence and rank.

Reduction uses Dhar's burning algorithm on a working model whose vertices
are the model vertices, the support of the current divisor and the base
point. When fire leaves a set ``U`` unburnt, ``U`` is fired by the largest
step that keeps the model valid: every boundary chip slides the length of
the shortest boundary segment, so at least one chip reaches a burnt node.
Chips may land strictly inside segments; the next round refines the model
around them, so the process stays exact on rational data.
"""

from __future__ import annotations

import logging
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .divisor import Divisor
from .graph import GraphPoint, MetricGraph

log = logging.getLogger(__name__)


class _WorkingModel:
    """Segments of ``G`` cut at the given interior points."""

    def __init__(self, G: MetricGraph, points):
        cuts: dict[str, set[Fraction]] = {}
        for p in points:
            if p.vertex is None:
                cuts.setdefault(p.edge, set()).add(p.offset)
        self.nodes: list[GraphPoint] = [G.vertex_point(v) for v in G.vertices]
        self.adj: dict[GraphPoint, list[tuple[int, int]]] = {n: [] for n in self.nodes}
        # (edge id, start pos, end pos, start node, end node)
        self.segments: list[tuple[str, Fraction, Fraction, GraphPoint, GraphPoint]] = []
        for e in G.edges:
            offs = sorted(cuts.get(e.id, ()))
            chain = [G.vertex_point(e.ends[0])]
            for t in offs:
                node = GraphPoint(edge=e.id, offset=t)
                self.nodes.append(node)
                self.adj[node] = []
                chain.append(node)
            chain.append(G.vertex_point(e.ends[1]))
            pos = [Fraction(0), *offs, e.length]
            for k in range(len(chain) - 1):
                idx = len(self.segments)
                self.segments.append((e.id, pos[k], pos[k + 1], chain[k], chain[k + 1]))
                self.adj[chain[k]].append((idx, 0))
                self.adj[chain[k + 1]].append((idx, 1))

    def burn(self, chips: Counter, q: GraphPoint) -> set[GraphPoint]:
        burnt = {q}
        queue = [q]
        fires: Counter = Counter()
        while queue:
            x = queue.pop()
            for idx, side in self.adj[x]:
                seg = self.segments[idx]
                other = seg[4] if side == 0 else seg[3]
                if other in burnt:
                    continue
                fires[other] += 1
                if fires[other] > chips.get(other, 0):
                    burnt.add(other)
                    queue.append(other)
        return burnt


def _dhar(G: MetricGraph, chips: Counter, q: GraphPoint) -> Counter:
    """q-reduce a chip configuration that is non-negative away from ``q``."""
    chips = Counter({p: c for p, c in chips.items() if c})
    rounds = 0
    while True:
        model = _WorkingModel(G, [*chips, q])
        burnt = model.burn(chips, q)
        if len(burnt) == len(model.nodes):
            log.debug("reduced after %d firing rounds", rounds)
            return chips
        boundary = []
        for eid, a, b, na, nb in model.segments:
            if (na in burnt) != (nb in burnt):
                boundary.append((eid, a, b, na in burnt))
        step = min(b - a for _, a, b, _ in boundary)
        rounds += 1
        log.debug(
            "round %d: %d unburnt nodes fire %d chips by %s",
            rounds, len(model.nodes) - len(burnt), len(boundary), step,
        )
        for eid, a, b, start_burnt in boundary:
            if start_burnt:
                src, land = b, b - step
            else:
                src, land = a, a + step
            chips[G.edge_point(eid, src)] -= 1
            chips[G.edge_point(eid, land)] += 1
        chips = Counter({p: c for p, c in chips.items() if c})


@lru_cache(maxsize=None)
def _borrow(G: MetricGraph, p: GraphPoint, q: GraphPoint) -> Counter:
    """An effective divisor equivalent to ``(g+1)(q) - (p)``.

    Degree ``g`` classes are always effective (Riemann-Roch), so the
    p-reduced representative is effective; it is computed by burning from p.
    """
    chips = Counter({q: G.genus + 1})
    chips[p] -= 1
    out = _dhar(G, chips, p)
    if out.get(p, 0) < 0:
        raise AssertionError(f"degree-{G.genus} class failed to be effective")
    return out


@lru_cache(maxsize=200_000)
def _reduce(D: Divisor, q: GraphPoint) -> Divisor:
    G = D.graph
    chips = Counter(dict(D.items()))
    for p, c in D.items():
        if c < 0 and p != q:
            chips[p] -= c
            for x, k in _borrow(G, p, q).items():
                chips[x] += -c * k
            chips[q] -= -c * (G.genus + 1)
    R = Divisor(G, _dhar(G, chips, q))
    if R.degree != D.degree:
        raise AssertionError(f"reduction changed the degree of {D}")
    return R


def reduce(D: Divisor, q: GraphPoint) -> Divisor:
    """The unique q-reduced divisor linearly equivalent to ``D``."""
    return _reduce(D, D.graph.normalize(q))


def is_reduced(D: Divisor, q: GraphPoint) -> bool:
    """Direct burning check: effective off ``q`` and fire from ``q`` burns everything."""
    q = D.graph.normalize(q)
    if not D.is_effective_away_from(q):
        return False
    model = _WorkingModel(D.graph, [*D.support, q])
    return len(model.burn(Counter(dict(D.items())), q)) == len(model.nodes)


def base_point(G: MetricGraph) -> GraphPoint:
    return G.vertex_point(G.vertices[0])


def is_equivalent(D1: Divisor, D2: Divisor) -> bool:
    if D1.graph != D2.graph:
        raise ValueError("divisors live on different graphs")
    if D1.degree != D2.degree:
        return False
    q = base_point(D1.graph)
    return reduce(D1, q) == reduce(D2, q)


def is_effective_class(D: Divisor) -> bool:
    if D.degree < 0:
        return False
    q = base_point(D.graph)
    return reduce(D, q)[q] >= 0


def witness_set(D: Divisor) -> tuple[GraphPoint, ...]:
    """Points over which rank is tested.

    Model vertices plus loop midpoints form the vertex set of a loopless
    model, which is rank-determining; the support of ``D`` is added on top.
    """
    G = D.graph
    pts = {G.vertex_point(v) for v in G.vertices}
    pts.update(G.midpoint(e.id) for e in G.edges if e.is_loop)
    pts.update(D.support)
    return tuple(G.sorted_points(pts))


@lru_cache(maxsize=200_000)
def _rank(D: Divisor, A: tuple[GraphPoint, ...]) -> int:
    # D is A[0]-reduced.
    a0 = A[0]
    if D[a0] < 0:
        return -1
    lowered = []
    for v in A:
        R = reduce(D, v)
        if R[v] < 1:
            return 0
        lowered.append(R.plus_point(v, -1))
    best = None
    for E in lowered:
        sub = _rank(reduce(E, a0), A)
        best = sub if best is None else min(best, sub)
        if best == 0:
            break
    return best + 1


def rank(D: Divisor) -> int:
    """Baker-Norine rank: -1 if ``|D|`` is empty, else the largest r with
    ``|D - E|`` non-empty for every effective E of degree r."""
    if D.degree < 0:
        return -1
    A = witness_set(D)
    return _rank(reduce(D, A[0]), A)


def clear_caches() -> None:
    _borrow.cache_clear()
    _reduce.cache_clear()
    _rank.cache_clear()
