"""Compact metric graphs with rational edge lengths.

A metric graph is stored through one of its models: a finite multigraph
(loops and parallel edges allowed) whose edges carry positive rational
lengths. Points are model vertices or rational offsets along an edge,
measured from the edge's first endpoint.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Union

from .errors import GraphFormatError, PointNotOnGraphError

RationalLike = Union[int, str, Fraction]

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")


def parse_rational(value: RationalLike) -> Fraction:
    """Parse ``"p/q"``, ``"n"``, an int or a Fraction. Floats and decimals are refused."""
    if isinstance(value, bool):
        raise GraphFormatError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL_RE.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise GraphFormatError(f"zero denominator in {value!r}") from None
    raise GraphFormatError(f"not an exact rational: {value!r}")


def format_rational(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple[str, str]
    length: Fraction

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class GraphPoint:
    """A model vertex, or a point strictly inside an edge.

    Build points through :meth:`MetricGraph.vertex_point` and
    :meth:`MetricGraph.edge_point`, which normalize offsets 0 and
    ``length`` to the endpoint vertices.
    """

    vertex: Optional[str] = None
    edge: Optional[str] = None
    offset: Optional[Fraction] = None

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    def __str__(self) -> str:
        if self.vertex is not None:
            return self.vertex
        return f"{self.edge}@{self.offset}"

    def __repr__(self) -> str:
        return f"GraphPoint({self})"


@dataclass(frozen=True)
class TangentDirection:
    """Germ of a path leaving ``base`` along ``edge``.

    ``toward`` is 1 when the direction points toward ``edge.ends[1]``
    (increasing offset) and 0 otherwise.
    """

    base: GraphPoint
    edge: str
    toward: int


class MetricGraph:
    """A model of a compact connected metric graph.

    Parameters
    ----------
    vertices : iterable of str
        Vertex ids, in a fixed order that is used for deterministic output.
    edges : iterable of Edge or (id, u, v, length) tuples
        Lengths are positive rationals; loops and parallel edges are allowed.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable):
        self._vertices = tuple(str(v) for v in vertices)
        if not self._vertices:
            raise GraphFormatError("graph has no vertices")
        if len(set(self._vertices)) != len(self._vertices):
            raise GraphFormatError("duplicate vertex id")
        vset = set(self._vertices)
        built = []
        for e in edges:
            if not isinstance(e, Edge):
                eid, u, v, length = e
                e = Edge(str(eid), (str(u), str(v)), parse_rational(length))
            if e.ends[0] not in vset or e.ends[1] not in vset:
                raise GraphFormatError(f"edge {e.id} has an unknown endpoint")
            if e.length <= 0:
                raise GraphFormatError(f"edge {e.id} has non-positive length")
            built.append(e)
        self._edges = tuple(built)
        self._edge_by_id = {e.id: e for e in self._edges}
        if len(self._edge_by_id) != len(self._edges):
            raise GraphFormatError("duplicate edge id")
        if vset & set(self._edge_by_id):
            raise GraphFormatError("vertex and edge ids must be distinct")
        if not self._connected():
            raise GraphFormatError("graph is not connected")

    # -- basic structure -------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def edge(self, eid: str) -> Edge:
        try:
            return self._edge_by_id[eid]
        except KeyError:
            raise PointNotOnGraphError(f"no edge {eid!r}") from None

    def has_edge(self, eid: str) -> bool:
        return eid in self._edge_by_id

    @cached_property
    def _vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self._vertices)}

    @cached_property
    def _edge_index(self) -> dict[str, int]:
        return {e.id: i for i, e in enumerate(self._edges)}

    @cached_property
    def _incidence(self) -> dict[str, list[tuple[Edge, int]]]:
        inc: dict[str, list[tuple[Edge, int]]] = {v: [] for v in self._vertices}
        for e in self._edges:
            inc[e.ends[0]].append((e, 0))
            inc[e.ends[1]].append((e, 1))
        return inc

    def incident(self, v: str) -> list[tuple[Edge, int]]:
        """Edge-ends at ``v`` as (edge, side); a loop appears once per side."""
        return self._incidence[v]

    def _connected(self) -> bool:
        seen = {self._vertices[0]}
        stack = [self._vertices[0]]
        adj: dict[str, list[str]] = {v: [] for v in self._vertices}
        for e in self._edges:
            adj[e.ends[0]].append(e.ends[1])
            adj[e.ends[1]].append(e.ends[0])
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self._vertices)

    @property
    def total_length(self) -> Fraction:
        return sum((e.length for e in self._edges), Fraction(0))

    # -- points ----------------------------------------------------------

    def vertex_point(self, v: str) -> GraphPoint:
        if v not in self._vertex_index:
            raise PointNotOnGraphError(f"no vertex {v!r}")
        return GraphPoint(vertex=v)

    def edge_point(self, eid: str, offset: RationalLike) -> GraphPoint:
        e = self.edge(eid)
        t = parse_rational(offset)
        if t < 0 or t > e.length:
            raise PointNotOnGraphError(f"offset {t} outside edge {eid} of length {e.length}")
        if t == 0:
            return GraphPoint(vertex=e.ends[0])
        if t == e.length:
            return GraphPoint(vertex=e.ends[1])
        return GraphPoint(edge=eid, offset=t)

    def normalize(self, p: GraphPoint) -> GraphPoint:
        """Validate ``p`` against this model and return its canonical form."""
        if p.vertex is not None:
            return self.vertex_point(p.vertex)
        if p.edge is None or p.offset is None:
            raise PointNotOnGraphError(f"malformed point {p!r}")
        return self.edge_point(p.edge, p.offset)

    def midpoint(self, eid: str) -> GraphPoint:
        return self.edge_point(eid, self.edge(eid).length / 2)

    def point_key(self, p: GraphPoint) -> tuple:
        """Total order on points: vertices in input order, then edge points by edge order and offset."""
        if p.vertex is not None:
            return (0, self._vertex_index[p.vertex], Fraction(0))
        return (1, self._edge_index[p.edge], p.offset)

    def sorted_points(self, points: Iterable[GraphPoint]) -> list[GraphPoint]:
        return sorted(points, key=self.point_key)

    def tangent_directions(self, p: GraphPoint) -> list[TangentDirection]:
        p = self.normalize(p)
        if p.vertex is None:
            return [TangentDirection(p, p.edge, 0), TangentDirection(p, p.edge, 1)]
        return [TangentDirection(p, e.id, 1 - side) for e, side in self.incident(p.vertex)]

    def valence(self, p: GraphPoint) -> int:
        p = self.normalize(p)
        if p.vertex is None:
            return 2
        return len(self.incident(p.vertex))

    @property
    def genus(self) -> int:
        return len(self._edges) - len(self._vertices) + 1

    def essential_vertices(self) -> list[str]:
        return [v for v in self._vertices if len(self.incident(v)) != 2]

    # -- value semantics ---------------------------------------------------

    @cached_property
    def _key(self) -> tuple:
        return (self._vertices, self._edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MetricGraph):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"MetricGraph(|V|={len(self._vertices)}, |E|={len(self._edges)}, genus={self.genus})"


# -- module-level operations ------------------------------------------------


def genus(G: MetricGraph) -> int:
    return G.genus


def valence(G: MetricGraph, p: GraphPoint) -> int:
    return G.valence(p)


def canonical_divisor(G: MetricGraph):
    """The divisor with coefficient ``val(p) - 2`` at every point."""
    from .divisor import Divisor

    return Divisor(G, {G.vertex_point(v): len(G.incident(v)) - 2 for v in G.vertices})


def distances_from(G: MetricGraph, p: GraphPoint) -> dict[str, Fraction]:
    """Shortest-path distance from ``p`` to every model vertex."""
    p = G.normalize(p)
    dist: dict[str, Fraction] = {}
    heap: list = []
    if p.vertex is not None:
        heap.append((Fraction(0), G._vertex_index[p.vertex], p.vertex))
    else:
        e = G.edge(p.edge)
        for v, d in ((e.ends[0], p.offset), (e.ends[1], e.length - p.offset)):
            heapq.heappush(heap, (d, G._vertex_index[v], v))
    while heap:
        d, _, v = heapq.heappop(heap)
        if v in dist:
            continue
        dist[v] = d
        for e, side in G.incident(v):
            w = e.ends[1 - side]
            if w not in dist:
                heapq.heappush(heap, (d + e.length, G._vertex_index[w], w))
    return dist


def distance(G: MetricGraph, p: GraphPoint, x: GraphPoint) -> Fraction:
    x = G.normalize(x)
    dist = distances_from(G, p)
    if x.vertex is not None:
        return dist[x.vertex]
    e = G.edge(x.edge)
    best = min(dist[e.ends[0]] + x.offset, dist[e.ends[1]] + e.length - x.offset)
    p = G.normalize(p)
    if p.edge == x.edge:
        best = min(best, abs(p.offset - x.offset))
    return best


# -- change of model ----------------------------------------------------------


@dataclass(frozen=True)
class _Piece:
    coarse_edge: str
    start: Fraction
    end: Fraction
    fine_edge: str
    forward: bool


class Refinement:
    """Point translation between a coarse model and a subdivision of it.

    Coarse vertices keep their ids in the fine model. Every fine edge lies
    inside exactly one coarse edge, running forward or backward along it.
    """

    def __init__(self, coarse: MetricGraph, fine: MetricGraph, pieces: Iterable[_Piece]):
        self.coarse = coarse
        self.fine = fine
        self._by_coarse: dict[str, list[_Piece]] = {}
        self._by_fine: dict[str, _Piece] = {}
        for pc in pieces:
            self._by_coarse.setdefault(pc.coarse_edge, []).append(pc)
            self._by_fine[pc.fine_edge] = pc
        for lst in self._by_coarse.values():
            lst.sort(key=lambda pc: pc.start)
        self._fine_vertex: dict[str, GraphPoint] = {}
        for pc in self._by_fine.values():
            fe = fine.edge(pc.fine_edge)
            for side, pos in ((0, pc.start), (1, pc.end)):
                if not pc.forward:
                    pos = pc.end if side == 0 else pc.start
                self._fine_vertex.setdefault(fe.ends[side], coarse.edge_point(pc.coarse_edge, pos))

    @classmethod
    def identity(cls, G: MetricGraph) -> "Refinement":
        return cls(G, G, [_Piece(e.id, Fraction(0), e.length, e.id, True) for e in G.edges])

    def to_fine(self, p: GraphPoint) -> GraphPoint:
        p = self.coarse.normalize(p)
        if p.vertex is not None:
            return self.fine.vertex_point(p.vertex)
        for pc in self._by_coarse[p.edge]:
            if pc.start <= p.offset <= pc.end:
                s = p.offset - pc.start if pc.forward else pc.end - p.offset
                return self.fine.edge_point(pc.fine_edge, s)
        raise AssertionError("refinement pieces do not cover the edge")

    def to_coarse(self, p: GraphPoint) -> GraphPoint:
        p = self.fine.normalize(p)
        if p.vertex is not None:
            return self._fine_vertex.get(p.vertex) or self.coarse.vertex_point(p.vertex)
        pc = self._by_fine[p.edge]
        pos = pc.start + p.offset if pc.forward else pc.end - p.offset
        return self.coarse.edge_point(pc.coarse_edge, pos)

    def divisor_to_fine(self, D):
        from .divisor import Divisor

        return Divisor(self.fine, {self.to_fine(p): c for p, c in D.items()})

    def divisor_to_coarse(self, D):
        from .divisor import Divisor

        return Divisor(self.coarse, {self.to_coarse(p): c for p, c in D.items()})


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def subdivide(G: MetricGraph, pts: Iterable[GraphPoint]) -> tuple[MetricGraph, Refinement]:
    """Refine ``G`` so that every point of ``pts`` becomes a model vertex.

    New vertices are named ``"<edge>@<offset>"`` and fragments
    ``"<edge>.<k>"``; fragments run in the direction of their parent edge.
    """
    cuts: dict[str, set[Fraction]] = {}
    for p in pts:
        p = G.normalize(p)
        if p.vertex is None:
            cuts.setdefault(p.edge, set()).add(p.offset)
    if not cuts:
        return G, Refinement.identity(G)
    taken = set(G.vertices) | {e.id for e in G.edges}
    vertices = list(G.vertices)
    edges = []
    pieces = []
    for e in G.edges:
        if e.id not in cuts:
            edges.append(e)
            pieces.append(_Piece(e.id, Fraction(0), e.length, e.id, True))
            continue
        offs = sorted(cuts[e.id])
        names = [_fresh(f"{e.id}@{t}", taken) for t in offs]
        vertices.extend(names)
        chain = [e.ends[0], *names, e.ends[1]]
        pos = [Fraction(0), *offs, e.length]
        for k in range(len(chain) - 1):
            fid = _fresh(f"{e.id}.{k}", taken)
            edges.append(Edge(fid, (chain[k], chain[k + 1]), pos[k + 1] - pos[k]))
            pieces.append(_Piece(e.id, pos[k], pos[k + 1], fid, True))
    fine = MetricGraph(vertices, edges)
    return fine, Refinement(G, fine, pieces)


def smooth(G: MetricGraph) -> tuple[MetricGraph, Refinement]:
    """Remove valence-2 vertices, returning the coarsest model ``H`` and the
    refinement from ``H`` to ``G``.

    A cycle graph keeps its first vertex. Merged edges take the id of their
    first-listed constituent and its orientation.
    """
    ess = set(G.essential_vertices())
    if not ess:
        ess = {G.vertices[0]}
    if ess == set(G.vertices):
        return G, Refinement.identity(G)
    used: set[str] = set()
    h_edges = []
    pieces = []
    eidx = G._edge_index
    for x in G.vertices:
        if x not in ess:
            continue
        for e, side in G.incident(x):
            if e.id in used:
                continue
            chain = []  # (edge, forward)
            cur_e, cur_side = e, side
            while True:
                used.add(cur_e.id)
                chain.append((cur_e, cur_side == 0))
                y = cur_e.ends[1 - cur_side]
                if y in ess:
                    break
                nxt = [(f, s) for f, s in G.incident(y) if not (f.id == cur_e.id and s == 1 - cur_side)]
                cur_e, cur_side = nxt[0]
            rep = min(chain, key=lambda item: eidx[item[0].id])
            if not rep[1]:
                chain = [(f, not fwd) for f, fwd in reversed(chain)]
            start_v = chain[0][0].ends[0] if chain[0][1] else chain[0][0].ends[1]
            end_v = chain[-1][0].ends[1] if chain[-1][1] else chain[-1][0].ends[0]
            total = sum((f.length for f, _ in chain), Fraction(0))
            h_edges.append(Edge(rep[0].id, (start_v, end_v), total))
            pos = Fraction(0)
            for f, fwd in chain:
                pieces.append(_Piece(rep[0].id, pos, pos + f.length, f.id, fwd))
                pos += f.length
    H = MetricGraph([v for v in G.vertices if v in ess], h_edges)
    return H, Refinement(H, G, pieces)


# -- bridges ------------------------------------------------------------------


def bridges(G: MetricGraph) -> list[str]:
    """Ids of edges whose interior removal disconnects ``G``, in edge order."""
    out = []
    for e in G.edges:
        if e.is_loop:
            continue
        adj: dict[str, list[str]] = {v: [] for v in G.vertices}
        for f in G.edges:
            if f.id != e.id:
                adj[f.ends[0]].append(f.ends[1])
                adj[f.ends[1]].append(f.ends[0])
        seen = {e.ends[0]}
        stack = [e.ends[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if e.ends[1] not in seen:
            out.append(e.id)
    return out


class Contraction:
    """Point map from a graph onto the graph with its bridges collapsed."""

    def __init__(self, source: MetricGraph, target: MetricGraph, vertex_rep: dict[str, str], collapsed: set[str]):
        self.source = source
        self.target = target
        self._rep = vertex_rep
        self._collapsed = collapsed

    def image(self, p: GraphPoint) -> GraphPoint:
        p = self.source.normalize(p)
        if p.vertex is not None:
            return self.target.vertex_point(self._rep[p.vertex])
        if p.edge in self._collapsed:
            return self.target.vertex_point(self._rep[self.source.edge(p.edge).ends[0]])
        return self.target.edge_point(p.edge, p.offset)


def contract_bridges(G: MetricGraph) -> tuple[MetricGraph, Contraction]:
    """Collapse every bridge to a point. Genus is preserved."""
    br = set(bridges(G))
    parent = {v: v for v in G.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    order = G._vertex_index
    for eid in br:
        a, b = (find(x) for x in G.edge(eid).ends)
        if a != b:
            if order[b] < order[a]:
                a, b = b, a
            parent[b] = a
    rep = {v: find(v) for v in G.vertices}
    if not br:
        return G, Contraction(G, G, rep, set())
    vertices = [v for v in G.vertices if rep[v] == v]
    edges = [Edge(e.id, (rep[e.ends[0]], rep[e.ends[1]]), e.length) for e in G.edges if e.id not in br]
    H = MetricGraph(vertices, edges)
    return H, Contraction(G, H, rep, br)
