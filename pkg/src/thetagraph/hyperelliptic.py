"""Hyperelliptic involutions, quotient trees and ramification points.

Isometries of a metric graph permute its essential vertices, so the
involution search runs on the coarsest model ``H`` (valence-2 vertices
smoothed away). For the quotient, ``H`` is cut at the midpoints of edges
that the involution reverses onto themselves; on that model ``H'`` the
involution maps edges to other edges and the quotient is an orbit graph.
Results handed back to callers are expressed on the caller's model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, Optional

from .divisor import Divisor
from .errors import (
    GenusTooSmallError,
    HasBridgesError,
    NotAnInvolutionError,
    NotHyperellipticError,
    NotMinimalError,
)
from .graph import (
    Edge,
    GraphPoint,
    MetricGraph,
    Refinement,
    bridges,
    contract_bridges,
    smooth,
    subdivide,
)
from .reduction import is_equivalent, rank


class Involution:
    """A length-preserving automorphism of order at most two of a model.

    Parameters
    ----------
    model : MetricGraph
        The model the maps act on (usually the coarsest one).
    vertex_map : dict
        Vertex id to vertex id.
    edge_map : dict
        Edge id to ``(image edge id, reversed)``. ``reversed`` means offset
        ``t`` goes to ``length - t``.
    refinement : Refinement, optional
        Refinement from ``model`` to the caller's graph; defaults to identity.
    """

    def __init__(self, model: MetricGraph, vertex_map: dict, edge_map: dict, refinement: Optional[Refinement] = None):
        self.model = model
        self.vertex_map = dict(vertex_map)
        self.edge_map = {k: (v[0], bool(v[1])) for k, v in edge_map.items()}
        self.refinement = refinement or Refinement.identity(model)
        self._validate()

    @property
    def graph(self) -> MetricGraph:
        return self.refinement.fine

    def _validate(self) -> None:
        H = self.model
        sigma = self.vertex_map
        if set(sigma) != set(H.vertices) or set(self.edge_map) != {e.id for e in H.edges}:
            raise NotAnInvolutionError("maps must be defined on every vertex and edge")
        for v, w in sigma.items():
            if sigma.get(w) != v:
                raise NotAnInvolutionError(f"vertex map is not of order 2 at {v}")
        for e in H.edges:
            img, rev = self.edge_map[e.id]
            f = H.edge(img)
            if f.length != e.length:
                raise NotAnInvolutionError(f"edge {e.id} mapped to an edge of different length")
            a, b = sigma[e.ends[0]], sigma[e.ends[1]]
            if (a, b) != (f.ends[::-1] if rev else f.ends):
                raise NotAnInvolutionError(f"edge {e.id} mapping does not respect incidence")
            if self.edge_map[img] != (e.id, rev):
                raise NotAnInvolutionError(f"edge map is not of order 2 at {e.id}")

    @property
    def is_identity(self) -> bool:
        return all(v == w for v, w in self.vertex_map.items()) and all(
            img == e and not rev for e, (img, rev) in self.edge_map.items()
        )

    def __call__(self, p: GraphPoint) -> GraphPoint:
        """Image of a point of ``model``."""
        H = self.model
        p = H.normalize(p)
        if p.vertex is not None:
            return H.vertex_point(self.vertex_map[p.vertex])
        img, rev = self.edge_map[p.edge]
        e = H.edge(p.edge)
        return H.edge_point(img, e.length - p.offset if rev else p.offset)

    def apply(self, p: GraphPoint) -> GraphPoint:
        """Image of a point of the caller's graph."""
        ref = self.refinement
        return ref.to_fine(self(ref.to_coarse(p)))

    def self_reversed_edges(self) -> list[str]:
        return [e for e, (img, rev) in self.edge_map.items() if img == e and rev]

    def pointwise_fixed_edges(self) -> list[str]:
        return [e for e, (img, rev) in self.edge_map.items() if img == e and not rev]

    def fixed_points_on_model(self) -> list[GraphPoint]:
        """Isolated fixed points: fixed vertices and midpoints of reversed edges."""
        H = self.model
        pts = [H.vertex_point(v) for v, w in self.vertex_map.items() if v == w]
        pts += [H.midpoint(e) for e in self.self_reversed_edges()]
        return H.sorted_points(pts)

    def fixed_points(self) -> list[GraphPoint]:
        G = self.graph
        return G.sorted_points(self.refinement.to_fine(p) for p in self.fixed_points_on_model())

    def fixed_euler_characteristic(self) -> int:
        fixed_vertices = sum(1 for v, w in self.vertex_map.items() if v == w)
        return fixed_vertices + len(self.self_reversed_edges()) - len(self.pointwise_fixed_edges())

    def quotient_genus(self) -> int:
        """Genus of the orbit space, from ``chi(G/i) = (chi(G) + chi(Fix)) / 2``."""
        chi = 1 - self.model.genus
        return 1 - (chi + self.fixed_euler_characteristic()) // 2

    def to_json(self) -> dict:
        return {
            "vertex_map": dict(self.vertex_map),
            "edge_map": {e: {"image": img, "reversed": rev} for e, (img, rev) in self.edge_map.items()},
        }

    def __repr__(self) -> str:
        return f"Involution(vertex_map={self.vertex_map}, edge_map={self.edge_map})"


# -- involution search ------------------------------------------------------


def _bundle_key(H: MetricGraph, a: str, b: str) -> tuple[str, str]:
    idx = H._vertex_index
    return (a, b) if idx[a] <= idx[b] else (b, a)


def _involutive_matchings(items: list[Edge]) -> Iterator[list[tuple[Edge, Edge]]]:
    """Involutions on ``items`` pairing only equal lengths; fixed items appear as (x, x)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for tail in _involutive_matchings(rest):
        yield [(first, first)] + tail
    for i, other in enumerate(rest):
        if other.length == first.length:
            for tail in _involutive_matchings(rest[:i] + rest[i + 1:]):
                yield [(first, other)] + tail


def _orientation(e: Edge, f: Edge, sigma: dict) -> bool:
    """Whether ``e -> f`` must reverse offsets, given the vertex map."""
    return f.ends[0] != sigma[e.ends[0]]


def _bundle_options(H, key, image_key, bundles, sigma) -> list[tuple[dict, int]]:
    """All edge assignments for one bundle orbit, with their Fix Euler contribution."""
    a, b = key
    edges = bundles.get(key, [])
    options = []
    if image_key == key:
        loops = a == b
        for matching in _involutive_matchings(edges):
            choices = []
            for e, f in matching:
                if loops:
                    flags = (True, False)
                else:
                    flags = (_orientation(e, f, sigma),)
                choices.append([(e, f, r) for r in flags])
            for combo in product(*choices):
                emap = {}
                chi = 0
                for e, f, r in combo:
                    emap[e.id] = (f.id, r)
                    emap[f.id] = (e.id, r)
                    if e is f:
                        chi += 1 if r else -1
                options.append((emap, chi))
    else:
        targets = bundles.get(image_key, [])
        lengths = sorted({e.length for e in edges})
        per_length = []
        for ell in lengths:
            src = [e for e in edges if e.length == ell]
            dst = [f for f in targets if f.length == ell]
            per_length.append([list(zip(src, perm)) for perm in permutations(dst)])
        loops = a == b
        for parts in product(*per_length):
            pairs = [pr for part in parts for pr in part]
            flag_choices = [((True, False) if loops else (_orientation(e, f, sigma),)) for e, f in pairs]
            for flags in product(*flag_choices):
                emap = {}
                for (e, f), r in zip(pairs, flags):
                    emap[e.id] = (f.id, r)
                    emap[f.id] = (e.id, r)
                options.append((emap, 0))
    return options


def _vertex_signature(H: MetricGraph, v: str) -> tuple:
    return tuple(sorted((e.length, e.is_loop) for e, _ in H.incident(v)))


def _search(H: MetricGraph, tree_only: bool) -> Iterator[tuple[dict, dict]]:
    verts = list(H.vertices)
    sig = {v: _vertex_signature(H, v) for v in verts}
    bundles: dict[tuple[str, str], list[Edge]] = {}
    for e in H.edges:
        bundles.setdefault(_bundle_key(H, *e.ends), []).append(e)
    bundle_lengths = {k: sorted(e.length for e in es) for k, es in bundles.items()}
    target_chi = H.genus + 1

    def consistent(sigma: dict, v: str) -> bool:
        for x in sigma:
            k = _bundle_key(H, v, x)
            k_img = _bundle_key(H, sigma[v], sigma[x])
            if bundle_lengths.get(k, []) != bundle_lengths.get(k_img, []):
                return False
        return True

    def vertex_maps(i: int, sigma: dict) -> Iterator[dict]:
        while i < len(verts) and verts[i] in sigma:
            i += 1
        if i == len(verts):
            yield dict(sigma)
            return
        v = verts[i]
        for w in verts[i:]:
            if w in sigma or sig[w] != sig[v]:
                continue
            sigma[v] = w
            sigma[w] = v
            if consistent(sigma, v) and consistent(sigma, w):
                yield from vertex_maps(i + 1, sigma)
            del sigma[v]
            sigma.pop(w, None)

    for sigma in vertex_maps(0, {}):
        orbits = []
        seen = set()
        for key in bundles:
            if key in seen:
                continue
            image_key = _bundle_key(H, sigma[key[0]], sigma[key[1]])
            seen.update((key, image_key))
            orbits.append(_bundle_options(H, key, image_key, bundles, sigma))
        fixed_vertices = sum(1 for v, w in sigma.items() if v == w)
        if tree_only:
            best = [max(chi for _, chi in opts) for opts in orbits]
            if fixed_vertices + sum(best) != target_chi:
                continue
            orbits = [[o for o in opts if o[1] == m] for opts, m in zip(orbits, best)]
        for combo in product(*orbits):
            emap = {}
            for part, _ in combo:
                emap.update(part)
            yield sigma, emap


def _check_search_input(G: MetricGraph) -> None:
    if G.genus < 2:
        raise GenusTooSmallError(f"genus {G.genus} < 2")
    leaves = [v for v in G.vertices if len(G.incident(v)) == 1]
    if leaves:
        raise NotMinimalError(f"graph has 1-valent vertices: {leaves}")
    br = bridges(G)
    if br:
        raise HasBridgesError(f"graph has bridges {br}; contract them first")


def all_involutions(G: MetricGraph) -> list[Involution]:
    """Every length-preserving automorphism of order exactly 2."""
    _check_search_input(G)
    H, ref = smooth(G)
    invs = (Involution(H, s, e, ref) for s, e in _search(H, tree_only=False))
    return [inv for inv in invs if not inv.is_identity]


def find_involutions(G: MetricGraph) -> list[Involution]:
    """Involutions of ``G`` whose quotient is a metric tree (at most one exists)."""
    _check_search_input(G)
    H, ref = smooth(G)
    found = [Involution(H, s, e, ref) for s, e in _search(H, tree_only=True)]
    for inv in found:
        assert inv.quotient_genus() == 0
    return found


# -- quotient and harmonic morphism -------------------------------------------


@dataclass
class HarmonicMorphism:
    """Finite morphism ``model -> target`` given by vertex and edge images.

    ``edge_map`` sends a source edge to ``(target edge, reversed)`` and
    ``dilation`` holds the stretch factor of each source edge. ``graph`` is
    the caller's model and ``to_graph`` translates points of ``model`` to it.
    """

    model: MetricGraph
    target: MetricGraph
    vertex_map: dict
    edge_map: dict
    dilation: dict
    graph: MetricGraph
    _up: Refinement = field(repr=False)
    _down: Refinement = field(repr=False)

    def to_graph(self, p: GraphPoint) -> GraphPoint:
        return self._up.to_fine(self._down.to_coarse(p))

    def from_graph(self, p: GraphPoint) -> GraphPoint:
        return self._down.to_fine(self._up.to_coarse(p))

    def image(self, p: GraphPoint) -> GraphPoint:
        p = self.model.normalize(p)
        if p.vertex is not None:
            return self.target.vertex_point(self.vertex_map[p.vertex])
        img, rev = self.edge_map[p.edge]
        d = self.dilation[p.edge]
        t = d * p.offset
        return self.target.edge_point(img, self.target.edge(img).length - t if rev else t)

    def _direction_image(self, e: Edge, side: int) -> tuple[str, int]:
        img, rev = self.edge_map[e.id]
        return img, (1 - side if rev else side)

    def direction_sums(self, x: str) -> dict[tuple[str, int], int]:
        """For each tangent direction at the image of vertex ``x``, the sum of
        directional degrees of the directions at ``x`` lying over it."""
        y = self.vertex_map[x]
        sums = {(e.id, side): 0 for e, side in self.target.incident(y)}
        for e, side in self.model.incident(x):
            sums[self._direction_image(e, side)] += self.dilation[e.id]
        return sums

    def local_degree(self, p: GraphPoint) -> int:
        p = self.model.normalize(p)
        if p.vertex is None:
            return self.dilation[p.edge]
        sums = set(self.direction_sums(p.vertex).values())
        if len(sums) != 1:
            raise AssertionError(f"morphism is not harmonic at {p}")
        return sums.pop()

    def is_harmonic(self) -> bool:
        return all(len(set(self.direction_sums(x).values())) == 1 for x in self.model.vertices)

    def is_finite(self) -> bool:
        return all(d >= 1 for d in self.dilation.values())

    def degree(self) -> int:
        t = self.target.edges[0].id
        return sum(self.dilation[e] for e, (img, _) in self.edge_map.items() if img == t)


def quotient(G: MetricGraph, inv: Involution) -> tuple[MetricGraph, HarmonicMorphism]:
    """Orbit graph of ``inv`` and the induced degree-2 morphism."""
    if inv.graph != G:
        raise NotAnInvolutionError("involution was computed for a different graph")
    if inv.is_identity:
        raise NotAnInvolutionError("identity map has order 1; its quotient is the graph itself")
    H = inv.model
    Hp, down = subdivide(H, [H.midpoint(e) for e in inv.self_reversed_edges()])

    def act(p: GraphPoint) -> GraphPoint:
        return down.to_fine(inv(down.to_coarse(p)))

    sigma = {v: act(Hp.vertex_point(v)).vertex for v in Hp.vertices}
    tau = {}
    for f in Hp.edges:
        probe = act(Hp.edge_point(f.id, f.length / 3))
        assert probe.vertex is None
        tau[f.id] = (probe.edge, probe.offset != f.length / 3)

    order = Hp._vertex_index
    rep = {v: min(v, sigma[v], key=order.__getitem__) for v in Hp.vertices}
    t_vertices = [v for v in Hp.vertices if rep[v] == v]
    t_edges = []
    edge_map = {}
    dilation = {}
    for f in Hp.edges:
        if f.id in edge_map:
            continue
        img, rev = tau[f.id]
        d = 2 if img == f.id else 1
        t_edges.append(Edge(f.id, (rep[f.ends[0]], rep[f.ends[1]]), d * f.length))
        edge_map[f.id] = (f.id, False)
        dilation[f.id] = d
        if img != f.id:
            edge_map[img] = (f.id, rev)
            dilation[img] = 1
    T = MetricGraph(t_vertices, t_edges)
    phi = HarmonicMorphism(
        model=Hp,
        target=T,
        vertex_map={v: rep[v] for v in Hp.vertices},
        edge_map=edge_map,
        dilation=dilation,
        graph=G,
        _up=inv.refinement,
        _down=down,
    )
    return T, phi


def ramification_divisor(phi: HarmonicMorphism) -> Divisor:
    """``R(p) = 2 d_p - 2 - sum_v (d_v - 1)``, expressed on ``phi.graph``."""
    coeffs = {}
    for x in phi.model.vertices:
        p = phi.model.vertex_point(x)
        r = 2 * phi.local_degree(p) - 2 - sum(phi.dilation[e.id] - 1 for e, _ in phi.model.incident(x))
        if r:
            coeffs[phi.to_graph(p)] = r
    return Divisor(phi.graph, coeffs)


def ramification_points(phi: HarmonicMorphism) -> list[GraphPoint]:
    """Points where the ramification divisor has coefficient 2, in graph order."""
    R = ramification_divisor(phi)
    return [p for p, c in R.items() if c == 2]


# -- top-level structure --------------------------------------------------------


@dataclass(frozen=True)
class HyperellipticStructure:
    graph: MetricGraph
    involution: Involution
    tree: MetricGraph
    morphism: HarmonicMorphism
    ramification_points: tuple[GraphPoint, ...]

    @property
    def genus(self) -> int:
        return self.graph.genus

    def g12(self) -> Divisor:
        return Divisor(self.graph, {self.ramification_points[0]: 2})


@lru_cache(maxsize=256)
def hyperelliptic_structure(G: MetricGraph) -> HyperellipticStructure:
    """Involution, quotient tree, morphism and ordered ramification points.

    ``G`` must be minimal, bridgeless and of genus at least 2.
    """
    found = find_involutions(G)
    if not found:
        raise NotHyperellipticError("no involution with tree quotient")
    if len(found) > 1:
        raise AssertionError(f"{len(found)} hyperelliptic involutions; expected at most one")
    inv = found[0]
    T, phi = quotient(G, inv)
    pts = tuple(ramification_points(phi))
    if len(pts) != G.genus + 1:
        raise AssertionError(f"{len(pts)} ramification points on a genus {G.genus} graph")
    return HyperellipticStructure(G, inv, T, phi, pts)


def is_hyperelliptic(G: MetricGraph) -> bool:
    """Involution route; bridges are contracted first."""
    if G.genus < 2:
        raise GenusTooSmallError(f"genus {G.genus} < 2")
    H, _ = contract_bridges(G)
    return bool(find_involutions(H))


def has_g12_by_rank(G: MetricGraph) -> bool:
    """Rank route: search for a degree-2 rank-1 divisor ``(v) + (w)``.

    If a g^1_2 exists it contains ``v + i(v)`` for the hyperelliptic
    involution ``i``, and ``i`` maps essential vertices to essential
    vertices, so fixing one essential ``v`` and trying every essential ``w``
    is exhaustive.
    """
    if G.genus < 2:
        raise GenusTooSmallError(f"genus {G.genus} < 2")
    H, _ = contract_bridges(G)
    ess = H.essential_vertices()
    v = H.vertex_point(ess[0])
    return any(rank(Divisor(H, {v: 1}).plus_point(H.vertex_point(w))) == 1 for w in ess)


def g12_class(G: MetricGraph) -> Divisor:
    """``2(r_1)``, a representative of the unique g^1_2."""
    return hyperelliptic_structure(G).g12()


def check_g12(G: MetricGraph) -> bool:
    """``rank(2 r_i) = 1`` for all i and all ``2 r_i`` equivalent."""
    s = hyperelliptic_structure(G)
    D = s.g12()
    if rank(D) != 1:
        return False
    return all(is_equivalent(D, Divisor(G, {r: 2})) for r in s.ramification_points[1:])
