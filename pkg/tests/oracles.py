"""Independent reference implementations used to check the library.

Nothing here imports the library's reduction, subdivision or involution
code: these operate on plain dicts and lists.
"""

from collections import Counter
from fractions import Fraction
from itertools import permutations, product


def lattice_model(graph_json: dict, delta: Fraction):
    """Uniform subdivision of a graph given as plain JSON.

    Returns (nodes, adjacency multiset) where nodes are ("v", id) or
    ("e", edge id, k) for the k-th interior lattice point.
    """
    adj: dict = {}
    nodes = [("v", v) for v in graph_json["vertices"]]
    for v in nodes:
        adj[v] = Counter()
    for e in graph_json["edges"]:
        n = Fraction(e["length"]) / delta
        assert n.denominator == 1, "length is not a lattice multiple"
        n = int(n)
        chain = [("v", e["ends"][0])] + [("e", e["id"], k) for k in range(1, n)] + [("v", e["ends"][1])]
        for node in chain[1:-1]:
            nodes.append(node)
            adj[node] = Counter()
        for a, b in zip(chain, chain[1:]):
            if a == b:
                continue  # a loop of lattice length 1 never carries chips
            adj[a][b] += 1
            adj[b][a] += 1
    return nodes, adj


def finite_reduce(adj: dict, chips: dict, q) -> Counter:
    """Classical Dhar: burn from q, fire the unburnt set, repeat.

    chips must be nonnegative away from q.
    """
    D = Counter(chips)
    assert all(c >= 0 for v, c in D.items() if v != q)
    while True:
        burnt = {q}
        changed = True
        while changed:
            changed = False
            for v in adj:
                if v in burnt:
                    continue
                fire = sum(m for w, m in adj[v].items() if w in burnt)
                if fire > D[v]:
                    burnt.add(v)
                    changed = True
        if len(burnt) == len(adj):
            return Counter({v: c for v, c in D.items() if c != 0})
        unburnt = set(adj) - burnt
        for v in unburnt:
            for w, m in adj[v].items():
                if w not in unburnt:
                    D[v] -= m
                    D[w] += m


def node_of(point_json: dict, delta: Fraction):
    if "vertex" in point_json:
        return ("v", point_json["vertex"])
    k = Fraction(point_json["offset"]) / delta
    assert k.denominator == 1
    return ("e", point_json["edge"], int(k))


def brute_force_involutions(graph_json: dict):
    """Every length- and incidence-preserving involution, by trying all
    vertex permutations and all edge permutations with orientation flags.

    Returns (vertex_map, edge_map, quotient_genus) triples; edge_map sends
    an edge id to (image id, reversed). Only usable on tiny graphs.
    """
    vs = graph_json["vertices"]
    es = {e["id"]: e for e in graph_json["edges"]}
    ids = list(es)
    out = []
    for vperm in permutations(vs):
        sigma = dict(zip(vs, vperm))
        if any(sigma[sigma[v]] != v for v in vs):
            continue
        for eperm in permutations(ids):
            if any(Fraction(es[a]["length"]) != Fraction(es[b]["length"]) for a, b in zip(ids, eperm)):
                continue
            emap_ids = dict(zip(ids, eperm))
            if any(emap_ids[emap_ids[e]] != e for e in ids):
                continue
            for flags in product([False, True], repeat=len(ids)):
                emap = {e: (emap_ids[e], f) for e, f in zip(ids, flags)}
                if not _respects(es, sigma, emap):
                    continue
                if any(emap[e][1] != emap[emap[e][0]][1] for e in ids):
                    continue
                if all(sigma[v] == v for v in vs) and all(emap[e] == (e, False) for e in ids):
                    continue
                # Euler characteristic of the fixed set: fixed vertices,
                # minus open edges fixed pointwise, plus midpoints of edges
                # reversed onto themselves.
                chi = sum(1 for v in vs if sigma[v] == v)
                chi -= sum(1 for e in ids if emap[e] == (e, False))
                chi += sum(1 for e in ids if emap[e] == (e, True))
                chi_graph = len(vs) - len(ids)
                out.append((sigma, emap, 1 - (chi_graph + chi) // 2))
    return out


def _respects(es, sigma, emap) -> bool:
    for e, (f, rev) in emap.items():
        a, b = es[e]["ends"]
        c, d = es[f]["ends"]
        image = (sigma[b], sigma[a]) if rev else (sigma[a], sigma[b])
        if image != (c, d):
            return False
    return True
