"""JSON encodings of graphs, points and divisors.

Graph::

    {"vertices": ["u", "v"],
     "edges": [{"id": "e1", "ends": ["u", "v"], "length": "2"}, ...]}

Point: ``{"vertex": "u"}`` or ``{"edge": "e1", "offset": "1/2"}``.
Divisor: ``[{"point": <point>, "coeff": 2}, ...]``.
Rationals are always strings ``"p/q"`` or ``"n"``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .divisor import Divisor
from .errors import GraphFormatError
from .graph import Edge, GraphPoint, MetricGraph, format_rational, parse_rational


def graph_to_json(G: MetricGraph) -> dict:
    return {
        "vertices": list(G.vertices),
        "edges": [{"id": e.id, "ends": list(e.ends), "length": format_rational(e.length)} for e in G.edges],
    }


def graph_from_json(obj) -> MetricGraph:
    try:
        vertices = obj["vertices"]
        edges = [Edge(str(e["id"]), (str(e["ends"][0]), str(e["ends"][1])), parse_rational(e["length"]))
                 for e in obj["edges"]]
        if any(len(e["ends"]) != 2 for e in obj["edges"]):
            raise GraphFormatError("an edge needs exactly two ends")
    except (KeyError, TypeError, IndexError) as exc:
        raise GraphFormatError(f"malformed graph: {exc}") from None
    return MetricGraph(vertices, edges)


def point_to_json(p: GraphPoint) -> dict:
    if p.vertex is not None:
        return {"vertex": p.vertex}
    return {"edge": p.edge, "offset": format_rational(p.offset)}


def point_from_json(G: MetricGraph, obj) -> GraphPoint:
    if not isinstance(obj, dict):
        raise GraphFormatError(f"malformed point: {obj!r}")
    if "vertex" in obj:
        return G.vertex_point(str(obj["vertex"]))
    if "edge" in obj and "offset" in obj:
        return G.edge_point(str(obj["edge"]), obj["offset"])
    raise GraphFormatError(f"malformed point: {obj!r}")


def parse_point(G: MetricGraph, text: str) -> GraphPoint:
    """Point from a CLI argument: JSON, ``"u"`` or ``"e1@1/2"``."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return point_from_json(G, json.loads(text))
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"bad point JSON: {exc}") from None
    if "@" in text:
        eid, off = text.split("@", 1)
        return G.edge_point(eid, off)
    return G.vertex_point(text)


def divisor_to_json(D: Divisor) -> list:
    return [{"point": point_to_json(p), "coeff": c} for p, c in D.items()]


def divisor_from_json(G: MetricGraph, obj) -> Divisor:
    if not isinstance(obj, list):
        raise GraphFormatError("divisor must be a list of {point, coeff}")
    coeffs: dict[GraphPoint, int] = {}
    for item in obj:
        try:
            p = point_from_json(G, item["point"])
            c = item["coeff"]
        except (KeyError, TypeError) as exc:
            raise GraphFormatError(f"malformed divisor entry: {exc}") from None
        if isinstance(c, bool) or not isinstance(c, int):
            raise GraphFormatError(f"coefficient {c!r} is not an integer")
        coeffs[p] = coeffs.get(p, 0) + c
    return Divisor(G, coeffs)


def _load_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from None


def load_graph(path) -> MetricGraph:
    return graph_from_json(_load_json(path))


def load_divisor(G: MetricGraph, path) -> Divisor:
    return divisor_from_json(G, _load_json(path))


def dump_graph(G: MetricGraph, path) -> None:
    Path(path).write_text(json.dumps(graph_to_json(G), indent=2) + "\n", encoding="utf-8")
