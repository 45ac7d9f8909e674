"""Divisors and piecewise-linear functions on a metric graph."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .errors import GraphFormatError
from .graph import GraphPoint, MetricGraph, RationalLike, distances_from, parse_rational


class Divisor:
    """Finitely supported integer function on the points of ``graph``.

    Immutable and hashable. Missing points have coefficient 0, so
    ``D[p]`` never raises for a point of the graph.
    """

    __slots__ = ("graph", "_coeffs", "_hash")

    def __init__(self, graph: MetricGraph, coeffs: Optional[Mapping[GraphPoint, int]] = None):
        acc: Counter = Counter()
        for p, c in (coeffs or {}).items():
            if isinstance(c, bool) or int(c) != c:
                raise GraphFormatError(f"coefficient {c!r} is not an integer")
            acc[graph.normalize(p)] += int(c)
        self.graph = graph
        self._coeffs = {p: acc[p] for p in graph.sorted_points(acc) if acc[p] != 0}
        self._hash = None

    @classmethod
    def from_points(cls, graph: MetricGraph, points: Iterable[GraphPoint]) -> "Divisor":
        return cls(graph, Counter(graph.normalize(p) for p in points))

    @classmethod
    def zero(cls, graph: MetricGraph) -> "Divisor":
        return cls(graph)

    def __getitem__(self, p: GraphPoint) -> int:
        return self._coeffs.get(self.graph.normalize(p), 0)

    def items(self):
        return self._coeffs.items()

    def __iter__(self):
        return iter(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    @property
    def support(self) -> list[GraphPoint]:
        return list(self._coeffs)

    @property
    def degree(self) -> int:
        return sum(self._coeffs.values())

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self._coeffs.values())

    def is_effective_away_from(self, q: GraphPoint) -> bool:
        return all(c >= 0 for p, c in self._coeffs.items() if p != q)

    def _check(self, other: "Divisor") -> None:
        if not isinstance(other, Divisor):
            raise TypeError(f"expected Divisor, got {type(other).__name__}")
        if other.graph != self.graph:
            raise ValueError("divisors live on different graphs")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check(other)
        acc = Counter(self._coeffs)
        acc.update(other._coeffs)
        return Divisor(self.graph, acc)

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __neg__(self) -> "Divisor":
        return Divisor(self.graph, {p: -c for p, c in self._coeffs.items()})

    def __mul__(self, k: int) -> "Divisor":
        return Divisor(self.graph, {p: k * c for p, c in self._coeffs.items()})

    __rmul__ = __mul__

    def plus_point(self, p: GraphPoint, k: int = 1) -> "Divisor":
        acc = Counter(self._coeffs)
        acc[self.graph.normalize(p)] += k
        return Divisor(self.graph, acc)

    def positive_part(self) -> "Divisor":
        return Divisor(self.graph, {p: c for p, c in self._coeffs.items() if c > 0})

    def negative_part(self) -> "Divisor":
        """The effective divisor ``max(-D, 0)``."""
        return Divisor(self.graph, {p: -c for p, c in self._coeffs.items() if c < 0})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self._coeffs == other._coeffs and self.graph == other.graph

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.graph, tuple(self._coeffs.items())))
        return self._hash

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for p, c in self._coeffs.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            term = f"({p})" if mag == 1 else f"{mag}({p})"
            parts.append((sign, term))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {t}" for s, t in parts[1:]])

    def __repr__(self) -> str:
        return f"Divisor({self})"


class PLFunction:
    """Continuous piecewise-linear function with integer slopes.

    Each edge carries a sorted list of interior breakpoints and one slope per
    fragment, slopes measured in the direction of increasing offset. The
    function is pinned by its value at the first vertex; values elsewhere
    follow by integrating slopes, and inconsistent data is rejected.
    """

    def __init__(
        self,
        graph: MetricGraph,
        breaks: Mapping[str, Iterable[RationalLike]],
        slopes: Mapping[str, Iterable[int]],
        base_value: RationalLike = 0,
    ):
        self.graph = graph
        self._breaks: dict[str, tuple[Fraction, ...]] = {}
        self._slopes: dict[str, tuple[int, ...]] = {}
        for e in graph.edges:
            bs = tuple(sorted(parse_rational(b) for b in breaks.get(e.id, ())))
            if any(b <= 0 or b >= e.length for b in bs) or len(set(bs)) != len(bs):
                raise GraphFormatError(f"bad breakpoints on edge {e.id}")
            ss = tuple(slopes.get(e.id, (0,) * (len(bs) + 1)))
            if len(ss) != len(bs) + 1:
                raise GraphFormatError(f"edge {e.id} needs {len(bs) + 1} slopes")
            if any(isinstance(s, bool) or int(s) != s for s in ss):
                raise GraphFormatError(f"non-integer slope on edge {e.id}")
            self._breaks[e.id] = bs
            self._slopes[e.id] = tuple(int(s) for s in ss)
        self._values = self._integrate(parse_rational(base_value))

    def _rise(self, eid: str) -> Fraction:
        e = self.graph.edge(eid)
        pos = (Fraction(0), *self._breaks[eid], e.length)
        return sum((s * (pos[i + 1] - pos[i]) for i, s in enumerate(self._slopes[eid])), Fraction(0))

    def _integrate(self, base: Fraction) -> dict[str, Fraction]:
        G = self.graph
        values = {G.vertices[0]: base}
        stack = [G.vertices[0]]
        while stack:
            v = stack.pop()
            for e, side in G.incident(v):
                rise = self._rise(e.id)
                w = e.ends[1 - side]
                val = values[v] + (rise if side == 0 else -rise)
                if w not in values:
                    values[w] = val
                    stack.append(w)
                elif values[w] != val:
                    raise GraphFormatError("discontinuous slope data: values disagree around a cycle")
        return values

    @classmethod
    def from_values(cls, graph: MetricGraph, values: Mapping[GraphPoint, RationalLike]) -> "PLFunction":
        """Interpolate linearly between prescribed values.

        ``values`` must cover every vertex; any edge point listed becomes a
        breakpoint. Raises if a resulting slope is not an integer.
        """
        vals = {graph.normalize(p): parse_rational(x) for p, x in values.items()}
        breaks: dict[str, list[Fraction]] = {}
        for p in vals:
            if p.vertex is None:
                breaks.setdefault(p.edge, []).append(p.offset)
        slopes: dict[str, list[int]] = {}
        for e in graph.edges:
            pos = [Fraction(0), *sorted(breaks.get(e.id, [])), e.length]
            ys = [vals[graph.edge_point(e.id, t)] for t in pos]
            ss = []
            for i in range(len(pos) - 1):
                s = (ys[i + 1] - ys[i]) / (pos[i + 1] - pos[i])
                if s.denominator != 1:
                    raise GraphFormatError(f"non-integer slope {s} on edge {e.id}")
                ss.append(int(s))
            slopes[e.id] = ss
        return cls(graph, breaks, slopes, vals[graph.vertex_point(graph.vertices[0])])

    def value(self, p: GraphPoint) -> Fraction:
        p = self.graph.normalize(p)
        if p.vertex is not None:
            return self._values[p.vertex]
        e = self.graph.edge(p.edge)
        pos = (Fraction(0), *self._breaks[e.id], e.length)
        y = self._values[e.ends[0]]
        for i, s in enumerate(self._slopes[e.id]):
            if p.offset <= pos[i + 1]:
                return y + s * (p.offset - pos[i])
            y += s * (pos[i + 1] - pos[i])
        raise AssertionError("offset beyond edge")

    def pieces(self, eid: str) -> list[tuple[Fraction, Fraction, int]]:
        e = self.graph.edge(eid)
        pos = (Fraction(0), *self._breaks[eid], e.length)
        return [(pos[i], pos[i + 1], s) for i, s in enumerate(self._slopes[eid])]

    def __neg__(self) -> "PLFunction":
        return PLFunction(
            self.graph,
            self._breaks,
            {k: [-s for s in v] for k, v in self._slopes.items()},
            -self._values[self.graph.vertices[0]],
        )


def principal_divisor(f: PLFunction) -> Divisor:
    """Sum of outgoing slopes at each point."""
    G = f.graph
    acc: Counter = Counter()
    for e in G.edges:
        ss = f._slopes[e.id]
        acc[G.vertex_point(e.ends[0])] += ss[0]
        acc[G.vertex_point(e.ends[1])] -= ss[-1]
        for b, left, right in zip(f._breaks[e.id], ss, ss[1:]):
            acc[G.edge_point(e.id, b)] += right - left
    return Divisor(G, acc)


def _lower_envelope(lines, lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction, int]]:
    """Pieces (start, end, slope) of ``min(a + b t)`` over ``[lo, hi]``."""
    cuts = {lo, hi}
    for i, (a1, b1) in enumerate(lines):
        for a2, b2 in lines[i + 1:]:
            if b1 != b2:
                t = (a2 - a1) / (b1 - b2)
                if lo < t < hi:
                    cuts.add(t)
    cuts = sorted(cuts)
    out: list[tuple[Fraction, Fraction, int]] = []
    for s, t in zip(cuts, cuts[1:]):
        mid = (s + t) / 2
        _, b = min(lines, key=lambda ab: (ab[0] + ab[1] * mid, ab[1]))
        if out and out[-1][2] == b:
            out[-1] = (out[-1][0], t, b)
        else:
            out.append((s, t, b))
    return out


def distance_function(G: MetricGraph, p: GraphPoint, cap: Optional[RationalLike] = None) -> PLFunction:
    """``x -> dist(p, x)``, optionally truncated at ``cap``."""
    p = G.normalize(p)
    dist = distances_from(G, p)
    cap_line = [(parse_rational(cap), 0)] if cap is not None else []
    breaks: dict[str, list[Fraction]] = {}
    slopes: dict[str, list[int]] = {}
    for e in G.edges:
        through_ends = [(dist[e.ends[0]], 1), (dist[e.ends[1]] + e.length, -1)]
        if p.edge == e.id:
            s = p.offset
            pieces = _lower_envelope(through_ends + [(s, -1)] + cap_line, Fraction(0), s)
            pieces += _lower_envelope(through_ends + [(-s, 1)] + cap_line, s, e.length)
        else:
            pieces = _lower_envelope(through_ends + cap_line, Fraction(0), e.length)
        merged: list[tuple[Fraction, Fraction, int]] = []
        for piece in pieces:
            if merged and merged[-1][2] == piece[2]:
                merged[-1] = (merged[-1][0], piece[1], piece[2])
            else:
                merged.append(piece)
        breaks[e.id] = [a for a, _, _ in merged[1:]]
        slopes[e.id] = [b for _, _, b in merged]
    d0 = dist[G.vertices[0]]
    if cap is not None:
        d0 = min(d0, parse_rational(cap))
    return PLFunction(G, breaks, slopes, d0)
