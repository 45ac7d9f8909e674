"""Test-family graphs: banana graphs and chains of circles."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .errors import GenusTooSmallError, GraphFormatError
from .graph import MetricGraph, RationalLike, parse_rational


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 9), rng.randint(1, 4))


def _lengths(count: int, lengths: Optional[Sequence[RationalLike]], seed: Optional[int]) -> list[Fraction]:
    if lengths is not None:
        out = [parse_rational(x) for x in lengths]
        if len(out) != count:
            raise GraphFormatError(f"expected {count} lengths, got {len(out)}")
        return out
    rng = random.Random(seed)
    return [random_rational(rng) for _ in range(count)]


def banana(g: int, lengths: Optional[Sequence[RationalLike]] = None, seed: Optional[int] = None) -> MetricGraph:
    """Two vertices ``u``, ``v`` joined by ``g + 1`` edges ``e1 ...``."""
    if g < 2:
        raise GenusTooSmallError(f"genus {g} < 2")
    ls = _lengths(g + 1, lengths, seed)
    return MetricGraph(["u", "v"], [(f"e{i + 1}", "u", "v", ell) for i, ell in enumerate(ls)])


def chain(g: int, lengths: Optional[Sequence[RationalLike]] = None, seed: Optional[int] = None) -> MetricGraph:
    """``g`` circles in a row, circle ``i`` spanning ``v{i-1}`` and ``v{i}``.

    ``lengths`` are circumferences. Both arcs of a circle get half its
    circumference: inner circles must be split evenly by their two cut
    points or the chain is not hyperelliptic.
    """
    if g < 2:
        raise GenusTooSmallError(f"genus {g} < 2")
    ls = _lengths(g, lengths, seed)
    vertices = [f"v{i}" for i in range(g + 1)]
    edges = []
    for i, ell in enumerate(ls, start=1):
        edges.append((f"a{i}", f"v{i - 1}", f"v{i}", ell / 2))
        edges.append((f"b{i}", f"v{i - 1}", f"v{i}", ell / 2))
    return MetricGraph(vertices, edges)


FAMILIES = {"banana": banana, "chain": chain}
