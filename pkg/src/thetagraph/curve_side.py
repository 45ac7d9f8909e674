"""Theta characteristics of the lifted hyperelliptic curve, symbolically.

The curve of genus g has ramification points ``R_1, ..., R_{2g+2}``; its
theta characteristics are ``m g^1_2 + (R_i for i in S)`` with
``|S| = g - 1 - 2m`` and ``h^0 = m + 1``. For ``m = -1`` a subset and its
complement give the same class; the representative containing 1 is kept.

Curve points ``R_{2i-1}`` and ``R_{2i}`` both specialize to the graph
ramification point ``r_i``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .divisor import Divisor
from .graph import MetricGraph
from .hyperelliptic import hyperelliptic_structure
from .reduction import reduce
from .theta import ThetaChar, theta_symbols, theta_to_divisor


@dataclass(frozen=True)
class CurveTheta:
    genus: int
    m: int
    S: tuple[int, ...]

    def __post_init__(self):
        g = self.genus
        if g < 2:
            raise ValueError(f"genus {g} < 2")
        object.__setattr__(self, "S", tuple(sorted(self.S)))
        if not -1 <= self.m <= (g - 1) // 2:
            raise ValueError(f"m={self.m} outside [-1, {(g - 1) // 2}]")
        if len(set(self.S)) != len(self.S) or any(not 1 <= i <= 2 * g + 2 for i in self.S):
            raise ValueError(f"S={self.S} is not a subset of 1..{2 * g + 2}")
        if len(self.S) != g - 1 - 2 * self.m:
            raise ValueError(f"|S| must be {g - 1 - 2 * self.m}, got {len(self.S)}")

    def to_json(self) -> dict:
        return {"m": self.m, "S": list(self.S)}


def pairing(g: int) -> dict[int, tuple[int, int]]:
    """Graph ramification index -> the two curve indices over it."""
    return {i: (2 * i - 1, 2 * i) for i in range(1, g + 2)}


def enumerate_curve_theta(g: int) -> list[CurveTheta]:
    """The ``2^{2g}`` canonical symbols, m ascending then S lexicographic."""
    if g < 2:
        raise ValueError(f"genus {g} < 2")
    n = 2 * g + 2
    out = [CurveTheta(g, -1, (1,) + rest) for rest in combinations(range(2, n + 1), g)]
    for m in range(0, (g - 1) // 2 + 1):
        out.extend(CurveTheta(g, m, S) for S in combinations(range(1, n + 1), g - 1 - 2 * m))
    return out


def parity(theta: CurveTheta) -> str:
    """Parity of ``h^0 = m + 1``."""
    return "even" if (theta.m + 1) % 2 == 0 else "odd"


def canonicalize(theta: CurveTheta) -> CurveTheta:
    if theta.m != -1 or 1 in theta.S:
        return theta
    full = set(range(1, 2 * theta.genus + 3))
    return CurveTheta(theta.genus, -1, tuple(sorted(full - set(theta.S))))


def specialize(theta: CurveTheta) -> ThetaChar:
    """Graph symbol of the specialization.

    A complete pair ``R_{2i-1} + R_{2i}`` specializes to ``2(r_i)``, which is
    the g^1_2, so each raises m by one; lone points map to their ``r_i``.
    """
    hits = Counter((k + 1) // 2 for k in theta.S)
    pairs = sum(1 for c in hits.values() if c == 2)
    singles = tuple(sorted(i for i, c in hits.items() if c == 1))
    return ThetaChar(theta.genus, theta.m + pairs, singles)


def specialization_table(g: int) -> dict[ThetaChar, tuple[int, int]]:
    """Graph symbol -> (even count, odd count) of curve symbols over it."""
    counts = {t: [0, 0] for t in theta_symbols(g)}
    for theta in enumerate_curve_theta(g):
        counts[specialize(theta)][0 if parity(theta) == "even" else 1] += 1
    return {t: (e, o) for t, (e, o) in counts.items()}


def fiber_size(g: int, m: int) -> int:
    """Number of curve symbols over an effective graph symbol with this m,
    ``2^{g-1-2m} (sum_{i<=m} C(2m+2, i) + C(2m+2, m+1) / 2)``."""
    inner = sum(Fraction(comb(2 * m + 2, i)) for i in range(m + 1)) + Fraction(comb(2 * m + 2, m + 1), 2)
    total = 2 ** (g - 1 - 2 * m) * inner
    if total.denominator != 1:
        raise AssertionError("fiber size is not an integer")
    return int(total)


def curve_divisor_on_graph(theta: CurveTheta, G: MetricGraph) -> Divisor:
    """``2m(r_1) + sum_{k in S} (r_ceil(k/2))``: the specialized divisor before normalizing."""
    r = hyperelliptic_structure(G).ramification_points
    D = Divisor(G, {r[0]: 2 * theta.m})
    for k in theta.S:
        D = D.plus_point(r[(k + 1) // 2 - 1])
    return D


def divisor_level_check(theta: CurveTheta, G: MetricGraph) -> bool:
    if G.genus != theta.genus:
        raise ValueError(f"symbol for genus {theta.genus} used on a genus {G.genus} graph")
    r1 = hyperelliptic_structure(G).ramification_points[0]
    lhs = reduce(curve_divisor_on_graph(theta, G), r1)
    rhs = reduce(theta_to_divisor(specialize(theta), G), r1)
    return lhs == rhs
