"""Theta characteristics of a hyperelliptic metric graph.

With ramification points ``r_1, ..., r_{g+1}`` and ``D = 2(r_1)``, every
theta characteristic has a unique representative

    m D + (r_i for i in S),   -1 <= m <= (g-1)/2,   |S| = g - 1 - 2m,

and these representatives are ``r_1``-reduced. A class is encoded by the
symbol ``(m, S)`` with ``S`` a set of 1-based ramification indices.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Optional

from .divisor import Divisor
from .errors import GraphFormatError
from .graph import MetricGraph, canonical_divisor
from .hyperelliptic import hyperelliptic_structure
from .reduction import is_equivalent, is_reduced, rank, reduce

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThetaChar:
    genus: int
    m: int
    S: tuple[int, ...]

    def __post_init__(self):
        g = self.genus
        object.__setattr__(self, "S", tuple(sorted(self.S)))
        if not -1 <= self.m <= (g - 1) // 2:
            raise ValueError(f"m={self.m} outside [-1, {(g - 1) // 2}]")
        if len(set(self.S)) != len(self.S) or any(not 1 <= i <= g + 1 for i in self.S):
            raise ValueError(f"S={self.S} is not a subset of 1..{g + 1}")
        if len(self.S) != g - 1 - 2 * self.m:
            raise ValueError(f"|S| must be {g - 1 - 2 * self.m}, got {len(self.S)}")

    @property
    def is_effective(self) -> bool:
        return self.m >= 0

    def to_json(self) -> dict:
        return {"m": self.m, "S": list(self.S)}

    def __str__(self) -> str:
        return f"({self.m}, {{{', '.join(map(str, self.S))}}})"


def theta_symbols(g: int) -> list[ThetaChar]:
    """All ``2^g`` symbols, m ascending then S lexicographic."""
    out = []
    for m in range(-1, (g - 1) // 2 + 1):
        for S in combinations(range(1, g + 2), g - 1 - 2 * m):
            out.append(ThetaChar(g, m, S))
    return out


def theta_count(g: int) -> int:
    """``sum_m C(g+1, g-1-2m)``, which equals ``2^g``."""
    return sum(comb(g + 1, g - 1 - 2 * m) for m in range(-1, (g - 1) // 2 + 1))


def enumerate_theta(G: MetricGraph) -> list[ThetaChar]:
    hyperelliptic_structure(G)
    return theta_symbols(G.genus)


def theta_to_divisor(theta: ThetaChar, G: MetricGraph) -> Divisor:
    if theta.genus != G.genus:
        raise ValueError(f"symbol for genus {theta.genus} used on a genus {G.genus} graph")
    r = hyperelliptic_structure(G).ramification_points
    coeffs = {r[0]: 2 * theta.m}
    D = Divisor(G, coeffs)
    for i in theta.S:
        D = D.plus_point(r[i - 1])
    return D


def verify_theta(D: Divisor) -> bool:
    """Whether ``2[D] = [K]``."""
    G = D.graph
    if D.degree != G.genus - 1:
        log.warning("degree %d is not g-1 = %d", D.degree, G.genus - 1)
        return False
    return is_equivalent(2 * D, canonical_divisor(G))


def theta_rank(theta: ThetaChar, G: MetricGraph) -> int:
    r = rank(theta_to_divisor(theta, G))
    if r != theta.m:
        raise AssertionError(f"rank of {theta} is {r}, expected {theta.m}")
    return r


@lru_cache(maxsize=64)
def _reduced_table(G: MetricGraph) -> dict[Divisor, ThetaChar]:
    r1 = hyperelliptic_structure(G).ramification_points[0]
    table = {}
    for theta in theta_symbols(G.genus):
        E = theta_to_divisor(theta, G)
        if not is_reduced(E, r1):
            raise AssertionError(f"normal form {theta} is not r_1-reduced")
        if E in table:
            raise AssertionError(f"{theta} and {table[E]} share a reduced divisor")
        table[E] = theta
    return table


def check_normal_forms(G: MetricGraph) -> bool:
    """Re-verify that the ``2^g`` normal forms are r_1-reduced and distinct."""
    return len(_reduced_table(G)) == 2 ** G.genus


def normal_form(D: Divisor, G: Optional[MetricGraph] = None) -> Optional[ThetaChar]:
    """The symbol whose divisor is equivalent to ``D``, or None if ``D`` is
    not a theta characteristic."""
    G = G or D.graph
    if D.graph != G:
        raise GraphFormatError("divisor is not on the given graph")
    if not verify_theta(D):
        return None
    r1 = hyperelliptic_structure(G).ramification_points[0]
    theta = _reduced_table(G).get(reduce(D, r1))
    if theta is None:
        raise AssertionError("theta characteristic missing from the normal-form table")
    return theta
