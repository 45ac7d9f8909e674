"""Exact divisor theory and theta characteristics on hyperelliptic metric graphs."""

from .curve_side import (
    CurveTheta,
    canonicalize,
    divisor_level_check,
    enumerate_curve_theta,
    parity,
    specialization_table,
    specialize,
)
from .divisor import Divisor, PLFunction, distance_function, principal_divisor
from .graph import (
    Edge,
    GraphPoint,
    MetricGraph,
    bridges,
    canonical_divisor,
    contract_bridges,
    genus,
    smooth,
    subdivide,
    valence,
)
from .hyperelliptic import (
    HarmonicMorphism,
    Involution,
    find_involutions,
    g12_class,
    has_g12_by_rank,
    hyperelliptic_structure,
    is_hyperelliptic,
    quotient,
    ramification_divisor,
    ramification_points,
)
from .reduction import is_effective_class, is_equivalent, is_reduced, rank, reduce
from .theta import (
    ThetaChar,
    enumerate_theta,
    normal_form,
    theta_rank,
    theta_to_divisor,
    verify_theta,
)

__version__ = "0.1.0"
