"""Infer mesh-pattern bases for finite sets of permutations."""

from .gen import ForbiddenTable, eliminate_consequences, gen, minimal_forbidden
from .mine import MinedTable, antichain_insert, mine
from .perm import (
    MeshPattern,
    PatternError,
    Perm,
    classical_occurrences,
    flatten,
    maximal_shading,
    mesh_contains,
    mesh_implies,
    region_points,
    subwords_le_m,
)
from .pipeline import (
    AvoidanceSet,
    Basis,
    LimitError,
    PruneError,
    avoiders,
    bisc,
    prune,
    run_bisc,
    verify_equality,
    verify_subset,
)

__version__ = "0.1.0"
