"""Exact desk-scale toolkit for connectivity systems, tangles and branch-decompositions."""

from .branch import (
    CubicTree,
    PartialBranchDecomposition,
    branch_width,
    check_branched2,
    check_branched_lemma,
    conforms,
    duality_check,
    is_branched,
    is_weakly_branched,
    remap_to_leaf,
    search_conforming,
    tangle_leaf,
    width,
)
from .connectivity import (
    ConnectivitySystem,
    GroundSet,
    SyntheticSystem,
    adheres,
    dominates,
    kappa,
    low_sets,
    verify_axioms,
)
from .errors import ConsistencyError, DomainError, ParseError
from .graph import SimpleGraph, VertexRemoval, check_pm_inequality, safe_vertex_removal_mm, safe_vertex_removal_pm
from .matroid import Matroid, Verdict, check_bc_inequality, safe_removal
from .tangles import (
    Tangle,
    enumerate_tangles,
    extends_to_tangle,
    find_splits,
    induced_tangle,
    is_k_entangled,
    is_tangle,
    split_free,
)

__version__ = "0.1.0"
