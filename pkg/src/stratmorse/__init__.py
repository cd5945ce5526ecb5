"""Stratified simplicial chains, essential norms, and Morse flow graphs."""

from .complex_core import (
    Chain,
    ComplexError,
    DeltaComplex,
    FaceRef,
    FormalSimplex,
    barycentric_subdivide,
    boundary,
    build_complex,
    embed,
    make_simplex,
    subdivide_chain,
    subdivision_homotopy,
)
from .strat import (
    Poset,
    Stratification,
    StratificationError,
    count_chains,
    faces_label_check,
    incomparable,
    leq,
    limit_digraph,
    refine_components,
)
from .chains import (
    ConditionError,
    ConditionReport,
    PartialColoring,
    RelativeClassError,
    SigmaComplex,
    check_conditions,
    classify_essential,
    essential_norm,
    extend_relative_cycle,
    localize,
    sigma_construction,
)
from .corner import CornerComplex, build_corner, verify_corner_bijection
from .morse import (
    DescendingDiskPosets,
    FlowGraph,
    FlowGraphError,
    check_bound,
    count_trajectories,
    count_trajectories_recursive,
    validate_flow,
    verify_disk_trajectory_count,
)

__all__ = [name for name in dir() if not name.startswith("_")]
