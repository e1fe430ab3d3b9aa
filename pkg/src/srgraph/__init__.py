"""Injectivity tests for reaction networks from the SR graph and the stoichiometric matrix."""

from .exact import (
    BudgetExceededError,
    SubmatrixSelector,
    SubmatrixVerdict,
    TermClassification,
    TermTag,
    all_submatrices_signed_determinant,
    classify_terms,
    determinant,
    has_signed_determinant,
    is_sign_nonsingular,
    is_sign_singular,
    is_ssd,
)
from .graph import (
    ConditionStarVerdict,
    Cycle,
    CycleEnumerationTruncated,
    Edge,
    PathComponent,
    PathKind,
    SRGraph,
    Vertex,
    build_sr_graph,
    check_condition_star,
    cycle_stoich,
    disconnecting_partition,
    enumerate_cycles,
    has_s_to_r_intersection,
    intersection_components,
    parity,
    subgraph_sign,
    to_dot,
)
from .matrix import StoichMatrix, parse_matrix, resign_columns
from .network import (
    N1CViolationError,
    NetworkParseError,
    ReactionNetwork,
    parse_network,
    serialize_network,
    stoichiometric_matrix,
    validate_n1c,
)
from .report import AnalysisReport, Conclusion, analyze

__version__ = "0.1.0"
