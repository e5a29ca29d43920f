"""Friendly numberings and friendly bijections on trees.

A tree's edges can be numbered 1..m so that for every pair of
consecutive numbers, the numbers met along the path between their two
edges pair up consistently; such numberings are called friendly, and
they are one face of a more general notion of friendly edge bijections
between trees.  This package provides the checkers for both notions,
two constructive numbering algorithms (trunk-based and
parity-center-based), a structural criterion for friendliness to
double stars with an explicit small-part construction, exhaustive
backtracking searches, free-tree enumeration, and desk-scale surveys
over the open questions, all behind a ``tree-amity`` command line.
"""

from .amity import (
    EdgeBijection,
    HookViolation,
    Numbering,
    NumberingPairViolation,
    check_friendly_bijection,
    check_friendly_numbering,
    does_not_hook,
    format_bijection,
    format_numbering,
    invert_bijection,
    is_self_standing,
    numbering_to_path_bijection,
    parse_bijection,
    parse_numbering,
    path_tree,
    unlinked,
)
from .cb import (
    CBShape,
    SubtreePair,
    bijection_from_pair,
    connected_edge_sets_containing,
    find_subtree_pair,
    is_connected_edge_set,
    is_friendly_to_cb,
    make_cb,
    small_n_pair,
)
from .enumeration import (
    count_free_trees,
    count_rooted_trees,
    enumerate_free_trees,
    level_sequences,
    tree_from_level_sequence,
)
from .errors import (
    CycleDetected,
    Disconnected,
    DuplicateEdge,
    EmptyTree,
    EqualEdges,
    InvalidBijection,
    InvalidNumbering,
    InvalidTrunk,
    MalformedLine,
    PreconditionFailed,
    SelfLoop,
    ShapeMismatch,
    SizeMismatch,
    TooSmall,
    TreeAmityError,
)
from .parity import (
    ParityContext,
    check_precondition,
    leaf_edge_property,
    number_parity_center,
    odd_distance_witness,
)
from .search import (
    BUDGET_EXCEEDED,
    FOUND,
    HYPOTHESIS_D4,
    HYPOTHESIS_ODD,
    PROVED_NONE,
    AuditRecord,
    AuditReport,
    SearchBudget,
    SearchResult,
    SweepRecord,
    SweepReport,
    search_bijection,
    search_numbering,
    sweep_cb_universal,
    sweep_hypothesis,
    sweep_question_path,
    symmetry_audit,
)
from .trees import (
    PruneResult,
    Tree,
    format_tree,
    parse_tree,
    parse_tree_labeled,
)
from .trunk import (
    Link,
    TrunkDecomposition,
    decompose,
    find_trunk,
    number_by_trunk,
)

__version__ = "0.1.0"

__all__ = [
    "Tree",
    "PruneResult",
    "parse_tree",
    "parse_tree_labeled",
    "format_tree",
    "Numbering",
    "EdgeBijection",
    "NumberingPairViolation",
    "HookViolation",
    "check_friendly_numbering",
    "check_friendly_bijection",
    "is_self_standing",
    "does_not_hook",
    "unlinked",
    "invert_bijection",
    "path_tree",
    "numbering_to_path_bijection",
    "parse_numbering",
    "format_numbering",
    "parse_bijection",
    "format_bijection",
    "Link",
    "TrunkDecomposition",
    "find_trunk",
    "decompose",
    "number_by_trunk",
    "ParityContext",
    "check_precondition",
    "number_parity_center",
    "leaf_edge_property",
    "odd_distance_witness",
    "CBShape",
    "SubtreePair",
    "make_cb",
    "is_connected_edge_set",
    "connected_edge_sets_containing",
    "find_subtree_pair",
    "bijection_from_pair",
    "is_friendly_to_cb",
    "small_n_pair",
    "level_sequences",
    "tree_from_level_sequence",
    "enumerate_free_trees",
    "count_rooted_trees",
    "count_free_trees",
    "FOUND",
    "PROVED_NONE",
    "BUDGET_EXCEEDED",
    "HYPOTHESIS_D4",
    "HYPOTHESIS_ODD",
    "SearchBudget",
    "SearchResult",
    "search_numbering",
    "search_bijection",
    "AuditRecord",
    "AuditReport",
    "symmetry_audit",
    "SweepRecord",
    "SweepReport",
    "sweep_question_path",
    "sweep_hypothesis",
    "sweep_cb_universal",
    "TreeAmityError",
    "MalformedLine",
    "SelfLoop",
    "DuplicateEdge",
    "CycleDetected",
    "Disconnected",
    "EqualEdges",
    "EmptyTree",
    "InvalidTrunk",
    "PreconditionFailed",
    "SizeMismatch",
    "ShapeMismatch",
    "TooSmall",
    "InvalidNumbering",
    "InvalidBijection",
]
