"""Interval partitions certifying the Stanley depth of squarefree
Veronese ideals: block structures, constructive certificates, bipartite
matching, and an exact exhaustive solver."""

from .blocks import (
    BlockStructure,
    CircBlock,
    Density,
    block_structure,
    block_structure_violation,
    f_delta,
    verify_block_structure,
)
from .construct import (
    Bounds,
    bounds,
    compose_plus1,
    construct_c2,
    construct_c3,
    construct_c4,
    construct_general,
    has_covered_superset,
    uncovered_sets,
    veronese_intervals,
)
from .intervals import (
    Certificate,
    Interval,
    VerifyReport,
    covers,
    disjoint,
    format_certificate,
    new_certificate,
    parse_certificate,
    render_stanley,
    verify_certificate,
)
from .matching import (
    BipartiteGraph,
    Matching,
    complete_matching_regular,
    containment_graph,
    hall_witness,
    max_matching,
)
from .setcore import PointSet, binomial, circ_block, make_set, sets_of_size
from .solver import (
    SearchBudget,
    SolveResult,
    certify_at_least,
    conjecture_scan,
    exact_sdepth,
)

__all__ = [
    "BipartiteGraph",
    "BlockStructure",
    "Bounds",
    "Certificate",
    "CircBlock",
    "Density",
    "Interval",
    "Matching",
    "PointSet",
    "SearchBudget",
    "SolveResult",
    "VerifyReport",
    "binomial",
    "block_structure",
    "block_structure_violation",
    "bounds",
    "certify_at_least",
    "circ_block",
    "complete_matching_regular",
    "compose_plus1",
    "conjecture_scan",
    "construct_c2",
    "construct_c3",
    "construct_c4",
    "construct_general",
    "containment_graph",
    "covers",
    "disjoint",
    "exact_sdepth",
    "f_delta",
    "format_certificate",
    "has_covered_superset",
    "hall_witness",
    "make_set",
    "max_matching",
    "new_certificate",
    "parse_certificate",
    "render_stanley",
    "sets_of_size",
    "uncovered_sets",
    "verify_block_structure",
    "verify_certificate",
    "veronese_intervals",
]
