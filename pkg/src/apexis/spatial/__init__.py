"""Spatial graph diagrams and knot checks for their cycles."""

from .diagram import (
    CycleReport,
    DiagramError,
    SpatialDiagram,
    certify_code,
    certify_unknotted,
    cycle_crossing_sets,
    cycles,
    extract_knot,
    load_diagram,
    maximal_sets,
    parse_diagram,
)
from .knot import (
    CrossingBudgetError,
    GaussCode,
    LaurentPolynomial,
    apply_move,
    find_moves,
    is_realisable,
    jones,
    kauffman_bracket,
    simplify,
)

__all__ = [
    "CycleReport",
    "DiagramError",
    "SpatialDiagram",
    "certify_code",
    "certify_unknotted",
    "cycle_crossing_sets",
    "cycles",
    "extract_knot",
    "load_diagram",
    "maximal_sets",
    "parse_diagram",
    "CrossingBudgetError",
    "GaussCode",
    "LaurentPolynomial",
    "apply_move",
    "find_moves",
    "is_realisable",
    "jones",
    "kauffman_bracket",
    "simplify",
]
