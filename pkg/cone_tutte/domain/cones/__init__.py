from cone_tutte.domain.cones.entities import (
    BoundaryCone,
    CombinationResult,
    ConeCertificate,
    ConeEntry,
)
from cone_tutte.domain.cones.services import (
    cone_at_vertex,
    cone_condition_report,
    neighbor_cone_vectors,
    positively_spans,
    solve_positive_combination,
)

__all__ = [
    "BoundaryCone",
    "CombinationResult",
    "ConeCertificate",
    "ConeEntry",
    "cone_at_vertex",
    "cone_condition_report",
    "neighbor_cone_vectors",
    "positively_spans",
    "solve_positive_combination",
]
