from cone_tutte.domain.disk.entities import (
    ChoquetResult,
    ConeScanResult,
    DeterminantAgreement,
    DiskBoundaryMap,
    DiskSample,
    EdgeTanhPiece,
    InjectivityReport,
    MonotonicityReport,
    PolyPiece,
    ProfileAudit,
    SlowdownLaw,
    TrigPiece,
    Witness,
)
from cone_tutte.domain.disk.quadrature import PoissonExtender
from cone_tutte.domain.disk.services import (
    an_check,
    boundary_derivatives,
    choquet_counterexample,
    circle_map,
    cone_condition_scan,
    diameter_profile_audit,
    monotonicity_check,
    monotonicity_family,
    poisson_extend,
    polygon_map,
    rkc_check,
    sample_grid,
    slowed_polygon_map,
    trig_map,
)

__all__ = [
    "ChoquetResult",
    "ConeScanResult",
    "DeterminantAgreement",
    "DiskBoundaryMap",
    "DiskSample",
    "EdgeTanhPiece",
    "InjectivityReport",
    "MonotonicityReport",
    "PoissonExtender",
    "PolyPiece",
    "ProfileAudit",
    "SlowdownLaw",
    "TrigPiece",
    "Witness",
    "an_check",
    "boundary_derivatives",
    "choquet_counterexample",
    "circle_map",
    "cone_condition_scan",
    "diameter_profile_audit",
    "monotonicity_check",
    "monotonicity_family",
    "poisson_extend",
    "polygon_map",
    "rkc_check",
    "sample_grid",
    "slowed_polygon_map",
    "trig_map",
]
