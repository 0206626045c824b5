from cone_tutte.domain.certifier.entities import (
    DetReport,
    EmbeddingCertificate,
    RepairReport,
    Violation,
)
from cone_tutte.domain.certifier.services import (
    boundary_det_check,
    certify_homeomorphism,
    intersection_free,
    recover_weights,
    reweight_reflex_vertices,
)

__all__ = [
    "DetReport",
    "EmbeddingCertificate",
    "RepairReport",
    "Violation",
    "boundary_det_check",
    "certify_homeomorphism",
    "intersection_free",
    "recover_weights",
    "reweight_reflex_vertices",
]
