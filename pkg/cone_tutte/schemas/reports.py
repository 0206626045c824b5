"""
Report artifacts: cone-condition reports, embedding certificates,
determinant checks and convex extensions.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import Field

from cone_tutte.domain.certifier.entities import DetReport, EmbeddingCertificate
from cone_tutte.domain.cones.entities import ConeCertificate
from cone_tutte.domain.extension.entities import ExtensionResult
from cone_tutte.schemas.common import BaseSchema, Point, VersionedSchema
from cone_tutte.schemas.mesh import DrawingFile, PolygonFile, WeightsFile


class ConeEntrySchema(BaseSchema):
    vertex: int
    vertex_class: Literal["strictly_convex", "straight", "strictly_reflex"]
    required: bool
    force: Point
    passes: bool
    margin: float


class ConeReportFile(VersionedSchema):
    """Cone condition at every boundary vertex of a drawing."""

    passes: bool
    failing: List[int] = Field(default_factory=list)
    entries: List[ConeEntrySchema]

    @classmethod
    def from_domain(cls, report: ConeCertificate) -> "ConeReportFile":
        return cls(
            passes=report.passes,
            failing=list(report.failing),
            entries=[
                ConeEntrySchema(
                    vertex=e.vertex,
                    vertex_class=e.vertex_class.value,
                    required=e.required,
                    force=e.force,
                    passes=e.passes,
                    margin=e.margin,
                )
                for e in report.entries
            ],
        )


class ViolationSchema(BaseSchema):
    kind: str
    items: List[Any] = Field(default_factory=list)
    detail: str = ""


class CertificateFile(VersionedSchema):
    """Exact embedding certificate."""

    verdict: Literal["certified_embedding", "rejected"]
    methods: List[str]
    violations: List[ViolationSchema] = Field(default_factory=list)
    counts: Dict[str, int] = Field(default_factory=dict)
    det_signs: List[int] = Field(default_factory=list)
    evidence: Dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_domain(cls, cert: EmbeddingCertificate) -> "CertificateFile":
        counts: Dict[str, int] = {}
        for violation in cert.violations:
            counts[violation.kind] = counts.get(violation.kind, 0) + 1
        return cls(
            verdict=cert.verdict,
            methods=list(cert.methods),
            violations=[
                ViolationSchema(kind=v.kind, items=_plain(v.items), detail=v.detail)
                for v in cert.violations
            ],
            counts=counts,
            det_signs=list(cert.det_signs),
            evidence=cert.evidence,
        )


class DetEntrySchema(BaseSchema):
    face: Tuple[int, int, int]
    ratio: float
    sign: int


class DetReportFile(VersionedSchema):
    """Jacobian determinant signs on boundary triangles."""

    positive: bool
    orientation_preserving: bool
    non_positive_faces: List[Tuple[int, int, int]] = Field(default_factory=list)
    entries: List[DetEntrySchema]

    @classmethod
    def from_domain(cls, report: DetReport) -> "DetReportFile":
        return cls(
            positive=report.positive,
            orientation_preserving=report.orientation_preserving,
            non_positive_faces=list(report.non_positive_faces),
            entries=[DetEntrySchema(face=e.face, ratio=e.ratio, sign=e.sign) for e in report.entries],
        )


class ExtensionFile(VersionedSchema):
    """Convex extension: extended drawing, weights and pocket structure."""

    hull: PolygonFile
    boundary_polygon: PolygonFile
    pockets: List[List[int]]
    delta_faces: List[Tuple[int, int, int]]
    drawing: DrawingFile
    weights: WeightsFile
    max_interior_residual: float
    reproduction_error: Optional[float] = None

    @classmethod
    def from_domain(
        cls, ext: ExtensionResult, reproduction_error: Optional[float] = None
    ) -> "ExtensionFile":
        return cls(
            hull=PolygonFile.from_domain(ext.hull),
            boundary_polygon=PolygonFile.from_domain(ext.boundary_polygon),
            pockets=[list(p) for p in ext.pockets],
            delta_faces=[tuple(f) for f in ext.delta_faces],
            drawing=DrawingFile.from_domain(ext.drawing),
            weights=WeightsFile.from_domain(ext.weights),
            max_interior_residual=ext.max_interior_residual,
            reproduction_error=reproduction_error,
        )


def _plain(value: Any) -> Any:
    """Nested tuples of numpy scalars as JSON-friendly lists."""
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if hasattr(value, "item"):
        return value.item()
    return value
