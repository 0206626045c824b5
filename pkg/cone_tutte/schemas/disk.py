"""
Disk artifacts: boundary maps and the results of continuous experiments.
"""

from typing import Annotated, Dict, List, Literal, Optional, Union

from pydantic import Field

from cone_tutte.domain.disk.entities import (
    ChoquetResult,
    ConeScanResult,
    DeterminantAgreement,
    DiskBoundaryMap,
    EdgeTanhPiece,
    InjectivityReport,
    MonotonicityReport,
    PolyPiece,
    ProfileAudit,
    SlowdownLaw,
    TrigPiece,
)
from cone_tutte.schemas.common import BaseSchema, Point, VersionedSchema


class TrigPieceSchema(BaseSchema):
    kind: Literal["trig"] = "trig"
    start: float
    end: float
    cos_x: List[float] = Field(default_factory=list)
    sin_x: List[float] = Field(default_factory=list)
    cos_y: List[float] = Field(default_factory=list)
    sin_y: List[float] = Field(default_factory=list)

    def to_domain(self) -> TrigPiece:
        return TrigPiece(
            tuple(self.cos_x), tuple(self.sin_x), tuple(self.cos_y), tuple(self.sin_y), self.start, self.end
        )


class PolyPieceSchema(BaseSchema):
    kind: Literal["poly"] = "poly"
    start: float
    end: float
    coeffs_x: List[float] = Field(..., min_length=1)
    coeffs_y: List[float] = Field(..., min_length=1)

    def to_domain(self) -> PolyPiece:
        return PolyPiece(self.start, self.end, tuple(self.coeffs_x), tuple(self.coeffs_y))


class SlowdownLawSchema(BaseSchema):
    sigma_b: float = Field(..., gt=0)
    length: float = Field(..., gt=0)
    s: float = Field(..., gt=0)


class EdgeTanhPieceSchema(BaseSchema):
    kind: Literal["edge_tanh"] = "edge_tanh"
    start: float
    end: float
    p: Point
    q: Point
    sigma_p: float
    law: SlowdownLawSchema

    def to_domain(self) -> EdgeTanhPiece:
        return EdgeTanhPiece(
            self.start, self.end, self.p, self.q, self.sigma_p, SlowdownLaw(**self.law.model_dump())
        )


PieceSchema = Annotated[
    Union[TrigPieceSchema, PolyPieceSchema, EdgeTanhPieceSchema], Field(discriminator="kind")
]


class BoundaryMapFile(VersionedSchema):
    """Piecewise-smooth boundary map of the unit circle."""

    pieces: List[PieceSchema] = Field(..., min_length=1)

    @classmethod
    def from_domain(cls, gamma: DiskBoundaryMap) -> "BoundaryMapFile":
        return cls.model_validate({"pieces": gamma.to_dict()["pieces"]})

    def to_domain(self) -> DiskBoundaryMap:
        return DiskBoundaryMap(pieces=tuple(p.to_domain() for p in self.pieces))


class ConeScanFile(VersionedSchema):
    passes: bool
    worst_theta: float
    worst_margin: float
    min_normal_norm: float
    failing_thetas: List[float] = Field(default_factory=list)
    thetas: List[float]
    margins: List[float]

    @classmethod
    def from_domain(cls, scan: ConeScanResult) -> "ConeScanFile":
        theta, margin = scan.worst
        return cls(
            passes=scan.passes,
            worst_theta=theta,
            worst_margin=margin,
            min_normal_norm=scan.min_normal_norm,
            failing_thetas=scan.failing_thetas.tolist(),
            thetas=scan.thetas.tolist(),
            margins=scan.margins.tolist(),
        )


class InjectivityFile(VersionedSchema):
    passes: bool
    triangles: int
    flipped: int
    outside: int
    worst_area_ratio: float

    @classmethod
    def from_domain(cls, report: InjectivityReport) -> "InjectivityFile":
        return cls(
            passes=report.passes,
            triangles=report.triangles,
            flipped=report.flipped,
            outside=report.outside,
            worst_area_ratio=report.worst_area_ratio,
        )


class DeterminantAgreementFile(VersionedSchema):
    agree: bool
    thetas: List[float]
    det_signs: List[int]
    cone_passes: List[bool]

    @classmethod
    def from_domain(cls, result: DeterminantAgreement) -> "DeterminantAgreementFile":
        return cls(
            agree=result.agree,
            thetas=result.thetas.tolist(),
            det_signs=[int(s) for s in result.det_signs],
            cone_passes=[bool(c) for c in result.cone_passes],
        )


class WitnessSchema(BaseSchema):
    s: float
    nu: float
    theta: float
    image: Point


class ChoquetFile(VersionedSchema):
    a_index: int
    b_index: int
    tried: List[float]
    witness: Optional[WitnessSchema] = None
    boundary_map: Optional[BoundaryMapFile] = None
    scan: Optional[ConeScanFile] = None

    @classmethod
    def from_domain(cls, result: ChoquetResult) -> "ChoquetFile":
        w = result.witness
        return cls(
            a_index=result.a_index,
            b_index=result.b_index,
            tried=list(result.tried),
            witness=WitnessSchema(s=w.s, nu=w.nu, theta=w.theta, image=w.image) if w else None,
            boundary_map=BoundaryMapFile.from_domain(result.boundary_map) if result.boundary_map else None,
            scan=ConeScanFile.from_domain(result.scan) if result.scan else None,
        )


class MonotonicityFile(VersionedSchema):
    family: Optional[str] = None
    c: float
    delta: float
    radii: List[float]
    holds: List[bool]
    empirical_radius: Optional[float] = None
    lipschitz_boundary: float
    lipschitz_extension: List[float]
    lipschitz_holds: bool

    @classmethod
    def from_domain(cls, report: MonotonicityReport, family: Optional[str] = None) -> "MonotonicityFile":
        return cls(
            family=family,
            c=report.c,
            delta=report.delta,
            radii=report.radii.tolist(),
            holds=list(report.holds),
            empirical_radius=report.empirical_radius,
            lipschitz_boundary=report.lipschitz_boundary,
            lipschitz_extension=list(report.lipschitz_extension),
            lipschitz_holds=report.lipschitz_holds,
        )


class ProfileAuditFile(VersionedSchema):
    best: str
    kappa_fit: float
    max_errors: Dict[str, float]
    xs: List[float]
    measured: List[float]

    @classmethod
    def from_domain(cls, audit: ProfileAudit) -> "ProfileAuditFile":
        return cls(
            best=audit.best,
            kappa_fit=audit.kappa_fit,
            max_errors=audit.max_errors,
            xs=audit.xs.tolist(),
            measured=audit.measured.tolist(),
        )
