"""
Pipeline service.
Loads artifacts, runs one CLI step and returns the document to emit.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from cone_tutte.config import settings
from cone_tutte.core.exceptions import ArtifactError, ConfigurationException
from cone_tutte.core.logging import LogContext, get_logger
from cone_tutte.domain.certifier.services import (
    boundary_det_check,
    certify_homeomorphism,
    intersection_free,
    recover_weights,
)
from cone_tutte.domain.cones.services import cone_condition_report
from cone_tutte.domain.disk import services as disk
from cone_tutte.domain.disk.entities import DiskBoundaryMap, DiskSample
from cone_tutte.domain.extension.services import build_extension, reproduce_from_extension
from cone_tutte.domain.harmonic.entities import EdgeWeights
from cone_tutte.domain.harmonic.services import harmonic_embed, weight_scheme
from cone_tutte.domain.mesh.entities import PlanarDrawing, TargetPolygon, Triangulation
from cone_tutte.domain.mesh.services import assign_boundary, build_triangulation, make_drawing
from cone_tutte.domain.mesh.validators import validate_coordinates
from cone_tutte.repositories import artifacts
from cone_tutte.schemas.disk import (
    BoundaryMapFile,
    ChoquetFile,
    ConeScanFile,
    DeterminantAgreementFile,
    InjectivityFile,
    MonotonicityFile,
    ProfileAuditFile,
)
from cone_tutte.schemas.mesh import DrawingFile, WeightsFile
from cone_tutte.schemas.reports import (
    CertificateFile,
    ConeReportFile,
    DetReportFile,
    ExtensionFile,
)
from cone_tutte.utils.predicates import signed_area_exact
from cone_tutte.utils.svg import render_svg

logger = get_logger(__name__)

DISK_MODES = ("rkc", "an-check", "choquet", "monotone", "audit", "scan", "grid")


@dataclass
class StepOutcome:
    """Result of one pipeline step.

    ``accepted`` is False when a certificate or check rejected the input;
    the CLI maps that to exit code 2.
    """

    accepted: bool
    document: Optional[BaseModel] = None
    extra: Dict[str, BaseModel] = field(default_factory=dict)
    svg: Optional[bytes] = None
    csv_sample: Optional[DiskSample] = None


def require_paths(paths: Iterable[Optional[str]]) -> None:
    """Fail before any work if an input path is missing."""
    for path in paths:
        if path is not None and not Path(path).is_file():
            raise ArtifactError(path, "file does not exist")


class PipelineService:
    """Service for the CLI pipeline steps."""

    def __init__(self, seed: Optional[int] = None):
        self.seed = settings.SEED if seed is None else seed

    # Loading
    def load_mesh(self, path: str) -> Triangulation:
        tri, _ = artifacts.meshes.read(path)
        return tri

    def load_drawing(self, path: str, mesh: Optional[str] = None) -> PlanarDrawing:
        """Drawing from a JSON file, or from an OFF mesh carrying positions."""
        if Path(path).suffix.lower() == ".off":
            tri, coords = artifacts.meshes.read(path)
            return make_drawing(tri, coords)
        doc = artifacts.drawings.read(path)
        tri = self.load_mesh(mesh) if mesh else None
        return doc.to_domain(tri)

    def load_polygon(self, path: str) -> TargetPolygon:
        return artifacts.polygons.read(path).to_domain()

    def load_boundary_map(self, path: str) -> DiskBoundaryMap:
        return artifacts.boundary_maps.read(path).to_domain()

    def resolve_weights(self, choice: Optional[str], tri: Triangulation) -> EdgeWeights:
        """
        Weights from a scheme name or a weights file.

        Accepted values: ``uniform``, ``random_positive`` or
        ``random_positive:lo:hi`` (seeded by the run seed; ``random_uniform``
        is an alias), or a path to a weights JSON file.
        """
        choice = choice or "uniform"
        name, *bounds = choice.split(":")
        if name == "uniform" and not bounds:
            return weight_scheme("uniform", tri)
        if name in ("random_positive", "random_uniform"):
            try:
                lo, hi = (float(b) for b in bounds) if bounds else (0.1, 10.0)
            except ValueError as exc:
                raise ConfigurationException(f"Bad weight range in {choice!r}") from exc
            return weight_scheme("random_positive", tri, seed=self.seed, lo=lo, hi=hi)
        if Path(choice).is_file():
            return artifacts.weights.read(choice).to_domain(tri)
        raise ConfigurationException(f"Unknown weight scheme or missing file: {choice!r}")

    # Steps
    def embed(self, mesh: str, polygon: str, weights: Optional[str], start: int = 0) -> StepOutcome:
        tri = self.load_mesh(mesh)
        target = self.load_polygon(polygon)
        w = self.resolve_weights(weights, tri)
        with LogContext(logger, operation="embed", vertices=tri.vertex_count):
            drawing = harmonic_embed(tri, w, assign_boundary(tri, target, start))
        cert = intersection_free(drawing)
        return StepOutcome(
            accepted=True,
            document=DrawingFile.from_domain(drawing),
            extra={"certificate": CertificateFile.from_domain(cert)},
        )

    def certify(
        self, target: str, source: Optional[str] = None, mesh: Optional[str] = None, method: str = "both"
    ) -> StepOutcome:
        """
        Certify a drawing, or with a source drawing the map source -> target.

        Coincident target vertices are reported as violations rather than
        rejected at load time.
        """
        if source is None:
            drawing = self._load_raw_target(target, mesh)
            cert = intersection_free(drawing, method=method)
            return StepOutcome(accepted=cert.certified, document=CertificateFile.from_domain(cert))
        src = self.load_drawing(source, mesh)
        tgt = self._load_raw_target(target, mesh, fallback=src.tri)
        cert = certify_homeomorphism(src, tgt)
        det = boundary_det_check(src, tgt) if cert.certified else None
        extra = {"det": DetReportFile.from_domain(det)} if det is not None else {}
        return StepOutcome(accepted=cert.certified, document=CertificateFile.from_domain(cert), extra=extra)

    def _load_raw_target(
        self, path: str, mesh: Optional[str], fallback: Optional[Triangulation] = None
    ) -> PlanarDrawing:
        if Path(path).suffix.lower() == ".off":
            tri, coords = artifacts.meshes.read(path)
        else:
            doc = artifacts.drawings.read(path)
            if doc.faces is None and mesh is None and fallback is not None:
                tri = fallback
            elif doc.faces is None:
                tri = self.load_mesh(mesh) if mesh else doc.to_domain().tri
            else:
                tri = build_triangulation(doc.faces, len(doc.coords))
            coords = doc.coords
        arr = validate_coordinates(coords, n=tri.vertex_count, distinct=False)
        if fallback is None and signed_area_exact(arr[list(tri.boundary)]) < 0:
            tri = tri.reversed()
        return PlanarDrawing(tri=tri, coords=arr)

    def cones(self, drawing: str, weights: Optional[str], mesh: Optional[str] = None) -> StepOutcome:
        y = self.load_drawing(drawing, mesh)
        report = cone_condition_report(y, self.resolve_weights(weights, y.tri))
        return StepOutcome(accepted=report.passes, document=ConeReportFile.from_domain(report))

    def extend(self, drawing: str, weights: Optional[str], mesh: Optional[str] = None) -> StepOutcome:
        """Build the convex extension, re-solve on it and certify the result."""
        y = self.load_drawing(drawing, mesh)
        w = self.resolve_weights(weights, y.tri)
        ext = build_extension(y, w)
        reproduced = reproduce_from_extension(ext)
        error = float(np.abs(reproduced.coords - ext.drawing.coords).max())
        cert = intersection_free(ext.drawing)
        diameter = ext.boundary_polygon.diameter()
        accepted = cert.certified and error <= 1e-8 * max(diameter, 1.0)
        logger.info("extension_reproduced", error=error, certified=cert.certified)
        return StepOutcome(
            accepted=accepted,
            document=ExtensionFile.from_domain(ext, reproduction_error=error),
            extra={"certificate": CertificateFile.from_domain(cert)},
        )

    def recover(self, source: str, target: str, mesh: Optional[str] = None) -> StepOutcome:
        src = self.load_drawing(source, mesh)
        tgt = self.load_drawing(target, mesh)
        w, report = recover_weights(src, tgt)
        return StepOutcome(
            accepted=True,
            document=WeightsFile.from_domain(w),
            extra={"cones": ConeReportFile.from_domain(report)},
        )

    def render(
        self,
        drawing: str,
        cones: Optional[str] = None,
        extension: Optional[str] = None,
        mesh: Optional[str] = None,
        arrow_scale: Optional[float] = None,
        pass_color: Optional[str] = None,
        fail_color: Optional[str] = None,
    ) -> StepOutcome:
        pockets: Sequence[Sequence[int]] = ()
        if extension is not None:
            ext = artifacts.extensions.read(extension)
            y = ext.drawing.to_domain()
            pockets = ext.pockets
        else:
            y = self.load_drawing(drawing, mesh)
        report = artifacts.cone_reports.read(cones) if cones else None
        svg = render_svg(y, report, pockets, arrow_scale, pass_color, fail_color)
        return StepOutcome(accepted=True, svg=svg)

    # Continuous demos
    def disk(
        self,
        mode: str,
        polygon: Optional[str] = None,
        boundary_map: Optional[str] = None,
        family: str = "sine",
        samples: int = 256,
        angles: Optional[int] = None,
        radii: Optional[int] = None,
        convex_targets: int = 10,
    ) -> StepOutcome:
        """
        Run one continuous experiment.

        Raises:
            ConfigurationException: Unknown mode or missing input
        """
        with LogContext(logger, operation="disk", mode=mode):
            if mode == "choquet":
                target = self._need_polygon(polygon)
                result = disk.choquet_counterexample(target, samples=samples)
                accepted = result.witness is not None and result.scan is not None and not result.scan.passes
                return StepOutcome(accepted=accepted, document=ChoquetFile.from_domain(result))
            if mode == "monotone":
                f, c, delta = disk.monotonicity_family(family)
                report = disk.monotonicity_check(f, c, delta)
                return StepOutcome(
                    accepted=report.empirical_radius is not None,
                    document=MonotonicityFile.from_domain(report, family),
                )
            if mode == "audit":
                audit = disk.diameter_profile_audit()
                return StepOutcome(accepted=True, document=ProfileAuditFile.from_domain(audit))
            if mode == "rkc" and boundary_map is None and polygon is None:
                return self._rkc_suite(convex_targets, angles, radii)

            gamma, target = self._disk_input(polygon, boundary_map)
            if mode == "rkc":
                inj = disk.rkc_check(gamma, target, angles, radii)
                return StepOutcome(accepted=inj.passes, document=InjectivityFile.from_domain(inj))
            if mode == "an-check":
                agreement = disk.an_check(gamma, samples=samples)
                return StepOutcome(
                    accepted=agreement.agree, document=DeterminantAgreementFile.from_domain(agreement)
                )
            if mode == "scan":
                scan = disk.cone_condition_scan(gamma, samples=samples)
                return StepOutcome(accepted=scan.passes, document=ConeScanFile.from_domain(scan))
            if mode == "grid":
                sample = disk.sample_grid(gamma, angles, radii)
                return StepOutcome(
                    accepted=True, document=BoundaryMapFile.from_domain(gamma), csv_sample=sample
                )
        raise ConfigurationException(f"Unknown disk mode {mode!r}; choose from {', '.join(DISK_MODES)}")

    def _need_polygon(self, polygon: Optional[str]) -> TargetPolygon:
        if polygon is None:
            raise ConfigurationException("This disk mode needs --polygon")
        return self.load_polygon(polygon)

    def _disk_input(
        self, polygon: Optional[str], boundary_map: Optional[str]
    ) -> Tuple[DiskBoundaryMap, Optional[TargetPolygon]]:
        if boundary_map is not None:
            target = self.load_polygon(polygon) if polygon else None
            return self.load_boundary_map(boundary_map), target
        if polygon is not None:
            target = self.load_polygon(polygon)
            return disk.polygon_map(target), target
        return disk.circle_map(), None

    def _rkc_suite(self, count: int, angles: Optional[int], radii: Optional[int]) -> StepOutcome:
        """Sampled injectivity on seeded random convex targets."""
        rng = np.random.default_rng(self.seed)
        reports: List[InjectivityFile] = []
        for _ in range(count):
            gamma = random_convex_trig_map(rng)
            reports.append(InjectivityFile.from_domain(disk.rkc_check(gamma, None, angles, radii)))
        accepted = all(r.passes for r in reports)
        logger.info("rkc_suite_done", targets=count, passed=sum(r.passes for r in reports))
        extra: Dict[str, BaseModel] = {f"target_{k}": r for k, r in enumerate(reports)}
        worst = min(reports, key=lambda r: r.worst_area_ratio)
        return StepOutcome(accepted=accepted, document=worst, extra=extra)


def random_convex_trig_map(rng: np.random.Generator) -> DiskBoundaryMap:
    """
    A smooth boundary map onto a convex curve: a positive linear image of
    e^{it} + eps e^{-2it} with eps <= 0.2, which keeps the curvature positive.
    """
    eps = rng.uniform(0.0, 0.2)
    phase = rng.uniform(-np.pi, np.pi)
    a = np.array([[rng.uniform(0.5, 2.0), rng.uniform(-0.3, 0.3)], [0.0, rng.uniform(0.5, 2.0)]])
    # e^{it} + eps e^{-2i(t - phase)} in Fourier coefficients
    base_x = {"cos": {1: 1.0, 2: eps * np.cos(2 * phase)}, "sin": {2: eps * np.sin(2 * phase)}}
    base_y = {"cos": {2: eps * np.sin(2 * phase)}, "sin": {1: 1.0, 2: -eps * np.cos(2 * phase)}}

    def coeffs(row: np.ndarray, kind: str) -> List[float]:
        out = [0.0, 0.0, 0.0]
        for k in range(3):
            out[k] = row[0] * base_x[kind].get(k, 0.0) + row[1] * base_y[kind].get(k, 0.0)
        return out

    return disk.trig_map(coeffs(a[0], "cos"), coeffs(a[0], "sin"), coeffs(a[1], "cos"), coeffs(a[1], "sin"))
