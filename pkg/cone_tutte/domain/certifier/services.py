"""
Exact injectivity certification and weight recovery.
"""

from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from cone_tutte.core.exceptions import (
    DegenerateSourceTriangle,
    MeshMismatch,
    RecoveryFailed,
    SourceNotEmbedded,
    TargetNotEmbedded,
)
from cone_tutte.core.logging import LogContext, get_logger
from cone_tutte.domain.certifier.entities import (
    DetEntry,
    DetReport,
    EmbeddingCertificate,
    RepairReport,
    Violation,
)
from cone_tutte.domain.cones.entities import ConeCertificate
from cone_tutte.domain.cones.services import (
    cone_at_vertex,
    cone_condition_report,
    neighbor_cone_vectors,
    solve_positive_combination,
)
from cone_tutte.domain.harmonic.entities import EdgeWeights
from cone_tutte.domain.mesh.entities import PlanarDrawing
from cone_tutte.domain.mesh.services import classify_boundary_vertices
from cone_tutte.utils.predicates import (
    adjacent_segments_overlap,
    first_self_intersection,
    orient2d,
    orient2d_batch,
    segments_intersect,
    signed_area_exact,
)

logger = get_logger(__name__)

_PAIR_CHUNK = 512


def face_orientation_signs(drawing: PlanarDrawing) -> NDArray[np.int8]:
    """Exact orientation sign of every face in the drawing."""
    f = drawing.tri.face_array
    y = drawing.coords
    return orient2d_batch(y[f[:, 0]], y[f[:, 1]], y[f[:, 2]])


def _candidate_pairs(lo: NDArray[np.float64], hi: NDArray[np.float64]) -> Iterator[Tuple[int, int]]:
    """Index pairs i < j whose closed bounding boxes overlap.

    Float comparisons of stored coordinates are exact, so no pair that
    actually touches is dropped.
    """
    count = lo.shape[0]
    for start in range(0, count, _PAIR_CHUNK):
        stop = min(start + _PAIR_CHUNK, count)
        overlap = (
            (lo[start:stop, None, 0] <= hi[None, :, 0])
            & (lo[None, :, 0] <= hi[start:stop, None, 0])
            & (lo[start:stop, None, 1] <= hi[None, :, 1])
            & (lo[None, :, 1] <= hi[start:stop, None, 1])
        )
        rows, cols = np.nonzero(overlap)
        rows = rows + start
        keep = cols > rows
        for i, j in zip(rows[keep].tolist(), cols[keep].tolist()):
            yield i, j


def pairwise_violations(drawing: PlanarDrawing) -> List[Violation]:
    """Every pair of edges that meets anywhere other than a shared endpoint."""
    edges = drawing.tri.undirected_edges
    y = drawing.coords
    ends = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    p, q = y[ends[:, 0]], y[ends[:, 1]]
    lo, hi = np.minimum(p, q), np.maximum(p, q)

    found: List[Violation] = []
    for i, j in _candidate_pairs(lo, hi):
        a, b = edges[i]
        c, d = edges[j]
        shared = {a, b} & {c, d}
        if shared:
            s = shared.pop()
            other_1 = b if a == s else a
            other_2 = d if c == s else c
            if adjacent_segments_overlap(y[s], y[other_1], y[other_2]):
                found.append(Violation("overlap", (edges[i], edges[j]), "collinear edges overlap"))
        elif segments_intersect(y[a], y[b], y[c], y[d]):
            proper = orient2d(y[a], y[b], y[c]) * orient2d(y[a], y[b], y[d]) < 0 and (
                orient2d(y[c], y[d], y[a]) * orient2d(y[c], y[d], y[b]) < 0
            )
            kind = "crossing" if proper else "touching"
            found.append(Violation(kind, (edges[i], edges[j])))
    return found


def intersection_free(drawing: PlanarDrawing, method: str = "both") -> EmbeddingCertificate:
    """
    Certify, in exact arithmetic, that a drawing is an embedding.

    Two certificates are evaluated. The orientation certificate requires
    every face to be positively oriented and the boundary to be a simple
    counter-clockwise polygon; by a degree argument this proves injectivity.
    The pairwise oracle tests every edge pair for an improper intersection.
    The verdict is certified only if no violation is found by either.

    Args:
        drawing: The drawing to check
        method: "both", "orientation" or "pairwise"
    """
    tri = drawing.tri
    with LogContext(logger, operation="intersection_free", vertices=tri.vertex_count) as log:
        violations: List[Violation] = []
        methods: List[str] = []

        referenced = [v for v in range(tri.vertex_count) if tri.neighbors[v]]
        pts = drawing.coords[referenced]
        if np.unique(pts, axis=0).shape[0] != pts.shape[0]:
            violations.append(Violation("coincident_vertices", (), "two vertices share a position"))

        signs = face_orientation_signs(drawing)
        if method in ("both", "orientation"):
            methods.append("orientation")
            for k in np.flatnonzero(signs < 0):
                violations.append(Violation("flipped_triangle", (tri.faces[int(k)],)))
            for k in np.flatnonzero(signs == 0):
                violations.append(Violation("degenerate_triangle", (tri.faces[int(k)],)))
            boundary_pts = drawing.boundary_points()
            crossing = first_self_intersection(boundary_pts)
            if crossing is not None:
                violations.append(
                    Violation("boundary_not_simple", crossing, "boundary edges intersect")
                )
            elif signed_area_exact(boundary_pts) <= 0:
                violations.append(Violation("orientation_reversed", (), "boundary is clockwise"))

        orientation_ok = not violations
        if method in ("both", "pairwise"):
            methods.append("pairwise")
            pairwise = pairwise_violations(drawing)
            violations.extend(pairwise)
            if method == "both" and orientation_ok and pairwise:
                log.error("certificate_disagreement", pairwise=len(pairwise))
            if method == "pairwise":
                for k in np.flatnonzero(signs <= 0):
                    kind = "flipped_triangle" if signs[k] < 0 else "degenerate_triangle"
                    violations.append(Violation(kind, (tri.faces[int(k)],)))

        verdict = "rejected" if violations else "certified_embedding"
        event = "embedding_rejected" if violations else "embedding_certified"
        log.info(event, violations=len(violations))
        return EmbeddingCertificate(
            verdict=verdict,  # type: ignore[arg-type]
            methods=tuple(methods),
            violations=tuple(violations),
            det_signs=tuple(int(s) for s in signs),
            evidence={"faces": len(tri.faces), "edges": len(tri.undirected_edges)},
        )


def _aligned(source: PlanarDrawing, target: PlanarDrawing) -> PlanarDrawing:
    """Target coordinates over the source's oriented triangulation."""
    if not source.tri.same_mesh(target.tri):
        raise MeshMismatch()
    return PlanarDrawing(tri=source.tri, coords=target.coords)


def certify_homeomorphism(source: PlanarDrawing, target: PlanarDrawing) -> EmbeddingCertificate:
    """
    Certify that the piecewise-linear map source -> target is an
    orientation-preserving homeomorphism onto the target polygon.

    Raises:
        MeshMismatch: Drawings are over different triangulations
        SourceNotEmbedded: Source is not an embedding
    """
    if not source.tri.same_mesh(target.tri):
        raise MeshMismatch()
    source_cert = intersection_free(source)
    if not source_cert.certified:
        raise SourceNotEmbedded(
            f"Source drawing has {len(source_cert.violations)} violations"
        )
    aligned = _aligned(source, target)
    cert = intersection_free(aligned)
    if not cert.certified:
        return cert

    # Cross-check: an embedding always admits positive reproducing weights
    try:
        _recover(aligned)
        cert.evidence["recovery_feasible"] = True
    except RecoveryFailed as exc:
        logger.error("certificate_disagreement", check="recovery", detail=exc.detail)
        cert.evidence["recovery_feasible"] = False
    return cert


def _recover(drawing: PlanarDrawing) -> EdgeWeights:
    tri = drawing.tri
    labels = classify_boundary_vertices(drawing)
    boundary = tri.boundary
    position = tri.boundary_position()
    m = len(boundary)
    values = np.ones(len(tri.directed_edges))

    for i in range(tri.vertex_count):
        nbrs = tri.neighbors[i]
        if not nbrs:
            continue
        vectors = neighbor_cone_vectors(drawing, i)
        if i in position:
            if not labels[i].is_reflex:
                continue
            k = position[i]
            cone = cone_at_vertex(
                drawing.coords[boundary[k - 1]], drawing.coords[i], drawing.coords[boundary[(k + 1) % m]]
            )
            direction = cone.bisector()
            if direction is None:
                raise RecoveryFailed(i, "boundary cone is empty")
            goal = direction * float(np.mean(np.hypot(vectors[:, 0], vectors[:, 1])))
        else:
            goal = np.zeros(2)
        result = solve_positive_combination(vectors, goal)
        if not result.feasible:
            raise RecoveryFailed(i, f"positive combination is {result.status}")
        alphas = np.asarray(result.alphas)
        alphas = alphas / alphas.mean()
        for j, a in zip(nbrs, alphas):
            values[tri.edge_index[(i, j)]] = a
    return EdgeWeights(tri=tri, values=values)


def recover_weights(
    source: PlanarDrawing, target: PlanarDrawing
) -> Tuple[EdgeWeights, ConeCertificate]:
    """
    Find positive weights for which the target is discrete-harmonic and
    satisfies the cone condition.

    Interior rows solve sum_j w_ij (y_j - y_i) = 0 exactly; reflex boundary
    rows aim the force at the bisector of the boundary cone; strictly
    convex boundary rows are uniform.

    Raises:
        TargetNotEmbedded: The map is not a certified homeomorphism
        RecoveryFailed: Some vertex admits no positive weights
    """
    cert = certify_homeomorphism(source, target)
    if not cert.certified:
        raise TargetNotEmbedded(f"Target has {len(cert.violations)} violations")
    aligned = _aligned(source, target)
    with LogContext(logger, operation="recover_weights", vertices=source.tri.vertex_count):
        weights = _recover(aligned)
        report = cone_condition_report(aligned, weights)
    return weights, report


def boundary_det_check(source: PlanarDrawing, target: PlanarDrawing) -> DetReport:
    """
    Sign of the Jacobian determinant of the piecewise-linear map on every
    triangle with a boundary vertex.

    Raises:
        MeshMismatch: Drawings are over different triangulations
        DegenerateSourceTriangle: A source triangle has zero area
    """
    aligned = _aligned(source, target)
    tri = source.tri
    on_boundary = tri.boundary_set
    source_areas = source.face_signed_areas()
    target_areas = aligned.face_signed_areas()
    src_signs = face_orientation_signs(source)
    tgt_signs = face_orientation_signs(aligned)
    entries = []
    for k, face in enumerate(tri.faces):
        if not on_boundary.intersection(face):
            continue
        if src_signs[k] == 0:
            raise DegenerateSourceTriangle(face)
        entries.append(
            DetEntry(
                face=face,
                ratio=float(target_areas[k] / source_areas[k]),
                sign=int(src_signs[k]) * int(tgt_signs[k]),
            )
        )
    preserving = signed_area_exact(aligned.boundary_points()) > 0 and (
        signed_area_exact(source.boundary_points()) > 0
    )
    report = DetReport(entries=tuple(entries), orientation_preserving=bool(preserving))
    logger.info(
        "boundary_dets_checked",
        faces=len(entries),
        positive=report.positive,
        orientation_preserving=report.orientation_preserving,
    )
    return report


def reweight_reflex_vertices(
    target: PlanarDrawing, w: EdgeWeights, source: Optional[PlanarDrawing] = None
) -> RepairReport:
    """
    Re-solve the outgoing weights of reflex boundary vertices that fail the
    cone condition, aiming each force at its cone bisector.

    Boundary rows do not enter the Dirichlet solve, so the drawing stays
    harmonic for the new weights. A vertex is repairable when its neighbor
    vectors positively reach the bisector, which always holds when the
    triangles around it keep a positive determinant.
    """
    if source is not None:
        target = _aligned(source, target)
    tri = target.tri
    w = w.rebind(tri)
    before = cone_condition_report(target, w)
    changes: Dict[Tuple[int, int], float] = {}
    repaired, unrepaired = [], []
    for entry in before.entries:
        if not entry.required or entry.passes:
            continue
        i = entry.vertex
        direction = entry.cone.bisector()
        vectors = neighbor_cone_vectors(target, i)
        if direction is None:
            unrepaired.append(i)
            continue
        scale = float(np.mean(np.hypot(vectors[:, 0], vectors[:, 1])))
        result = solve_positive_combination(vectors, direction * scale)
        if not result.feasible:
            unrepaired.append(i)
            continue
        alphas = np.asarray(result.alphas)
        alphas = alphas / alphas.mean()
        for j, a in zip(tri.neighbors[i], alphas):
            changes[(i, j)] = float(a)
        repaired.append(i)
    new_w = w.updated(changes) if changes else w
    after = cone_condition_report(target, new_w)
    logger.info("reflex_vertices_reweighted", repaired=repaired, unrepaired=unrepaired)
    return RepairReport(
        weights=new_w,
        repaired=tuple(repaired),
        unrepaired=tuple(unrepaired),
        certificate=after,
    )
