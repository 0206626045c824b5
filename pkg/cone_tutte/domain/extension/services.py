"""
Convex-extension reduction: pockets between a target polygon and its convex
hull are triangulated and weighted so that the target drawing extends to a
convex-boundary harmonic drawing.
"""

from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np
from numpy.typing import NDArray

from cone_tutte.config import settings
from cone_tutte.core.exceptions import (
    AllCollinear,
    ConeConditionViolated,
    ExtensionInfeasible,
    NotDiscreteHarmonic,
    PolygonNotSimple,
)
from cone_tutte.core.logging import LogContext, get_logger
from cone_tutte.domain.cones.services import (
    cone_condition_report,
    exact_forces,
    neighbor_cone_vectors,
    solve_positive_combination,
)
from cone_tutte.domain.extension.entities import ExtensionResult
from cone_tutte.domain.harmonic.entities import EdgeWeights
from cone_tutte.domain.harmonic.services import harmonic_embed, laplace_residual
from cone_tutte.domain.mesh.entities import Face, PlanarDrawing, TargetPolygon
from cone_tutte.domain.mesh.services import (
    build_triangulation,
    classify_boundary_vertices,
    make_polygon,
)
from cone_tutte.domain.mesh.validators import validate_coordinates, validate_polygon
from cone_tutte.utils.predicates import frac, on_closed_segment, orient2d

logger = get_logger(__name__)


def convex_hull_indices(points: Sequence[Sequence[float]]) -> List[int]:
    """
    Andrew's monotone chain with exact orientation tests.

    Returns:
        Indices of the strict hull vertices, counter-clockwise, collinear
        points dropped

    Raises:
        AllCollinear: Fewer than three non-collinear points
    """
    pts = np.asarray(points, dtype=np.float64)
    order = sorted(range(pts.shape[0]), key=lambda k: (pts[k, 0], pts[k, 1]))
    unique: List[int] = []
    for k in order:
        if not unique or not np.array_equal(pts[unique[-1]], pts[k]):
            unique.append(k)

    def chain(seq: List[int]) -> List[int]:
        hull: List[int] = []
        for k in seq:
            while len(hull) >= 2 and orient2d(pts[hull[-2]], pts[hull[-1]], pts[k]) <= 0:
                hull.pop()
            hull.append(k)
        return hull

    lower = chain(unique)
    upper = chain(list(reversed(unique)))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise AllCollinear(pts.shape[0])
    return hull


def convex_hull(points: Sequence[Sequence[float]]) -> TargetPolygon:
    """Convex hull as a counter-clockwise polygon without collinear vertices."""
    pts = np.asarray(points, dtype=np.float64)
    return TargetPolygon(vertices=validate_coordinates(pts[convex_hull_indices(pts)]))


def _in_closed_triangle(p: NDArray[np.float64], a, b, c) -> bool:
    return orient2d(a, b, p) >= 0 and orient2d(b, c, p) >= 0 and orient2d(c, a, p) >= 0


def ear_clip(
    points: Sequence[Sequence[float]], order: Optional[str] = None
) -> List[Tuple[int, int, int]]:
    """
    Triangulate a simple counter-clockwise polygon by ear clipping.

    At each step the valid ear with the lowest (or highest, per
    ``EAR_ORDER``) original index is removed. An ear is a strictly convex
    vertex whose closed triangle holds no other remaining vertex.

    Returns:
        k - 2 counter-clockwise index triples for a k-gon

    Raises:
        PolygonNotSimple: The polygon is not simple or has no ear
    """
    pts = validate_coordinates(points)
    validate_polygon(pts)
    order = order or settings.EAR_ORDER
    remaining = list(range(pts.shape[0]))
    triangles: List[Tuple[int, int, int]] = []
    while len(remaining) > 3:
        candidates = sorted(remaining, reverse=(order == "highest_index"))
        for v in candidates:
            pos = remaining.index(v)
            prev, nxt = remaining[pos - 1], remaining[(pos + 1) % len(remaining)]
            if orient2d(pts[prev], pts[v], pts[nxt]) <= 0:
                continue
            if any(
                _in_closed_triangle(pts[u], pts[prev], pts[v], pts[nxt])
                for u in remaining
                if u not in (prev, v, nxt)
            ):
                continue
            triangles.append((prev, v, nxt))
            remaining.pop(pos)
            break
        else:
            raise PolygonNotSimple("No ear found; polygon is not simple")
    a, b, c = remaining
    if orient2d(pts[a], pts[b], pts[c]) <= 0:
        raise PolygonNotSimple("Ear clipping ended on a degenerate triangle")
    triangles.append((a, b, c))
    return triangles


def _on_hull(point: NDArray[np.float64], hull: NDArray[np.float64]) -> bool:
    h = hull.shape[0]
    return any(on_closed_segment(point, hull[k], hull[(k + 1) % h]) for k in range(h))


def _check_preconditions(drawing: PlanarDrawing, w: EdgeWeights) -> None:
    tri = drawing.tri
    residual = laplace_residual(drawing, w)
    diameter = drawing.diameter()
    for i in tri.interior:
        scale = sum(w[(i, j)] for j in tri.neighbors[i]) * diameter
        norm = float(np.hypot(*residual[i]))
        if norm > settings.RESIDUAL_CHECK_TOL * scale:
            raise NotDiscreteHarmonic(i, norm)
    report = cone_condition_report(drawing, w)
    if not report.passes:
        raise ConeConditionViolated(list(report.failing))


def build_extension(target: PlanarDrawing, w: EdgeWeights) -> ExtensionResult:
    """
    Extend a discrete-harmonic drawing over a non-convex polygon to a
    drawing with convex boundary that is harmonic at every non-hull vertex.

    Pockets between the polygon and its hull are ear-clipped. Hull-boundary
    rows get weight 1, interior rows keep w, strictly convex polygon
    vertices get positive weights balancing all their new neighbors, and
    reflex polygon vertices get pocket weights that cancel their force.

    Raises:
        NotDiscreteHarmonic: Target is not harmonic for w
        ConeConditionViolated: Some reflex vertex fails the cone condition
        ExtensionInfeasible: A pocket vertex admits no positive weights
    """
    tri = target.tri
    w = w.rebind(tri)
    _check_preconditions(target, w)
    y = target.coords
    boundary = list(tri.boundary)
    boundary_pts = y[boundary]

    with LogContext(logger, operation="build_extension", boundary=len(boundary)) as log:
        hull_idx = convex_hull_indices(boundary_pts)
        hull_pts = boundary_pts[hull_idx]
        # Straight points on a hull edge stay on the extended boundary and
        # close the lid of the adjacent pocket, so every pocket has positive area.
        on_hull = [_on_hull(p, hull_pts) for p in boundary_pts]

        pockets: List[Tuple[int, ...]] = []
        delta_faces: List[Face] = []
        m = len(boundary)
        first = on_hull.index(True)
        k = first
        while True:
            nxt = (k + 1) % m
            if not on_hull[nxt]:
                chain = []
                while not on_hull[nxt]:
                    chain.append(boundary[nxt])
                    nxt = (nxt + 1) % m
                pocket = (boundary[k], boundary[nxt], *reversed(chain))
                local = ear_clip(y[list(pocket)])
                delta_faces.extend(
                    (pocket[a], pocket[b], pocket[c]) for (a, b, c) in local
                )
                pockets.append(pocket)
            k = nxt
            if k == first:
                break

        ext_tri = build_triangulation(
            list(tri.faces) + delta_faces,
            tri.vertex_count,
            allow_unreferenced=True,
            check_connectivity=False,
        )
        ext_drawing = PlanarDrawing(tri=ext_tri, coords=y)
        labels = classify_boundary_vertices(target)
        ext_boundary = ext_tri.boundary_set
        weights = _extension_weights(target, w, ext_drawing, labels, delta_faces, ext_boundary)

        residual = laplace_residual(ext_drawing, weights)
        interior = list(ext_tri.interior)
        norms = np.hypot(residual[interior, 0], residual[interior, 1])
        max_residual = float(norms.max()) if interior else 0.0
        log.info(
            "extension_built",
            pockets=len(pockets),
            delta_faces=len(delta_faces),
            max_interior_residual=max_residual,
        )

    return ExtensionResult(
        hull=make_polygon(hull_pts),
        boundary_polygon=make_polygon(y[list(ext_tri.boundary)]),
        pockets=tuple(pockets),
        delta_faces=tuple(delta_faces),
        drawing=ext_drawing,
        weights=weights,
        max_interior_residual=max_residual,
    )


def _extension_weights(
    target: PlanarDrawing,
    w: EdgeWeights,
    ext_drawing: PlanarDrawing,
    labels,
    delta_faces: List[Face],
    ext_boundary: Set[int],
) -> EdgeWeights:
    tri = target.tri
    ext_tri = ext_drawing.tri
    delta_neighbors: Dict[int, Set[int]] = {}
    for a, b, c in delta_faces:
        for u, v in ((a, b), (b, c), (c, a)):
            delta_neighbors.setdefault(u, set()).add(v)
            delta_neighbors.setdefault(v, set()).add(u)

    values = np.ones(len(ext_tri.directed_edges))
    pocket_vertices = [v for v in tri.boundary if v not in ext_boundary]
    forces = dict(zip(pocket_vertices, exact_forces(target, w, pocket_vertices)))

    for i in range(ext_tri.vertex_count):
        if not ext_tri.neighbors[i] or i in ext_boundary:
            continue
        if not tri.is_boundary(i):
            for j in tri.neighbors[i]:
                values[ext_tri.edge_index[(i, j)]] = w[(i, j)]
            continue

        if not labels[i].is_reflex:
            vectors = neighbor_cone_vectors(ext_drawing, i)
            result = solve_positive_combination(vectors, (0.0, 0.0))
            if not result.feasible:
                raise ExtensionInfeasible(i)
            alphas = np.asarray(result.alphas)
            alphas = alphas / alphas.mean()
            for j, a in zip(ext_tri.neighbors[i], alphas):
                values[ext_tri.edge_index[(i, j)]] = a
            continue

        fx, fy = forces[i]
        nbrs = sorted(delta_neighbors[i])
        vectors = ext_drawing.coords[nbrs] - ext_drawing.coords[i]
        result = solve_positive_combination(vectors, (-fx, -fy))
        if not result.feasible:
            raise ExtensionInfeasible(i)
        combined = {j: w[(i, j)] for j in tri.neighbors[i]}
        for j, a in zip(nbrs, result.alphas):
            combined[j] = combined.get(j, 0.0) + a
        for j, value in combined.items():
            values[ext_tri.edge_index[(i, j)]] = value

    return EdgeWeights(tri=ext_tri, values=values)


def reproduce_from_extension(ext: ExtensionResult) -> PlanarDrawing:
    """Re-solve the Dirichlet problem on the extended mesh with convex boundary."""
    assignment = {v: ext.drawing.coords[v] for v in ext.tri.boundary}
    return harmonic_embed(ext.tri, ext.weights, assignment)
