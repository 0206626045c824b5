"""
Cone operations: boundary cones, the cone condition, and exact positive
combinations of planar vectors.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from cone_tutte.config import settings
from cone_tutte.core.exceptions import CoincidentPoints, CombinationFailed, ZeroVector
from cone_tutte.core.logging import get_logger
from cone_tutte.domain.cones.entities import (
    BoundaryCone,
    CombinationResult,
    ConeCertificate,
    ConeEntry,
    ExactVector,
    exact_cross,
    exact_dot,
    rot_ccw,
    to_exact,
)
from cone_tutte.domain.harmonic.entities import EdgeWeights
from cone_tutte.domain.mesh.entities import PlanarDrawing
from cone_tutte.domain.mesh.services import classify_boundary_vertices
from cone_tutte.utils.predicates import frac

logger = get_logger(__name__)


def cone_at_vertex(
    p_prev: Sequence[float], p: Sequence[float], p_next: Sequence[float]
) -> BoundaryCone:
    """
    Build the boundary cone at p for the polygon path p_prev -> p -> p_next.

    A cone whose inward normals are opposite (for example p_prev == p_next)
    is returned with ``degenerate`` set and contains no vector.

    Raises:
        CoincidentPoints: p equals one of its neighbors
    """
    a, b, c = frac(p_prev), frac(p), frac(p_next)
    if b == a or b == c:
        raise CoincidentPoints(p)
    return BoundaryCone(
        apex=(float(p[0]), float(p[1])),
        edge_in=(b[0] - a[0], b[1] - a[1]),
        edge_out=(c[0] - b[0], c[1] - b[1]),
    )


def exact_forces(drawing: PlanarDrawing, w: EdgeWeights, vertices: Sequence[int]) -> List[ExactVector]:
    """Exact sum_j w_ij (y_j - y_i) for the given vertices."""
    forces = []
    for i in vertices:
        yi = frac(drawing.coords[i])
        fx, fy = Fraction(0), Fraction(0)
        for j in drawing.tri.neighbors[i]:
            wij = Fraction(w[(i, j)])
            yj = frac(drawing.coords[j])
            fx += wij * (yj[0] - yi[0])
            fy += wij * (yj[1] - yi[1])
        forces.append((fx, fy))
    return forces


def cone_condition_report(drawing: PlanarDrawing, w: EdgeWeights) -> ConeCertificate:
    """
    Evaluate the cone condition at every boundary vertex.

    The force r_i = sum_j w_ij (y_j - y_i) is computed exactly and tested
    exactly against the boundary cone of y_i. Strictly convex vertices are
    reported but do not enter the verdict.
    """
    tri = drawing.tri
    labels = classify_boundary_vertices(drawing)
    boundary = tri.boundary
    forces = exact_forces(drawing, w, boundary)
    entries = []
    m = len(boundary)
    for k, v in enumerate(boundary):
        cone = cone_at_vertex(
            drawing.coords[boundary[k - 1]], drawing.coords[v], drawing.coords[boundary[(k + 1) % m]]
        )
        force = forces[k]
        entries.append(
            ConeEntry(
                vertex=v,
                vertex_class=labels[v],
                force=(float(force[0]), float(force[1])),
                cone=cone,
                passes=cone.contains(force),
                margin=cone.margin(force),
            )
        )
    certificate = ConeCertificate(entries=tuple(entries))
    logger.info(
        "cone_condition_evaluated",
        boundary=m,
        reflex=sum(1 for e in entries if e.required),
        passes=certificate.passes,
        failing=list(certificate.failing),
    )
    return certificate


def neighbor_cone_vectors(drawing: PlanarDrawing, vertex: int) -> NDArray[np.float64]:
    """Generators y_j - y_i of the open neighbor cone at a vertex."""
    nbrs = list(drawing.tri.neighbors[vertex])
    return drawing.coords[nbrs] - drawing.coords[vertex]


# Positive combinations


def _dual_generators(vectors: List[ExactVector]) -> List[ExactVector]:
    """Normals c with <c, Y_j> >= 0 for all j that cut out cone(Y).

    Candidates are the two quarter turns and the vectors themselves; they
    include every extreme ray of the dual cone.
    """
    candidates: List[ExactVector] = []
    for y in vectors:
        candidates.extend([rot_ccw(y), (-rot_ccw(y)[0], -rot_ccw(y)[1]), y])
    return [c for c in candidates if all(exact_dot(c, y) >= 0 for y in vectors)]


def positively_spans(vectors: Sequence[Sequence[float]]) -> bool:
    """True iff strictly positive combinations of the vectors cover the plane."""
    exact = [to_exact(v) for v in vectors]
    if not exact or any(v == (0, 0) for v in exact):
        return False
    return not _dual_generators(exact)


def _decompose(r: ExactVector, vectors: List[ExactVector]) -> Optional[List[Fraction]]:
    """Non-negative coefficients on at most two generators summing to r."""
    beta = [Fraction(0)] * len(vectors)
    if r == (0, 0):
        return beta
    for j, y in enumerate(vectors):
        if exact_cross(y, r) == 0 and exact_dot(y, r) > 0:
            beta[j] = exact_dot(y, r) / exact_dot(y, y)
            return beta
    for a, ya in enumerate(vectors):
        if exact_cross(ya, r) <= 0:
            continue
        for b, yb in enumerate(vectors):
            det = exact_cross(ya, yb)
            if det > 0 and exact_cross(r, yb) > 0:
                beta[a] = exact_cross(r, yb) / det
                beta[b] = exact_cross(ya, r) / det
                return beta
    return None


def _shifted(goal: ExactVector, total: ExactVector, ys: List[ExactVector], t: Fraction) -> Optional[List[Fraction]]:
    """alpha = t + beta with beta decomposing goal - t * total."""
    beta = _decompose((goal[0] - t * total[0], goal[1] - t * total[1]), ys)
    return None if beta is None else [t + b for b in beta]


def _balanced(goal: ExactVector, total: ExactVector, ys: List[ExactVector]) -> Optional[List[Fraction]]:
    """
    alpha = t * u + beta for a base u >= 1 with sum_j u_j Y_j = 0.

    Needs -total in cone(Y). The shift t grows with beta, so that
    min(alpha) / max(alpha) >= 1 / (max(u) + 1) whatever the size of goal.
    """
    back = _decompose((-total[0], -total[1]), ys)
    beta = _decompose(goal, ys)
    if back is None or beta is None:
        return None
    base = [1 + b for b in back]
    t = max(Fraction(1), max(beta))
    return [t * u + b for u, b in zip(base, beta)]


def solve_positive_combination(
    vectors: Sequence[Sequence[float]],
    target: Sequence[float],
    alpha_min: Optional[float] = None,
) -> CombinationResult:
    """
    Find alpha_j > 0 with sum_j alpha_j Y_j = target, exactly.

    Feasible iff target lies in the relative interior of cone(Y). When
    -sum_j Y_j lies in cone(Y) the solution rides on a balanced base with
    zero sum; otherwise target is shifted by a positive multiple t of
    sum_j Y_j, staying inside cone(Y), and the remainder is decomposed on
    at most two generators.

    Args:
        vectors: Non-zero generators Y_j
        target: Right-hand side
        alpha_min: Relative floor min(alpha) / max(alpha) (default from settings)

    Returns:
        ``feasible`` with alphas meeting the floor; ``infeasible`` with c such
        that <c, Y_j> >= 0 and <c, target> < 0; ``degenerate`` when target
        lies on the boundary of cone(Y) (supporting c, <c, target> = 0) or so
        close to it that no combination meets the floor (nearest supporting
        c, <c, target> >= 0, when cone(Y) has one)

    Raises:
        ZeroVector: Some Y_j is zero
        CombinationFailed: The exact recombination misses the target
    """
    floor = Fraction(settings.ALPHA_MIN if alpha_min is None else alpha_min)
    ys = [to_exact(v) for v in vectors]
    if not ys:
        raise ZeroVector("No generators given")
    for y in ys:
        if y == (0, 0):
            raise ZeroVector()
    goal = to_exact(target)
    total = (sum((y[0] for y in ys), Fraction(0)), sum((y[1] for y in ys), Fraction(0)))

    duals = _dual_generators(ys)
    for c in duals:
        if exact_dot(c, goal) < 0:
            return CombinationResult(status="infeasible", certificate=(float(c[0]), float(c[1])))

    support: Optional[ExactVector] = None
    candidates: List[List[Fraction]] = []
    ratios = [(exact_dot(c, goal) / exact_dot(c, total), c) for c in duals if exact_dot(c, total) > 0]
    if ratios:
        t_max, support = min(ratios, key=lambda item: item[0])
        if t_max == 0:
            return CombinationResult(
                status="degenerate", certificate=(float(support[0]), float(support[1]))
            )
        for k in (8, 4, 12, 2, 14, 1, 15, 6, 10):
            alphas = _shifted(goal, total, ys, t_max * k / 16)
            if alphas is not None:
                candidates.append(alphas)
                if min(alphas) >= floor * max(alphas):
                    break
    else:
        alphas = _balanced(goal, total, ys) or _shifted(goal, total, ys, Fraction(1))
        if alphas is not None:
            candidates.append(alphas)

    if not candidates:
        raise CombinationFailed("No two generators decompose the shifted target")
    best = max(candidates, key=lambda a: min(a) / max(a))

    check = (sum(a * y[0] for a, y in zip(best, ys)), sum(a * y[1] for a, y in zip(best, ys)))
    if check != goal:
        raise CombinationFailed()
    ratio = min(best) / max(best)
    if ratio < floor:
        logger.debug("positive_combination_below_floor", ratio=float(ratio), floor=float(floor))
        return CombinationResult(
            status="degenerate",
            alphas=tuple(float(a) for a in best),
            exact_alphas=tuple(best),
            certificate=None if support is None else (float(support[0]), float(support[1])),
        )

    floats = np.array([float(a) for a in best])
    residual = floats @ np.asarray(vectors, dtype=np.float64) - np.asarray(target, dtype=np.float64)
    return CombinationResult(
        status="feasible",
        alphas=tuple(floats.tolist()),
        exact_alphas=tuple(best),
        residual=(float(residual[0]), float(residual[1])),
    )
