"""
Discrete harmonic maps: weight schemes, the Dirichlet solve and the
discrete Laplacian.
"""

import time
from typing import Literal, Mapping, Optional, Sequence

import numpy as np
import scipy.sparse as sp
from numpy.typing import NDArray
from scipy.sparse.linalg import LinearOperator, bicgstab, gmres, splu

from cone_tutte.config import settings
from cone_tutte.core.exceptions import (
    BoundaryMismatch,
    DegenerateBoundary,
    NonPositiveRange,
    PolygonNotSimple,
    ResidualTooLarge,
    SingularSystem,
)
from cone_tutte.core.logging import LogContext, get_logger
from cone_tutte.domain.harmonic.entities import EdgeWeights, LaplaceResidual
from cone_tutte.domain.mesh.entities import PlanarDrawing, Triangulation
from cone_tutte.domain.mesh.validators import validate_coordinates, validate_polygon
from cone_tutte.utils.predicates import signed_area_exact

logger = get_logger(__name__)


def weight_scheme(
    name: Literal["uniform", "random_positive", "random_uniform"],
    tri: Triangulation,
    seed: Optional[int] = None,
    lo: float = 0.1,
    hi: float = 10.0,
) -> EdgeWeights:
    """
    Generate weights for every directed edge.

    ``random_positive`` draws each w_ij independently from U[lo, hi] with
    numpy's default generator, in ascending (i, j) order, so a seed fixes
    the weights. ``random_uniform`` is accepted as an alias.

    Raises:
        NonPositiveRange: lo <= 0 or hi < lo
        ValueError: Unknown scheme name
    """
    if name == "uniform":
        return EdgeWeights.uniform(tri)
    if name in ("random_positive", "random_uniform"):
        if not (lo > 0 and hi >= lo):
            raise NonPositiveRange(lo, hi)
        rng = np.random.default_rng(settings.SEED if seed is None else seed)
        return EdgeWeights(tri=tri, values=rng.uniform(lo, hi, size=len(tri.directed_edges)))
    raise ValueError(f"Unknown weight scheme: {name}")


def laplace_residual(drawing: PlanarDrawing, w: EdgeWeights) -> LaplaceResidual:
    """Return r_i = sum_j w_ij (y_j - y_i) for every vertex."""
    edges = np.asarray(w.tri.directed_edges, dtype=np.int64).reshape(-1, 2)
    y = drawing.coords
    contrib = w.values[:, None] * (y[edges[:, 1]] - y[edges[:, 0]])
    residual = np.zeros_like(y)
    np.add.at(residual, edges[:, 0], contrib)
    return residual


def interior_residual_bound(w: EdgeWeights, diameter: float) -> NDArray[np.float64]:
    """Per-vertex residual bound tol_abs + tol_rel * (sum_j w_ij) * diam."""
    edges = np.asarray(w.tri.directed_edges, dtype=np.int64).reshape(-1, 2)
    row_sums = np.zeros(w.tri.vertex_count)
    np.add.at(row_sums, edges[:, 0], w.values)
    return settings.tol_abs(diameter) + settings.TOL_REL * row_sums * diameter


def harmonic_embed(
    tri: Triangulation,
    w: EdgeWeights,
    boundary_assignment: Mapping[int, Sequence[float]],
) -> PlanarDrawing:
    """
    Solve for the drawing that is discrete-harmonic at interior vertices.

    Args:
        tri: Disk triangulation
        w: Positive directed weights on tri
        boundary_assignment: Boundary vertex -> target point; read in boundary
            order the points must form a simple counter-clockwise polygon

    Returns:
        Drawing y with y = boundary_assignment on the boundary and
        sum_j w_ij (y_j - y_i) = 0 at every interior vertex

    Raises:
        BoundaryMismatch: Keys are not the boundary cycle, or the polygon
            is clockwise or self-intersecting in boundary order
        SingularSystem: Neither solver produced a finite solution
        ResidualTooLarge: Solution misses the residual bound
    """
    w = w.rebind(tri) if w.tri is not tri else w
    boundary = tri.boundary
    if set(boundary_assignment) != set(boundary):
        raise BoundaryMismatch(
            f"Assignment covers {len(boundary_assignment)} vertices, "
            f"boundary cycle has {len(boundary)}"
        )
    polygon = validate_coordinates([boundary_assignment[v] for v in boundary])
    if signed_area_exact(polygon) <= 0:
        raise BoundaryMismatch("Boundary assignment reverses the boundary orientation")
    try:
        validate_polygon(polygon)
    except (DegenerateBoundary, PolygonNotSimple) as exc:
        raise BoundaryMismatch(f"Boundary assignment is not a simple polygon: {exc}") from exc

    n = tri.vertex_count
    coords = np.zeros((n, 2))
    coords[list(boundary)] = polygon
    interior = np.asarray(tri.interior, dtype=np.int64)
    diameter = float(np.hypot(*(polygon.max(axis=0) - polygon.min(axis=0))))

    with LogContext(logger, operation="harmonic_embed", vertices=n, interior=len(interior)) as log:
        if interior.size:
            coords[interior] = _solve_interior(tri, w, coords, interior, log)
        residual = laplace_residual(PlanarDrawing(tri=tri, coords=coords), w)
        bound = interior_residual_bound(w, diameter)
        if interior.size:
            norms = np.hypot(residual[interior, 0], residual[interior, 1])
            excess = norms / bound[interior]
            worst = int(np.argmax(excess))
            log.debug("interior_residual", max_residual=float(norms.max()), worst_ratio=float(excess[worst]))
            if excess[worst] > 1.0:
                raise ResidualTooLarge(float(norms[worst]), float(bound[interior][worst]))

    coords.setflags(write=False)
    return PlanarDrawing(tri=tri, coords=coords)


def _laplace_system(
    tri: Triangulation,
    w: EdgeWeights,
    coords: NDArray[np.float64],
    interior: NDArray[np.int64],
) -> tuple:
    n = tri.vertex_count
    local = np.full(n, -1, dtype=np.int64)
    local[interior] = np.arange(interior.size)
    edges = np.asarray(tri.directed_edges, dtype=np.int64).reshape(-1, 2)
    rows_global, cols_global = edges[:, 0], edges[:, 1]
    keep = local[rows_global] >= 0
    rows, cols, vals = rows_global[keep], cols_global[keep], w.values[keep]

    diag = np.zeros(interior.size)
    np.add.at(diag, local[rows], vals)

    inner = local[cols] >= 0
    matrix = sp.coo_matrix(
        (
            np.concatenate([diag, -vals[inner]]),
            (
                np.concatenate([np.arange(interior.size), local[rows[inner]]]),
                np.concatenate([np.arange(interior.size), local[cols[inner]]]),
            ),
        ),
        shape=(interior.size, interior.size),
    ).tocsr()

    rhs = np.zeros((interior.size, 2))
    outer = ~inner
    np.add.at(rhs, local[rows[outer]], vals[outer, None] * coords[cols[outer]])
    return matrix, rhs, diag


def _solve_interior(
    tri: Triangulation,
    w: EdgeWeights,
    coords: NDArray[np.float64],
    interior: NDArray[np.int64],
    log,
) -> NDArray[np.float64]:
    matrix, rhs, diag = _laplace_system(tri, w, coords, interior)
    started = time.perf_counter()

    if interior.size <= settings.DIRECT_SOLVER_MAX_N:
        try:
            lu = splu(matrix.tocsc())
            solution = lu.solve(rhs)
            # One step of refinement keeps the residual at round-off level
            solution = solution + lu.solve(rhs - matrix @ solution)
        except RuntimeError as exc:
            log.warning("direct_solve_failed", reason=str(exc))
        else:
            if np.all(np.isfinite(solution)):
                log.debug("laplace_solved", method="direct", seconds=time.perf_counter() - started)
                return solution
            log.warning("direct_solve_failed", reason="non-finite solution")

    solution = _solve_iterative(matrix, rhs, diag)
    log.debug("laplace_solved", method="iterative", seconds=time.perf_counter() - started)
    return solution


def _solve_iterative(
    matrix: sp.csr_matrix, rhs: NDArray[np.float64], diag: NDArray[np.float64]
) -> NDArray[np.float64]:
    if np.any(diag <= 0):
        raise SingularSystem("An interior vertex has no outgoing weight")
    inv_diag = 1.0 / diag
    jacobi = LinearOperator(matrix.shape, matvec=lambda x: inv_diag * x)
    columns = []
    for d in range(2):
        x, info = bicgstab(
            matrix, rhs[:, d], M=jacobi, rtol=settings.ITERATIVE_RTOL, maxiter=settings.ITERATIVE_MAXITER
        )
        if info != 0 or not np.all(np.isfinite(x)):
            x, info = gmres(
                matrix,
                rhs[:, d],
                M=jacobi,
                rtol=settings.ITERATIVE_RTOL,
                restart=100,
                maxiter=settings.ITERATIVE_MAXITER,
            )
        if info != 0 or not np.all(np.isfinite(x)):
            raise SingularSystem(f"Iterative solvers did not converge (info={info})")
        columns.append(x)
    return np.column_stack(columns)
