"""Mesh factories: small hand-built disks, grid meshes and random triangulations."""

from typing import Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from scipy.spatial import Delaunay

from cone_tutte.core.exceptions import MeshValidationException
from cone_tutte.domain.mesh.entities import PlanarDrawing, TargetPolygon, Triangulation
from cone_tutte.domain.mesh.services import build_triangulation, make_drawing, make_polygon

Cell = Tuple[int, int]

SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
L_SHAPE = [(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, 2.0), (0.0, 2.0)]
U_SHAPE = [
    (0.0, 0.0),
    (3.0, 0.0),
    (3.0, 3.0),
    (2.0, 3.0),
    (2.0, 1.0),
    (1.0, 1.0),
    (1.0, 3.0),
    (0.0, 3.0),
]
L_CELLS = [(0, 0), (1, 0), (0, 1)]
U_CELLS = [(0, 0), (1, 0), (2, 0), (0, 1), (2, 1), (0, 2), (2, 2)]
PLUS_CELLS = [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]


def square_fan() -> Triangulation:
    """Unit square corners 0..3 around one interior vertex 4."""
    return build_triangulation([(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)], 5)


def square_fan_drawing(center: Sequence[float] = (0.5, 0.5)) -> PlanarDrawing:
    return make_drawing(square_fan(), np.array(SQUARE + [tuple(center)]))


def grid_mesh(cells: Iterable[Cell], step: float = 0.5, scale: float = 1.0) -> PlanarDrawing:
    """
    Lattice drawing of a union of unit cells.

    Each unit cell is cut into (1/step)^2 squares, and every square into
    four triangles around its center.
    """
    k = int(round(1.0 / step))
    squares: Set[Cell] = set()
    for cx, cy in cells:
        for i in range(k):
            for j in range(k):
                squares.add((cx * k + i, cy * k + j))

    index = {}
    coords: List[Tuple[float, float]] = []

    def vertex(key: Tuple[float, float]) -> int:
        if key not in index:
            index[key] = len(coords)
            coords.append((key[0] * step * scale, key[1] * step * scale))
        return index[key]

    faces = []
    for i, j in sorted(squares):
        corners = [vertex((i, j)), vertex((i + 1, j)), vertex((i + 1, j + 1)), vertex((i, j + 1))]
        center = vertex((i + 0.5, j + 0.5))
        for a in range(4):
            faces.append((corners[a], corners[(a + 1) % 4], center))
    tri = build_triangulation(faces, len(coords))
    return make_drawing(tri, np.array(coords))


def polar_wheel(boundary: int, rings: int = 2) -> PlanarDrawing:
    """
    Rotationally symmetric disk mesh: a center vertex and ``rings`` rings
    of ``boundary`` vertices, the outermost ring being the boundary.

    Under uniform weights the center lands on the mean of the boundary
    points for any boundary assignment.
    """
    m = boundary

    def ring_vertex(r: int, k: int) -> int:
        return 1 + (r - 1) * m + (k % m)

    faces = []
    for k in range(m):
        faces.append((0, ring_vertex(1, k), ring_vertex(1, k + 1)))
    for r in range(1, rings):
        for k in range(m):
            a, a1 = ring_vertex(r, k), ring_vertex(r, k + 1)
            b, b1 = ring_vertex(r + 1, k), ring_vertex(r + 1, k + 1)
            faces.append((a, b, b1))
            faces.append((a, b1, a1))
    coords = [(0.0, 0.0)]
    for r in range(1, rings + 1):
        for k in range(m):
            angle = 2.0 * np.pi * k / m
            coords.append((r / rings * np.cos(angle), r / rings * np.sin(angle)))
    tri = build_triangulation(faces, 1 + rings * m)
    return make_drawing(tri, np.array(coords))


def sample_boundary(points: Sequence[Tuple[float, float]], count: int) -> TargetPolygon:
    """``count`` points equally spaced by arc length, starting at vertex 0.

    Polygon vertices are kept exactly when the spacing divides every edge.
    """
    pts = np.asarray(points, dtype=np.float64)
    edges = np.roll(pts, -1, axis=0) - pts
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    spacing = lengths.sum() / count
    out = []
    for p, e, length in zip(pts, edges, lengths):
        steps = int(round(length / spacing))
        for s in range(steps):
            out.append(tuple(p + e * (s / steps)))
    return make_polygon(out)


def star_notch(apex: float = 1.0, half_width: float = 0.2) -> List[Tuple[float, float]]:
    """The square [0, 2]^2 with a V-shaped notch cut down from the top edge to (1, apex)."""
    return [
        (0.0, 0.0),
        (2.0, 0.0),
        (2.0, 2.0),
        (1.0 + half_width, 2.0),
        (1.0, apex),
        (1.0 - half_width, 2.0),
        (0.0, 2.0),
    ]


def resample_polygon(points: Sequence[Tuple[float, float]], count: int) -> TargetPolygon:
    """
    ``count`` boundary points: every polygon vertex, plus extra points spread
    evenly along each edge in proportion to its length.
    """
    pts = np.asarray(points, dtype=np.float64)
    extra = count - pts.shape[0]
    if extra < 0:
        raise ValueError(f"Cannot place {pts.shape[0]} vertices on {count} points")
    edges = np.roll(pts, -1, axis=0) - pts
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    quota = extra * lengths / lengths.sum()
    share = np.floor(quota).astype(int)
    leftover = extra - int(share.sum())
    share[np.argsort(share - quota)[:leftover]] += 1
    out = []
    for p, e, k in zip(pts, edges, share):
        for s in range(k + 1):
            out.append(tuple(p + e * (s / (k + 1))))
    return make_polygon(out)


def regular_polygon(m: int, radius: float = 1.0, phase: float = 0.0) -> TargetPolygon:
    angles = phase + 2.0 * np.pi * np.arange(m) / m
    return make_polygon(np.column_stack([radius * np.cos(angles), radius * np.sin(angles)]))


def random_convex_polygon(m: int, rng: np.random.Generator) -> TargetPolygon:
    """Points at sorted random angles on an ellipse: strictly convex."""
    angles = np.sort(rng.uniform(-np.pi, np.pi, size=m))
    while np.min(np.diff(np.append(angles, angles[0] + 2 * np.pi))) < 1e-3:
        angles = np.sort(rng.uniform(-np.pi, np.pi, size=m))
    a, b = rng.uniform(0.5, 2.0, size=2)
    return make_polygon(np.column_stack([a * np.cos(angles), b * np.sin(angles)]))


def random_disk_drawing(
    n: int, rng: np.random.Generator, boundary: Optional[int] = None, attempts: int = 50
) -> PlanarDrawing:
    """
    Delaunay triangulation of the unit disk with ``boundary`` points on the
    circle, a staggered ring just inside it and random interior points.
    Retries until the mesh is a 3-connected disk.
    """
    m = boundary or max(8, n // 5)
    for _ in range(attempts):
        angles = 2.0 * np.pi * np.arange(m) / m
        outer = np.column_stack([np.cos(angles), np.sin(angles)])
        inner = 0.88 * np.column_stack([np.cos(angles + np.pi / m), np.sin(angles + np.pi / m)])
        rest = max(0, n - 2 * m)
        radius = 0.8 * np.sqrt(rng.uniform(0.0, 1.0, size=rest))
        theta = rng.uniform(-np.pi, np.pi, size=rest)
        interior = np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])
        pts = np.vstack([outer, inner, interior])
        try:
            tri = build_triangulation(Delaunay(pts).simplices.tolist(), pts.shape[0])
            return make_drawing(tri, pts)
        except MeshValidationException:
            continue
    raise RuntimeError("Could not draw a 3-connected disk mesh")


def jitter_interior(drawing: PlanarDrawing, rng: np.random.Generator, amount: float) -> PlanarDrawing:
    """Move interior vertices by up to ``amount`` in each coordinate."""
    coords = drawing.coords.copy()
    interior = list(drawing.tri.interior)
    coords[interior] += rng.uniform(-amount, amount, size=(len(interior), 2))
    return make_drawing(drawing.tri, coords)
