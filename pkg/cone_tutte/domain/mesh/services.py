"""
Mesh operations: triangulation building, drawings, polygons and boundary
classification.
"""

from collections import deque
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import NDArray

from cone_tutte.config import settings
from cone_tutte.core.exceptions import (
    BoundaryMismatch,
    DegenerateBoundary,
    MultipleBoundaryLoops,
    NonManifoldEdge,
    NotDisk,
    UnreferencedVertices,
)
from cone_tutte.core.logging import get_logger
from cone_tutte.domain.mesh.entities import (
    DirectedEdge,
    Face,
    PlanarDrawing,
    TargetPolygon,
    Triangulation,
    VertexClass,
)
from cone_tutte.domain.mesh.validators import (
    check_three_connected,
    validate_coordinates,
    validate_faces,
    validate_polygon,
)
from cone_tutte.utils.predicates import dot_exact, orient2d, signed_area_exact

logger = get_logger(__name__)


def build_triangulation(
    faces: Sequence[Sequence[int]],
    n: int,
    allow_unreferenced: bool = False,
    check_connectivity: Optional[bool] = None,
) -> Triangulation:
    """
    Build a validated, consistently oriented disk triangulation.

    Args:
        faces: Vertex index triples
        n: Number of vertices
        allow_unreferenced: Accept vertices that belong to no face
        check_connectivity: Run the 3-connectivity check (default from settings)

    Returns:
        Triangulation with its boundary cycle and neighbor lists

    Raises:
        InvalidFace, NonManifoldEdge, MultipleBoundaryLoops, NotDisk,
        UnreferencedVertices, NotThreeConnected
    """
    face_array = validate_faces(faces, n)
    if face_array.shape[0] == 0:
        raise NotDisk("Mesh has no faces")

    # Edge -> incident faces
    incident: Dict[Tuple[int, int], List[int]] = {}
    for f, (a, b, c) in enumerate(face_array.tolist()):
        for u, v in ((a, b), (b, c), (c, a)):
            incident.setdefault((min(u, v), max(u, v)), []).append(f)
    for edge, owners in incident.items():
        if len(owners) > 2:
            raise NonManifoldEdge(edge, len(owners))

    oriented = _orient_faces(face_array, incident)
    boundary = _boundary_cycle(oriented, incident)

    referenced = np.unique(face_array)
    if referenced.shape[0] != n and not allow_unreferenced:
        missing = sorted(set(range(n)) - set(referenced.tolist()))
        raise UnreferencedVertices(missing)

    euler = referenced.shape[0] - len(incident) + face_array.shape[0]
    if euler != 1:
        raise NotDisk(f"Euler characteristic is {euler}, expected 1")

    check = settings.CHECK_THREE_CONNECTED if check_connectivity is None else check_connectivity
    if check:
        check_three_connected(incident.keys())

    adjacency: List[set] = [set() for _ in range(n)]
    for u, v in incident:
        adjacency[u].add(v)
        adjacency[v].add(u)
    neighbors = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
    directed = tuple(sorted((i, j) for i in range(n) for j in neighbors[i]))

    logger.debug(
        "triangulation_built",
        vertices=n,
        faces=len(oriented),
        boundary_length=len(boundary),
    )
    return Triangulation(
        vertex_count=n,
        faces=tuple(oriented),
        boundary=tuple(boundary),
        neighbors=neighbors,
        directed_edges=directed,
        edge_index={e: k for k, e in enumerate(directed)},
    )


def _orient_faces(
    face_array: NDArray[np.int64], incident: Dict[Tuple[int, int], List[int]]
) -> List[Face]:
    """Propagate the first face's orientation across shared edges."""
    faces: List[Optional[Face]] = [None] * face_array.shape[0]
    raw = [tuple(int(v) for v in row) for row in face_array.tolist()]
    faces[0] = raw[0]  # type: ignore[assignment]
    queue = deque([0])
    while queue:
        f = queue.popleft()
        a, b, c = faces[f]  # type: ignore[misc]
        for u, v in ((a, b), (b, c), (c, a)):
            for g in incident[(min(u, v), max(u, v))]:
                if g == f:
                    continue
                # Neighbor must traverse the shared edge as v -> u
                x, y, z = raw[g]
                want = (x, z, y) if (u, v) in ((x, y), (y, z), (z, x)) else (x, y, z)
                if faces[g] is None:
                    faces[g] = want  # type: ignore[assignment]
                    queue.append(g)
                elif set(_directed(faces[g])) != set(_directed(want)):  # type: ignore[arg-type]
                    raise NotDisk("Mesh is not orientable")
    if any(face is None for face in faces):
        raise NotDisk("Mesh faces are not edge-connected")
    return faces  # type: ignore[return-value]


def _directed(face: Face) -> Tuple[DirectedEdge, ...]:
    a, b, c = face
    return ((a, b), (b, c), (c, a))


def _boundary_cycle(
    faces: List[Face], incident: Dict[Tuple[int, int], List[int]]
) -> List[int]:
    successor: Dict[int, int] = {}
    for face in faces:
        for u, v in _directed(face):
            if len(incident[(min(u, v), max(u, v))]) == 1:
                if u in successor:
                    raise MultipleBoundaryLoops(f"Boundary passes through vertex {u} twice")
                successor[u] = v
    if not successor:
        raise NotDisk("Mesh has no boundary")

    start = min(successor)
    cycle = [start]
    v = successor[start]
    while v != start:
        if v not in successor or len(cycle) > len(successor):
            raise MultipleBoundaryLoops()
        cycle.append(v)
        v = successor[v]
    if len(cycle) != len(successor):
        raise MultipleBoundaryLoops(
            f"Boundary cycle through {start} covers {len(cycle)} of {len(successor)} boundary edges"
        )
    return cycle


def make_drawing(
    tri: Triangulation, coords: Union[Sequence[Sequence[float]], NDArray[np.float64]]
) -> PlanarDrawing:
    """
    Attach coordinates to a triangulation.

    The triangulation is re-oriented when needed so that its boundary cycle
    runs counter-clockwise in this drawing.
    """
    referenced = [v for v in range(tri.vertex_count) if tri.neighbors[v]]
    arr = validate_coordinates(coords, n=tri.vertex_count, vertices=referenced)
    if signed_area_exact(arr[list(tri.boundary)]) < 0:
        tri = tri.reversed()
    return PlanarDrawing(tri=tri, coords=arr)


def make_polygon(points: Union[Sequence[Sequence[float]], NDArray[np.float64]]) -> TargetPolygon:
    """Validate and wrap a simple counter-clockwise polygon."""
    arr = validate_coordinates(points)
    validate_polygon(arr)
    return TargetPolygon(vertices=arr)


def assign_boundary(
    tri: Triangulation, polygon: TargetPolygon, start: int = 0
) -> Dict[int, NDArray[np.float64]]:
    """
    Map the boundary cycle onto polygon vertices in order.

    Args:
        tri: Triangulation whose boundary is assigned
        polygon: Target polygon with as many vertices as the boundary cycle
        start: Polygon index receiving the first boundary vertex

    Raises:
        BoundaryMismatch: Lengths differ
    """
    m = len(polygon)
    if m != len(tri.boundary):
        raise BoundaryMismatch(
            f"Boundary cycle has {len(tri.boundary)} vertices, polygon has {m}"
        )
    return {v: polygon.vertices[(k + start) % m] for k, v in enumerate(tri.boundary)}


def classify_points(points: NDArray[np.float64]) -> List[VertexClass]:
    """Classify each vertex of a closed counter-clockwise point sequence."""
    m = points.shape[0]
    labels = []
    for k in range(m):
        prev, cur, nxt = points[k - 1], points[k], points[(k + 1) % m]
        turn = orient2d(prev, cur, nxt)
        if turn > 0:
            labels.append(VertexClass.STRICTLY_CONVEX)
        elif turn < 0:
            labels.append(VertexClass.STRICTLY_REFLEX)
        elif _forward(prev, cur, nxt):
            labels.append(VertexClass.STRAIGHT)
        else:
            raise DegenerateBoundary(f"Boundary folds back on itself at position {k}")
    return labels


def _forward(prev: NDArray[np.float64], cur: NDArray[np.float64], nxt: NDArray[np.float64]) -> bool:
    """For collinear prev, cur, nxt: True when cur lies strictly between them."""
    return dot_exact(prev, nxt) - dot_exact(prev, cur) - dot_exact(cur, nxt) + dot_exact(cur, cur) < 0


def classify_boundary_vertices(
    obj: Union[PlanarDrawing, TargetPolygon],
) -> Mapping[int, VertexClass]:
    """
    Label boundary vertices strictly convex, straight or strictly reflex.

    Args:
        obj: A drawing (keys are vertex indices) or a polygon (keys are
            positions along the polygon)

    Raises:
        DegenerateBoundary: Two consecutive boundary points fold back
    """
    if isinstance(obj, PlanarDrawing):
        labels = classify_points(obj.boundary_points())
        return dict(zip(obj.tri.boundary, labels))
    return dict(enumerate(classify_points(obj.vertices)))
