"""
Mesh entities: combinatorial disk triangulations and their planar drawings.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Tuple

import numpy as np
from numpy.typing import NDArray

Face = Tuple[int, int, int]
DirectedEdge = Tuple[int, int]


class VertexClass(str, Enum):
    """Turn type of a polygon vertex, decided exactly."""

    STRICTLY_CONVEX = "strictly_convex"
    STRAIGHT = "straight"
    STRICTLY_REFLEX = "strictly_reflex"

    @property
    def is_reflex(self) -> bool:
        """Internal angle at least pi."""
        return self is not VertexClass.STRICTLY_CONVEX

    @property
    def is_convex(self) -> bool:
        """Internal angle at most pi."""
        return self is not VertexClass.STRICTLY_REFLEX


@dataclass(frozen=True, eq=False)
class Triangulation:
    """A consistently oriented triangulated topological disk.

    Faces are stored with a common orientation so that every interior edge
    appears once in each direction. ``boundary`` lists the single boundary
    cycle in the direction induced by the faces, starting from its smallest
    vertex index.
    """

    vertex_count: int
    faces: Tuple[Face, ...]
    boundary: Tuple[int, ...]
    neighbors: Tuple[Tuple[int, ...], ...]
    directed_edges: Tuple[DirectedEdge, ...]
    edge_index: Dict[DirectedEdge, int] = field(repr=False)

    @property
    def face_array(self) -> NDArray[np.int64]:
        return np.asarray(self.faces, dtype=np.int64).reshape(-1, 3)

    @property
    def boundary_set(self) -> FrozenSet[int]:
        return frozenset(self.boundary)

    @property
    def interior(self) -> Tuple[int, ...]:
        """Referenced vertices not on the boundary cycle, ascending."""
        on_boundary = self.boundary_set
        return tuple(
            v for v in range(self.vertex_count) if self.neighbors[v] and v not in on_boundary
        )

    @property
    def undirected_edges(self) -> List[Tuple[int, int]]:
        return [(i, j) for (i, j) in self.directed_edges if i < j]

    def is_boundary(self, v: int) -> bool:
        return v in self.boundary_set

    def boundary_position(self) -> Dict[int, int]:
        """Map boundary vertex -> position along the boundary cycle."""
        return {v: k for k, v in enumerate(self.boundary)}

    def face_set(self) -> FrozenSet[FrozenSet[int]]:
        return frozenset(frozenset(f) for f in self.faces)

    def same_mesh(self, other: "Triangulation") -> bool:
        """Same vertex count and the same unoriented faces."""
        return self.vertex_count == other.vertex_count and self.face_set() == other.face_set()

    def reversed(self) -> "Triangulation":
        """The same mesh with every face orientation flipped."""
        faces = tuple((a, c, b) for (a, b, c) in self.faces)
        boundary = (self.boundary[0],) + tuple(reversed(self.boundary[1:]))
        return Triangulation(
            vertex_count=self.vertex_count,
            faces=faces,
            boundary=boundary,
            neighbors=self.neighbors,
            directed_edges=self.directed_edges,
            edge_index=self.edge_index,
        )


@dataclass(frozen=True, eq=False)
class PlanarDrawing:
    """A straight-line drawing of a triangulation, one point per vertex."""

    tri: Triangulation
    coords: NDArray[np.float64]

    def point(self, v: int) -> NDArray[np.float64]:
        return self.coords[v]

    def boundary_points(self) -> NDArray[np.float64]:
        return self.coords[list(self.tri.boundary)]

    def face_signed_areas(self) -> NDArray[np.float64]:
        """Floating-point signed areas; exact signs live in the certifier."""
        f = self.tri.face_array
        a, b, c = self.coords[f[:, 0]], self.coords[f[:, 1]], self.coords[f[:, 2]]
        return 0.5 * (
            (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1])
            - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])
        )

    def diameter(self) -> float:
        pts = self.boundary_points()
        span = pts.max(axis=0) - pts.min(axis=0)
        return float(np.hypot(span[0], span[1]))


@dataclass(frozen=True, eq=False)
class TargetPolygon:
    """A simple counter-clockwise polygon."""

    vertices: NDArray[np.float64]

    def __len__(self) -> int:
        return int(self.vertices.shape[0])

    def diameter(self) -> float:
        span = self.vertices.max(axis=0) - self.vertices.min(axis=0)
        return float(np.hypot(span[0], span[1]))

    def perimeter(self) -> float:
        edges = np.roll(self.vertices, -1, axis=0) - self.vertices
        return float(np.hypot(edges[:, 0], edges[:, 1]).sum())
