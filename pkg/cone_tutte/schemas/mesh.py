"""
Mesh-side artifacts: triangulations, polygons, weights and drawings.
"""

from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import Field, field_validator, model_validator

from cone_tutte.core.exceptions import MeshMismatch
from cone_tutte.domain.harmonic.entities import EdgeWeights
from cone_tutte.domain.mesh.entities import PlanarDrawing, TargetPolygon, Triangulation
from cone_tutte.domain.mesh.services import build_triangulation, make_drawing, make_polygon
from cone_tutte.schemas.common import Point, VersionedSchema


class MeshFile(VersionedSchema):
    """Triangulation as a vertex count and face triples."""

    n: int = Field(..., ge=3, description="Number of vertices")
    faces: List[Tuple[int, int, int]] = Field(..., min_length=1, description="Vertex triples")

    @model_validator(mode="after")
    def validate_indices(self) -> "MeshFile":
        for face in self.faces:
            if any(not 0 <= k < self.n for k in face):
                raise ValueError(f"Face {list(face)} references a vertex outside 0..{self.n - 1}")
        return self

    @classmethod
    def from_domain(cls, tri: Triangulation) -> "MeshFile":
        return cls(n=tri.vertex_count, faces=[tuple(f) for f in tri.faces])

    def to_domain(self, **kwargs: bool) -> Triangulation:
        return build_triangulation(self.faces, self.n, **kwargs)


class PolygonFile(VersionedSchema):
    """Simple counter-clockwise polygon."""

    vertices: List[Point] = Field(..., min_length=3)

    @classmethod
    def from_domain(cls, polygon: TargetPolygon) -> "PolygonFile":
        return cls(vertices=[(float(x), float(y)) for x, y in polygon.vertices])

    def to_domain(self) -> TargetPolygon:
        return make_polygon(self.vertices)


class WeightsFile(VersionedSchema):
    """Directed edge weights as (i, j, w_ij) rows."""

    n: int = Field(..., ge=3)
    edges: List[Tuple[int, int, float]] = Field(..., min_length=1)

    @field_validator("edges")
    @classmethod
    def positive(cls, edges: List[Tuple[int, int, float]]) -> List[Tuple[int, int, float]]:
        for i, j, w in edges:
            if w <= 0:
                raise ValueError(f"Weight of ({i}, {j}) must be positive, got {w}")
        return edges

    @classmethod
    def from_domain(cls, w: EdgeWeights) -> "WeightsFile":
        return cls(
            n=w.tri.vertex_count,
            edges=[(i, j, float(v)) for (i, j), v in zip(w.tri.directed_edges, w.values)],
        )

    def to_domain(self, tri: Triangulation) -> EdgeWeights:
        mapping: Dict[Tuple[int, int], float] = {(i, j): w for i, j, w in self.edges}
        return EdgeWeights.from_mapping(tri, mapping)


class DrawingFile(VersionedSchema):
    """Vertex positions, optionally carrying the faces they draw."""

    coords: List[Point] = Field(..., min_length=3)
    faces: Optional[List[Tuple[int, int, int]]] = None

    @classmethod
    def from_domain(cls, drawing: PlanarDrawing) -> "DrawingFile":
        return cls(
            coords=[(float(x), float(y)) for x, y in drawing.coords],
            faces=[tuple(f) for f in drawing.tri.faces],
        )

    def to_domain(self, tri: Optional[Triangulation] = None, **kwargs: bool) -> PlanarDrawing:
        """
        Rebuild the drawing.

        Args:
            tri: Triangulation to use when the file carries no faces
        """
        if tri is None:
            if self.faces is None:
                raise MeshMismatch("Drawing has no faces and no mesh was supplied")
            tri = build_triangulation(self.faces, len(self.coords), **kwargs)
        return make_drawing(tri, np.asarray(self.coords, dtype=np.float64))
