from cone_tutte.domain.mesh.entities import (
    PlanarDrawing,
    TargetPolygon,
    Triangulation,
    VertexClass,
)
from cone_tutte.domain.mesh.services import (
    assign_boundary,
    build_triangulation,
    classify_boundary_vertices,
    make_drawing,
    make_polygon,
)

__all__ = [
    "PlanarDrawing",
    "TargetPolygon",
    "Triangulation",
    "VertexClass",
    "assign_boundary",
    "build_triangulation",
    "classify_boundary_vertices",
    "make_drawing",
    "make_polygon",
]
