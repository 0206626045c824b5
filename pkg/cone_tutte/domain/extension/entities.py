"""
Convex-extension entities.
"""

from dataclasses import dataclass
from typing import Tuple

from cone_tutte.domain.harmonic.entities import EdgeWeights
from cone_tutte.domain.mesh.entities import Face, PlanarDrawing, TargetPolygon


@dataclass(frozen=True)
class ExtensionResult:
    """A triangulation of the convex hull that contains the target drawing.

    ``pockets`` lists each pocket polygon as mesh vertex ids in
    counter-clockwise order, starting with the two hull vertices that close
    it. ``boundary_polygon`` is the extended boundary (hull vertices and any
    target vertices lying on hull edges), in the order of the extended
    boundary cycle.
    """

    hull: TargetPolygon
    boundary_polygon: TargetPolygon
    pockets: Tuple[Tuple[int, ...], ...]
    delta_faces: Tuple[Face, ...]
    drawing: PlanarDrawing
    weights: EdgeWeights
    max_interior_residual: float

    @property
    def tri(self):
        return self.drawing.tri
