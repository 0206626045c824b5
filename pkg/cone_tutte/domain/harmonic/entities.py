"""
Directed edge weights over a triangulation.
"""

from dataclasses import dataclass
from typing import Dict, Mapping, Tuple

import numpy as np
from numpy.typing import NDArray

from cone_tutte.core.exceptions import MeshMismatch, MissingWeight, NonPositiveWeight
from cone_tutte.domain.mesh.entities import DirectedEdge, Triangulation

# Per-vertex 2-vectors sum_j w_ij (y_j - y_i)
LaplaceResidual = NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class EdgeWeights:
    """Positive weights on every directed edge, w_ij and w_ji independent.

    ``values[k]`` is the weight of ``tri.directed_edges[k]``.
    """

    tri: Triangulation
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (len(self.tri.directed_edges),):
            raise MeshMismatch(
                f"Expected {len(self.tri.directed_edges)} weights, got {values.shape}"
            )
        bad = np.flatnonzero(~np.isfinite(values) | (values <= 0))
        if bad.size:
            k = int(bad[0])
            raise NonPositiveWeight(self.tri.directed_edges[k], float(values[k]))
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(
        cls, tri: Triangulation, mapping: Mapping[Tuple[int, int], float]
    ) -> "EdgeWeights":
        """Build weights from a (i, j) -> w_ij mapping covering every directed edge."""
        values = np.empty(len(tri.directed_edges), dtype=np.float64)
        for k, edge in enumerate(tri.directed_edges):
            if edge not in mapping:
                raise MissingWeight(edge)
            values[k] = float(mapping[edge])
        return cls(tri=tri, values=values)

    @classmethod
    def uniform(cls, tri: Triangulation, value: float = 1.0) -> "EdgeWeights":
        return cls(tri=tri, values=np.full(len(tri.directed_edges), float(value)))

    def __getitem__(self, edge: DirectedEdge) -> float:
        return float(self.values[self.tri.edge_index[edge]])

    def rebind(self, tri: Triangulation) -> "EdgeWeights":
        """Same weights on a re-oriented copy of the same mesh."""
        if tri.directed_edges != self.tri.directed_edges:
            raise MeshMismatch("Weights belong to a different triangulation")
        return EdgeWeights(tri=tri, values=self.values)

    def updated(self, changes: Mapping[DirectedEdge, float]) -> "EdgeWeights":
        values = self.values.copy()
        for edge, value in changes.items():
            values[self.tri.edge_index[edge]] = value
        return EdgeWeights(tri=self.tri, values=values)

    def outgoing(self, i: int) -> Dict[int, float]:
        return {j: self[(i, j)] for j in self.tri.neighbors[i]}

    def as_dict(self) -> Dict[DirectedEdge, float]:
        return {e: float(v) for e, v in zip(self.tri.directed_edges, self.values)}
