"""
Cone entities: boundary cones, cone-condition certificates and positive
combination results.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from cone_tutte.domain.mesh.entities import VertexClass
from cone_tutte.utils.predicates import frac

ExactVector = Tuple[Fraction, Fraction]


def rot_ccw(v: ExactVector) -> ExactVector:
    return (-v[1], v[0])


def exact_dot(u: ExactVector, v: ExactVector) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def exact_cross(u: ExactVector, v: ExactVector) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def to_exact(v: Sequence[float]) -> ExactVector:
    if isinstance(v[0], Fraction):
        return (v[0], v[1])  # type: ignore[return-value]
    return frac(v)


@dataclass(frozen=True)
class BoundaryCone:
    """Open cone of admissible forces at a boundary polygon vertex.

    With edges e_in = p - p' and e_out = p'' - p, z lies in the cone iff
    <z_perp, e_in> > 0 and <z_perp, e_out> > 0 where z_perp = (z_y, -z_x).
    Equivalently <z, n> > 0 for both inward normals n = rot90(e).
    """

    apex: Tuple[float, float]
    edge_in: ExactVector
    edge_out: ExactVector

    @property
    def normal_minus(self) -> NDArray[np.float64]:
        return np.array([float(c) for c in rot_ccw(self.edge_in)])

    @property
    def normal_plus(self) -> NDArray[np.float64]:
        return np.array([float(c) for c in rot_ccw(self.edge_out)])

    @property
    def degenerate(self) -> bool:
        """Empty cone: the two inward normals point in opposite directions."""
        n1, n2 = rot_ccw(self.edge_in), rot_ccw(self.edge_out)
        return exact_cross(n1, n2) == 0 and exact_dot(n1, n2) < 0

    def inner_products(self, z: Sequence[float]) -> Tuple[Fraction, Fraction]:
        ze = to_exact(z)
        return exact_dot(ze, rot_ccw(self.edge_in)), exact_dot(ze, rot_ccw(self.edge_out))

    def contains(self, z: Sequence[float]) -> bool:
        """Exact membership test."""
        first, second = self.inner_products(z)
        return first > 0 and second > 0

    def margin(self, z: Sequence[float]) -> float:
        """min of the two inner products; positive iff z lies in the cone."""
        return float(min(self.inner_products(z)))

    def bisector(self) -> Optional[NDArray[np.float64]]:
        """Unit direction inside the cone, or None for a degenerate cone."""
        if self.degenerate:
            return None
        n1, n2 = self.normal_minus, self.normal_plus
        direction = n1 / np.hypot(*n1) + n2 / np.hypot(*n2)
        length = np.hypot(*direction)
        if length == 0:
            return None
        return direction / length


@dataclass(frozen=True)
class ConeEntry:
    """Cone-condition outcome at one boundary vertex."""

    vertex: int
    vertex_class: VertexClass
    force: Tuple[float, float]
    cone: BoundaryCone
    passes: bool
    margin: float

    @property
    def required(self) -> bool:
        return self.vertex_class.is_reflex


@dataclass(frozen=True)
class ConeCertificate:
    """Cone-condition report over the boundary cycle of a drawing."""

    entries: Tuple[ConeEntry, ...]

    @property
    def passes(self) -> bool:
        """Conjunction over reflex (straight or strictly reflex) vertices."""
        return all(e.passes for e in self.entries if e.required)

    @property
    def failing(self) -> Tuple[int, ...]:
        return tuple(e.vertex for e in self.entries if e.required and not e.passes)

    @property
    def min_reflex_margin(self) -> Optional[float]:
        margins = [e.margin for e in self.entries if e.required]
        return min(margins) if margins else None


@dataclass(frozen=True)
class CombinationResult:
    """
    Outcome of sum_j alpha_j Y_j = target with every alpha_j > 0.

    ``feasible`` always meets the relative floor min(alpha) >= alpha_min *
    max(alpha). ``residual`` is sum_j alpha_j Y_j - target in floating point.
    """

    status: Literal["feasible", "infeasible", "degenerate"]
    alphas: Optional[Tuple[float, ...]] = None
    exact_alphas: Optional[Tuple[Fraction, ...]] = field(default=None, repr=False)
    certificate: Optional[Tuple[float, float]] = None
    residual: Optional[Tuple[float, float]] = None

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"
