"""
Certificate entities for embeddings, determinant signs and repairs.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Literal, Tuple

from cone_tutte.domain.cones.entities import ConeCertificate
from cone_tutte.domain.harmonic.entities import EdgeWeights

Verdict = Literal["certified_embedding", "rejected"]


@dataclass(frozen=True)
class Violation:
    """One witness against injectivity.

    kind is one of crossing, overlap, touching, flipped_triangle,
    degenerate_triangle, coincident_vertices, boundary_not_simple,
    orientation_reversed. ``items`` holds the vertex, edge or face indices
    involved.
    """

    kind: str
    items: Tuple[Any, ...]
    detail: str = ""


@dataclass(frozen=True)
class EmbeddingCertificate:
    """Exact verdict on whether a drawing is an embedding."""

    verdict: Verdict
    methods: Tuple[str, ...]
    violations: Tuple[Violation, ...] = ()
    det_signs: Tuple[int, ...] = ()
    evidence: Dict[str, Any] = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.verdict == "certified_embedding"

    def count(self, kind: str) -> int:
        return sum(1 for v in self.violations if v.kind == kind)


@dataclass(frozen=True)
class DetEntry:
    face: Tuple[int, int, int]
    ratio: float
    sign: int


@dataclass(frozen=True)
class DetReport:
    """Jacobian-determinant signs on triangles touching the boundary."""

    entries: Tuple[DetEntry, ...]
    orientation_preserving: bool

    @property
    def positive(self) -> bool:
        return self.orientation_preserving and all(e.sign > 0 for e in self.entries)

    @property
    def non_positive_faces(self) -> Tuple[Tuple[int, int, int], ...]:
        return tuple(e.face for e in self.entries if e.sign <= 0)


@dataclass(frozen=True)
class RepairReport:
    """Outcome of re-solving outgoing weights at failing reflex vertices."""

    weights: EdgeWeights
    repaired: Tuple[int, ...]
    unrepaired: Tuple[int, ...]
    certificate: ConeCertificate
